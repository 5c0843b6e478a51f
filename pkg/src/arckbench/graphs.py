"""Coloured-graph values, lattice checks, serialization, line graphs, planarity.

All types here are immutable values; every operation is a pure function.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

import networkx as nx

from .errors import (
    DanglingEndpoint,
    DuplicateId,
    MissingCoordinate,
    ParallelEdge,
    ParseError,
    SelfLoop,
)


class Colour(str, Enum):
    BLUE = "blue"
    RED = "red"
    EITHER = "either"


class Lattice(str, Enum):
    NONE = "none"
    CARTESIAN = "cartesian"
    TRIANGULAR = "triangular"


# Unit steps defining adjacency on each lattice.  Triangular coordinates are
# axial integer pairs; rendering maps them to the plane with basis vectors
# (1, 0) and (1/2, sqrt(3)/2).
CARTESIAN_STEPS = frozenset({(1, 0), (-1, 0), (0, 1), (0, -1)})
TRIANGULAR_STEPS = frozenset(
    {(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)}
)


@dataclass(frozen=True)
class Vertex:
    id: int
    coord: tuple[int, int] | None = None
    # In-memory decoration only (used by line graphs); not serialized.
    label: str | None = None


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    colour: Colour
    label: str | None = None

    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)


@dataclass(frozen=True)
class ColouredGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    lattice: Lattice = Lattice.NONE

    def vertex_ids(self) -> set[int]:
        return {v.id for v in self.vertices}

    def vertex(self, vid: int) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def edge(self, eid: int) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def degree(self, vid: int) -> int:
        return sum(1 for e in self.edges if vid in e.endpoints())


def build_graph(vertices, edges, lattice: Lattice = Lattice.NONE) -> ColouredGraph:
    """Validate raw vertex/edge lists and normalize ids to dense integers.

    ``vertices`` items may be ints, ``(id, coord)`` pairs, or Vertex values;
    ``edges`` items may be ``(u, v, colour[, label])`` tuples or Edge values.
    Ids are remapped to 0..n-1 in input order.
    """
    raw_vertices = []
    for item in vertices:
        if isinstance(item, Vertex):
            raw_vertices.append(item)
        elif isinstance(item, int):
            raw_vertices.append(Vertex(item))
        else:
            vid, coord = item[0], item[1]
            raw_vertices.append(Vertex(vid, tuple(coord) if coord is not None else None))

    seen: dict[int, int] = {}
    for v in raw_vertices:
        if v.id in seen:
            raise DuplicateId("vertex", v.id)
        seen[v.id] = len(seen)

    raw_edges = []
    for item in edges:
        if isinstance(item, Edge):
            raw_edges.append(item)
        else:
            u, v, colour = item[0], item[1], Colour(item[2])
            label = item[3] if len(item) > 3 else None
            raw_edges.append(Edge(len(raw_edges), u, v, colour, label))

    edge_ids: set[int] = set()
    pair_to_edge: dict[frozenset[int], int] = {}
    norm_edges = []
    for i, e in enumerate(raw_edges):
        if e.id in edge_ids:
            raise DuplicateId("edge", e.id)
        edge_ids.add(e.id)
        if e.u == e.v:
            raise SelfLoop(e.id, e.u)
        for end in (e.u, e.v):
            if end not in seen:
                raise DanglingEndpoint(e.id, end)
        pair = frozenset((e.u, e.v))
        if pair in pair_to_edge:
            raise ParallelEdge(e.id, pair_to_edge[pair], e.u, e.v)
        pair_to_edge[pair] = e.id
        norm_edges.append(Edge(i, seen[e.u], seen[e.v], e.colour, e.label))

    norm_vertices = tuple(
        Vertex(seen[v.id], v.coord, v.label) for v in raw_vertices
    )
    return ColouredGraph(norm_vertices, tuple(norm_edges), lattice)


def line_graph(g: ColouredGraph) -> ColouredGraph:
    """One vertex per edge of ``g``; adjacency where edges share an endpoint.

    Input edge colours are carried onto the output vertices as labels.
    """
    verts = tuple(Vertex(e.id, None, e.colour.value) for e in g.edges)
    out_edges = []
    eid = 0
    for i, a in enumerate(g.edges):
        for b in g.edges[i + 1 :]:
            if set(a.endpoints()) & set(b.endpoints()):
                out_edges.append(Edge(eid, a.id, b.id, Colour.EITHER))
                eid += 1
    return ColouredGraph(verts, tuple(out_edges), Lattice.NONE)


@dataclass(frozen=True)
class KuratowskiWitness:
    kind: str  # "k5" or "k33"
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    # Rotation system: vertex -> neighbours in cyclic order (planar case).
    embedding: dict[int, list[int]] | None
    witness: KuratowskiWitness | None


def is_planar(g: ColouredGraph) -> PlanarityResult:
    """Exact planarity test with a certificate either way.

    Planar graphs come back with a combinatorial embedding (rotation system);
    non-planar ones with a forbidden-subdivision witness classified as a K5 or
    K3,3 subdivision by the degrees of its branch vertices.
    """
    G = nx.Graph()
    G.add_nodes_from(v.id for v in g.vertices)
    G.add_edges_from((e.u, e.v) for e in g.edges)
    ok, cert = nx.check_planarity(G, counterexample=True)
    if ok:
        rotation = {v: list(cert.neighbors_cw_order(v)) if cert.degree(v) else []
                    for v in cert.nodes()}
        return PlanarityResult(True, rotation, None)
    branch_degrees = sorted((d for _, d in cert.degree() if d >= 3), reverse=True)
    kind = "k5" if branch_degrees and branch_degrees[0] >= 4 else "k33"
    witness = KuratowskiWitness(kind, tuple(sorted(map(tuple, map(sorted, cert.edges())))))
    return PlanarityResult(False, None, witness)


@dataclass(frozen=True)
class SnapReport:
    bad_edges: tuple[int, ...]      # edges not spanning one lattice step
    collisions: tuple[tuple[int, int], ...]  # vertex-id pairs sharing a coord

    @property
    def ok(self) -> bool:
        return not self.bad_edges and not self.collisions


def grid_snap_check(g: ColouredGraph, lattice: Lattice) -> SnapReport:
    """List every edge violating lattice adjacency and every coordinate clash."""
    if lattice == Lattice.NONE:
        return SnapReport((), ())
    steps = CARTESIAN_STEPS if lattice == Lattice.CARTESIAN else TRIANGULAR_STEPS
    coords: dict[int, tuple[int, int]] = {}
    for v in g.vertices:
        if v.coord is None:
            raise MissingCoordinate(v.id)
        coords[v.id] = v.coord
    collisions = []
    by_coord: dict[tuple[int, int], int] = {}
    for v in g.vertices:
        if v.coord in by_coord:
            collisions.append((by_coord[v.coord], v.id))
        else:
            by_coord[v.coord] = v.id
    bad = []
    for e in g.edges:
        (ux, uy), (vx, vy) = coords[e.u], coords[e.v]
        if (vx - ux, vy - uy) not in steps:
            bad.append(e.id)
    return SnapReport(tuple(bad), tuple(collisions))


def encode(g: ColouredGraph) -> str:
    """Serialize to the interchange JSON schema."""
    payload = {
        "vertices": [
            {"id": v.id, "coord": list(v.coord) if v.coord is not None else None}
            for v in g.vertices
        ],
        "edges": [
            {"id": e.id, "u": e.u, "v": e.v, "colour": e.colour.value, "label": e.label}
            for e in g.edges
        ],
        "lattice": g.lattice.value,
    }
    return json.dumps(payload, indent=2)


def graph_from_payload(payload) -> ColouredGraph:
    try:
        vertices = [
            Vertex(int(v["id"]),
                   tuple(v["coord"]) if v.get("coord") is not None else None)
            for v in payload["vertices"]
        ]
        edges = [
            Edge(int(e["id"]), int(e["u"]), int(e["v"]),
                 Colour(e["colour"]), e.get("label"))
            for e in payload["edges"]
        ]
        lattice = Lattice(payload.get("lattice", "none"))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph payload: {exc}") from exc
    return build_graph(vertices, edges, lattice)


def decode(text: str) -> ColouredGraph:
    """Parse the JSON schema, reporting the failure position on bad input."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    return graph_from_payload(payload)


def to_dot(g: ColouredGraph, name: str = "g") -> str:
    """Render as Graphviz DOT; edge colour and label carried through."""
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        attrs = []
        if v.coord is not None:
            attrs.append(f'pos="{v.coord[0]},{v.coord[1]}!"')
        if v.label:
            attrs.append(f'label="{v.id}:{v.label}"')
        lines.append(f"  {v.id}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for e in g.edges:
        colour = {"blue": "blue", "red": "red", "either": "gray"}[e.colour.value]
        attrs = [f"color={colour}"]
        if e.label:
            attrs.append(f'label="{e.label}"')
        lines.append(f"  {e.u} -- {e.v} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines)
