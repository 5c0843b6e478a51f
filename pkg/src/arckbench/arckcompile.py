"""Lower a basis-only constraint-logic circuit to a Misere Partizan Arc Kayles
position, on general graphs or snapped onto the Cartesian/triangular grids.

Arc direction names the signal flow: a constraint-logic vertex's enabling
arcs become its gadget's In ports and its enabled arc the Out port.  Each
circuit connection is realized by one shared interface: the producer's Out
port and the consumer's In port are the same four vertices, so the producer's
internals touch its i-end and the consumer's its a-end.  Weight-conversion
plumbing between basis vertices (links, stub-boosted boosters) collapses into
the connection; the blue goal arc becomes the Goal gadget; two-arc red
components become isolated red edges; the red-goal component is dropped, the
misere convention having taken over its job.

On lattices, positions are rigid: the circuit netlist is a forest, so fixing
each root pins every tile through its shared interfaces.  Red companions are
disjoint from everything and are slotted onto free unit edges afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arck import ArcKPosition, Convention, Player
from .cl import CLColour, CLEdge, CLInstance, VertexKind, classify_vertex
from .errors import LayoutError, NonBasisVertex, NotPlanarEmbedding, PortMismatch
from .gadgets import (
    Backend,
    GadgetKind,
    PortDirection,
    gadget_template,
)
from .graphs import Colour, ColouredGraph, Edge, Lattice, Vertex, is_planar

_GADGET_OF_KIND = {
    VertexKind.AND: GadgetKind.AND,
    VertexKind.OR: GadgetKind.OR,
    VertexKind.FANOUT: GadgetKind.FANOUT,
    VertexKind.CHOICE: GadgetKind.CHOICE,
    VertexKind.VARIABLE: GadgetKind.VARIABLE,
}

_LATTICE_OF = {
    Backend.GENERAL: Lattice.NONE,
    Backend.CARTESIAN: Lattice.CARTESIAN,
    Backend.TRIANGULAR: Lattice.TRIANGULAR,
}


@dataclass
class _Node:
    id: int
    kind: GadgetKind
    cl_vertex: int | None
    in_arcs: list      # anchor arcs toward producers, port order
    out_arcs: list     # anchor arcs toward consumers, port order


@dataclass
class _Connection:
    producer: tuple[int, int] | None   # (node id, out-port index)
    consumer: tuple[int, int] | None   # (node id, in-port index)
    cl_arcs: list[int]


@dataclass
class ArckTrace:
    nodes: list = field(default_factory=list)
    connections: list = field(default_factory=list)
    node_edges: dict = field(default_factory=dict)        # node id -> edge ids
    interface_edges: dict = field(default_factory=dict)   # conn idx -> edge ids
    pair_extra_edges: list = field(default_factory=list)
    iso_red_edges: list = field(default_factory=list)
    dropped_red_goal_arcs: list = field(default_factory=list)
    coordinates: dict = field(default_factory=dict)

    def payload(self) -> dict:
        return {
            "nodes": self.nodes,
            "connections": self.connections,
            "node_edges": self.node_edges,
            "interface_edges": self.interface_edges,
            "pair_extra_edges": self.pair_extra_edges,
            "iso_red_edges": self.iso_red_edges,
            "dropped_red_goal_arcs": self.dropped_red_goal_arcs,
            "coordinates": {str(k): list(v) for k, v in self.coordinates.items()},
        }


# ---------------------------------------------------------------------------
# netlist extraction

_PLUMBING_LINK = "link"        # blue w2 in, blue w2 out
_PLUMBING_BOOST = "boost"      # the stub-carrying conversion shapes
_STUB = "stub"
_RED_MIDDLE = "red_middle"
_GOAL_JUNCTION = "goal_junction"
_GOAL_SINK = "goal_sink"


def _signature(inst: CLInstance, v: int):
    sig = []
    for e in inst.edges:
        if v not in (e.tail, e.head):
            continue
        direction = "in" if e.head == v else "out"
        sig.append((e.colour.value, e.weight, direction, e.goal_for is not None))
    return tuple(sorted(sig))


def _extended_kind(inst: CLInstance, v: int, degree: dict) -> str:
    if degree[v] == 1:
        return _STUB
    basis = classify_vertex(inst, v)
    if basis == VertexKind.FANOUT:
        # a weight link whose booster stub feeds it looks like a fanout;
        # a logical fanout hub has both weight-1 inputs from real vertices
        w1_tails = [
            e.tail for e in inst.edges
            if e.head == v and e.weight == 1 and e.colour == CLColour.BLUE
        ]
        stubs = [t for t in w1_tails if degree[t] == 1]
        if len(stubs) == 1:
            return _PLUMBING_BOOST
        return VertexKind.FANOUT.value
    if basis in _GADGET_OF_KIND:
        return basis.value
    sig = _signature(inst, v)
    plain = tuple(s[:3] for s in sig)
    if plain == (("blue", 2, "in"), ("blue", 2, "out")):
        return _PLUMBING_LINK
    if plain == (("blue", 2, "in"), ("blue", 1, "in"), ("blue", 1, "out")) or \
       plain == (("blue", 1, "in"), ("blue", 2, "in"), ("blue", 1, "out")):
        return _PLUMBING_BOOST
    if plain == (("red", 2, "in"), ("red", 2, "in")):
        return _RED_MIDDLE
    if any(s[3] for s in sig) and plain == (("blue", 2, "out"), ("blue", 2, "out"), ("red", 2, "in")):
        return _GOAL_JUNCTION
    if plain == (("blue", 2, "in"), ("blue", 2, "in")):
        return _GOAL_SINK
    return "unknown"


def _down_end(inst: CLInstance, kind: str, v: int):
    """The arc leaving plumbing vertex v toward the producer side."""
    outs = [e for e in inst.edges if e.tail == v]
    if kind == _PLUMBING_LINK:
        return outs[0]
    # booster: the single out arc (weight 1 toward a hub, or weight 2 toward
    # a clause root, depending on which conversion shape this is)
    return outs[0]


def _extract_netlist(inst: CLInstance):
    degree = {v: inst.degree(v) for v in inst.vertices()}
    kinds = {v: _extended_kind(inst, v, degree) for v in inst.vertices()}

    for v, kind in kinds.items():
        if kind == "unknown":
            raise NonBasisVertex(v, "not a basis vertex or documented plumbing")

    arcs_in = {v: [] for v in kinds}
    arcs_out = {v: [] for v in kinds}
    for e in inst.edges:
        arcs_out[e.tail].append(e)
        arcs_in[e.head].append(e)
    for v in kinds:
        arcs_in[v].sort(key=lambda e: e.id)
        arcs_out[v].sort(key=lambda e: e.id)

    nodes: list[_Node] = []
    node_of_vertex: dict[int, int] = {}

    def add_node(kind: GadgetKind, cl_vertex, in_arcs, out_arcs) -> int:
        nid = len(nodes)
        nodes.append(_Node(nid, kind, cl_vertex, in_arcs, out_arcs))
        if cl_vertex is not None:
            node_of_vertex[cl_vertex] = nid
        return nid

    goal_arcs = [e for e in inst.edges if e.goal_for == CLColour.BLUE]
    dropped: list[int] = []
    iso_components = 0
    seen_red = set()
    for v in sorted(kinds):
        kind = kinds[v]
        if kind == _RED_MIDDLE and v not in seen_red:
            arcs = arcs_in[v]
            if all(degree[e.tail] == 1 for e in arcs) and not any(e.goal_for for e in arcs):
                iso_components += 1
                seen_red.add(v)
            else:
                raise NonBasisVertex(v, "red middle attached to the circuit")
        elif kind == _GOAL_JUNCTION:
            comp = arcs_in[v] + arcs_out[v]
            dropped.extend(e.id for e in comp)

    for v in sorted(kinds):
        kind = kinds[v]
        if kind == VertexKind.VARIABLE.value:
            blue = next(e for e in arcs_in[v] if e.colour == CLColour.BLUE)
            add_node(GadgetKind.VARIABLE, v, [], [blue])
        elif kind == VertexKind.AND.value:
            w1 = [e for e in arcs_out[v] if e.weight == 1]
            w2 = next(e for e in arcs_in[v] if e.weight == 2)
            add_node(GadgetKind.AND, v, w1, [w2])
        elif kind == VertexKind.OR.value:
            children = list(arcs_out[v])
            parent = next(iter(arcs_in[v]))
            add_node(GadgetKind.OR, v, children, [parent])
        elif kind == VertexKind.FANOUT.value:
            inputs = [next(e for e in arcs_out[v] if e.weight == 2)]
            outs = [e for e in arcs_in[v] if e.weight == 1]
            add_node(GadgetKind.FANOUT, v, inputs, outs)
        elif kind == VertexKind.CHOICE.value:
            inputs = [next(e for e in arcs_out[v] if e.weight == 1)]
            outs = [e for e in arcs_in[v] if e.weight == 1]
            add_node(GadgetKind.CHOICE, v, inputs, outs)

    for goal in goal_arcs:
        add_node(GadgetKind.GOAL, None, [goal], [])

    # Walk each consumer anchor down the plumbing to its producer.
    connections: list[_Connection] = []
    used_out_ports: set[tuple[int, int]] = set()

    def walk(nid: int, port: int, anchor: CLEdge):
        node_vertex = nodes[nid].cl_vertex
        v = anchor.head if anchor.tail == node_vertex else anchor.tail
        if nodes[nid].kind == GadgetKind.GOAL:
            v = anchor.head  # the goal arc's tail is its loose end
        chain = [anchor.id]
        arc = anchor
        while True:
            kind = kinds[v]
            if kind == _STUB:
                connections.append(_Connection(None, (nid, port), chain))
                return
            if kind in (_PLUMBING_LINK, _PLUMBING_BOOST):
                for e in arcs_in[v]:
                    if e.id not in chain and degree[e.tail] == 1:
                        chain.append(e.id)  # absorb booster stubs
                down = _down_end(inst, kind, v)
                chain.append(down.id)
                arc = down
                v = down.head
                continue
            pid = node_of_vertex.get(v)
            if pid is None:
                raise NonBasisVertex(v, "connection landed on a non-gadget vertex")
            producer = nodes[pid]
            matches = [i for i, a in enumerate(producer.out_arcs) if a.id == arc.id]
            if not matches:
                raise PortMismatch(
                    f"arc {arc.id} does not anchor an out port of node {pid}"
                )
            if producer.kind == GadgetKind.VARIABLE:
                # the arriving arc is the variable's own claim edge, not plumbing
                chain = [c for c in chain if c != arc.id]
            key = (pid, matches[0])
            if key in used_out_ports:
                raise PortMismatch(f"out port {key} used twice")
            used_out_ports.add(key)
            connections.append(_Connection(key, (nid, port), chain))
            return

    for node in nodes:
        for port, anchor in enumerate(node.in_arcs):
            walk(node.id, port, anchor)

    variable_count = sum(1 for n in nodes if n.kind == GadgetKind.VARIABLE)
    return nodes, connections, iso_components, variable_count, dropped


# ---------------------------------------------------------------------------
# instantiation


class _Emitter:
    def __init__(self, lattice: Lattice):
        self.lattice = lattice
        self.vertices: list[Vertex] = []
        self.edges: list[Edge] = []

    def vertex(self, coord=None) -> int:
        vid = len(self.vertices)
        self.vertices.append(Vertex(vid, coord))
        return vid

    def edge(self, u: int, v: int, colour: Colour, label=None) -> int:
        eid = len(self.edges)
        self.edges.append(Edge(eid, u, v, colour, label))
        return eid

    def graph(self) -> ColouredGraph:
        return ColouredGraph(tuple(self.vertices), tuple(self.edges), self.lattice)


def _instantiate(nodes, connections, backend: Backend, iso_reds: int,
                 variable_count: int, translations=None):
    emitter = _Emitter(_LATTICE_OF[backend])
    trace = ArckTrace()
    lattice = backend != Backend.GENERAL

    templates = {n.id: gadget_template(n.kind, backend) for n in nodes}
    merged_in: dict[tuple[int, int], int] = {}
    for ci, conn in enumerate(connections):
        if conn.producer is not None and conn.consumer is not None:
            merged_in[conn.consumer] = ci

    # producer port -> emitted interface vertex/edge ids, filled as nodes emit
    out_interfaces: dict[tuple[int, int], dict[str, int]] = {}
    port_edge_ids: dict[tuple[int, str, int], list[int]] = {}

    for node in nodes:
        template = templates[node.id]
        shift = translations.get(node.id) if translations else None
        vmap: dict[int, int] = {}
        skip_edges: set[int] = set()

        for pi, port in enumerate(template.in_ports):
            ci = merged_in.get((node.id, pi))
            if ci is None:
                continue
            iface = out_interfaces[connections[ci].producer]
            vmap[port.center] = iface["center"]
            vmap[port.i_end] = iface["i_end"]
            vmap[port.a_end] = iface["a_end"]
            vmap[port.top_end] = iface["top_end"]
            comp = template.fragment.edge(port.companion_edge)
            skip_edges.update(
                (port.i_edge, port.a_edge, port.top_edge, comp.id)
            )
            vmap[comp.u] = -1  # companion endpoints of a merged port vanish
            vmap[comp.v] = -1

        # red companion endpoints (degree one, red edge) lose their template
        # slots; they are re-slotted globally once every tile is placed
        incident: dict[int, list] = {}
        for e in template.fragment.edges:
            incident.setdefault(e.u, []).append(e)
            incident.setdefault(e.v, []).append(e)
        floating = {
            v.id for v in template.fragment.vertices
            if len(incident.get(v.id, [])) == 1
            and incident[v.id][0].colour == Colour.RED
        }

        for v in template.fragment.vertices:
            if v.id in vmap:
                continue
            coord = None
            if (lattice and v.coord is not None and shift is not None
                    and v.id not in floating):
                coord = (v.coord[0] + shift[0], v.coord[1] + shift[1])
            vmap[v.id] = emitter.vertex(coord)

        emitted: dict[int, int] = {}
        node_edge_ids = []
        for e in template.fragment.edges:
            if e.id in skip_edges:
                continue
            eid = emitter.edge(vmap[e.u], vmap[e.v], e.colour, e.label)
            emitted[e.id] = eid
            node_edge_ids.append(eid)
        trace.node_edges[node.id] = node_edge_ids

        for pi, port in enumerate(template.out_ports):
            out_interfaces[(node.id, pi)] = {
                "center": vmap[port.center],
                "i_end": vmap[port.i_end],
                "a_end": vmap[port.a_end],
                "top_end": vmap[port.top_end],
            }
            port_edge_ids[(node.id, "out", pi)] = [
                emitted[port.i_edge], emitted[port.a_edge],
                emitted[port.top_edge], emitted[port.companion_edge],
            ]
        for pi, port in enumerate(template.in_ports):
            if (node.id, pi) in merged_in:
                continue
            port_edge_ids[(node.id, "in", pi)] = [
                emitted[port.i_edge], emitted[port.a_edge],
                emitted[port.top_edge], emitted[port.companion_edge],
            ]
        trace.nodes.append({
            "id": node.id,
            "kind": node.kind.value,
            "cl_vertex": node.cl_vertex,
        })

    for ci, conn in enumerate(connections):
        trace.connections.append({
            "producer": conn.producer,
            "consumer": conn.consumer,
            "cl_arcs": conn.cl_arcs,
        })
        if conn.producer is not None:
            key = (conn.producer[0], "out", conn.producer[1])
        else:
            key = (conn.consumer[0], "in", conn.consumer[1])
        trace.interface_edges[ci] = port_edge_ids.get(key, [])

    # extra red edges: one per pair of variable gadgets, plus the free pool
    for _ in range(variable_count // 2):
        a, b = emitter.vertex(), emitter.vertex()
        trace.pair_extra_edges.append(emitter.edge(a, b, Colour.RED))
    for _ in range(iso_reds):
        a, b = emitter.vertex(), emitter.vertex()
        trace.iso_red_edges.append(emitter.edge(a, b, Colour.RED))

    return emitter, trace


def _slot_red_endpoints(emitter: _Emitter) -> None:
    """Give every coordless vertex (red companion ends) a free lattice cell."""
    if emitter.lattice == Lattice.NONE:
        return
    occupied = {v.coord for v in emitter.vertices if v.coord is not None}
    if not occupied:
        base = 0, 0
        occupied.add(base)
    xs = [c[0] for c in occupied]
    ys = [c[1] for c in occupied]
    min_x, max_x = min(xs) - 2, max(xs) + 2
    min_y, max_y = min(ys) - 2, max(ys) + 2
    slots = []
    for y in range(min_y, max_y + 1):
        for x in range(min_x, max_x + 1):
            slots.append(((x, y), (x + 1, y)))
    slot_iter = iter(slots)
    pending = [v for v in emitter.vertices if v.coord is None]
    for va, vb in zip(pending[0::2], pending[1::2]):
        placed = False
        for a, b in slot_iter:
            if a in occupied or b in occupied:
                continue
            emitter.vertices[va.id] = Vertex(va.id, a)
            emitter.vertices[vb.id] = Vertex(vb.id, b)
            occupied.update((a, b))
            placed = True
            break
        if not placed:
            raise LayoutError("no free unit edge left for a red companion")


def _layout(nodes, connections, templates, backend: Backend):
    """Rigid placement: each connection identifies two interface centres, so
    translations propagate from every component root through the forest."""
    parent: dict[int, tuple[int, int]] = {}
    for conn in connections:
        if conn.producer is None or conn.consumer is None:
            continue
        parent[conn.producer[0]] = conn.consumer

    roots = [n.id for n in nodes if n.id not in parent]
    translations: dict[int, tuple[int, int]] = {}

    def port_center(nid: int, direction: PortDirection, port: int):
        template = templates[nid]
        ports = template.in_ports if direction == PortDirection.IN else template.out_ports
        return template.fragment.vertex(ports[port].center).coord

    def place(nid: int, shift: tuple[int, int]):
        translations[nid] = shift
        for conn in connections:
            if conn.consumer and conn.consumer[0] == nid and conn.producer:
                pnid, pport = conn.producer
                cons_center = port_center(nid, PortDirection.IN, conn.consumer[1])
                prod_center = port_center(pnid, PortDirection.OUT, pport)
                place(pnid, (
                    shift[0] + cons_center[0] - prod_center[0],
                    shift[1] + cons_center[1] - prod_center[1],
                ))

    y_cursor = 0
    for rid in sorted(roots):
        place(rid, (0, y_cursor))
        ys = [
            v.coord[1] + translations[nid][1]
            for nid, template in templates.items()
            if nid in translations
            for v in template.fragment.vertices
            if v.coord is not None
        ]
        if ys:
            y_cursor = max(ys) + 4

    return translations


def compile_b2cl_to_arck(inst: CLInstance, backend: Backend = Backend.GENERAL,
                         embedding: dict | None = None):
    """Lower a standard circuit to a misere Arc Kayles position plus its trace."""
    planarity = is_planar(_underlying_graph(inst))
    if not planarity.planar:
        raise NotPlanarEmbedding("instance is not planar; no embedding exists")
    if embedding is not None:
        _validate_embedding(inst, embedding)

    nodes, connections, iso_comps, variable_count, dropped = _extract_netlist(inst)

    # Red's idle supply.  Companions already price Blue's gadget work one for
    # one, and the source circuit sized its free red components against two
    # Blue plays (goal arc, escape arc) that have no counterpart here - the
    # goal gadget's saved turn replaces both.  One red play therefore comes
    # off the pool; micro-scale solving fixes the exact boundary.
    iso_reds = max(0, iso_comps - 1)

    translations = None
    if backend != Backend.GENERAL:
        templates = {n.id: gadget_template(n.kind, backend) for n in nodes}
        translations = _layout(nodes, connections, templates, backend)

    emitter, trace = _instantiate(
        nodes, connections, backend, iso_reds, variable_count, translations
    )
    trace.dropped_red_goal_arcs = dropped
    _slot_red_endpoints(emitter)
    graph = emitter.graph()

    seen = {}
    for v in graph.vertices:
        if v.coord is not None:
            if v.coord in seen:
                raise LayoutError(
                    f"vertices {seen[v.coord]} and {v.id} share {v.coord}"
                )
            seen[v.coord] = v.id
            trace.coordinates[v.id] = v.coord

    position = ArcKPosition(graph, Convention.MISERE, Player(inst.to_move.value))
    return position, trace


def _underlying_graph(inst: CLInstance) -> ColouredGraph:
    verts = tuple(Vertex(v) for v in inst.vertices())
    seen = set()
    edges = []
    for e in inst.edges:
        pair = frozenset((e.tail, e.head))
        if pair in seen or e.tail == e.head:
            continue
        seen.add(pair)
        edges.append(Edge(len(edges), e.tail, e.head, Colour.BLUE))
    return ColouredGraph(verts, tuple(edges))


def _validate_embedding(inst: CLInstance, embedding: dict) -> None:
    vertices = set(inst.vertices())
    for v, ring in embedding.items():
        if int(v) not in vertices:
            raise NotPlanarEmbedding(f"embedding names unknown vertex {v}")
        neighbours = set()
        for e in inst.edges:
            if e.tail == int(v):
                neighbours.add(e.head)
            elif e.head == int(v):
                neighbours.add(e.tail)
        if set(ring) != neighbours:
            raise NotPlanarEmbedding(
                f"rotation at vertex {v} does not list its neighbours"
            )


def red_budget(trace: ArckTrace, position: ArcKPosition) -> dict:
    """Ledger of every red edge in the emitted position, by provenance."""
    red_ids = {e.id for e in position.graph.edges if e.colour == Colour.RED}
    companions = []
    variable_path_reds = []
    for nid, edge_ids in trace.node_edges.items():
        kind = next(n["kind"] for n in trace.nodes if n["id"] == nid)
        for eid in edge_ids:
            if eid not in red_ids:
                continue
            edge = position.graph.edge(eid)
            if kind == GadgetKind.VARIABLE.value and edge.label in ("b", "c"):
                variable_path_reds.append(eid)
            else:
                companions.append(eid)
    ledger = {
        "companions": sorted(companions),
        "variable_path_reds": sorted(variable_path_reds),
        "pair_extras": sorted(trace.pair_extra_edges),
        "isolated": sorted(trace.iso_red_edges),
    }
    accounted = set()
    for bucket in ledger.values():
        accounted.update(bucket)
    ledger["balanced"] = accounted == red_ids
    ledger["total_red"] = len(red_ids)
    return ledger
