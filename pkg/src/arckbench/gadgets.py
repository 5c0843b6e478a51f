"""The Arc Kayles gadget tile library.

Every gadget talks to its neighbours through the same four-vertex interface:
a centre joined to an i-end (the Inactive edge), an a-end (the Active edge),
and a top end, plus one disjoint red companion edge so Red keeps a move in
hand while Blue works the gadget.  Gadget-internal edges attach only at the
a-end of In ports and the i-end of Out ports; the centre and top end never
gain other neighbours.

Lattice templates carry integer coordinates; triangular coordinates are
axial, with unit steps (1,0), (0,1), and (1,-1).  Companion red edges are
disjoint components, so on lattices they are placed on the nearest free unit
edge inside the tile's reserved box.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import UndefinedTemplate
from .graphs import Colour, ColouredGraph, Edge, Lattice, Vertex


class GadgetKind(str, Enum):
    INTERFACE = "interface"
    GOAL = "goal"
    VARIABLE = "variable"
    WIRE_EVEN = "wire_even"
    WIRE_ODD = "wire_odd"
    AND = "and"
    OR = "or"
    FANOUT = "fanout"
    CHOICE = "choice"


class Backend(str, Enum):
    GENERAL = "general"
    CARTESIAN = "cartesian"
    TRIANGULAR = "triangular"


class PortDirection(str, Enum):
    IN = "in"
    OUT = "out"


@dataclass(frozen=True)
class InterfacePort:
    direction: PortDirection
    center: int
    i_end: int
    a_end: int
    top_end: int
    i_edge: int
    a_edge: int
    top_edge: int
    companion_edge: int

    @property
    def attach_vertex(self) -> int:
        """Where gadget-internal or external edges may touch this interface."""
        return self.a_end if self.direction == PortDirection.IN else self.i_end


@dataclass(frozen=True)
class GadgetTemplate:
    kind: GadgetKind
    backend: Backend
    fragment: ColouredGraph
    ports: tuple[InterfacePort, ...]

    @property
    def in_ports(self) -> tuple[InterfacePort, ...]:
        return tuple(p for p in self.ports if p.direction == PortDirection.IN)

    @property
    def out_ports(self) -> tuple[InterfacePort, ...]:
        return tuple(p for p in self.ports if p.direction == PortDirection.OUT)

    def blue_edges(self):
        return [e for e in self.fragment.edges if e.colour == Colour.BLUE]

    def red_edges(self):
        return [e for e in self.fragment.edges if e.colour == Colour.RED]


class _TileBuilder:
    def __init__(self, lattice: Lattice):
        self.lattice = lattice
        self.names: dict[str, int] = {}
        self.vertices: list[Vertex] = []
        self.edges: list[Edge] = []
        self.ports: list[InterfacePort] = []
        self.extra_companions = 0

    def v(self, name: str, coord=None) -> str:
        vid = len(self.vertices)
        self.names[name] = vid
        self.vertices.append(Vertex(vid, tuple(coord) if coord else None))
        return name

    def _edge(self, u: str, v: str, colour: Colour, label) -> int:
        eid = len(self.edges)
        self.edges.append(Edge(eid, self.names[u], self.names[v], colour, label))
        return eid

    def blue(self, u: str, v: str, label: str | None = None) -> int:
        return self._edge(u, v, Colour.BLUE, label)

    def _companion(self) -> int:
        a = self.v(f"_r{len(self.edges)}a")
        b = self.v(f"_r{len(self.edges)}b")
        return self._edge(a, b, Colour.RED, None)

    def port(self, direction: PortDirection, center: str, i_end: str,
             a_end: str, top_end: str,
             i_label="I", a_label="A", top_label=None) -> None:
        i_edge = self.blue(center, i_end, i_label)
        a_edge = self.blue(center, a_end, a_label)
        top_edge = self.blue(center, top_end, top_label)
        companion = self._companion()
        self.ports.append(InterfacePort(
            direction,
            self.names[center], self.names[i_end],
            self.names[a_end], self.names[top_end],
            i_edge, a_edge, top_edge, companion,
        ))

    def extra_red(self) -> int:
        self.extra_companions += 1
        return self._companion()

    def _place_companions(self) -> None:
        """Slot the red companions onto free unit edges near the tile."""
        if self.lattice == Lattice.NONE:
            return
        occupied = {v.coord for v in self.vertices if v.coord is not None}
        pending = [v for v in self.vertices if v.coord is None]
        coords = [c for c in occupied]
        min_x = min(c[0] for c in coords) - 1
        max_x = max(c[0] for c in coords) + 1
        min_y = min(c[1] for c in coords) - 1
        max_y = max(c[1] for c in coords) + 1
        slots = []
        for y in range(min_y, max_y + 1):
            for x in range(min_x, max_x + 1):
                slots.append(((x, y), (x + 1, y)))
                slots.append(((x, y), (x, y + 1)))
        pairs = list(zip(pending[0::2], pending[1::2]))
        for va, vb in pairs:
            placed = False
            for a, b in slots:
                if a in occupied or b in occupied:
                    continue
                self.vertices[va.id] = Vertex(va.id, a)
                self.vertices[vb.id] = Vertex(vb.id, b)
                occupied.update((a, b))
                placed = True
                break
            if not placed:
                raise UndefinedTemplate("companion placement", self.lattice.value)

    def build(self, kind: GadgetKind, backend: Backend) -> GadgetTemplate:
        self._place_companions()
        fragment = ColouredGraph(tuple(self.vertices), tuple(self.edges), self.lattice)
        return GadgetTemplate(kind, backend, fragment, tuple(self.ports))


_LATTICE_OF = {
    Backend.GENERAL: Lattice.NONE,
    Backend.CARTESIAN: Lattice.CARTESIAN,
    Backend.TRIANGULAR: Lattice.TRIANGULAR,
}

IN = PortDirection.IN
OUT = PortDirection.OUT


def _coords(backend: Backend, table: dict[str, tuple[int, int]]):
    if backend == Backend.GENERAL:
        return {name: None for name in table}
    return table


def _interface(backend: Backend) -> GadgetTemplate:
    c = _coords(backend, {"b": (0, 0), "a": (1, 0), "c": (2, 0), "d": (1, 1)})
    t = _TileBuilder(_LATTICE_OF[backend])
    for name, coord in c.items():
        t.v(name, coord)
    t.port(IN, "a", "b", "c", "d")
    return t.build(GadgetKind.INTERFACE, backend)


def _goal(backend: Backend) -> GadgetTemplate:
    c = _coords(backend, {"b": (0, 0), "a": (1, 0), "c": (2, 0), "d": (1, 1),
                          "e": (3, 0)})
    t = _TileBuilder(_LATTICE_OF[backend])
    for name, coord in c.items():
        t.v(name, coord)
    t.port(IN, "a", "b", "c", "d")
    t.blue("c", "e", "G")
    return t.build(GadgetKind.GOAL, backend)


def _variable(backend: Backend) -> GadgetTemplate:
    c = _coords(backend, {
        "a": (0, 0), "b": (1, 0), "c": (2, 0), "d": (3, 0), "e": (4, 0),
        "f": (5, 0), "g": (6, 0), "h": (7, 0), "j": (6, 1),
    })
    t = _TileBuilder(_LATTICE_OF[backend])
    for name, coord in c.items():
        t.v(name, coord)
    t.blue("a", "b", "a")
    t._edge("b", "c", Colour.RED, "b")
    t._edge("c", "d", Colour.RED, "c")
    t.blue("d", "e", "d")
    t.blue("e", "f", "e")
    t.port(OUT, "g", "f", "h", "j", i_label="f", a_label="g")
    return t.build(GadgetKind.VARIABLE, backend)


def _and(backend: Backend) -> GadgetTemplate:
    if backend == Backend.TRIANGULAR:
        coords = {
            "e": (0, 0), "f": (1, 0), "g": (2, 0), "h": (1, 1),   # In2 row
            "a": (0, 2), "b": (1, 2), "c": (2, 2), "d": (1, 3),   # In1 row
            "i": (2, 1), "j": (3, 1), "k": (4, 1), "l": (3, 2),   # out side
        }
        c = _coords(backend, coords)
        in1 = ("b", "a", "c", "d")
        in2 = ("f", "e", "g", "h")
    else:
        coords = {
            "a": (1, 2), "b": (0, 2), "c": (2, 2), "d": (1, 3),   # In1
            "aa": (1, 0), "bb": (0, 0), "cc": (2, 0), "dd": (1, 1),  # In2
            "i": (2, 1), "j": (3, 1), "k": (4, 1), "l": (3, 2),   # out
        }
        c = _coords(backend, coords)
        in1 = ("a", "b", "c", "d")
        in2 = ("aa", "bb", "cc", "dd")
    t = _TileBuilder(_LATTICE_OF[backend])
    for name, coord in c.items():
        t.v(name, coord)
    t.port(IN, *in1)
    t.port(IN, *in2)
    t.blue("i", in2[2], "a")
    t.blue("i", in1[2], "b")
    t.port(OUT, "j", "i", "k", "l", i_label="c", a_label="d", top_label="e")
    return t.build(GadgetKind.AND, backend)


def _or_general() -> GadgetTemplate:
    t = _TileBuilder(Lattice.NONE)
    for name in "abcdefghijklmo":
        t.v(name)
    t.port(IN, "f", "e", "g", "h")   # In1
    t.port(IN, "b", "a", "c", "d")   # In2
    t.blue("g", "c", "a")
    t.blue("g", "i", "b")
    t.blue("i", "c", "c")
    t.blue("i", "l", "d")
    t.blue("l", "j", "e")
    t.port(OUT, "k", "j", "m", "o", i_label="f", a_label="g")
    t.extra_red()
    return t.build(GadgetKind.OR, Backend.GENERAL)


def _or_cartesian() -> GadgetTemplate:
    coords = {
        "a": (0, 0), "b": (1, 0), "c": (2, 0), "d": (1, 1),
        "e": (0, 2), "f": (1, 2), "g": (2, 2), "h": (1, 3),
        "j": (2, 3), "i": (3, 0), "k": (3, 1), "l": (3, 2),
        "u": (3, 3), "p": (2, -1), "q": (3, -1),
        "m": (4, 1), "n": (5, 1), "o": (6, 1), "v": (5, 2),
    }
    t = _TileBuilder(Lattice.CARTESIAN)
    for name, coord in coords.items():
        t.v(name, coord)
    t.port(IN, "f", "e", "g", "h")   # In1 (upper row)
    t.port(IN, "b", "a", "c", "d")   # In2 (lower row)
    t.blue("j", "g", "a")
    t.blue("l", "g", "b")
    t.blue("u", "l", "c")
    t.blue("l", "k", "d")
    t.blue("c", "p", "e")
    t.blue("i", "c", "f")
    t.blue("i", "q", "g")
    t.blue("i", "k", "h")
    t.blue("m", "k", "i")
    t.port(OUT, "n", "m", "o", "v", i_label="j", a_label="k", top_label="l")
    t.extra_red()
    t.extra_red()
    return t.build(GadgetKind.OR, Backend.CARTESIAN)


def _or_triangular() -> GadgetTemplate:
    coords = {
        "a": (0, 0), "b": (1, 0), "c": (2, 0), "d": (1, 1),
        "e": (0, 3), "f": (1, 3), "g": (2, 3), "h": (1, 4),
        "i": (2, 1), "j": (3, 1), "l": (2, 2),
        "k": (4, 1), "m": (5, 1), "n": (6, 1), "o": (5, 2),
    }
    t = _TileBuilder(Lattice.TRIANGULAR)
    for name, coord in coords.items():
        t.v(name, coord)
    t.port(IN, "f", "e", "g", "h")   # In1 (upper row)
    t.port(IN, "b", "a", "c", "d")   # In2 (lower row)
    t.blue("l", "g", "a")
    t.blue("c", "i", "b")
    t.blue("l", "i", "c")
    t.blue("j", "i", "d")
    t.blue("l", "j", "e")
    t.blue("j", "k", "f")
    t.port(OUT, "m", "k", "n", "o", i_label="I", a_label="A")
    t.extra_red()
    return t.build(GadgetKind.OR, Backend.TRIANGULAR)


def _fanout(backend: Backend) -> GadgetTemplate:
    if backend == Backend.TRIANGULAR:
        coords = {
            "a": (0, 1), "b": (1, 1), "c": (2, 1), "d": (1, 2),
            "i": (2, 2), "j": (3, 2), "k": (4, 2), "l": (3, 3),
            "e": (2, 0), "f": (3, 0), "g": (4, 0), "h": (3, 1),
        }
    else:
        coords = {
            "a": (1, 1), "b": (0, 1), "c": (2, 1), "d": (1, 2),
            "i": (2, 2), "j": (3, 2), "k": (4, 2), "l": (3, 3),
            "e": (2, 0), "f": (3, 0), "g": (4, 0), "h": (3, 1),
        }
    c = _coords(backend, coords)
    t = _TileBuilder(_LATTICE_OF[backend])
    for name, coord in c.items():
        t.v(name, coord)
    centre = "b" if backend == Backend.TRIANGULAR else "a"
    i_end = "a" if backend == Backend.TRIANGULAR else "b"
    t.port(IN, centre, i_end, "c", "d")
    t.blue("c", "i", "a")
    t.blue("c", "e", "b")
    t.port(OUT, "j", "i", "k", "l", i_label="c", a_label="d")
    t.port(OUT, "f", "e", "g", "h", i_label="e", a_label="f")
    return t.build(GadgetKind.FANOUT, backend)


def _choice_general() -> GadgetTemplate:
    t = _TileBuilder(Lattice.NONE)
    for name in "abcdefghijkl":
        t.v(name)
    t.port(IN, "b", "a", "c", "d")
    t.blue("c", "i", "a")
    t.blue("c", "e", "b")
    t.blue("e", "i", "c")
    t.port(OUT, "j", "i", "k", "l", i_label="d", a_label="e")
    t.port(OUT, "f", "e", "g", "h", i_label="f", a_label="g")
    return t.build(GadgetKind.CHOICE, Backend.GENERAL)


def _choice_cartesian() -> GadgetTemplate:
    coords = {
        "a": (1, 1), "b": (0, 1), "c": (2, 1), "d": (1, 2),
        "da": (2, 0), "dc": (2, 2),
        "ea": (3, 0), "eb": (3, 1), "ec": (3, 2),
        "fa": (4, 0), "fb": (4, 1), "fc": (4, 2),
        "ga": (5, 0), "gc": (5, 2),
        "aa": (7, 0), "bb": (6, 0), "cc": (8, 0), "dd": (7, 1),
        "aaa": (7, 2), "bbb": (6, 2), "ccc": (8, 2), "ddd": (7, 3),
    }
    t = _TileBuilder(Lattice.CARTESIAN)
    for name, coord in coords.items():
        t.v(name, coord)
    t.port(IN, "a", "b", "c", "d")
    t.blue("c", "dc", "a")
    t.blue("c", "da", "b")
    t.blue("ec", "dc", "c")
    t.blue("c", "eb", "d")
    t.blue("ea", "da", "e")
    t.blue("ec", "eb", "f")
    t.blue("ea", "eb", "g")
    t.blue("ec", "fc", "h")
    t.blue("eb", "fb", "i")
    t.blue("ea", "fa", "j")
    t.blue("gc", "fc", "k")
    t.blue("ga", "fa", "l")
    t.blue("gc", "bbb", "m")
    t.blue("ga", "bb", "n")
    t.port(OUT, "aaa", "bbb", "ccc", "ddd", i_label="o", a_label="q")
    t.port(OUT, "aa", "bb", "cc", "dd", i_label="p", a_label="r")
    t.extra_red()
    t.extra_red()
    t.extra_red()
    return t.build(GadgetKind.CHOICE, Backend.CARTESIAN)


def _choice_triangular() -> GadgetTemplate:
    coords = {
        "a": (0, 2), "b": (1, 2), "c": (2, 2), "e": (1, 3),
        "f": (2, 3), "d": (3, 2), "h": (3, 3), "g": (3, 1),
        "j": (3, 4), "n": (4, 4), "o": (5, 4), "p": (4, 5),
        "i": (3, 0), "k": (4, 0), "l": (5, 0), "m": (4, 1),
    }
    t = _TileBuilder(Lattice.TRIANGULAR)
    for name, coord in coords.items():
        t.v(name, coord)
    t.port(IN, "b", "a", "c", "e")
    t.blue("c", "f", "a")
    t.blue("c", "d", "b")
    t.blue("h", "d", "c")
    t.blue("h", "j", "e")
    t.blue("g", "d", "d")
    t.blue("g", "i", "f")
    t.port(OUT, "n", "j", "o", "p")
    t.port(OUT, "k", "i", "l", "m")
    t.extra_red()
    return t.build(GadgetKind.CHOICE, Backend.TRIANGULAR)


def _wire(kind: GadgetKind, backend: Backend) -> GadgetTemplate:
    if kind == GadgetKind.WIRE_EVEN:
        coords = {
            "a": (0, 0), "b": (1, 0), "c": (2, 0), "d": (3, 0),
            "e": (4, 0), "f": (5, 0), "g": (6, 0),
            "h": (1, 1), "i": (2, 1), "j": (3, 1), "k": (4, 1), "l": (5, 1),
        }
        internals = [("c", "i", "a"), ("c", "d", "b"), ("d", "j", "c"),
                     ("d", "e", "d"), ("e", "k", "e")]
        out = ("f", "e", "g", "l")
    else:
        coords = {
            "a": (0, 0), "b": (1, 0), "c": (2, 0), "d": (3, 0),
            "e": (4, 0), "f": (5, 0), "g": (6, 0), "h": (7, 0),
            "i": (1, 1), "j": (4, 1), "k": (5, 1), "l": (6, 1),
        }
        internals = [("d", "c", "a"), ("d", "e", "b"), ("e", "j", "c"),
                     ("e", "f", "d"), ("f", "k", "e")]
        out = ("g", "f", "h", "l")
    t = _TileBuilder(_LATTICE_OF[backend])
    for name, coord in coords.items():
        t.v(name, coord)
    top_in = "h" if kind == GadgetKind.WIRE_EVEN else "i"
    t.port(IN, "b", "a", "c", top_in)
    for u, v, label in internals:
        t.blue(u, v, label)
    t.port(OUT, *out, i_label="f", a_label="g")
    t.extra_red()
    return t.build(kind, backend)


_TEMPLATES = {
    (GadgetKind.INTERFACE, Backend.GENERAL): _interface,
    (GadgetKind.INTERFACE, Backend.CARTESIAN): _interface,
    (GadgetKind.INTERFACE, Backend.TRIANGULAR): _interface,
    (GadgetKind.GOAL, Backend.GENERAL): _goal,
    (GadgetKind.GOAL, Backend.CARTESIAN): _goal,
    (GadgetKind.GOAL, Backend.TRIANGULAR): _goal,
    (GadgetKind.VARIABLE, Backend.GENERAL): _variable,
    (GadgetKind.VARIABLE, Backend.CARTESIAN): _variable,
    (GadgetKind.VARIABLE, Backend.TRIANGULAR): _variable,
    (GadgetKind.AND, Backend.GENERAL): _and,
    (GadgetKind.AND, Backend.CARTESIAN): _and,
    (GadgetKind.AND, Backend.TRIANGULAR): _and,
    (GadgetKind.OR, Backend.GENERAL): lambda _: _or_general(),
    (GadgetKind.OR, Backend.CARTESIAN): lambda _: _or_cartesian(),
    (GadgetKind.OR, Backend.TRIANGULAR): lambda _: _or_triangular(),
    (GadgetKind.FANOUT, Backend.GENERAL): _fanout,
    (GadgetKind.FANOUT, Backend.CARTESIAN): _fanout,
    (GadgetKind.FANOUT, Backend.TRIANGULAR): _fanout,
    (GadgetKind.CHOICE, Backend.GENERAL): lambda _: _choice_general(),
    (GadgetKind.CHOICE, Backend.CARTESIAN): lambda _: _choice_cartesian(),
    (GadgetKind.CHOICE, Backend.TRIANGULAR): lambda _: _choice_triangular(),
    (GadgetKind.WIRE_EVEN, Backend.CARTESIAN): lambda b: _wire(GadgetKind.WIRE_EVEN, b),
    (GadgetKind.WIRE_EVEN, Backend.TRIANGULAR): lambda b: _wire(GadgetKind.WIRE_EVEN, b),
    (GadgetKind.WIRE_ODD, Backend.CARTESIAN): lambda b: _wire(GadgetKind.WIRE_ODD, b),
    (GadgetKind.WIRE_ODD, Backend.TRIANGULAR): lambda b: _wire(GadgetKind.WIRE_ODD, b),
}


@lru_cache(maxsize=None)
def gadget_template(kind: GadgetKind, backend: Backend) -> GadgetTemplate:
    """The template for (kind, backend), transcribed from its source figure."""
    try:
        factory = _TEMPLATES[(kind, backend)]
    except KeyError:
        raise UndefinedTemplate(kind.value, backend.value) from None
    return factory(backend)


def make_wire(parity: str, backend: Backend) -> GadgetTemplate:
    """Even- or odd-length wire; the two shift port alignment by 4 or 5 columns."""
    kind = GadgetKind.WIRE_EVEN if parity == "even" else GadgetKind.WIRE_ODD
    return gadget_template(kind, backend)


def defined_pairs() -> list[tuple[GadgetKind, Backend]]:
    return sorted(_TEMPLATES, key=lambda kb: (kb[0].value, kb[1].value))


def all_templates() -> list[GadgetTemplate]:
    return [gadget_template(kind, backend) for kind, backend in defined_pairs()]
