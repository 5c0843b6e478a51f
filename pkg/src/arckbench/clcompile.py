"""Compile PosCNF formulas to standard constraint-logic instances, plus the
builder-blocker / normal-play / misere-play transforms.

The emitted circuit follows the activation discipline of the basis vertices:
an arc may flip away from a vertex only while that vertex keeps in-weight 2,
so signals propagate from claimed variables up through fanout, or-, and
and-layers to the blue goal arc.  Where two different arc weights meet, the
construction inserts small connector vertices (weight links and stub-boosted
boosters); these are deliberate plumbing, recorded per vertex in the trace.

Red's move supply is granted by disjoint two-arc components (two red weight-2
arcs into a shared middle vertex).  Each supplies exactly one flip: after one
arc flips away the middle retains in-weight 2, freezing the partner.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .arck import Player
from .cl import (
    CLColour,
    CLEdge,
    CLInstance,
    CLVariant,
    VertexKind,
    apply_flip as cl_apply_flip,
    classify_vertex,
    legal_flips as cl_legal_flips,
)
from .errors import NotACompiledInstance
from .poscnf import PosCNFFormula

BLUE = CLColour.BLUE
RED = CLColour.RED


@dataclass(frozen=True)
class CompilationParams:
    k: int                      # extra Red plays granted by free components
    blue_circuit_moves: int     # blue arcs in the circuitry bucket
    variable_count: int


@dataclass
class CLTrace:
    """Provenance buckets; every instance edge lands in exactly one bucket."""

    variable_vertex: dict[int, int] = field(default_factory=dict)   # var -> V
    clause_root: dict[int, int] = field(default_factory=dict)       # clause -> root vertex
    spine_vertices: list[int] = field(default_factory=list)         # and-centres
    vertex_role: dict[int, str] = field(default_factory=dict)

    variable_edges: list[int] = field(default_factory=list)
    circuit_edges: list[int] = field(default_factory=list)
    goal_edges: list[int] = field(default_factory=list)             # blue goal arc
    red_goal_edges: list[int] = field(default_factory=list)         # red goal component
    red_components: list[list[int]] = field(default_factory=list)
    chain_edges: list[int] = field(default_factory=list)            # variant tails
    free_edges: list[list[int]] = field(default_factory=list)       # blue move supply
    regulator_edges: list[int] = field(default_factory=list)        # odd-parity tempo pair

    def buckets(self) -> dict[str, list[int]]:
        flat_red = [eid for comp in self.red_components for eid in comp]
        flat_free = [eid for comp in self.free_edges for eid in comp]
        return {
            "variables": list(self.variable_edges),
            "circuit": list(self.circuit_edges),
            "goal": list(self.goal_edges),
            "red_goal": list(self.red_goal_edges),
            "red_components": flat_red,
            "chain": list(self.chain_edges),
            "free": flat_free,
            "regulator": list(self.regulator_edges),
        }

    def payload(self) -> dict:
        return {
            "variable_vertex": self.variable_vertex,
            "clause_root": self.clause_root,
            "spine_vertices": self.spine_vertices,
            "vertex_role": self.vertex_role,
            "buckets": self.buckets(),
            "red_components": self.red_components,
            "free_components": self.free_edges,
        }


class _Builder:
    def __init__(self):
        self.edges: list[CLEdge] = []
        self.next_vertex = 0
        self.trace = CLTrace()

    def vertex(self, role: str) -> int:
        v = self.next_vertex
        self.next_vertex += 1
        self.trace.vertex_role[v] = role
        return v

    def arc(self, tail: int, head: int, colour: CLColour, weight: int,
            bucket: list[int], goal_for: CLColour | None = None) -> int:
        eid = len(self.edges)
        self.edges.append(CLEdge(eid, tail, head, colour, weight, False, goal_for))
        bucket.append(eid)
        return eid


def _build_fanout(b: _Builder, hub: int, sinks: list[int]) -> None:
    """Wire a fanout hub so every sink gains weight 1 once the hub activates.

    ``sinks`` are booster vertices expecting a weight-1 arc toward the hub.
    Two sinks attach directly; more recurse through booster-plus-subhub pairs.
    """
    t = b.trace
    if len(sinks) == 2:
        for d in sinks:
            b.arc(d, hub, BLUE, 1, t.circuit_edges)
        return
    # left-leaning: first len-1 sinks behind a booster/sub-hub, last direct
    booster = b.vertex("booster")
    stub = b.vertex("stub")
    subhub = b.vertex("fanout_hub")
    b.arc(booster, hub, BLUE, 1, t.circuit_edges)
    b.arc(stub, booster, BLUE, 1, t.circuit_edges)
    b.arc(subhub, booster, BLUE, 2, t.circuit_edges)
    b.arc(sinks[-1], hub, BLUE, 1, t.circuit_edges)
    _build_fanout(b, subhub, sinks[:-1])


def compile_poscnf_to_b2cl(formula: PosCNFFormula):
    """Emit (standard instance, trace, params) for a positive formula.

    Layout: a bottom row of variable gadgets; per-clause or-trees over the
    variables (shared variables via fanout hubs feeding stub-boosted leaves);
    an and-spine joining clause roots into the blue goal arc; a red-goal
    component whose blue escape arc is Blue's forced last resort; and k free
    red components, with k at least the number of blue circuitry arcs.
    """
    b = _Builder()
    t = b.trace

    clauses = [tuple(dict.fromkeys(c)) for c in formula.clauses]
    occurrences: dict[int, int] = {v: 0 for v in range(1, formula.n + 1)}
    for clause in clauses:
        for v in clause:
            occurrences[v] += 1

    # leaf_nodes[(clause_index, var)] = vertex the clause tree points its arc at
    leaf_nodes: dict[tuple[int, int], int] = {}
    for var in range(1, formula.n + 1):
        centre = b.vertex(f"variable_{var}")
        t.variable_vertex[var] = centre
        red_tail = b.vertex("red_tail")
        occs = [(ci, var) for ci, clause in enumerate(clauses) if var in clause]
        if len(occs) <= 1:
            out = b.vertex("link")
            b.arc(out, centre, BLUE, 2, t.variable_edges)
            if occs:
                leaf_nodes[occs[0]] = out
        else:
            hub = b.vertex("fanout_hub")
            b.arc(hub, centre, BLUE, 2, t.variable_edges)
            sinks = []
            for occ in occs:
                booster = b.vertex("booster")
                stub = b.vertex("stub")
                b.arc(stub, booster, BLUE, 1, t.circuit_edges)
                sinks.append(booster)
                leaf_nodes[occ] = booster
            _build_fanout(b, hub, sinks)
        b.arc(red_tail, centre, RED, 2, t.variable_edges)

    # per-clause left-leaning or-trees; the root is where the arc from above lands
    for ci, clause in enumerate(clauses):
        members = [leaf_nodes[(ci, var)] for var in clause]
        root = members[0]
        for nxt in members[1:]:
            centre = b.vertex("or")
            b.arc(centre, root, BLUE, 2, t.circuit_edges)
            b.arc(centre, nxt, BLUE, 2, t.circuit_edges)
            root = centre
        t.clause_root[ci] = root

    # and-spine: left-leaning over clause roots, children behind weight links
    def attach_child(and_centre: int, child_root: int) -> None:
        connector = b.vertex("and_link")
        stub = b.vertex("stub")
        b.arc(and_centre, connector, BLUE, 1, t.circuit_edges)
        b.arc(stub, connector, BLUE, 1, t.circuit_edges)
        b.arc(connector, child_root, BLUE, 2, t.circuit_edges)

    goal_target = t.clause_root[0]
    for ci in range(1, len(clauses)):
        centre = b.vertex("and")
        t.spine_vertices.append(centre)
        attach_child(centre, goal_target)
        attach_child(centre, t.clause_root[ci])
        goal_target = centre

    goal_tail = b.vertex("blue_goal_tail")
    b.arc(goal_tail, goal_target, BLUE, 2, t.goal_edges, goal_for=BLUE)

    # Red goal component: the red goal arc is frozen until Blue plays one of
    # the parallel escape arcs, Blue's always-available move of last resort.
    red_goal_tail = b.vertex("red_goal_tail")
    junction = b.vertex("goal_junction")
    sink = b.vertex("goal_sink")
    b.arc(red_goal_tail, junction, RED, 2, t.red_goal_edges, goal_for=RED)
    b.arc(junction, sink, BLUE, 2, t.red_goal_edges)
    b.arc(junction, sink, BLUE, 2, t.red_goal_edges)

    count = sum(1 for eid in t.circuit_edges if b.edges[eid].colour == BLUE)
    k = max(2, count)
    for _ in range(k):
        _add_red_component(b)

    inst = CLInstance(tuple(b.edges), CLVariant.STANDARD, Player.BLUE)
    params = CompilationParams(k, count, formula.n)
    return inst, t, params


def _add_red_component(b: _Builder) -> None:
    a = b.vertex("free_tail")
    c = b.vertex("free_tail")
    mid = b.vertex("free_middle")
    comp = []
    e1 = b.arc(a, mid, RED, 2, comp)
    e2 = b.arc(c, mid, RED, 2, comp)
    b.trace.red_components.append([e1, e2])


def count_blue_circuit_moves(inst: CLInstance, trace: CLTrace) -> int:
    """Blue arcs in the circuitry bucket (not variables, goals, or free parts)."""
    _check_trace(inst, trace)
    by_id = {e.id: e for e in inst.edges}
    return sum(
        1 for eid in trace.circuit_edges
        if eid in by_id and by_id[eid].colour == BLUE
    )


def _check_trace(inst: CLInstance, trace) -> None:
    if not isinstance(trace, CLTrace):
        raise NotACompiledInstance("variant transforms require the compilation trace")
    traced = [eid for bucket in trace.buckets().values() for eid in bucket]
    if sorted(traced) != sorted(e.id for e in inst.edges):
        raise NotACompiledInstance("trace does not cover the instance's edges")


def _copy_trace(trace: CLTrace) -> CLTrace:
    return CLTrace(
        dict(trace.variable_vertex),
        dict(trace.clause_root),
        list(trace.spine_vertices),
        dict(trace.vertex_role),
        list(trace.variable_edges),
        list(trace.circuit_edges),
        list(trace.goal_edges),
        list(trace.red_goal_edges),
        [list(c) for c in trace.red_components],
        list(trace.chain_edges),
        [list(c) for c in trace.free_edges],
        list(trace.regulator_edges),
    )


def _renumber(edges: list[CLEdge], trace: CLTrace):
    """Re-id edges densely, rewriting every trace bucket consistently."""
    mapping = {e.id: i for i, e in enumerate(edges)}
    new_edges = tuple(replace(e, id=mapping[e.id]) for e in edges)

    def remap(seq):
        return [mapping[x] for x in seq]

    trace.variable_edges = remap(trace.variable_edges)
    trace.circuit_edges = remap(trace.circuit_edges)
    trace.goal_edges = remap(trace.goal_edges)
    trace.red_goal_edges = remap(trace.red_goal_edges)
    trace.red_components = [remap(c) for c in trace.red_components]
    trace.chain_edges = remap(trace.chain_edges)
    trace.free_edges = [remap(c) for c in trace.free_edges]
    trace.regulator_edges = remap(trace.regulator_edges)
    return new_edges


def to_builder_blocker(inst: CLInstance, trace: CLTrace, params: CompilationParams):
    """Drop the red-goal component and double the free red components."""
    _check_trace(inst, trace)
    if inst.variant != CLVariant.STANDARD:
        raise NotACompiledInstance("builder-blocker transform expects a standard instance")
    t = _copy_trace(trace)
    drop = set(t.red_goal_edges)
    t.red_goal_edges = []
    edges = [e for e in inst.edges if e.id not in drop]

    next_vertex = max(max(e.tail, e.head) for e in edges) + 1
    for _ in range(params.k):
        a, c, mid = next_vertex, next_vertex + 1, next_vertex + 2
        for v, role in ((a, "free_tail"), (c, "free_tail"), (mid, "free_middle")):
            t.vertex_role[v] = role
        comp = []
        for tail in (a, c):
            eid = max(e.id for e in edges) + 1 if edges else 0
            edges.append(CLEdge(eid, tail, mid, RED, 2))
            comp.append(eid)
        t.red_components.append(comp)
        next_vertex += 3

    new_edges = _renumber(edges, t)
    return CLInstance(new_edges, CLVariant.BUILDER_BLOCKER, inst.to_move), t, params


def _goal_arc(inst: CLInstance, trace: CLTrace) -> CLEdge:
    if len(trace.goal_edges) != 1:
        raise NotACompiledInstance("expected exactly one blue goal arc in the trace")
    return inst.edge(trace.goal_edges[0])


def _free_blue_component(edges, fresh, trace: CLTrace):
    a, c, mid = fresh("free_tail"), fresh("free_tail"), fresh("free_middle")
    comp = []
    for tail in (a, c):
        eid = max(e.id for e in edges) + 1
        edges.append(CLEdge(eid, tail, mid, BLUE, 2))
        comp.append(eid)
    trace.free_edges.append(comp)


def to_normal_play(inst: CLInstance, trace: CLTrace, params: CompilationParams):
    """Swap the blue goal arc for an or-chain worth 2k gated Blue flips.

    Chain links flip in order once the circuit head activates; the pendant
    arcs only exist to keep every chain vertex an Or and can never flip.
    One always-available single-flip blue component is added alongside: with
    no goal to race for, the win is decided purely by who runs out of flips,
    and this pass move repairs the claiming-parity tie that degenerate
    formulas (constant or unused variables) would otherwise hit.
    """
    _check_trace(inst, trace)
    if inst.variant != CLVariant.BUILDER_BLOCKER:
        raise NotACompiledInstance("normal-play transform expects a builder-blocker instance")
    t = _copy_trace(trace)
    goal = _goal_arc(inst, t)
    edges = [e for e in inst.edges if e.id != goal.id]
    t.goal_edges = []
    next_vertex = max(max(e.tail, e.head) for e in edges) + 1

    def fresh(role: str) -> int:
        nonlocal next_vertex
        v = next_vertex
        next_vertex += 1
        t.vertex_role[v] = role
        return v

    def add(tail, head, colour):
        eid = max(e.id for e in edges) + 1
        edges.append(CLEdge(eid, tail, head, colour, 2))
        t.chain_edges.append(eid)

    target = goal.head
    links = 2 * params.k
    prev = target
    for i in range(links - 1):
        c = fresh("chain_or")
        add(c, prev, BLUE)
        pendant = fresh("chain_pendant")
        add(c, pendant, BLUE)
        prev = c
    top = fresh("chain_top")
    add(top, prev, BLUE)

    _free_blue_component(edges, fresh, t)

    new_edges = _renumber(edges, t)
    return CLInstance(new_edges, CLVariant.NORMAL_PLAY, inst.to_move), t, params


def to_misere_play(inst: CLInstance, trace: CLTrace, params: CompilationParams):
    """Swap the blue goal arc for a blue-to-red tail opening 2k Red flips, and
    grant Blue a separate free supply of exactly 2k single-flip components.

    With an odd number of variables the claim phase hands one player a spare
    tempo, so a one-shot contested pair (one blue and one red arc into a
    shared centre; the first flip freezes the other) is appended to absorb
    it.  Whoever is otherwise out of moves is forced to spend it.
    """
    _check_trace(inst, trace)
    if inst.variant != CLVariant.BUILDER_BLOCKER:
        raise NotACompiledInstance("misere transform expects a builder-blocker instance")
    t = _copy_trace(trace)
    goal = _goal_arc(inst, t)
    edges = [e for e in inst.edges if e.id != goal.id]
    t.goal_edges = []
    next_vertex = max(max(e.tail, e.head) for e in edges) + 1

    def fresh(role: str) -> int:
        nonlocal next_vertex
        v = next_vertex
        next_vertex += 1
        t.vertex_role[v] = role
        return v

    def add(tail, head, colour, bucket):
        eid = max(e.id for e in edges) + 1
        edges.append(CLEdge(eid, tail, head, colour, 2))
        bucket.append(eid)

    target = goal.head
    link = fresh("chain_link")
    add(link, target, BLUE, t.chain_edges)
    converter = fresh("blue_to_red")
    add(converter, link, BLUE, t.chain_edges)

    prev = converter
    for i in range(2 * params.k - 1):
        c = fresh("chain_red_or")
        add(c, prev, RED, t.chain_edges)
        pendant = fresh("chain_pendant")
        add(c, pendant, RED, t.chain_edges)
        prev = c
    top = fresh("chain_top")
    add(top, prev, RED, t.chain_edges)

    for _ in range(2 * params.k):
        _free_blue_component(edges, fresh, t)

    if params.variable_count % 2 == 1:
        blue_tail = fresh("tempo_tail")
        red_tail = fresh("tempo_tail")
        centre = fresh("tempo_centre")
        add(blue_tail, centre, BLUE, t.regulator_edges)
        add(red_tail, centre, RED, t.regulator_edges)

    new_edges = _renumber(edges, t)
    return CLInstance(new_edges, CLVariant.MISERE_PLAY, inst.to_move), t, params


def _force_flip(inst: CLInstance, eid: int, player: Player) -> CLInstance:
    forced = CLInstance(inst.edges, inst.variant, player)
    nxt, _ = cl_apply_flip(forced, eid)
    return CLInstance(nxt.edges, inst.variant, inst.to_move)


def _activate_circuit(inst: CLInstance, trace: CLTrace) -> CLInstance:
    """Claim every variable for Blue and release the circuitry to saturation.

    Positivity guarantees the all-true assignment satisfies the formula, so
    the release wave always reaches the old goal head.  Stub arcs are left
    alone: flipping one early starves its connector below the release
    threshold.
    """
    stub_edges = {
        e.id for e in inst.edges
        if trace.vertex_role.get(e.tail) == "stub" and not e.flipped
    }
    work = set(trace.variable_edges) | set(trace.circuit_edges)
    cur = inst
    changed = True
    while changed:
        changed = False
        probe = CLInstance(cur.edges, cur.variant, Player.BLUE)
        for eid in cl_legal_flips(probe):
            if eid in work and eid not in stub_edges:
                cur = _force_flip(cur, eid, Player.BLUE)
                changed = True
                break
    return cur


def _count_chain_flips(inst: CLInstance, trace: CLTrace, colour: CLColour) -> tuple[int, CLInstance]:
    chain = set(trace.chain_edges)
    player = Player.BLUE if colour == BLUE else Player.RED
    cur = inst
    count = 0
    while True:
        probe = CLInstance(cur.edges, cur.variant, player)
        candidates = [
            eid for eid in cl_legal_flips(probe)
            if eid in chain and cur.edge(eid).colour == colour
        ]
        if not candidates:
            return count, cur
        cur = _force_flip(cur, candidates[0], player)
        count += 1


def variant_budget_report(inst: CLInstance, trace: CLTrace, params: CompilationParams) -> dict:
    """Count, by simulation, the flips each variant's tail machinery grants.

    For normal play: chain flips available before and after activation.  For
    misere play: additionally the red tail total, the free blue supply, and
    the reachable move totals compared by the misere argument (the red tail
    plus the red components left over once k of them have matched Blue's
    circuitry plays, against Blue's free supply).
    """
    _check_trace(inst, trace)
    k = params.k
    pre_blue, _ = _count_chain_flips(inst, trace, BLUE)
    pre_red, _ = _count_chain_flips(inst, trace, RED)
    activated = _activate_circuit(inst, trace)
    post_blue, after = _count_chain_flips(activated, trace, BLUE)
    post_red, _ = _count_chain_flips(after, trace, RED)
    report = {
        "k": k,
        "chain_blue_flips_before_activation": pre_blue,
        "chain_red_flips_before_activation": pre_red,
        "chain_blue_flips_after_activation": post_blue,
        "chain_red_flips_after_activation": post_red,
        "red_component_count": len(trace.red_components),
        "blue_free_components": len(trace.free_edges),
    }
    if inst.variant == CLVariant.MISERE_PLAY:
        red_remaining = len(trace.red_components) - k
        report["red_total_when_activated"] = post_red + red_remaining
        report["blue_free_total"] = len(trace.free_edges)
    return report


#: Non-basis vertex shapes the compiler emits on purpose.
DOCUMENTED_ROLES = {
    "link", "booster", "stub", "red_tail", "blue_goal_tail", "red_goal_tail",
    "goal_junction", "goal_sink", "free_tail", "free_middle", "chain_or",
    "chain_pendant", "chain_top", "chain_link", "and_link", "tempo_tail",
    "tempo_centre",
}

BASIS_KINDS = {
    VertexKind.AND, VertexKind.OR, VertexKind.FANOUT, VertexKind.CHOICE,
    VertexKind.VARIABLE, VertexKind.BLUE_TO_RED, VertexKind.RED_OR,
}


def vertex_pattern(inst: CLInstance, trace: CLTrace, vertex: int) -> str:
    """Basis kind or the documented plumbing role of an emitted vertex."""
    kind = classify_vertex(inst, vertex)
    if kind in BASIS_KINDS:
        return kind.value
    role = trace.vertex_role.get(vertex)
    if role in DOCUMENTED_ROLES:
        return role
    raise ValueError(f"vertex {vertex} has no basis kind or documented role")
