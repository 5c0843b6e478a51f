"""Bounded two-player constraint logic: rules, validation, exact solving.

A position is a digraph of blue/red arcs of weight 1 or 2; a turn reverses an
unflipped arc of the mover's colour, and each arc flips at most once.  A
reversal is legal when the vertex losing the arc keeps in-weight at least 2;
degree-one vertices are loose arc ends and are never constrained.  Flipping
your own goal arc wins immediately.  A player with no legal flip at the start
of their turn ends the game: a draw under the standard rules, a Red win under
builder-blocker, a loss under normal play, a win under misere play.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum

from .errors import BudgetExceeded, IllegalFlip, ParseError
from .arck import Player

DEFAULT_NODE_BUDGET = 50_000_000


class CLColour(str, Enum):
    BLUE = "blue"
    RED = "red"


class CLVariant(str, Enum):
    STANDARD = "standard"
    BUILDER_BLOCKER = "bbb2cl"
    NORMAL_PLAY = "npb2cl"
    MISERE_PLAY = "mpb2cl"


class CLOutcome(str, Enum):
    BLUE_WIN = "blue"
    RED_WIN = "red"
    DRAW = "draw"


class VertexKind(str, Enum):
    AND = "and"
    OR = "or"
    FANOUT = "fanout"
    CHOICE = "choice"
    VARIABLE = "variable"
    BLUE_TO_RED = "blue_to_red"
    RED_OR = "red_or"
    OTHER = "other"


@dataclass(frozen=True)
class CLEdge:
    id: int
    tail: int
    head: int
    colour: CLColour
    weight: int
    flipped: bool = False
    goal_for: CLColour | None = None

    def current(self) -> tuple[int, int]:
        """Current (tail, head) given the flipped flag."""
        return (self.head, self.tail) if self.flipped else (self.tail, self.head)


@dataclass(frozen=True)
class CLInstance:
    edges: tuple[CLEdge, ...]
    variant: CLVariant
    to_move: Player

    def vertices(self) -> list[int]:
        seen = set()
        for e in self.edges:
            seen.add(e.tail)
            seen.add(e.head)
        return sorted(seen)

    def edge(self, eid: int) -> CLEdge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def in_weight(self, vertex: int) -> int:
        return sum(e.weight for e in self.edges if e.current()[1] == vertex)

    def degree(self, vertex: int) -> int:
        return sum(1 for e in self.edges if vertex in (e.tail, e.head))


@dataclass(frozen=True)
class ValidationReport:
    in_weight_violations: tuple[tuple[int, int], ...]  # (vertex, in-weight)
    goal_violations: tuple[str, ...]
    loose_ends: tuple[int, ...]  # degree-one vertices, reported informationally

    @property
    def ok(self) -> bool:
        return not self.in_weight_violations and not self.goal_violations


def validate_instance(inst: CLInstance) -> ValidationReport:
    """Report vertices with initial in-weight below 2 and goal-count problems.

    Degree-one vertices are loose arc ends: listed separately, not counted as
    violations, since the in-weight condition only ever constrains the vertex
    an arc is being flipped away from.
    """
    bad = []
    loose = []
    for v in inst.vertices():
        if inst.degree(v) == 1:
            loose.append(v)
            continue
        w = inst.in_weight(v)
        if w < 2:
            bad.append((v, w))
    goals_blue = sum(1 for e in inst.edges if e.goal_for == CLColour.BLUE)
    goals_red = sum(1 for e in inst.edges if e.goal_for == CLColour.RED)
    expect = {
        CLVariant.STANDARD: (1, 1),
        CLVariant.BUILDER_BLOCKER: (1, 0),
        CLVariant.NORMAL_PLAY: (0, 0),
        CLVariant.MISERE_PLAY: (0, 0),
    }[inst.variant]
    goal_violations = []
    if (goals_blue, goals_red) != expect:
        goal_violations.append(
            f"variant {inst.variant.value} expects {expect[0]} blue / "
            f"{expect[1]} red goals, found {goals_blue} / {goals_red}"
        )
    for e in inst.edges:
        if e.goal_for is not None and e.goal_for.value != e.colour.value:
            goal_violations.append(
                f"goal edge {e.id} is {e.colour.value} but marked for {e.goal_for.value}"
            )
    return ValidationReport(tuple(bad), tuple(goal_violations), tuple(loose))


def classify_vertex(inst: CLInstance, vertex: int) -> VertexKind:
    """Classify by the incident colours, weights, and initial orientations."""
    pattern = []
    for e in inst.edges:
        if vertex not in (e.tail, e.head):
            continue
        direction = "in" if e.head == vertex else "out"  # initial orientation
        pattern.append((e.colour.value, e.weight, direction))
    sig = tuple(sorted(pattern))
    table = {
        (("blue", 1, "out"), ("blue", 1, "out"), ("blue", 2, "in")): VertexKind.AND,
        (("blue", 2, "in"), ("blue", 2, "out"), ("blue", 2, "out")): VertexKind.OR,
        (("blue", 1, "in"), ("blue", 1, "in"), ("blue", 1, "out")): VertexKind.CHOICE,
        (("blue", 1, "in"), ("blue", 1, "in"), ("blue", 2, "out")): VertexKind.FANOUT,
        (("blue", 2, "in"), ("red", 2, "in")): VertexKind.VARIABLE,
        (("blue", 2, "out"), ("red", 2, "in")): VertexKind.BLUE_TO_RED,
        (("red", 2, "in"), ("red", 2, "out"), ("red", 2, "out")): VertexKind.RED_OR,
    }
    return table.get(sig, VertexKind.OTHER)


def legal_flips(inst: CLInstance) -> list[int]:
    """Unflipped own-colour arcs whose reversal keeps the losing head at >= 2."""
    out = []
    in_weight = {}
    for e in inst.edges:
        head = e.current()[1]
        in_weight[head] = in_weight.get(head, 0) + e.weight
    for e in inst.edges:
        if e.flipped or e.colour.value != inst.to_move.value:
            continue
        head = e.current()[1]
        if in_weight.get(head, 0) - e.weight >= 2:
            out.append(e.id)
    return sorted(out)


def _stuck_outcome(inst: CLInstance) -> CLOutcome | None:
    """Terminal outcome if the player to move has no legal flip."""
    if legal_flips(inst):
        return None
    if inst.variant == CLVariant.STANDARD:
        return CLOutcome.DRAW
    if inst.variant == CLVariant.BUILDER_BLOCKER:
        return CLOutcome.RED_WIN
    loser_stuck = inst.variant == CLVariant.NORMAL_PLAY
    stuck_player = inst.to_move
    winner = stuck_player.opponent() if loser_stuck else stuck_player
    return CLOutcome.BLUE_WIN if winner == Player.BLUE else CLOutcome.RED_WIN


def apply_flip(inst: CLInstance, edge_id: int) -> tuple[CLInstance, CLOutcome | None]:
    """Reverse the arc, pass the turn, and report any terminal outcome.

    A flip of the mover's own goal arc ends the game at once; otherwise the
    game ends if the new mover starts their turn with no legal flip.
    """
    if edge_id not in legal_flips(inst):
        e = next((e for e in inst.edges if e.id == edge_id), None)
        if e is None:
            reason = "absent"
        elif e.flipped:
            reason = "already flipped"
        elif e.colour.value != inst.to_move.value:
            reason = "wrong colour"
        else:
            reason = "in-weight condition"
        raise IllegalFlip(edge_id, reason)
    mover = inst.to_move
    edges = tuple(
        replace(e, flipped=True) if e.id == edge_id else e for e in inst.edges
    )
    nxt = CLInstance(edges, inst.variant, mover.opponent())
    flipped_edge = inst.edge(edge_id)
    if flipped_edge.goal_for is not None and flipped_edge.goal_for.value == mover.value:
        return nxt, CLOutcome.BLUE_WIN if mover == Player.BLUE else CLOutcome.RED_WIN
    return nxt, _stuck_outcome(nxt)


def _score(outcome: CLOutcome, player: Player) -> int:
    if outcome == CLOutcome.DRAW:
        return 1
    won = (outcome == CLOutcome.BLUE_WIN) == (player == Player.BLUE)
    return 2 if won else 0


@dataclass(frozen=True)
class CLSolveResult:
    outcome: CLOutcome
    principal_line: tuple[int, ...]
    nodes_searched: int


class _CLSolver:
    """Backward induction memoized on the flipped-arc set and mover.

    Disjoint two-arcs-into-a-middle components of a uniform colour supply one
    free flip each and are interchangeable, so the memo folds them to counts.
    """

    def __init__(self, inst: CLInstance, budget: int):
        self.inst = inst
        self.budget = budget
        self.nodes = 0
        self.memo: dict = {}
        # (colour, arc ids) per free two-arc component; see _find_free_components.
        self.components: list[tuple[CLColour, frozenset[int]]] = []
        self.pool_edges: set[int] = set()
        self._find_free_components()

    def _find_free_components(self):
        """Detect disjoint components of two same-coloured weight-2 arcs into a
        shared middle vertex.  Each supplies exactly one flip (the middle keeps
        in-weight 2 afterwards, freezing the partner arc)."""
        by_vertex: dict[int, list[CLEdge]] = {}
        for e in self.inst.edges:
            by_vertex.setdefault(e.tail, []).append(e)
            by_vertex.setdefault(e.head, []).append(e)
        seen = set()
        for e in self.inst.edges:
            if e.id in seen or e.tail == e.head:
                continue
            mid = e.head
            arcs = by_vertex.get(mid, [])
            if len(arcs) != 2:
                continue
            a, b = arcs
            if a.id == b.id or {a.head, b.head} != {mid}:
                continue
            if a.flipped or b.flipped or a.goal_for or b.goal_for:
                continue
            if a.colour != b.colour or a.weight != 2 or b.weight != 2:
                continue
            if len(by_vertex.get(a.tail, [])) != 1 or len(by_vertex.get(b.tail, [])) != 1:
                continue
            seen.update((a.id, b.id))
            self.components.append((a.colour, frozenset((a.id, b.id))))
            self.pool_edges.update((a.id, b.id))

    def _key(self, flipped: frozenset, player: Player):
        fresh = {CLColour.BLUE: 0, CLColour.RED: 0}
        for colour, arcs in self.components:
            if not (arcs & flipped):
                fresh[colour] += 1
        core = frozenset(f for f in flipped if f not in self.pool_edges)
        return (core, fresh[CLColour.BLUE], fresh[CLColour.RED], player)

    def best(self, inst: CLInstance, flipped: frozenset) -> CLOutcome:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.budget)
        key = self._key(flipped, inst.to_move)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        result = self._search(inst, flipped)
        self.memo[key] = result
        return result

    def _search(self, inst: CLInstance, flipped: frozenset) -> CLOutcome:
        moves = legal_flips(inst)
        if not moves:
            return _stuck_outcome(inst)
        player = inst.to_move
        best_outcome = None
        pool_done = set()
        for eid in moves:
            if eid in self.pool_edges:
                # All fresh same-coloured components are interchangeable; one
                # representative flip suffices (spent ones are never legal).
                colour = inst.edge(eid).colour
                if colour in pool_done:
                    continue
                pool_done.add(colour)
            nxt, terminal = apply_flip(inst, eid)
            outcome = terminal if terminal is not None else self.best(nxt, flipped | {eid})
            if best_outcome is None or _score(outcome, player) > _score(best_outcome, player):
                best_outcome = outcome
            if _score(best_outcome, player) == 2:
                break
        return best_outcome


def solve_cl(inst: CLInstance, node_budget: int = DEFAULT_NODE_BUDGET) -> CLSolveResult:
    """Outcome under optimal play plus a principal line (lowest-id tie-break)."""
    solver = _CLSolver(inst, node_budget)
    initial = _stuck_outcome(inst)
    if initial is not None:
        return CLSolveResult(initial, (), solver.nodes)
    outcome = solver.best(inst, frozenset(
        e.id for e in inst.edges if e.flipped
    ))

    line = []
    cur = inst
    flipped = frozenset(e.id for e in inst.edges if e.flipped)
    while True:
        moves = legal_flips(cur)
        if not moves:
            break
        chosen = None
        for eid in moves:
            nxt, terminal = apply_flip(cur, eid)
            value = terminal if terminal is not None else solver.best(nxt, flipped | {eid})
            if value == outcome:
                chosen = (eid, nxt, terminal)
                break
        if chosen is None:  # defensive; outcome is always achievable
            break
        line.append(chosen[0])
        flipped = flipped | {chosen[0]}
        if chosen[2] is not None:
            break
        cur = chosen[1]
    return CLSolveResult(outcome, tuple(line), solver.nodes)


def encode_instance(inst: CLInstance) -> str:
    payload = {
        "variant": inst.variant.value,
        "to_move": inst.to_move.value,
        "edges": [
            {
                "id": e.id,
                "tail": e.tail,
                "head": e.head,
                "colour": e.colour.value,
                "weight": e.weight,
                "flipped": e.flipped,
                "goal_for": e.goal_for.value if e.goal_for else None,
            }
            for e in inst.edges
        ],
    }
    return json.dumps(payload, indent=2)


def instance_from_payload(payload) -> CLInstance:
    try:
        edges = tuple(
            CLEdge(
                int(e["id"]), int(e["tail"]), int(e["head"]),
                CLColour(e["colour"]), int(e["weight"]),
                bool(e.get("flipped", False)),
                CLColour(e["goal_for"]) if e.get("goal_for") else None,
            )
            for e in payload["edges"]
        )
        variant = CLVariant(payload["variant"])
        to_move = Player(payload["to_move"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad constraint-logic payload: {exc}") from exc
    ids = [e.id for e in edges]
    if len(ids) != len(set(ids)):
        raise ParseError("duplicate edge ids in constraint-logic payload")
    for e in edges:
        if e.weight not in (1, 2):
            raise ParseError(f"edge {e.id} has weight {e.weight}, expected 1 or 2")
    return CLInstance(edges, variant, to_move)


def decode_instance(text: str) -> CLInstance:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    return instance_from_payload(payload)


def instance_to_dot(inst: CLInstance, name: str = "cl") -> str:
    """DOT export; weight-2 arcs get a doubled arrowhead."""
    lines = [f"digraph {name} {{"]
    for e in inst.edges:
        tail, head = e.current()
        attrs = [f"color={e.colour.value}"]
        if e.weight == 2:
            attrs.append("arrowhead=normalnormal")
        label_bits = []
        if e.goal_for:
            label_bits.append(f"{e.goal_for.value} goal")
        if e.flipped:
            label_bits.append("flipped")
        if label_bits:
            attrs.append(f'label="{", ".join(label_bits)}"')
        lines.append(f"  {tail} -> {head} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines)
