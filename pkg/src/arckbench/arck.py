"""Rules and exact solver for (Misere/Normal) Partizan Arc Kayles.

A move picks an edge of the mover's colour and deletes both endpoints along
with every incident edge.  Under normal play a player with no edge of their
colour loses; under misere play they win.  Either-coloured edges are legal
for both players, which recovers the impartial game.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .errors import BudgetExceeded, IllegalMove, ParseError
from .graphs import ColouredGraph, Colour, encode, graph_from_payload

DEFAULT_NODE_BUDGET = 50_000_000


class Player(str, Enum):
    BLUE = "blue"
    RED = "red"

    def opponent(self) -> "Player":
        return Player.RED if self is Player.BLUE else Player.BLUE


class Convention(str, Enum):
    NORMAL = "normal"
    MISERE = "misere"


@dataclass(frozen=True)
class ArcKPosition:
    graph: ColouredGraph
    convention: Convention
    to_move: Player


@dataclass(frozen=True)
class SolveResult:
    winner: Player
    principal_move: int | None
    nodes_searched: int


def _playable(colour: Colour, player: Player) -> bool:
    return colour == Colour.EITHER or colour.value == player.value


def legal_moves(pos: ArcKPosition) -> list[int]:
    """Edge ids the mover may pick, sorted ascending."""
    return sorted(
        e.id for e in pos.graph.edges if _playable(e.colour, pos.to_move)
    )


def apply_move(pos: ArcKPosition, edge_id: int) -> ArcKPosition:
    """Delete the picked edge's endpoints and all incident edges; pass the turn."""
    target = None
    for e in pos.graph.edges:
        if e.id == edge_id:
            target = e
            break
    if target is None:
        raise IllegalMove(edge_id, "absent")
    if not _playable(target.colour, pos.to_move):
        raise IllegalMove(edge_id, "wrong colour")
    dead = {target.u, target.v}
    vertices = tuple(v for v in pos.graph.vertices if v.id not in dead)
    edges = tuple(
        e for e in pos.graph.edges if e.u not in dead and e.v not in dead
    )
    graph = ColouredGraph(vertices, edges, pos.graph.lattice)
    return ArcKPosition(graph, pos.convention, pos.to_move.opponent())


class _Solver:
    """Memoized exact search over surviving-edge bitmasks.

    Components of at most two edges are interchangeable with any same-shaped,
    same-coloured component, so the memo key folds them into counts.  This is
    a strict game isomorphism and keeps compiled positions (many disjoint red
    edges) tractable.
    """

    def __init__(self, graph: ColouredGraph, convention: Convention, budget: int):
        self.convention = convention
        self.budget = budget
        self.nodes = 0
        self.edge_ids = sorted(e.id for e in graph.edges)
        self.index = {eid: i for i, eid in enumerate(self.edge_ids)}
        by_id = {e.id: e for e in graph.edges}
        self.colours = [by_id[eid].colour for eid in self.edge_ids]
        n = len(self.edge_ids)
        adj = [0] * n
        for i, eid in enumerate(self.edge_ids):
            a = by_id[eid]
            for j in range(i + 1, n):
                b = by_id[self.edge_ids[j]]
                if set(a.endpoints()) & set(b.endpoints()):
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        self.adj = adj
        self.kill = [(1 << i) | adj[i] for i in range(n)]
        self.full = (1 << n) - 1
        self.memo: dict = {}

    def _fold(self, mask: int):
        """Split mask into a core plus counts of 1- and 2-edge components."""
        counts: dict = {}
        core = mask
        reps: dict = {}
        rest = mask
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            rest ^= low
            nbrs = self.adj[i] & mask
            if nbrs == 0:
                key = ("1", self.colours[i].value)
            else:
                j = nbrs.bit_length() - 1
                if nbrs != (1 << j) or (self.adj[j] & mask) != (1 << i):
                    continue  # part of a larger component; stays in the core
                rest &= ~(1 << j)
                core &= ~(1 << j)
                key = ("2", tuple(sorted((self.colours[i].value, self.colours[j].value))))
            counts[key] = counts.get(key, 0) + 1
            core &= ~(1 << i)
            if key not in reps:
                reps[key] = i
        return core, counts, reps

    def _class_playable(self, key, player: Player) -> bool:
        # Playing any playable edge of a 1- or 2-edge component wipes the whole
        # component, so one representative move per class is exhaustive.
        if key[0] == "1":
            return _playable(Colour(key[1]), player)
        return any(_playable(Colour(c), player) for c in key[1])

    def win(self, mask: int, player: Player) -> bool:
        """True iff ``player`` to move wins on the surviving-edge set ``mask``."""
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.budget)
        core, counts, reps = self._fold(mask)
        key = (core, tuple(sorted(counts.items())), player)
        hit = self.memo.get(key)
        if hit is not None:
            return hit

        moves = []
        rest = core
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            rest ^= low
            if _playable(self.colours[i], player):
                moves.append(i)
        for ckey, rep in reps.items():
            if self._class_playable(ckey, player):
                moves.append(rep)

        if not moves:
            result = self.convention == Convention.MISERE
        else:
            result = False
            for i in sorted(moves):
                if not self.win(mask & ~self.kill[i], player.opponent()):
                    result = True
                    break
        self.memo[key] = result
        return result


def solve(pos: ArcKPosition, node_budget: int = DEFAULT_NODE_BUDGET) -> SolveResult:
    """Winner under optimal play, a principal move, and the node count.

    The principal move is the lowest-id winning edge for the mover, or the
    lowest-id legal edge when every move loses; absent iff there is no move.
    """
    solver = _Solver(pos.graph, pos.convention, node_budget)
    moves = legal_moves(pos)
    if not moves:
        winner = pos.to_move if pos.convention == Convention.MISERE else pos.to_move.opponent()
        return SolveResult(winner, None, solver.nodes)
    full = solver.full
    principal = None
    mover_wins = False
    for eid in moves:
        i = solver.index[eid]
        if not solver.win(full & ~solver.kill[i], pos.to_move.opponent()):
            principal = eid
            mover_wins = True
            break
    if principal is None:
        principal = moves[0]
    winner = pos.to_move if mover_wins else pos.to_move.opponent()
    return SolveResult(winner, principal, solver.nodes)


def best_move(pos: ArcKPosition, node_budget: int = DEFAULT_NODE_BUDGET) -> int | None:
    """Lowest-id move preserving the solve() winner; None iff no legal move."""
    return solve(pos, node_budget).principal_move


def encode_position(pos: ArcKPosition) -> str:
    payload = json.loads(encode(pos.graph))
    payload["convention"] = pos.convention.value
    payload["to_move"] = pos.to_move.value
    return json.dumps(payload, indent=2)


def decode_position(text: str) -> ArcKPosition:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    return position_from_payload(payload)


def position_from_payload(payload) -> ArcKPosition:
    try:
        convention = Convention(payload["convention"])
        to_move = Player(payload["to_move"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad position payload: {exc}") from exc
    return ArcKPosition(graph_from_payload(payload), convention, to_move)


def position_payload(pos: ArcKPosition) -> dict:
    return json.loads(encode_position(pos))
