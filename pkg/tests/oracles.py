"""Plain-recursion reference solvers and random generators for the tests.

These deliberately share no search machinery with the engines: no memo
tables, no component folding, no move ordering beyond raw recursion.
"""

import random

from arckbench.arck import (
    ArcKPosition,
    Convention,
    Player,
    apply_move,
    legal_moves,
)
from arckbench.cl import (
    CLColour,
    CLEdge,
    CLInstance,
    CLOutcome,
    CLVariant,
    apply_flip,
    legal_flips,
    _stuck_outcome,
)
from arckbench.graphs import ColouredGraph, Colour, Edge, Vertex
from arckbench.poscnf import PosCNFFormula, TFPlayer, evaluate


def arck_oracle_winner(pos: ArcKPosition) -> Player:
    """Unmemoized exhaustive game-tree search."""
    moves = legal_moves(pos)
    if not moves:
        if pos.convention == Convention.MISERE:
            return pos.to_move
        return pos.to_move.opponent()
    for m in moves:
        if arck_oracle_winner(apply_move(pos, m)) == pos.to_move:
            return pos.to_move
    return pos.to_move.opponent()


def random_position(rng: random.Random, max_edges: int = 8) -> ArcKPosition:
    n = rng.randint(2, 2 * max_edges)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    m = rng.randint(0, min(max_edges, len(pairs)))
    colours = [Colour.BLUE, Colour.RED, Colour.EITHER]
    edges = tuple(
        Edge(i, u, v, rng.choice(colours)) for i, (u, v) in enumerate(pairs[:m])
    )
    used = {x for e in edges for x in e.endpoints()}
    vertices = tuple(Vertex(i) for i in sorted(used | {0, 1}))
    graph = ColouredGraph(vertices, edges)
    return ArcKPosition(
        graph,
        rng.choice([Convention.NORMAL, Convention.MISERE]),
        rng.choice([Player.BLUE, Player.RED]),
    )


def cl_oracle_outcome(inst: CLInstance) -> CLOutcome:
    """Unmemoized backward induction with the Win > Draw > Loss preference."""
    stuck = _stuck_outcome(inst)
    if stuck is not None:
        return stuck
    player = inst.to_move

    def score(outcome: CLOutcome) -> int:
        if outcome == CLOutcome.DRAW:
            return 1
        won = (outcome == CLOutcome.BLUE_WIN) == (player == Player.BLUE)
        return 2 if won else 0

    best = None
    for eid in legal_flips(inst):
        nxt, terminal = apply_flip(inst, eid)
        outcome = terminal if terminal is not None else cl_oracle_outcome(nxt)
        if best is None or score(outcome) > score(best):
            best = outcome
    return best


def random_cl_instance(rng: random.Random, max_edges: int = 10) -> CLInstance:
    variant = rng.choice(list(CLVariant))
    n_vertices = rng.randint(2, 6)
    m = rng.randint(1, max_edges)
    edges = []
    for eid in range(m):
        tail = rng.randrange(n_vertices)
        head = rng.randrange(n_vertices)
        while head == tail:
            head = rng.randrange(n_vertices)
        colour = rng.choice([CLColour.BLUE, CLColour.RED])
        weight = rng.choice([1, 2])
        edges.append(CLEdge(eid, tail, head, colour, weight))
    # goal markers per variant, retinting the chosen edges to match their owner
    def set_goal(idx: int, colour: CLColour):
        e = edges[idx]
        edges[idx] = CLEdge(e.id, e.tail, e.head, colour, e.weight, False, colour)

    if variant == CLVariant.STANDARD:
        blue_goal = rng.randrange(m)
        set_goal(blue_goal, CLColour.BLUE)
        if m > 1:
            red_goal = rng.choice([i for i in range(m) if i != blue_goal])
            set_goal(red_goal, CLColour.RED)
        else:
            edges.append(CLEdge(m, 0, 1, CLColour.RED, 2, False, CLColour.RED))
    elif variant == CLVariant.BUILDER_BLOCKER:
        set_goal(rng.randrange(m), CLColour.BLUE)
    return CLInstance(
        tuple(edges), variant, rng.choice([Player.BLUE, Player.RED])
    )


def poscnf_oracle_winner(formula: PosCNFFormula, assignment, player: TFPlayer) -> TFPlayer:
    """Raw recursion over claim orders; no memo, no pruning shortcuts."""
    if all(a is not None for a in assignment):
        return TFPlayer.TRUE if evaluate(formula, assignment) else TFPlayer.FALSE
    results = []
    for idx in range(len(assignment)):
        if assignment[idx] is not None:
            continue
        child = tuple(
            player.value_bit if i == idx else a for i, a in enumerate(assignment)
        )
        results.append(poscnf_oracle_winner(formula, child, player.opponent()))
    return player if player in results else player.opponent()


def all_formulas(max_vars: int, max_clauses: int):
    """Every formula over n <= max_vars with up to max_clauses ordered clauses."""
    from itertools import combinations, product

    for n in range(1, max_vars + 1):
        members = list(range(1, n + 1))
        subsets = [
            c for size in range(1, n + 1) for c in combinations(members, size)
        ]
        for m in range(1, max_clauses + 1):
            for combo in product(subsets, repeat=m):
                yield PosCNFFormula(n, tuple(combo))
