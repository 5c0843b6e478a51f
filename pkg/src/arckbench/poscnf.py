"""The positive-CNF variable-claiming game.

Players True and False alternately claim unassigned variables, each setting
their own truth value; once everything is assigned the formula's value names
the winner.  Formulas are negation-free, so claiming the opponent's value is
dominated and excluded from the default move set (a permissive mode keeps it
available for the dominance check).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .errors import ParseError


class TFPlayer(str, Enum):
    TRUE = "true"
    FALSE = "false"

    def opponent(self) -> "TFPlayer":
        return TFPlayer.FALSE if self is TFPlayer.TRUE else TFPlayer.TRUE

    @property
    def value_bit(self) -> bool:
        return self is TFPlayer.TRUE


class NegativeLiteral(ParseError):
    pass


class EmptyClause(ParseError):
    pass


class AlreadyAssigned(ValueError):
    def __init__(self, variable):
        self.variable = variable
        super().__init__(f"variable {variable} is already assigned")


class Incomplete(ValueError):
    pass


@dataclass(frozen=True)
class PosCNFFormula:
    n: int
    clauses: tuple[tuple[int, ...], ...]  # 1-based variable ids


@dataclass(frozen=True)
class PosCNFGame:
    formula: PosCNFFormula
    assignment: tuple[bool | None, ...]
    to_move: TFPlayer


def new_game(formula: PosCNFFormula, to_move: TFPlayer = TFPlayer.TRUE) -> PosCNFGame:
    return PosCNFGame(formula, (None,) * formula.n, to_move)


def parse_formula(text: str) -> PosCNFFormula:
    """Parse the positive-DIMACS format: 'p poscnf n m' then m zero-terminated clauses."""
    n = None
    m = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "poscnf":
                raise ParseError("expected header 'p poscnf <vars> <clauses>'", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer counts in header", lineno)
            continue
        if n is None:
            raise ParseError("clause before 'p poscnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad token {tok!r}", lineno)
            if lit < 0:
                raise NegativeLiteral(f"negative literal {lit}", lineno)
            if lit == 0:
                if not current:
                    raise EmptyClause("empty clause", lineno)
                clauses.append(tuple(current))
                current = []
            else:
                if lit > n:
                    raise ParseError(f"literal {lit} out of range 1..{n}", lineno)
                current.append(lit)
    if n is None:
        raise ParseError("missing 'p poscnf' header")
    if current:
        raise ParseError("last clause not terminated by 0")
    if len(clauses) != m:
        raise ParseError(f"header declared {m} clauses, found {len(clauses)}")
    return PosCNFFormula(n, tuple(clauses))


def format_formula(formula: PosCNFFormula) -> str:
    lines = [f"p poscnf {formula.n} {len(formula.clauses)}"]
    for clause in formula.clauses:
        lines.append(" ".join(map(str, clause)) + " 0")
    return "\n".join(lines) + "\n"


def apply_assignment(game: PosCNFGame, variable: int, value: bool | None = None) -> PosCNFGame:
    """Claim an unassigned variable for the mover (own value unless overridden)."""
    idx = variable - 1
    if not 0 <= idx < game.formula.n:
        raise KeyError(variable)
    if game.assignment[idx] is not None:
        raise AlreadyAssigned(variable)
    if value is None:
        value = game.to_move.value_bit
    assignment = tuple(
        value if i == idx else a for i, a in enumerate(game.assignment)
    )
    return PosCNFGame(game.formula, assignment, game.to_move.opponent())


def evaluate(formula: PosCNFFormula, assignment) -> bool:
    """Conjunction over clauses of disjunction over members; needs no Unassigned."""
    if any(a is None for a in assignment):
        raise Incomplete("assignment has unassigned variables")
    return all(any(assignment[v - 1] for v in clause) for clause in formula.clauses)


@dataclass(frozen=True)
class PosCNFSolveResult:
    winner: TFPlayer
    principal_variable: int | None


def solve_poscnf(game: PosCNFGame, permissive: bool = False) -> PosCNFSolveResult:
    """Minimax winner; lowest-variable tie-break.

    With ``permissive`` each turn may also assign the opponent's value; by the
    positivity of the formula this never changes the winner.
    """
    memo: dict = {}

    def winner_of(assignment, player: TFPlayer) -> TFPlayer:
        if all(a is not None for a in assignment):
            return TFPlayer.TRUE if evaluate(game.formula, assignment) else TFPlayer.FALSE
        key = (assignment, player)
        hit = memo.get(key)
        if hit is not None:
            return hit
        values = (player.value_bit, not player.value_bit) if permissive else (player.value_bit,)
        result = player.opponent()
        for idx in range(len(assignment)):
            if assignment[idx] is not None:
                continue
            for val in values:
                child = tuple(
                    val if i == idx else a for i, a in enumerate(assignment)
                )
                if winner_of(child, player.opponent()) == player:
                    result = player
                    break
            if result == player:
                break
        memo[key] = result
        return result

    win = winner_of(game.assignment, game.to_move)
    principal = None
    if any(a is None for a in game.assignment):
        for idx in range(game.formula.n):
            if game.assignment[idx] is not None:
                continue
            child = tuple(
                game.to_move.value_bit if i == idx else a
                for i, a in enumerate(game.assignment)
            )
            if winner_of(child, game.to_move.opponent()) == win:
                principal = idx + 1
                break
        if principal is None:
            principal = next(
                i + 1 for i, a in enumerate(game.assignment) if a is None
            )
    return PosCNFSolveResult(win, principal)


def game_payload(game: PosCNFGame) -> dict:
    return {
        "n": game.formula.n,
        "clauses": [list(c) for c in game.formula.clauses],
        "assignment": [a for a in game.assignment],
        "to_move": game.to_move.value,
    }


def game_from_payload(payload) -> PosCNFGame:
    try:
        formula = PosCNFFormula(
            int(payload["n"]), tuple(tuple(map(int, c)) for c in payload["clauses"])
        )
        assignment = tuple(
            None if a is None else bool(a) for a in payload["assignment"]
        )
        to_move = TFPlayer(payload["to_move"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad game payload: {exc}") from exc
    if len(assignment) != formula.n:
        raise ParseError("assignment length does not match variable count")
    return PosCNFGame(formula, assignment, to_move)


def encode_game(game: PosCNFGame) -> str:
    return json.dumps(game_payload(game), indent=2)
