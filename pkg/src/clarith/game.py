"""Operational game semantics: legal moves, move application, adjudication.

A formula denotes a game between the machine (player "T") and the
environment (player "B").  Choice connectives are resolved by a move "0" or
"1" of the owning player; choice quantifiers by a move naming a binary
numeral; a move "i.m" plays m inside component i of a parallel connective;
blind quantifiers pass moves through unchanged, the quantifier staying put.

A run is a sequence of labeled moves.  An illegal run is lost by the player
who made the first illegal move; a legal finite run is won by the machine
iff the final formula's elementarization is true.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .evaluate import evaluate
from .interp import Interpretation, STANDARD
from .numerals import Numeral
from .syntax import (
    And, Const, Or, ChoiceAll, ChoiceAnd, ChoiceEx, ChoiceOr, Exists, ForAll,
    ATOMIC_TYPES, CHOICE_TYPES, Formula, OccPath,
    closure, elementarize, free_vars, substitute,
)

MACHINE = "T"
ENVIRONMENT = "B"
PLAYERS = (MACHINE, ENVIRONMENT)


def opponent(player: str) -> str:
    return ENVIRONMENT if player == MACHINE else MACHINE


@dataclass(frozen=True)
class LabMove:
    player: str
    move: str

    def __post_init__(self):
        if self.player not in PLAYERS:
            raise ValueError(f"unknown player {self.player!r}")

    def __str__(self):
        return f"{self.player}:{self.move}"


Run = tuple[LabMove, ...]


class IllegalMoveError(Exception):
    def __init__(self, labmove: LabMove, why: str):
        super().__init__(f"illegal move {labmove} ({why})")
        self.labmove = labmove
        self.offender = labmove.player
        self.why = why


@dataclass(frozen=True)
class GameState:
    formula: Formula
    valuation: dict[str, int] = field(default_factory=dict)
    interp: Interpretation = field(default_factory=lambda: STANDARD)

    def __hash__(self):  # valuation treated as immutable by convention
        return hash((self.formula, tuple(sorted(self.valuation.items()))))


def initial_state(formula: Formula, interp: Interpretation = STANDARD,
                  valuation: dict[str, int] | None = None) -> GameState:
    """Starting state; free variables without a valuation entry are bound by
    the choice-universal closure convention."""
    valuation = dict(valuation or {})
    if free_vars(formula) - set(valuation):
        formula = closure(
            substitute(formula, {x: Const.of(v) for x, v in valuation.items()
                                 if x in free_vars(formula)}), "choice")
        valuation = {}
    return GameState(formula, valuation, interp)


# ----------------------------------------------------------- legal moves

@dataclass(frozen=True)
class MoveSite:
    """One movable choice node: either a binary pick or an open numeral
    choice (the legal numerals are an infinite family, given intensionally)."""
    mover: str
    prefix: str  # parallel-component prefix, e.g. "1.0."
    path: OccPath
    kind: str  # "pick" or "numeral"
    node: Formula

    def moves(self, values=(0, 1)) -> list[str]:
        if self.kind == "pick":
            return [self.prefix + "0", self.prefix + "1"]
        return [self.prefix + str(Numeral.from_int(v)) for v in values]


_SITE_KIND = {ChoiceAnd: (ENVIRONMENT, "pick"), ChoiceOr: (MACHINE, "pick"),
              ChoiceAll: (ENVIRONMENT, "numeral"), ChoiceEx: (MACHINE, "numeral")}


def move_sites(f: Formula, prefix: str = "", path: OccPath = ()) -> list[MoveSite]:
    if isinstance(f, CHOICE_TYPES):
        mover, kind = _SITE_KIND[type(f)]
        return [MoveSite(mover, prefix, path, kind, f)]
    if isinstance(f, (And, Or)):
        return (move_sites(f.left, prefix + "0.", path + ("l",))
                + move_sites(f.right, prefix + "1.", path + ("r",)))
    if isinstance(f, (ForAll, Exists)):
        return move_sites(f.body, prefix, path + ("b",))
    return []


def legal_moves(state: GameState, player: str | None = None) -> list[MoveSite]:
    sites = move_sites(state.formula)
    if player is None:
        return sites
    return [s for s in sites if s.mover == player]


# ------------------------------------------------------------ prefixation

def apply_move(state: GameState, labmove: LabMove) -> GameState:
    """The game to which the state evolves after the labmove; raises
    IllegalMoveError (never silently ignores) when the move is not legal."""

    def walk(f: Formula, move: str) -> Formula:
        if isinstance(f, (ForAll, Exists)):
            return type(f)(f.var, walk(f.body, move))
        if isinstance(f, (And, Or)):
            if move.startswith("0."):
                return type(f)(walk(f.left, move[2:]), f.right)
            if move.startswith("1."):
                return type(f)(f.left, walk(f.right, move[2:]))
            raise IllegalMoveError(labmove, "expected a component prefix i.")
        if isinstance(f, (ChoiceAnd, ChoiceOr)):
            mover = ENVIRONMENT if isinstance(f, ChoiceAnd) else MACHINE
            if labmove.player != mover:
                raise IllegalMoveError(labmove, f"that choice belongs to {mover}")
            if move == "0":
                return f.left
            if move == "1":
                return f.right
            raise IllegalMoveError(labmove, "binary choice takes 0 or 1")
        if isinstance(f, (ChoiceAll, ChoiceEx)):
            mover = ENVIRONMENT if isinstance(f, ChoiceAll) else MACHINE
            if labmove.player != mover:
                raise IllegalMoveError(labmove, f"that choice belongs to {mover}")
            if not Numeral.is_valid(move):
                raise IllegalMoveError(labmove, f"not a numeral: {move!r}")
            return substitute(f.body, {f.var: Const(Numeral.parse(move))})
        raise IllegalMoveError(labmove, "no move is legal here")

    return replace(state, formula=walk(state.formula, labmove.move))


def is_legal(state: GameState, labmove: LabMove) -> bool:
    try:
        apply_move(state, labmove)
        return True
    except IllegalMoveError:
        return False


# ------------------------------------------------------------ adjudication

@dataclass(frozen=True)
class Verdict:
    winner: str
    reason: str  # "illegal-move" | "terminal-truth" | "terminal-structure"
    offender: str | None = None
    detail: str = ""


def wn_empty(state: GameState) -> str:
    """Winner of the state if no further moves are made."""
    win = evaluate(elementarize(state.formula), state.valuation, state.interp)
    return MACHINE if win else ENVIRONMENT


def is_elementary_state(state: GameState) -> bool:
    from .syntax import is_elementary
    return is_elementary(state.formula)


def adjudicate(state: GameState, run: Run) -> Verdict:
    """Replay the run; the first illegal move loses for its author, otherwise
    the final state's empty-run winner decides."""
    for i, lm in enumerate(run):
        try:
            state = apply_move(state, lm)
        except IllegalMoveError as e:
            return Verdict(winner=opponent(lm.player), reason="illegal-move",
                           offender=lm.player, detail=f"move #{i}: {e.why}")
    reason = "terminal-truth" if is_elementary_state(state) else "terminal-structure"
    return Verdict(winner=wn_empty(state), reason=reason)


def choice_depth(f: Formula) -> int:
    """Largest number of labmoves any legal run can contain."""
    if isinstance(f, (ChoiceAnd, ChoiceOr)):
        return 1 + max(choice_depth(f.left), choice_depth(f.right))
    if isinstance(f, (ChoiceAll, ChoiceEx)):
        return 1 + choice_depth(f.body)
    if isinstance(f, (And, Or)):
        return choice_depth(f.left) + choice_depth(f.right)
    if isinstance(f, (ForAll, Exists)):
        return choice_depth(f.body)
    return 0


def enumerate_legal_runs(state: GameState, numeral_bound: int = 8) -> list[Run]:
    """Every legal run, with numeral choices truncated to values up to
    numeral_bound.  A test oracle for small games."""
    runs: list[Run] = []

    def explore(st: GameState, sofar: Run):
        runs.append(sofar)
        for site in legal_moves(st):
            values = range(numeral_bound + 1)
            for move in site.moves(values):
                lm = LabMove(site.mover, move)
                explore(apply_move(st, lm), sofar + (lm,))

    explore(state, ())
    return runs


# ----------------------------------------------- move/path correspondence

class MoveRoutingError(ValueError):
    pass


def locate_move(f: Formula, move: str) -> tuple[OccPath, str, Formula]:
    """Resolve a move string against a formula: the path of the choice node
    it addresses, the choice content ("0"/"1" or a numeral), and the node."""
    node, path, cur = f, (), move
    while True:
        if isinstance(node, (ForAll, Exists)):
            node, path = node.body, path + ("b",)
        elif isinstance(node, (And, Or)):
            if cur.startswith("0."):
                node, path, cur = node.left, path + ("l",), cur[2:]
            elif cur.startswith("1."):
                node, path, cur = node.right, path + ("r",), cur[2:]
            else:
                raise MoveRoutingError(f"move {move!r}: expected component prefix")
        elif isinstance(node, CHOICE_TYPES):
            return path, cur, node
        else:
            raise MoveRoutingError(f"move {move!r} lands on a moveless formula")


def prefix_for_path(f: Formula, path: OccPath) -> str:
    """The parallel-component move prefix addressing the node at path."""
    node, prefix = f, ""
    for sel in path:
        if isinstance(node, (And, Or)) and sel in ("l", "r"):
            prefix += "0." if sel == "l" else "1."
            node = node.left if sel == "l" else node.right
        elif isinstance(node, (ForAll, Exists)) and sel == "b":
            node = node.body
        else:
            raise MoveRoutingError(f"path {path} does not fit the formula")
    return prefix


# --------------------------------------------------------- run transcripts

def format_run(run: Run) -> str:
    """Transcript: one labmove per line, `T:`/`B:` prefix plus move string."""
    return "".join(f"{lm}\n" for lm in run)


def parse_run(text: str) -> Run:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if len(line) < 2 or line[0] not in PLAYERS or line[1] != ":":
            raise ValueError(f"transcript line {lineno}: expected T:<move> or B:<move>")
        out.append(LabMove(line[0], line[2:]))
    return tuple(out)
