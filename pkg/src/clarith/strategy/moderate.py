"""Reasonable counterparts and moderated move copying.

A numeral choice for a sizebound-guarded variable is unreasonable when the
guard is already falsified by the numeral's size: such a choice forfeits its
subgame no matter what, so replacing the numeral by 0 (whose size 0 passes
every sizebound) never costs the mover anything and keeps all copied moves
small.  Wrapping a strategy makes it clip its own unreasonable moves;
moderated synchronization applies the same clipping to moves copied between
the outermost real play and a simulated session.
"""

from __future__ import annotations

from ..evaluate import evaluate
from ..game import GameState, MoveRoutingError, locate_move
from ..interp import Interpretation, STANDARD, UndecidableFragmentError
from ..numerals import Numeral
from ..syntax import ChoiceAll, ChoiceEx, Cmp, Formula, Len, Var, sizebound_of
from .runtime import Agent, StrategySpec, spawn
from ..game import ENVIRONMENT, LabMove, MACHINE, apply_move, IllegalMoveError


def moderate(state: GameState, move: str) -> str:
    """The move with its numeral clipped to 0 when it names a constant that
    violates the choice node's sizebound at the current position."""
    try:
        path, content, node = locate_move(state.formula, move)
    except MoveRoutingError:
        return move
    if not isinstance(node, (ChoiceAll, ChoiceEx)) or not Numeral.is_valid(content):
        return move
    guard = sizebound_of(node)
    if guard is None:
        return move
    var, bound = guard
    value = Numeral.parse(content).value
    check = Cmp("<=", Len(Var(var)), bound)
    try:
        ok = evaluate(check, {**state.valuation, var: value}, state.interp)
    except UndecidableFragmentError:
        return move
    if ok:
        return move
    prefix = move[: len(move) - len(content)]
    return prefix + "0"


class ReasonableAgent(Agent):
    """Wrapper that replaces the inner strategy's unreasonable moves by
    choices of 0, tracking the game state to evaluate the sizebounds."""

    def __init__(self, inner: Agent, game: Formula, interp: Interpretation = STANDARD):
        self.inner = inner
        self.game = game
        self.state = GameState(game, {}, interp)

    def _clip(self, outs: list[str]) -> list[str]:
        clipped = []
        for m in outs:
            m2 = moderate(self.state, m)
            self.state = apply_move(self.state, LabMove(MACHINE, m2))
            clipped.append(m2)
        return clipped

    def start(self) -> list[str]:
        return self._clip(self.inner.start())

    def observe(self, move: str) -> list[str]:
        try:
            self.state = apply_move(self.state, LabMove(ENVIRONMENT, move))
        except IllegalMoveError:
            return []
        return self._clip(self.inner.observe(move))

    def tick(self) -> list[str]:
        return self._clip(self.inner.tick())


def reasonable_wrap(spec: StrategySpec, game: Formula,
                    interp: Interpretation = STANDARD) -> ReasonableAgent:
    return ReasonableAgent(spawn(spec, interp), game, interp)
