"""Chain composition of a binary induction.

On the environment's choice of a k-bit constant for the induction variable,
the agent spawns a base session and one step session per bit, each wrapped
reasonable, and wires copycat arcs: base <-> antecedent of the first step,
consequent of each step <-> antecedent of the next, and consequent of the
last step <-> the real play, the last arc moderated in both directions.  A
zero-bit constant degenerates to the base session alone.
"""

from __future__ import annotations

from collections import deque

from ..game import (
    ENVIRONMENT, GameState, IllegalMoveError, LabMove, MACHINE, apply_move,
)
from ..interp import Interpretation, STANDARD
from ..numerals import Numeral
from ..syntax import ChoiceAll, Formula, free_vars
from .moderate import ReasonableAgent, moderate
from .runtime import Agent, Session, StrategyError, spawn
from .specs import InductionSpec, StrategySpec


class InductionAgent(Agent):
    def __init__(self, spec: InductionSpec, interp: Interpretation = STANDARD):
        self.spec = spec
        self.interp = interp
        self.game = spec.game
        self.prefix_vars = sorted(free_vars(spec.formula))
        if spec.var not in self.prefix_vars:
            raise StrategyError(f"induction variable {spec.var} is not free in the formula")
        self.values: dict[str, int] = {}
        self.pending_vars = list(self.prefix_vars)
        self.sessions: list[Session] | None = None
        self.real_state = GameState(spec.game, {}, interp)
        self.notes: list[str] = []

    # -------------------------------------------------------------- events

    def observe(self, move: str) -> list[str]:
        if self.pending_vars:
            try:
                self.real_state = apply_move(self.real_state, LabMove(ENVIRONMENT, move))
            except IllegalMoveError:
                return []
            self.values[self.pending_vars.pop(0)] = Numeral.parse(move).value
            if self.pending_vars:
                return []
            self._build()
            return self._route()
        if self.sessions is None:
            return []
        copied = moderate(self.real_state, move)  # moderated real-play arc
        try:
            self.real_state = apply_move(self.real_state, LabMove(ENVIRONMENT, move))
        except IllegalMoveError:
            return []
        last = len(self.sessions) - 1
        if last == 0:
            self._deliver(0, copied)
        else:
            self._deliver(last, "1." + copied)
        return self._route()

    # --------------------------------------------------------- composition

    def _open_wrapped(self, spec: StrategySpec, formula: Formula) -> Session:
        agent = ReasonableAgent(spawn(spec, self.interp), formula, self.interp)
        s = Session(agent, GameState(formula, {}, self.interp), deque())
        s.absorb(agent.start())
        return s

    def _build(self):
        var = self.spec.var
        x = self.values[var]
        bits = format(x, "b") if x else ""
        prefixes = [int(bits[:i], 2) if i else 0 for i in range(len(bits))]
        others = {v: n for v, n in self.values.items() if v != var}
        base_order = [v for v in self.prefix_vars if v != var]
        self.sessions = [self._open_wrapped(self.spec.base, self.spec.base.game)]
        self._feed_closure(0, base_order, others)
        for i, b in enumerate(bits):
            step = self.spec.right if b == "1" else self.spec.left
            self.sessions.append(self._open_wrapped(step, step.game))
            self._feed_closure(i + 1, self.prefix_vars,
                               {**others, var: prefixes[i]})

    def _feed_closure(self, idx: int, var_order: list[str], values: dict[str, int]):
        """Choose the session's closure-prefix constants, one per prefix
        variable in order.  Any further leading choice-universal belongs to
        the induction formula itself and stays with the session's play."""
        for v in var_order:
            if v not in values:
                raise StrategyError(f"no value for closure variable {v}")
            self._deliver(idx, str(Numeral.from_int(values[v])))

    def _deliver(self, idx: int, move: str):
        sess = self.sessions[idx]
        try:
            sess.deliver(move)
        except IllegalMoveError as e:
            sess.aborted = f"composition move rejected: {e}"
            self.notes.append(f"session {idx}: {sess.aborted}")

    def _route(self) -> list[str]:
        outs: list[str] = []
        if self.sessions is None:
            return outs
        last = len(self.sessions) - 1
        progress = True
        while progress:
            progress = False
            for idx in range(len(self.sessions)):
                sess = self.sessions[idx]
                while sess.pending:
                    progress = True
                    self._forward(idx, sess.pending.popleft(), last, outs)
        return outs

    def _forward(self, idx: int, m: str, last: int, outs: list[str]):
        if idx == 0:
            if last == 0:
                self._emit_real(m, outs)
            else:
                self._deliver(1, "0." + m)
            return
        if m.startswith("0."):
            if idx == 1:
                self._deliver(0, m[2:])
            else:
                self._deliver(idx - 1, "1." + m[2:])
        elif m.startswith("1."):
            if idx == last:
                self._emit_real(m[2:], outs)
            else:
                self._deliver(idx + 1, "0." + m[2:])
        else:
            self.notes.append(f"session {idx}: unroutable move {m!r}")

    def _emit_real(self, move: str, outs: list[str]):
        clipped = moderate(self.real_state, move)
        try:
            self.real_state = apply_move(self.real_state, LabMove(MACHINE, clipped))
        except IllegalMoveError as e:
            self.notes.append(f"real-play move rejected: {e}")
            return
        outs.append(clipped)

    # --------------------------------------------------------------- stats

    def session_count(self) -> int:
        return 0 if self.sessions is None else len(self.sessions)

    def session_faults(self) -> list[str]:
        if self.sessions is None:
            return []
        return [f"session {i}: {s.aborted}"
                for i, s in enumerate(self.sessions) if s.aborted]
