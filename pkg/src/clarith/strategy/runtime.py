"""Runtime agents: deterministic reactive machines instantiated from specs.

An agent exposes start() and observe(move) -> list of machine moves (plus a
tick() hook for idle activations).  Moves are strings in the move grammar of
the agent's own game.  Agents never look at wall clocks or randomness, so a
play is reproducible from the observed run; forking a resource session is a
deep copy of its agent and state.
"""

from __future__ import annotations

import copy
from collections import deque
from dataclasses import dataclass

from .. import cl12
from ..game import (
    ENVIRONMENT, GameState, IllegalMoveError, LabMove, MACHINE,
    apply_move, legal_moves, locate_move, prefix_for_path,
)
from ..interp import Interpretation, STANDARD
from ..numerals import Numeral
from ..syntax import (
    ChoiceAll, ChoiceAnd, ChoiceEx, ChoiceOr, Const, Formula, Sequent, Var,
    alpha_eq, closure, free_vars, sequent_alpha_key,
)
from .specs import (
    CompiledProofSpec, DoublingSpec, InductionSpec, OracleSpec, SilentSpec,
    StrategySpec, UnarySuccessorSpec,
)


class StrategyError(Exception):
    pass


class Agent:
    game: Formula

    def start(self) -> list[str]:
        return []

    def observe(self, move: str) -> list[str]:
        return []

    def tick(self) -> list[str]:
        return []


class SilentAgent(Agent):
    def __init__(self, spec: SilentSpec, interp: Interpretation):
        self.game = spec.game


class FnAnswerAgent(Agent):
    """Collects the numerals chosen for the leading choice-universals, then
    answers fn(inputs) at the machine's choice site."""

    def __init__(self, game: Formula, fn, arity: int, interp: Interpretation):
        self.game = game
        self.state = GameState(game, {}, interp)
        self.fn = fn
        self.arity = arity
        self.inputs: list[int] = []
        self.done = False

    def observe(self, move: str) -> list[str]:
        try:
            _, content, node = locate_move(self.state.formula, move)
            self.state = apply_move(self.state, LabMove(ENVIRONMENT, move))
        except (IllegalMoveError, ValueError):
            return []
        if isinstance(node, ChoiceAll):
            self.inputs.append(Numeral.parse(content).value)
        if len(self.inputs) >= self.arity and not self.done:
            self.done = True
            sites = legal_moves(self.state, MACHINE)
            numeral_sites = [s for s in sites if s.kind == "numeral"]
            if not numeral_sites:
                return []
            site = numeral_sites[0]
            answer = Numeral.from_int(self.fn(*self.inputs))
            out = site.prefix + str(answer)
            self.state = apply_move(self.state, LabMove(MACHINE, out))
            return [out]
        return []


@dataclass
class Session:
    """The machine's side of one antecedent resource: the provider agent
    plays the machine of `formula`, this session's owner plays its
    environment.  Forked sessions share their entire past."""
    agent: Agent
    state: GameState
    pending: deque
    aborted: str | None = None  # provider-fault description

    @staticmethod
    def open(spec: StrategySpec, formula: Formula, interp: Interpretation) -> "Session":
        s = Session(spawn(spec, interp), GameState(formula, {}, interp), deque())
        s.absorb(s.agent.start())
        return s

    def absorb(self, outs: list[str]):
        for m in outs:
            if self.aborted:
                return
            try:
                self.state = apply_move(self.state, LabMove(MACHINE, m))
            except IllegalMoveError as e:
                self.aborted = f"provider fault: {e}"
                self.pending.clear()
                return
            self.pending.append(m)

    def deliver(self, move: str):
        """An owner-side move into the resource game."""
        if self.aborted:
            return
        self.state = apply_move(self.state, LabMove(ENVIRONMENT, move))
        self.absorb(self.agent.observe(move))

    def fork(self) -> "Session":
        return copy.deepcopy(self)


class ProofWalkAgent(Agent):
    """Plays the succedent of a checked sequent proof.

    The agent walks the proof from its conclusion: a machine-choice line
    emits the corresponding move (succedent moves externally, antecedent
    moves into the matching provider session) and steps to its premise; a
    replication line forks the named session; a wait line blocks until an
    environment-side move arrives (from the real play or from a provider)
    and steps to the premise that the wait conditions assign to that move,
    binding the premise's fresh variable to the received numeral.  A wait
    with no premises is terminal: stability guarantees the position is won.
    """

    def __init__(self, spec: CompiledProofSpec, interp: Interpretation):
        self.game = spec.game
        self.interp = interp
        self.proof = spec.proof
        self.lines = {l.label: l for l in spec.proof.lines}
        conclusion = spec.proof.lines[-1]
        if free_vars(conclusion.sequent.succedent):
            raise StrategyError("compiled proofs must conclude a closed succedent")
        if len(spec.providers) != len(conclusion.sequent.antecedent):
            raise StrategyError("one provider per antecedent formula required")
        self.current = conclusion
        self.bindings: dict[str, int] = {}
        self.real_inbox: deque[str] = deque()
        self.sessions = [Session.open(p, g, interp)
                         for p, g in zip(spec.providers, conclusion.sequent.antecedent)]
        self.wait_tables: dict[str, list[cl12.WaitEntry]] = {}
        self.notes: list[str] = []
        self._precompute()

    def _precompute(self):
        earlier: dict[str, cl12.ProofLine] = {}
        for line in self.proof.lines:
            if isinstance(line.rule, cl12.Wait):
                entries, problems = cl12.analyze_wait(line, earlier)
                if problems:
                    raise StrategyError(
                        f"line {line.label}: wait premises unresolved: {problems}")
                self.wait_tables[line.label] = entries
            if isinstance(line.rule, cl12.Replicate):
                premise = earlier[line.premises[0]].sequent
                conc = line.sequent
                expected = conc.antecedent + (conc.antecedent[line.rule.ant],)
                if len(premise.antecedent) != len(expected) or not all(
                        alpha_eq(a, b) for a, b in zip(premise.antecedent, expected)):
                    raise StrategyError(
                        f"line {line.label}: replication premise must list the "
                        "duplicate last for strategy compilation")
            earlier[line.label] = line

    # ------------------------------------------------------------ events

    def start(self) -> list[str]:
        return self._drive()

    def observe(self, move: str) -> list[str]:
        self.real_inbox.append(move)
        return self._drive()

    def tick(self) -> list[str]:
        return self._drive()

    # ------------------------------------------------------------ walking

    def _value_of(self, term) -> int:
        if isinstance(term, Const):
            return term.num.value
        if isinstance(term, Var):
            if term.name not in self.bindings:
                raise StrategyError(f"variable {term.name} used before it was bound")
            return self.bindings[term.name]
        raise StrategyError("choice parameters must be constants or variables")

    def _premise(self) -> cl12.ProofLine:
        return self.lines[self.current.premises[0]]

    def _drive(self) -> list[str]:
        outs: list[str] = []
        while True:
            rule = self.current.rule
            seq = self.current.sequent
            if isinstance(rule, cl12.OrChoose):
                move = prefix_for_path(seq.succedent, rule.path) + str(rule.i)
                outs.append(move)
                self.current = self._premise()
            elif isinstance(rule, cl12.ExChoose):
                move = (prefix_for_path(seq.succedent, rule.path)
                        + str(Numeral.from_int(self._value_of(rule.term))))
                outs.append(move)
                self.current = self._premise()
            elif isinstance(rule, cl12.AndChoose):
                self._session_move(rule.ant, prefix_for_path(
                    seq.antecedent[rule.ant], rule.path) + str(rule.i))
                self.current = self._premise()
            elif isinstance(rule, cl12.AllChoose):
                content = str(Numeral.from_int(self._value_of(rule.term)))
                self._session_move(rule.ant, prefix_for_path(
                    seq.antecedent[rule.ant], rule.path) + content)
                self.current = self._premise()
            elif isinstance(rule, cl12.Replicate):
                self.sessions.append(self.sessions[rule.ant].fork())
                self.current = self._premise()
            elif isinstance(rule, cl12.Wait):
                event = self._next_event()
                if event is None:
                    return outs
                if not self.current.premises:
                    # terminal wait: nothing to do with late/illegal traffic
                    self.notes.append(f"ignored event at terminal wait: {event}")
                    continue
                if not self._consume(event):
                    self.notes.append(f"unmatched event dropped: {event}")
            else:
                raise StrategyError(f"unknown rule {rule!r}")

    def _session_move(self, idx: int, move: str):
        session = self.sessions[idx]
        try:
            session.deliver(move)
        except IllegalMoveError as e:
            session.aborted = f"walker move rejected: {e}"
            self.notes.append(f"session {idx}: {session.aborted}")

    def _next_event(self):
        if self.real_inbox:
            return ("real", self.real_inbox.popleft())
        for i, s in enumerate(self.sessions):
            if s.pending:
                return (i, s.pending.popleft())
        return None

    def _consume(self, event) -> bool:
        source, move = event
        ant = None if source == "real" else source
        slot = (self.current.sequent.succedent if ant is None
                else self.current.sequent.antecedent[ant])
        try:
            path, content, node = locate_move(slot, move)
        except ValueError:
            return False
        for entry in self.wait_tables[self.current.label]:
            ob = entry.obligation
            if ob.ant != ant or ob.path != path:
                continue
            if ob.binary:
                if content in ("0", "1") and entry.branch == int(content):
                    self.current = self.lines[entry.premise]
                    return True
            else:
                if Numeral.is_valid(content):
                    self.bindings[entry.fresh_var] = Numeral.parse(content).value
                    self.current = self.lines[entry.premise]
                    return True
        return False

    def session_faults(self) -> list[str]:
        return [f"session {i}: {s.aborted}"
                for i, s in enumerate(self.sessions) if s.aborted]


def axiom_strategy(k: int) -> StrategySpec:
    """The canonical strategy for axiom k: silent for the elementary axioms,
    x+1 for the unary-successor axiom, 2x for the doubling axiom."""
    from ..cla4 import AXIOMS
    if k in (8, 9):
        game = AXIOMS[k]
        return UnarySuccessorSpec(game) if k == 8 else DoublingSpec(game)
    if 1 <= k <= 7:
        return SilentSpec(AXIOMS.get(k, AXIOMS[1]))
    raise ValueError(f"no axiom {k}")


def spawn(spec: StrategySpec, interp: Interpretation = STANDARD) -> Agent:
    if isinstance(spec, SilentSpec):
        return SilentAgent(spec, interp)
    if isinstance(spec, UnarySuccessorSpec):
        return FnAnswerAgent(spec.game, lambda x: x + 1, 1, interp)
    if isinstance(spec, DoublingSpec):
        return FnAnswerAgent(spec.game, lambda x: 2 * x, 1, interp)
    if isinstance(spec, OracleSpec):
        return FnAnswerAgent(spec.game, spec.fn, spec.arity, interp)
    if isinstance(spec, CompiledProofSpec):
        return ProofWalkAgent(spec, interp)
    if isinstance(spec, InductionSpec):
        from .induction import InductionAgent
        return InductionAgent(spec, interp)
    raise TypeError(f"unknown spec {spec!r}")
