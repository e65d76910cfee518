"""Play harness: runs a strategy against an environment with meters.

One abstract tick per agent activation.  Meters record the background (the
largest environment move so far), each machine move's size, and its timecost
in ticks since the last move by either player.  The verdict comes from
replaying the recorded run through the adjudicator, so the harness can never
disagree with the game semantics.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..game import (
    ENVIRONMENT, GameState, IllegalMoveError, LabMove, MACHINE, Run, Verdict,
    adjudicate, apply_move, initial_state, legal_moves,
)
from ..interp import Interpretation, STANDARD
from ..numerals import Numeral
from ..syntax import Formula
from .runtime import Agent, spawn
from .specs import StrategySpec


@dataclass
class MoveMeter:
    move: str
    size: int
    background: int
    timecost: int


@dataclass
class Meters:
    background: int = 0
    machine_moves: list[MoveMeter] = field(default_factory=list)

    def max_move_size(self) -> int:
        return max((m.size for m in self.machine_moves), default=0)


@dataclass
class PlayRecord:
    run: Run
    verdict: Verdict | None
    meters: Meters
    stalled: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def winner(self) -> str | None:
        return self.verdict.winner if self.verdict else None


class ScriptedEnvironment:
    """Plays a fixed move list, one move per activation, then passes."""

    def __init__(self, moves: list[str]):
        self.moves = list(moves)

    def next_move(self, state: GameState, run: Run) -> str | None:
        return self.moves.pop(0) if self.moves else None

    def done(self, state: GameState) -> bool:
        return not self.moves


class RandomEnvironment:
    """Plays uniformly random legal moves (numerals up to max_bits bits),
    each with probability move_prob per activation, for at most max_moves."""

    def __init__(self, seed: int = 0, max_bits: int = 512, move_prob: float = 0.9,
                 max_moves: int = 64):
        self.rng = random.Random(seed)
        self.max_bits = max_bits
        self.move_prob = move_prob
        self.budget = max_moves

    def next_move(self, state: GameState, run: Run) -> str | None:
        if self.budget <= 0 or self.rng.random() > self.move_prob:
            return None
        sites = legal_moves(state, ENVIRONMENT)
        if not sites:
            self.budget = 0
            return None
        site = self.rng.choice(sites)
        self.budget -= 1
        if site.kind == "pick":
            return site.prefix + str(self.rng.randint(0, 1))
        nbits = self.rng.randint(0, self.max_bits)
        value = self.rng.getrandbits(nbits) if nbits else 0
        return site.prefix + str(Numeral.from_int(value))

    def done(self, state: GameState) -> bool:
        return self.budget <= 0 or not legal_moves(state, ENVIRONMENT)


def play(spec: StrategySpec | Agent, environment, sentence: Formula | None = None,
         interp: Interpretation = STANDARD, tick_budget: int = 10_000,
         strict: bool = True) -> PlayRecord:
    """Alternating event loop between one machine strategy and one
    environment agent over the given sentence (default: the spec's game)."""
    agent = spec if isinstance(spec, Agent) else spawn(spec, interp)
    game = sentence if sentence is not None else agent.game
    state0 = initial_state(game, interp)
    state = state0
    run: list[LabMove] = []
    meters = Meters()
    notes: list[str] = []
    tick = 0
    last_move_tick = 0
    idle = 0
    stalled = False

    def machine_turn(outs: list[str]) -> bool:
        nonlocal state, last_move_tick, idle
        for m in outs:
            idle = 0
            lm = LabMove(MACHINE, m)
            try:
                state = apply_move(state, lm)
            except IllegalMoveError as e:
                raise AssertionError(
                    f"strategy emitted an illegal move: {e}") from e
            run.append(lm)
            meters.machine_moves.append(MoveMeter(
                m, len(m), meters.background, tick - last_move_tick))
            last_move_tick = tick
        return bool(outs)

    machine_turn(agent.start())
    while True:
        tick += 1
        if tick > tick_budget:
            stalled = True
            notes.append("tick budget exhausted")
            break
        mv = environment.next_move(state, tuple(run))
        if mv is not None:
            lm = LabMove(ENVIRONMENT, mv)
            try:
                new_state = apply_move(state, lm)
            except IllegalMoveError as e:
                if strict:
                    run.append(lm)
                    notes.append(f"environment played illegally: {e.why}")
                    break
                notes.append(f"rejected illegal environment move: {e.why}")
                continue
            state = new_state
            run.append(lm)
            meters.background = max(meters.background, len(mv))
            last_move_tick = tick
            idle = 0
            machine_turn(agent.observe(mv))
        else:
            if not machine_turn(agent.tick()):
                idle += 1
            if idle >= 2 and environment.done(state):
                break

    faults = getattr(agent, "session_faults", lambda: [])()
    notes.extend(faults)
    verdict = adjudicate(state0, tuple(run))
    return PlayRecord(tuple(run), verdict, meters, stalled, notes)
