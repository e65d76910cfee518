"""Interactive Turing machine simulator.

A machine has a work tape and a read-only run tape, a start state, and a
set of move states.  Entering a move state publishes the work-tape content
left of the head, machine-labeled, on the run tape at the start of the next
cycle; the environment may append its own labeled moves on any transition,
after the machine's.  The blank symbol and the two player labels can never
be written on the work tape.

Head movement edge rules: an attempt to move left on the leftmost cell, or
right while the head's cell holds the blank symbol, stays put.  The work
head looks at its freshly written (hence never blank) symbol when it moves,
so in practice the right-stay rule bites on the run tape only; either way a
head never passes the leftmost blank and tape contents stay a contiguous
non-blank prefix.

A generalized machine additionally takes numeric inputs, fixed at start in
a read-only input register vector; its code is a stable hash of its spec
serialization.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace

BLANK = "_"
MACHINE_LABEL = "T"
ENV_LABEL = "B"
RESERVED = (BLANK, MACHINE_LABEL, ENV_LABEL)


class MachineSpecError(ValueError):
    pass


@dataclass(frozen=True)
class Transition:
    state: str
    write: str
    work_dir: str  # "L" | "R"
    run_dir: str


@dataclass(frozen=True)
class HpmSpec:
    name: str
    states: tuple[str, ...]          # first is the start state
    move_states: frozenset[str]
    tape_symbols: tuple[str, ...]    # non-blank work symbols
    move_alphabet: tuple[str, ...]   # symbols legal inside moves
    transitions: dict[tuple[str, str, str], Transition]
    inputs: tuple[int, ...] = ()     # generalized-machine input registers

    def __post_init__(self):
        if not self.states:
            raise MachineSpecError("a machine needs at least one state")
        if self.states[0] in self.move_states:
            raise MachineSpecError("the start state may not be a move state")
        for sym in self.tape_symbols:
            if len(sym) != 1 or sym in RESERVED:
                raise MachineSpecError(f"bad tape symbol {sym!r}")
        for key, t in self.transitions.items():
            if t.write in RESERVED:
                raise MachineSpecError(
                    f"transition {key} writes the reserved symbol {t.write!r}")

    @property
    def start(self) -> str:
        return self.states[0]

    def step_of(self, state: str, work: str, run: str) -> Transition:
        """Total transition function: wildcard '.' rows catch unlisted
        triples, and a completely unlisted triple loops in place."""
        for key in ((state, work, run), (state, work, "."),
                    (state, ".", run), (state, ".", ".")):
            if key in self.transitions:
                return self.transitions[key]
        return Transition(state, work if work != BLANK else
                          (self.tape_symbols[0] if self.tape_symbols else "0"),
                          "L", "L")

    def code(self) -> int:
        """Stable numeric code of the spec (our fixed reasonable encoding)."""
        from .specfile import format_spec
        digest = hashlib.sha256(format_spec(self).encode()).digest()[:16]
        return int.from_bytes(digest, "big") | (1 << 128)


@dataclass(frozen=True)
class Configuration:
    """Tape contents are the non-blank prefix plus exactly one trailing
    blank; head indexes stay inside that window."""
    state: str
    work: tuple[str, ...]
    run: tuple[str, ...]
    i: int  # work head
    j: int  # run head

    def __post_init__(self):
        for tape, head in ((self.work, self.i), (self.run, self.j)):
            if not tape or tape[-1] != BLANK or BLANK in tape[:-1]:
                raise ValueError("tape must be a non-blank prefix plus one blank")
            if not 0 <= head < len(tape):
                raise ValueError("head outside the represented window")

    def work_prefix(self) -> str:
        """The string spelled from cell 0 up to the cell left of the head."""
        return "".join(self.work[: self.i])


def initial_configuration(spec: HpmSpec) -> Configuration:
    return Configuration(spec.start, (BLANK,), (BLANK,), 0, 0)


def _move(head: int, direction: str, reading: str) -> int:
    if direction == "L":
        return max(head - 1, 0)
    if reading == BLANK:
        return head  # right from a blank stays put
    return head + 1


def step(spec: HpmSpec, cfg: Configuration,
         env_appends: tuple[str, ...] = ()) -> Configuration:
    """One clock cycle: transition, then the machine's move (when the cycle
    started in a move state) and the environment's appends emerge on the run
    tape, machine first."""
    reading_w = cfg.work[cfg.i]
    reading_r = cfg.run[cfg.j]
    t = spec.step_of(cfg.state, reading_w, reading_r)
    work = list(cfg.work)
    work[cfg.i] = t.write
    if cfg.i == len(work) - 1:
        work.append(BLANK)  # the scanned blank was overwritten
    i2 = _move(cfg.i, t.work_dir, t.write)  # the head sees its fresh write
    j2 = _move(cfg.j, t.run_dir, reading_r)
    run = list(cfg.run[:-1])
    if cfg.state in spec.move_states:
        run += [MACHINE_LABEL] + list(cfg.work_prefix())
    for m in env_appends:
        run += [ENV_LABEL] + list(m)
    run.append(BLANK)
    return Configuration(t.state, tuple(work), tuple(run), i2, j2)


# ---------------------------------------------------------------- traces

@dataclass
class TimedMove:
    player: str
    move: str
    timestamp: int
    background: int = 0
    timecost: int = 0


@dataclass
class Trace:
    configs: list[Configuration]
    moves: list[TimedMove]
    cells_visited: int
    fuel_exhausted: bool

    @property
    def run(self) -> list[tuple[str, str]]:
        return [(m.player, m.move) for m in self.moves]

    def violates_time_bound(self, h) -> TimedMove | None:
        """First machine move whose timecost or size exceeds h(background)."""
        for m in self.moves:
            if m.player == MACHINE_LABEL:
                cap = h(m.background)
                if m.timecost > cap or len(m.move) > cap:
                    return m
        return None


def run_hpm(spec: HpmSpec, env_script: dict[int, list[str]] | None = None,
            fuel: int = 1000) -> Trace:
    """Simulate `fuel` cycles; env_script maps a cycle number to the moves
    the environment makes during that cycle (they emerge on the next one)."""
    env_script = env_script or {}
    for moves in env_script.values():
        for m in moves:
            bad = set(m) - set(spec.move_alphabet)
            if bad:
                raise MachineSpecError(f"environment move uses {sorted(bad)}")
    cfg = initial_configuration(spec)
    configs = [cfg]
    moves: list[TimedMove] = []
    last_move_cycle: int | None = None
    background = 0
    max_cell = 0
    for cycle in range(fuel):
        if cfg.state in spec.move_states:
            cost = cycle - last_move_cycle if last_move_cycle is not None else cycle
            moves.append(TimedMove(MACHINE_LABEL, cfg.work_prefix(), cycle,
                                   background, cost))
            last_move_cycle = cycle
        for m in env_script.get(cycle, []):
            moves.append(TimedMove(ENV_LABEL, m, cycle, background, 0))
            last_move_cycle = cycle
        for m in env_script.get(cycle, []):
            background = max(background, len(m))
        cfg = step(spec, cfg, tuple(env_script.get(cycle, [])))
        max_cell = max(max_cell, cfg.i)
        configs.append(cfg)
    return Trace(configs, moves, max_cell + 1, fuel_exhausted=True)
