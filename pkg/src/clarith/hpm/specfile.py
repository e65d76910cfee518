"""Machine spec files.

    machine <name>
    tape 0 1 a          # non-blank work symbols ("_" is the blank)
    moves 0 1           # symbols allowed inside moves
    states idle copy say* done   # '*' marks move states; first is the start
    trans <state> <work> <run> -> <state> <write> <L|R> <L|R>
    input 5 13          # optional input registers (generalized machines)

'.' in a work/run column is a wildcard; exact rows win over wildcard rows.
Lines starting with '#' are comments.
"""

from __future__ import annotations

from .machine import HpmSpec, MachineSpecError, Transition


def parse_spec(text: str) -> HpmSpec:
    name = "machine"
    tape: tuple[str, ...] = ()
    moves: tuple[str, ...] = ()
    states: list[str] = []
    move_states: set[str] = set()
    transitions: dict[tuple[str, str, str], Transition] = {}
    inputs: tuple[int, ...] = ()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "machine":
            name = parts[1]
        elif kind == "tape":
            tape = tuple(parts[1:])
        elif kind == "moves":
            moves = tuple(parts[1:])
        elif kind == "states":
            for s in parts[1:]:
                if s.endswith("*"):
                    states.append(s[:-1])
                    move_states.add(s[:-1])
                else:
                    states.append(s)
        elif kind == "input":
            inputs = tuple(int(v) for v in parts[1:])
        elif kind == "trans":
            if len(parts) != 9 or parts[4] != "->":
                raise MachineSpecError(
                    f"line {lineno}: expected 'trans q w r -> q2 write WD RD'")
            key = (parts[1], parts[2], parts[3])
            if key in transitions:
                raise MachineSpecError(f"line {lineno}: duplicate row {key}")
            if parts[7] not in "LR" or parts[8] not in "LR":
                raise MachineSpecError(f"line {lineno}: directions are L or R")
            transitions[key] = Transition(parts[5], parts[6], parts[7], parts[8])
        else:
            raise MachineSpecError(f"line {lineno}: unknown directive {kind!r}")
    if not states:
        raise MachineSpecError("spec has no states line")
    return HpmSpec(name, tuple(states), frozenset(move_states), tape, moves,
                   transitions, inputs)


def format_spec(spec: HpmSpec) -> str:
    out = [f"machine {spec.name}"]
    if spec.tape_symbols:
        out.append("tape " + " ".join(spec.tape_symbols))
    if spec.move_alphabet:
        out.append("moves " + " ".join(spec.move_alphabet))
    out.append("states " + " ".join(
        s + ("*" if s in spec.move_states else "") for s in spec.states))
    if spec.inputs:
        out.append("input " + " ".join(map(str, spec.inputs)))
    for (q, w, r), t in sorted(spec.transitions.items()):
        out.append(f"trans {q} {w} {r} -> {t.state} {t.write} {t.work_dir} {t.run_dir}")
    return "\n".join(out) + "\n"


def load_spec(path) -> HpmSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())
