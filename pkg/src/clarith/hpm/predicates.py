"""Executable configuration predicates over codes.

Each predicate decides a property of numeric codes by block inspection or
bounded simulation.  The step-quantifying ones (reaches-quietly, its
projection, and first-move) take a fuel bound and report unknown when the
bound runs out instead of guessing.
"""

from __future__ import annotations

from .codec import CodecError, Symbol, SymbolCodec
from .machine import BLANK


class FuelExhausted(Exception):
    """The predicate quantifies over more steps than the fuel allows."""


def pred_is_symbol_row(codec: SymbolCodec, x: int, kind: str) -> list[Symbol] | None:
    """The symbol sequence when x codes only plain symbols of one flavor."""
    if x == 0:
        return []
    try:
        blocks = codec.blocks_of(x)
        syms = [codec.symbol(b) for b in blocks]
    except CodecError:
        return None
    if all(s.kind == kind and not s.underlined for s in syms):
        return syms
    return None


def pred_N(codec: SymbolCodec, x: int, y: int) -> bool:
    """If x codes a work-flavored symbol row, y codes the same row in the
    run flavor (vacuously true otherwise)."""
    syms = pred_is_symbol_row(codec, x, "work")
    if syms is None:
        return True
    want = codec.encode_seq([Symbol("run", s.base) for s in syms]) if syms else 0
    return y == want


def pred_C(codec: SymbolCodec, x: int) -> bool:
    return codec.is_configuration(x)


def pred_I(codec: SymbolCodec, x: int, y: int) -> bool:
    return pred_C(codec, x) and codec.decode(x).i == y


def pred_J(codec: SymbolCodec, x: int, y: int) -> bool:
    return pred_C(codec, x) and codec.decode(x).j == y


def pred_M(codec: SymbolCodec, x: int, y: int) -> bool:
    """y is the index of the trailing work-tape blank."""
    return pred_C(codec, x) and len(codec.decode(x).work) - 1 == y


def pred_E(codec: SymbolCodec, x: int, y: int) -> bool:
    """y codes the run-flavored spelling of the binary numeral x."""
    bits = format(x, "b") if x else ""
    want = codec.encode_seq([Symbol("run", b) for b in bits]) if bits else 0
    return y == want


def pred_D(codec: SymbolCodec, x: int, y: int) -> bool:
    """x codes a work-flavored bit row (leading 1 when nonempty) denoting y."""
    syms = pred_is_symbol_row(codec, x, "work")
    if syms is None:
        return False
    bits = "".join(s.base for s in syms)
    if any(b not in "01" for b in bits) or (bits and bits[0] != "1"):
        return False
    return y == (int(bits, 2) if bits else 0)


def pred_S(codec: SymbolCodec, x: int, y: int) -> bool:
    """y codes the deterministic successor of configuration x."""
    if not pred_C(codec, x):
        return False
    return codec.successor(x) == y


def _quiet_steps(codec: SymbolCodec, z: int, limit: int) -> list[int]:
    """Codes of z and its deterministic successors, cut just past the first
    move-state configuration or at the limit."""
    out = [z]
    cur = z
    for _ in range(limit):
        if codec.decode(cur).state in codec.spec.move_states:
            break
        cur = codec.successor(cur)
        out.append(cur)
    return out

def pred_A(codec: SymbolCodec, z: int, x: int, y: int, fuel: int = 10_000) -> bool:
    """After z, staying silent, the machine reaches x within y steps without
    entering a move state."""
    if y > fuel:
        raise FuelExhausted(f"{y} steps exceed the fuel bound {fuel}")
    if not pred_C(codec, z):
        return False
    cur = z
    for k in range(y + 1):
        if codec.decode(cur).state in codec.spec.move_states:
            return False
        if k == y:
            return cur == x
        cur = codec.successor(cur)
    return False


def pred_A1(codec: SymbolCodec, z: int, y: int, fuel: int = 10_000) -> bool:
    """The machine stays quiet for y steps after z (projection of the above)."""
    if y > fuel:
        raise FuelExhausted(f"{y} steps exceed the fuel bound {fuel}")
    if not pred_C(codec, z):
        return False
    steps = _quiet_steps(codec, z, y)
    return (len(steps) == y + 1
            and codec.decode(steps[-1]).state not in codec.spec.move_states)


def pred_B(codec: SymbolCodec, z: int, x: int, fuel: int = 10_000) -> bool:
    """x is the earliest configuration at or after z in which the machine
    moves, with the environment silent throughout."""
    if not pred_C(codec, z):
        return False
    cur = z
    for _ in range(fuel + 1):
        if codec.decode(cur).state in codec.spec.move_states:
            return cur == x
        cur = codec.successor(cur)
    raise FuelExhausted(f"no move state within {fuel} steps")


PREDICATES = {
    "N": pred_N, "C": pred_C, "I": pred_I, "J": pred_J, "M": pred_M,
    "E": pred_E, "D": pred_D, "S": pred_S, "A": pred_A, "A1": pred_A1,
    "B": pred_B,
}
