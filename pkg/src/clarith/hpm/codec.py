"""Numeric encoding of machine configurations.

Symbols are the machine's states plus four versions of every tape symbol
(work-tape or run-tape flavor, underlined or not; the underline marks the
scanned cell).  Each symbol gets a code of exactly K = 2**k bits starting
with a 1, with k minimal for the symbol count; a configuration is the
concatenation of the block codes

    state, work cells 0..m (work flavor, head cell underlined),
    run cells 0..n (run flavor, head cell underlined)

read as one binary numeral.  Concatenation of coded sequences is the
arithmetic x o y = x * 2**|y| + y.

The successor-of-a-code function recomputes one machine cycle by block
surgery on the code (state block swap, written-cell swap, underline shifts,
move publication, blank insertion), independently of the simulator's
Configuration objects; the two routes are cross-checked in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .machine import (
    BLANK, Configuration, ENV_LABEL, HpmSpec, MACHINE_LABEL, MachineSpecError,
)


@dataclass(frozen=True)
class Symbol:
    kind: str  # "state" | "work" | "run"
    base: str
    underlined: bool = False

    def plain(self) -> "Symbol":
        return Symbol(self.kind, self.base, False)


class CodecError(ValueError):
    pass


def concat_codes(x: int, y: int) -> int:
    """x o y: the code of the concatenated symbol sequences."""
    return x * (1 << y.bit_length()) + y


class SymbolCodec:
    """Fixed-width symbol table for one machine spec."""

    def __init__(self, spec: HpmSpec):
        self.spec = spec
        tape = (BLANK, MACHINE_LABEL, ENV_LABEL) + tuple(spec.tape_symbols)
        symbols: list[Symbol] = [Symbol("state", s) for s in spec.states]
        for base in tape:
            for kind in ("work", "run"):
                for underlined in (False, True):
                    symbols.append(Symbol(kind, base, underlined))
        k = 0
        while (1 << ((1 << k) - 1)) < len(symbols):
            k += 1
        self.k = k
        self.width = 1 << k  # the block width K = 2**k
        self.to_code: dict[Symbol, int] = {}
        self.from_code: dict[int, Symbol] = {}
        lead = 1 << (self.width - 1)
        for idx, sym in enumerate(symbols):
            self.to_code[sym] = lead | idx
            self.from_code[lead | idx] = sym

    # ------------------------------------------------------------- blocks

    def blocks_of(self, code: int) -> list[int]:
        if code <= 0:
            raise CodecError("a configuration code is a positive numeral")
        if code.bit_length() % self.width:
            raise CodecError("code length is not a multiple of the block width")
        text = format(code, "b")
        return [int(text[i:i + self.width], 2) for i in range(0, len(text), self.width)]

    def assemble(self, blocks: list[int]) -> int:
        out = 0
        for b in blocks:
            out = (out << self.width) | b
        return out

    def symbol(self, block: int) -> Symbol:
        sym = self.from_code.get(block)
        if sym is None:
            raise CodecError(f"block {block:#x} is not a registered symbol code")
        return sym

    def encode_seq(self, symbols: list[Symbol]) -> int:
        return self.assemble([self.to_code[s] for s in symbols])

    # ------------------------------------------------------- configurations

    def encode(self, cfg: Configuration) -> int:
        symbols: list[Symbol] = [Symbol("state", cfg.state)]
        symbols += [Symbol("work", c, idx == cfg.i) for idx, c in enumerate(cfg.work)]
        symbols += [Symbol("run", c, idx == cfg.j) for idx, c in enumerate(cfg.run)]
        return self.encode_seq(symbols)

    def decode(self, code: int) -> Configuration:
        blocks = self.blocks_of(code)
        symbols = [self.symbol(b) for b in blocks]
        if not symbols or symbols[0].kind != "state":
            raise CodecError("configuration must start with a state block")
        state = symbols[0].base
        work = [s for s in symbols[1:] if s.kind == "work"]
        run = [s for s in symbols[1 + len(work):]]
        if any(s.kind != "run" for s in run) or not work or not run:
            raise CodecError("blocks must be a work segment then a run segment")
        if sum(s.underlined for s in work) != 1 or sum(s.underlined for s in run) != 1:
            raise CodecError("each tape needs exactly one scanned cell")
        i = next(idx for idx, s in enumerate(work) if s.underlined)
        j = next(idx for idx, s in enumerate(run) if s.underlined)
        try:
            return Configuration(state, tuple(s.base for s in work),
                                 tuple(s.base for s in run), i, j)
        except ValueError as e:
            raise CodecError(str(e)) from None

    def is_configuration(self, code: int) -> bool:
        try:
            self.decode(code)
            return True
        except CodecError:
            return False

    # -------------------------------------------- block-level successor

    def successor(self, code: int) -> int:
        """The code of the next configuration when the environment stays
        silent, computed by block surgery on the code itself."""
        blocks = self.blocks_of(code)
        syms = [self.symbol(b) for b in blocks]
        if syms[0].kind != "state":
            raise CodecError("configuration must start with a state block")
        state = syms[0].base
        work_lo = 1
        work_hi = work_lo
        while work_hi < len(syms) and syms[work_hi].kind == "work":
            work_hi += 1
        run_lo, run_hi = work_hi, len(syms)
        if work_hi == work_lo or run_hi == run_lo:
            raise CodecError("blocks must be a work segment then a run segment")
        i_rel = [k for k in range(work_lo, work_hi) if syms[k].underlined]
        j_rel = [k for k in range(run_lo, run_hi) if syms[k].underlined]
        if len(i_rel) != 1 or len(j_rel) != 1 or any(
                s.kind != "run" for s in syms[run_lo:run_hi]):
            raise CodecError("each tape needs exactly one scanned cell")
        ipos, jpos = i_rel[0], j_rel[0]
        reading_w = syms[ipos].base
        reading_r = syms[jpos].base
        t = self.spec.step_of(state, reading_w, reading_r)

        out = [Symbol("state", t.state)]
        work = [s.plain() for s in syms[work_lo:work_hi]]
        work[ipos - work_lo] = Symbol("work", t.write)
        if ipos == work_hi - 1:
            work.append(Symbol("work", BLANK))  # scanned blank was overwritten
        i2 = self._shift(ipos - work_lo, t.work_dir, t.write)
        work[i2] = Symbol("work", work[i2].base, True)
        out += work

        run = [s.plain() for s in syms[run_lo:run_hi]]
        if state in self.spec.move_states:
            published = [Symbol("run", MACHINE_LABEL)] + [
                Symbol("run", s.base) for s in syms[work_lo:ipos]]
            run = run[:-1] + published + run[-1:]
        j2 = self._shift(jpos - run_lo, t.run_dir, reading_r)
        run[j2] = Symbol("run", run[j2].base, True)
        out += run
        return self.assemble([self.to_code[s] for s in out])

    @staticmethod
    def _shift(pos: int, direction: str, reading: str) -> int:
        if direction == "L":
            return max(pos - 1, 0)
        if reading == BLANK:
            return pos
        return pos + 1
