#!/usr/bin/env python3
"""Extract every corpus theorem and replay a short demo game for each."""

import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from clarith import cla4
from clarith.polyfun import eval_explicit
from clarith.proofio import load_cla4
from clarith.strategy import ScriptedEnvironment, extract, play
from clarith.syntax import print_formula

DEMOS = [
    ("onesuc.cla4", ["101"], "binary 1-successor of 5"),
    ("zeroness.cla4", ["110"], "is 6 zero?"),
    ("binarypred.cla4", ["110"], "predecessor and parity of 6"),
    ("addition.cla4", ["110", "11"], "6 + 3"),
]


def main():
    for name, moves, blurb in DEMOS:
        proof = load_cla4(ROOT / "corpus" / name)
        report = cla4.check_proof(proof)
        ext = extract(proof, audit=report)
        rec = play(ext.spec, ScriptedEnvironment(moves), tick_budget=100_000)
        bound = eval_explicit(ext.certificate, rec.meters.background)
        shown = str(bound) if bound.bit_length() <= 64 else f"~2^{bound.bit_length()}"
        print(f"== {name}: {blurb}")
        print(f"   game     {print_formula(ext.game)}")
        print(f"   audit    {report.summary()}")
        print(f"   run      {'  '.join(str(m) for m in rec.run)}")
        print(f"   verdict  {rec.verdict.winner} ({rec.verdict.reason})")
        print(f"   meters   background={rec.meters.background} "
              f"max-move={rec.meters.max_move_size()} bound={shown}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
