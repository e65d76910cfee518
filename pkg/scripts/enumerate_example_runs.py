#!/usr/bin/env python3
"""Enumerate and adjudicate every legal run of a small game.

Defaults to the two-choice implication game with its thirteen runs; pass a
formula to explore something else (numeral choices truncated to --bound).
"""

import argparse
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from clarith.game import adjudicate, enumerate_legal_runs, initial_state
from clarith.syntax import parse_formula


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("formula", nargs="?",
                    default="(0=0 n 0=1) -> (10=11 n 10=10)")
    ap.add_argument("--bound", type=int, default=8,
                    help="largest numeral used for choice quantifiers")
    args = ap.parse_args()
    st0 = initial_state(parse_formula(args.formula))
    runs = enumerate_legal_runs(st0, numeral_bound=args.bound)
    wins = {"T": 0, "B": 0}
    for run in runs:
        verdict = adjudicate(st0, run)
        wins[verdict.winner] += 1
        pretty = ", ".join(str(m) for m in run) or "(empty)"
        print(f"{verdict.winner}  <{pretty}>")
    print(f"{len(runs)} legal runs: {wins['T']} machine wins, "
          f"{wins['B']} environment wins")
    return 0


if __name__ == "__main__":
    sys.exit(main())
