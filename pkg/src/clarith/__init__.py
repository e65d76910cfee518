"""clarith: games for arithmetic formulas, sequent proofs that win them,
and extraction of polynomial-time strategies from proofs."""

__version__ = "0.1.0"
