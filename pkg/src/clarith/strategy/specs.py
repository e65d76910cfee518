"""Strategy descriptions.

A strategy is described by an immutable spec tree; playing instantiates a
fresh runtime agent from the spec, so one extracted strategy can be played
any number of times (and forked mid-play for resource reuse) without shared
state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

from .. import cl12
from ..syntax import Formula


@dataclass(frozen=True)
class SilentSpec:
    """Makes no moves; wins exactly the games whose final position is true
    (used for true elementary sentences)."""
    game: Formula


@dataclass(frozen=True)
class UnarySuccessorSpec:
    """Answers the environment's numeral x with x + 1."""
    game: Formula


@dataclass(frozen=True)
class DoublingSpec:
    """Answers the environment's numeral x with 2x."""
    game: Formula


@dataclass(frozen=True)
class CompiledProofSpec:
    """Plays the succedent of a checked sequent proof, consuming one provider
    session per antecedent formula (forked on replication)."""
    proof: cl12.Proof
    providers: tuple["StrategySpec", ...]
    game: Formula


@dataclass(frozen=True)
class InductionSpec:
    """Chain composition for binary induction: on input x with bits b1..bk,
    wire base and step sessions in a copycat chain, the last arc moderated."""
    formula: Formula  # F, free over the closure variables including var
    var: str
    base: "StrategySpec"
    left: "StrategySpec"
    right: "StrategySpec"
    game: Formula


@dataclass(frozen=True)
class OracleSpec:
    """Python-backed provider for tests and demos: collects the numerals the
    environment chooses for the game's choice-universal prefix and answers
    with fn(*values) at the innermost choice-existential."""
    game: Formula
    fn: Callable
    arity: int
    name: str = "oracle"

    def __hash__(self):
        return hash((self.game, self.arity, self.name))


StrategySpec = Union[SilentSpec, UnarySuccessorSpec, DoublingSpec,
                     CompiledProofSpec, InductionSpec, OracleSpec]
