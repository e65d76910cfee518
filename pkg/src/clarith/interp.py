"""Interpretations: how predicate and function letters are read.

The standard interpretation is built in: terms over 0, successor, sum and
product mean exact natural-number arithmetic, and the interpreted size /
power / bit / substring pseudoterms have their usual meaning.  Pure-logic
games with uninterpreted letters take a pluggable interpretation instead;
a finite universe additionally makes blind quantifiers decidable by
enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping


class UndecidableFragmentError(Exception):
    """The built-in evaluator cannot decide this formula and no oracle is
    plugged (unbounded blind quantifier, uninterpreted letter, or an
    enumeration beyond the configured limit)."""


@dataclass
class Interpretation:
    functions: dict[str, Callable] = field(default_factory=dict)
    predicates: dict[str, Callable] = field(default_factory=dict)
    universe: tuple[int, ...] | None = None
    enumeration_limit: int = 1 << 16
    pow2_limit: int = 1 << 20

    def function(self, name: str, arity_hint: int = 0) -> Callable:
        fn = self.functions.get(name)
        if fn is None:
            raise UndecidableFragmentError(f"uninterpreted function letter {name!r}")
        return fn

    def predicate(self, name: str) -> Callable:
        p = self.predicates.get(name)
        if p is None:
            raise UndecidableFragmentError(f"uninterpreted predicate letter {name!r}")
        return p


STANDARD = Interpretation()


def table_fn(table: Mapping[tuple[int, ...], int], default: int | None = None) -> Callable:
    def fn(*args: int) -> int:
        if args in table:
            return table[args]
        if default is None:
            raise UndecidableFragmentError(f"function table has no entry for {args}")
        return default
    return fn


def table_pred(trues: Iterable[tuple[int, ...]]) -> Callable:
    true_set = {tuple(t) for t in trues}
    return lambda *args: tuple(args) in true_set


def finite_interpretation(universe: Iterable[int],
                          predicates: Mapping[str, Iterable[tuple[int, ...]]] | None = None,
                          functions: Mapping[str, Mapping[tuple[int, ...], int]] | None = None,
                          ) -> Interpretation:
    """A finite test interpretation: tabled letters over a finite domain."""
    return Interpretation(
        functions={name: table_fn(tbl) for name, tbl in (functions or {}).items()},
        predicates={name: table_pred(rows) for name, rows in (predicates or {}).items()},
        universe=tuple(universe),
    )
