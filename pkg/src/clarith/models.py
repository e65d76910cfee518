"""Finite countermodel search for elementary formulas.

Interprets every nonlogical symbol freely over a small domain: numerals and
free variables become arbitrary elements, function letters (including the
arithmetic ones and the size/power/bit/substring pseudoterms) become
arbitrary functions, predicate letters arbitrary relations.  Equality alone
is fixed as identity.  Search is exhaustive when the space is small enough,
otherwise a seeded random sample.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .syntax import (
    App, Atom, BitAt, Cmp, Const, Eq, Exists, ForAll, Len, Pow2, Prod, Slice,
    Suc, Sum, Truth, Var,
    And, Or, Formula, Term, free_vars,
)

# canonical names for the interpreted operators in the model signature
_FIXED_FN_NAMES = {Suc: "'", Sum: "+", Prod: "*", Len: "len", Pow2: "pow2",
                   BitAt: "bit", Slice: "sub"}


def signature(f: Formula) -> tuple[set[str], dict[tuple[str, int], None], dict[tuple[str, int], None]]:
    """(constants-and-free-vars, functions name->arity, predicates)."""
    consts: set[str] = set()
    fns: dict[tuple[str, int], None] = {}
    preds: dict[tuple[str, int], None] = {}

    def scan(node: Formula, bound: set[str]):
        if isinstance(node, Truth):
            return
        if isinstance(node, Atom):
            preds.setdefault((node.pred, len(node.args)))
            for a in node.args:
                scan_term_b(a, bound)
        elif isinstance(node, (Eq, Cmp)):
            if isinstance(node, Cmp):
                preds.setdefault((f"cmp{node.op}", 2))
            scan_term_b(node.left, bound)
            scan_term_b(node.right, bound)
        elif isinstance(node, (And, Or)):
            scan(node.left, bound)
            scan(node.right, bound)
        elif isinstance(node, (ForAll, Exists)):
            scan(node.body, bound | {node.var})

    def scan_term_b(t: Term, bound: set[str]):
        if isinstance(t, Var):
            if t.name not in bound:
                consts.add(f"var:{t.name}")
        elif isinstance(t, Const):
            consts.add(f"num:{t.num.bits}")
        elif isinstance(t, App):
            fns.setdefault((t.fn, len(t.args)))
            for a in t.args:
                scan_term_b(a, bound)
        else:
            args = _args_of(t)
            fns.setdefault((_FIXED_FN_NAMES[type(t)], len(args)))
            for a in args:
                scan_term_b(a, bound)

    scan(f, set())
    return consts, fns, preds


def _args_of(t: Term) -> tuple[Term, ...]:
    if isinstance(t, (Suc, Len, Pow2)):
        return (t.arg,)
    if isinstance(t, (Sum, Prod)):
        return (t.left, t.right)
    if isinstance(t, BitAt):
        return (t.arg, t.index)
    if isinstance(t, Slice):
        return (t.arg, t.start, t.width)
    raise TypeError(t)


@dataclass
class FiniteModel:
    size: int
    consts: dict[str, int]
    fns: dict[tuple[str, int], tuple[int, ...]]  # row-major tables
    preds: dict[tuple[str, int], tuple[bool, ...]]

    def fn(self, name: str, args: tuple[int, ...]) -> int:
        table = self.fns[(name, len(args))]
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return table[idx]

    def pred(self, name: str, args: tuple[int, ...]) -> bool:
        table = self.preds[(name, len(args))]
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return table[idx]


def eval_term_model(t: Term, m: FiniteModel, env: dict[str, int]) -> int:
    if isinstance(t, Var):
        if t.name in env:
            return env[t.name]
        return m.consts[f"var:{t.name}"]
    if isinstance(t, Const):
        return m.consts[f"num:{t.num.bits}"]
    if isinstance(t, App):
        return m.fn(t.fn, tuple(eval_term_model(a, m, env) for a in t.args))
    name = _FIXED_FN_NAMES[type(t)]
    return m.fn(name, tuple(eval_term_model(a, m, env) for a in _args_of(t)))


def eval_model(f: Formula, m: FiniteModel, env: dict[str, int] | None = None) -> bool:
    env = env or {}
    if isinstance(f, Truth):
        return f.positive
    if isinstance(f, Atom):
        v = m.pred(f.pred, tuple(eval_term_model(a, m, env) for a in f.args))
        return v if f.positive else not v
    if isinstance(f, Eq):
        v = eval_term_model(f.left, m, env) == eval_term_model(f.right, m, env)
        return v if f.positive else not v
    if isinstance(f, Cmp):
        v = m.pred(f"cmp{f.op}",
                   (eval_term_model(f.left, m, env), eval_term_model(f.right, m, env)))
        return v if f.positive else not v
    if isinstance(f, And):
        return eval_model(f.left, m, env) and eval_model(f.right, m, env)
    if isinstance(f, Or):
        return eval_model(f.left, m, env) or eval_model(f.right, m, env)
    if isinstance(f, (ForAll, Exists)):
        want_all = isinstance(f, ForAll)
        for c in range(m.size):
            if eval_model(f.body, m, {**env, f.var: c}) != want_all:
                return not want_all
        return want_all
    raise TypeError(f"not elementary: {f!r}")


def find_countermodel(f: Formula, max_size: int = 3, combo_limit: int = 200_000,
                      samples: int = 3_000, seed: int = 2024,
                      exhaustive_only: bool = False) -> FiniteModel | None:
    """A finite model falsifying f, or None if none is found within limits."""
    consts, fns, preds = signature(f)
    consts_l = sorted(consts)
    fns_l = sorted(fns)
    preds_l = sorted(preds)
    rng = random.Random(seed)
    for n in range(1, max_size + 1):
        combos = n ** len(consts_l)
        for _, arity in fns_l:
            combos *= n ** (n ** arity)
        for _, arity in preds_l:
            combos *= 2 ** (n ** arity)
        if combos <= combo_limit:
            gen = _all_models(n, consts_l, fns_l, preds_l)
        elif exhaustive_only:
            return None
        else:
            gen = (_random_model(n, consts_l, fns_l, preds_l, rng)
                   for _ in range(samples))
        for m in gen:
            if not eval_model(f, m):
                return m
    return None


def _all_models(n, consts_l, fns_l, preds_l):
    const_space = itertools.product(range(n), repeat=len(consts_l))
    for cvals in const_space:
        fn_spaces = [itertools.product(range(n), repeat=n ** ar) for _, ar in fns_l]
        for ftabs in itertools.product(*fn_spaces):
            pred_spaces = [itertools.product((False, True), repeat=n ** ar)
                           for _, ar in preds_l]
            for ptabs in itertools.product(*pred_spaces):
                yield FiniteModel(
                    n, dict(zip(consts_l, cvals)),
                    {key: tab for key, tab in zip(fns_l, ftabs)},
                    {key: tab for key, tab in zip(preds_l, ptabs)})


def _random_model(n, consts_l, fns_l, preds_l, rng: random.Random) -> FiniteModel:
    return FiniteModel(
        n,
        {c: rng.randrange(n) for c in consts_l},
        {(name, ar): tuple(rng.randrange(n) for _ in range(n ** ar))
         for name, ar in fns_l},
        {(name, ar): tuple(rng.random() < 0.5 for _ in range(n ** ar))
         for name, ar in preds_l})
