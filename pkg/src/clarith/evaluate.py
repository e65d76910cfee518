"""Truth evaluation of elementary formulas, on exact big integers.

The decidable fragment: ground atoms over 0, ', +, *, =, the interpreted
size/power/bit/substring comparisons, and blind quantifiers that are either
over a finite-universe interpretation or guarded by a comparison whose bound
is computable in the current valuation.  Anything else raises
UndecidableFragmentError rather than guessing.
"""

from __future__ import annotations

from .interp import Interpretation, STANDARD, UndecidableFragmentError
from .syntax import (
    App, Atom, BitAt, Cmp, Const, Eq, Exists, ForAll, Len, Pow2, Prod, Slice,
    Suc, Sum, Truth, Var,
    And, Or, CHOICE_TYPES, Formula, Term, free_vars, negate,
)


class UnboundVariableError(UndecidableFragmentError):
    pass


class PartialTermError(Exception):
    """A bit/substring pseudoterm was indexed out of range; the atom that
    contains it is false."""


def eval_term(t: Term, val: dict[str, int], interp: Interpretation = STANDARD) -> int:
    if isinstance(t, Var):
        try:
            return val[t.name]
        except KeyError:
            raise UnboundVariableError(f"variable {t.name} has no value") from None
    if isinstance(t, Const):
        return t.num.value
    if isinstance(t, Suc):
        return eval_term(t.arg, val, interp) + 1
    if isinstance(t, Sum):
        return eval_term(t.left, val, interp) + eval_term(t.right, val, interp)
    if isinstance(t, Prod):
        return eval_term(t.left, val, interp) * eval_term(t.right, val, interp)
    if isinstance(t, App):
        fn = interp.function(t.fn)
        return fn(*(eval_term(a, val, interp) for a in t.args))
    if isinstance(t, Len):
        return eval_term(t.arg, val, interp).bit_length()
    if isinstance(t, Pow2):
        e = eval_term(t.arg, val, interp)
        if e > interp.pow2_limit:
            raise UndecidableFragmentError(f"pow2 argument too large: {e}")
        return 1 << e
    if isinstance(t, BitAt):
        x = eval_term(t.arg, val, interp)
        i = eval_term(t.index, val, interp)
        bits = format(x, "b") if x else ""
        if i >= len(bits):
            raise PartialTermError(f"bit {i} of a {len(bits)}-bit numeral")
        return int(bits[i])  # bits are counted from the left, starting at 0
    if isinstance(t, Slice):
        x = eval_term(t.arg, val, interp)
        y = eval_term(t.start, val, interp)
        z = eval_term(t.width, val, interp)
        bits = format(x, "b") if x else ""
        if y >= len(bits) or y + z > len(bits):
            raise PartialTermError(f"substring [{y}:{y + z}] of a {len(bits)}-bit numeral")
        chunk = bits[y:y + z]
        return int(chunk, 2) if chunk else 0
    raise TypeError(f"not a term: {t!r}")


def _atom_truth(f: Formula, val: dict[str, int], interp: Interpretation) -> bool:
    try:
        if isinstance(f, Atom):
            raw = bool(interp.predicate(f.pred)(*(eval_term(a, val, interp) for a in f.args)))
        elif isinstance(f, Eq):
            raw = eval_term(f.left, val, interp) == eval_term(f.right, val, interp)
        else:
            l, r = eval_term(f.left, val, interp), eval_term(f.right, val, interp)
            raw = l <= r if f.op == "<=" else l < r
    except PartialTermError:
        raw = False
    return raw if f.positive else not raw


Poly = dict[tuple[tuple[str, int], ...], int]


def _poly(t: Term, val: dict[str, int]) -> Poly | None:
    """Multivariate polynomial of a proper arithmetic term (None when the
    term leaves that fragment).  Valued variables become constants."""
    if isinstance(t, Var):
        if t.name in val:
            return {(): val[t.name]} if val[t.name] else {}
        return {((t.name, 1),): 1}
    if isinstance(t, Const):
        return {(): t.num.value} if t.num.value else {}
    if isinstance(t, Suc):
        inner = _poly(t.arg, val)
        if inner is None:
            return None
        out = dict(inner)
        out[()] = out.get((), 0) + 1
        return {m: c for m, c in out.items() if c}
    if isinstance(t, (Sum, Prod)):
        a, b = _poly(t.left, val), _poly(t.right, val)
        if a is None or b is None:
            return None
        if isinstance(t, Sum):
            out = dict(a)
            for mono, c in b.items():
                out[mono] = out.get(mono, 0) + c
            return {m: c for m, c in out.items() if c}
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                powers: dict[str, int] = {}
                for v, e in m1 + m2:
                    powers[v] = powers.get(v, 0) + e
                mono = tuple(sorted(powers.items()))
                out[mono] = out.get(mono, 0) + c1 * c2
        return {m: c for m, c in out.items() if c}
    return None


def _decide_universal_equation(f: Formula, val: dict[str, int]) -> bool | None:
    """Truth of a blindly-universally-closed (dis)equation between proper
    arithmetic terms, where decidable.

    All coefficients here are natural, so two terms agree on every tuple of
    naturals exactly when their polynomials are identical; and they disagree
    everywhere when their difference has strictly positive (or strictly
    negative) constant term and one-sided coefficients.
    """
    body = f
    while isinstance(body, ForAll):
        body = body.body
    if not isinstance(body, Eq):
        return None
    a, b = _poly(body.left, val), _poly(body.right, val)
    if a is None or b is None:
        return None
    if body.positive:
        return a == b
    if a == b:
        return False  # equal everywhere, so "nowhere equal" fails
    diff = dict(a)
    for mono, c in b.items():
        diff[mono] = diff.get(mono, 0) - c
    coeffs = [c for c in diff.values() if c]
    const = diff.get((), 0)
    if const > 0 and all(c > 0 for c in coeffs):
        return True
    if const < 0 and all(c < 0 for c in coeffs):
        return True
    return None


def _guard_bound(body: Formula, var: str, val: dict[str, int],
                 interp: Interpretation, *, universal: bool) -> int | None:
    """Enumeration bound for a guarded blind quantifier, or None.

    Universal shape:  (not guard) | rest ; existential shape: guard & rest,
    where guard compares var (or its size) against a computable bound.
    """
    if universal and isinstance(body, Or):
        guard = negate(body.left)
    elif not universal and isinstance(body, And):
        guard = body.left
    else:
        return None
    if not (isinstance(guard, Cmp) and guard.positive):
        return None
    try:
        bound = eval_term(guard.right, val, interp)
    except (UndecidableFragmentError, PartialTermError):
        return None
    if guard.left == Var(var):
        return bound if guard.op == "<=" else max(bound - 1, -1)
    if guard.left == Len(Var(var)):
        width = bound if guard.op == "<=" else bound - 1
        return (1 << width) - 1 if width >= 0 else -1
    return None


def evaluate(f: Formula, val: dict[str, int] | None = None,
             interp: Interpretation = STANDARD) -> bool:
    """Truth of an elementary formula at the given valuation."""
    val = val or {}
    if isinstance(f, CHOICE_TYPES):
        raise ValueError("evaluate() takes elementary formulas; use wn_empty for games")
    if isinstance(f, Truth):
        return f.positive
    if isinstance(f, (Atom, Eq, Cmp)):
        return _atom_truth(f, val, interp)
    if isinstance(f, And):
        return evaluate(f.left, val, interp) and evaluate(f.right, val, interp)
    if isinstance(f, Or):
        return evaluate(f.left, val, interp) or evaluate(f.right, val, interp)
    if isinstance(f, (ForAll, Exists)):
        universal = isinstance(f, ForAll)
        if f.var not in free_vars(f.body):
            return evaluate(f.body, val, interp)
        if universal:
            decided = _decide_universal_equation(f, val)
            if decided is not None:
                return decided
        if interp.universe is not None:
            domain = interp.universe
        else:
            bound = _guard_bound(f.body, f.var, val, interp, universal=universal)
            if bound is None:
                raise UndecidableFragmentError(
                    f"unbounded blind quantifier over {f.var}")
            if bound >= interp.enumeration_limit:
                raise UndecidableFragmentError(
                    f"blind quantifier bound {bound} exceeds enumeration limit")
            domain = range(bound + 1)
        inner = {**val}
        for c in domain:
            inner[f.var] = c
            if evaluate(f.body, inner, interp) != universal:
                return not universal
        return universal
    raise TypeError(f"not a formula: {f!r}")
