"""Variable hygiene, substitution, elementarization and syntactic side conditions."""

from __future__ import annotations

import re

from .ast import (
    App, Atom, BitAt, Cmp, Const, Eq, Exists, ForAll, Len, Pow2, Prod, Slice,
    Suc, Sum, Truth, Var, ZERO,
    And, Or, ChoiceAll, ChoiceAnd, ChoiceEx, ChoiceOr,
    ATOMIC_TYPES, BINARY_TYPES, CHOICE_TYPES, QUANT_TYPES,
    Formula, OccPath, Sequent, Term, children, with_children,
)


class SubstitutionError(ValueError):
    pass


# ------------------------------------------------------------- variables

def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Const):
        return set()
    if isinstance(t, (Suc, Len, Pow2)):
        return term_vars(t.arg)
    if isinstance(t, (Sum, Prod)):
        return term_vars(t.left) | term_vars(t.right)
    if isinstance(t, App):
        out: set[str] = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    if isinstance(t, BitAt):
        return term_vars(t.arg) | term_vars(t.index)
    if isinstance(t, Slice):
        return term_vars(t.arg) | term_vars(t.start) | term_vars(t.width)
    raise TypeError(f"not a term: {t!r}")


def atom_terms(f: Formula) -> tuple[Term, ...]:
    if isinstance(f, Atom):
        return f.args
    if isinstance(f, (Eq, Cmp)):
        return (f.left, f.right)
    return ()


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, ATOMIC_TYPES):
        out: set[str] = set()
        for t in atom_terms(f):
            out |= term_vars(t)
        return out
    if isinstance(f, BINARY_TYPES):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, QUANT_TYPES):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def bound_vars(f: Formula) -> set[str]:
    if isinstance(f, ATOMIC_TYPES):
        return set()
    if isinstance(f, BINARY_TYPES):
        return bound_vars(f.left) | bound_vars(f.right)
    if isinstance(f, QUANT_TYPES):
        return bound_vars(f.body) | {f.var}
    raise TypeError(f"not a formula: {f!r}")


def all_vars(f: Formula) -> set[str]:
    return free_vars(f) | bound_vars(f)


def sequent_vars(s: Sequent) -> set[str]:
    out = all_vars(s.succedent)
    for g in s.antecedent:
        out |= all_vars(g)
    return out


_FRESH_RE = re.compile(r"^(.*?)_(\d+)$")


def fresh_name(base: str, taken: set[str]) -> str:
    """Deterministic fresh-name scheme: x, x_1, x_2, ..."""
    m = _FRESH_RE.match(base)
    stem = m.group(1) if m else base
    if stem not in taken:
        return stem
    i = 1
    while f"{stem}_{i}" in taken:
        i += 1
    return f"{stem}_{i}"


def hygienic(f: Formula, taken: set[str] | None = None) -> Formula:
    """Rename binders so free and bound variable sets are disjoint and every
    binder is distinct.  Deterministic; used by the parser."""
    forbidden = set(taken or ()) | free_vars(f)
    assigned: set[str] = set()

    def walk(node: Formula) -> Formula:
        if isinstance(node, ATOMIC_TYPES):
            return node
        if isinstance(node, BINARY_TYPES):
            return type(node)(walk(node.left), walk(node.right))
        if isinstance(node, QUANT_TYPES):
            var = node.var
            body = node.body
            if var in forbidden or var in assigned:
                new = fresh_name(var, forbidden | assigned | all_vars(body))
                body = substitute(body, {var: Var(new)}, check_capture=False)
                var = new
            assigned.add(var)
            return type(node)(var, walk(body))
        raise TypeError(f"not a formula: {node!r}")

    return walk(f)


# ---------------------------------------------------------- substitution

def substitute_term(t: Term, mapping: dict[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Const):
        return t
    if isinstance(t, (Suc, Len, Pow2)):
        return type(t)(substitute_term(t.arg, mapping))
    if isinstance(t, (Sum, Prod)):
        return type(t)(substitute_term(t.left, mapping), substitute_term(t.right, mapping))
    if isinstance(t, App):
        return App(t.fn, tuple(substitute_term(a, mapping) for a in t.args))
    if isinstance(t, BitAt):
        return BitAt(substitute_term(t.arg, mapping), substitute_term(t.index, mapping))
    if isinstance(t, Slice):
        return Slice(substitute_term(t.arg, mapping),
                     substitute_term(t.start, mapping),
                     substitute_term(t.width, mapping))
    raise TypeError(f"not a term: {t!r}")


def substitute(f: Formula, mapping: dict[str, Term], *, check_capture: bool = True) -> Formula:
    """Replace free occurrences of the mapped variables by the given terms.

    Rejects substitutions whose terms mention a variable bound anywhere in f
    (no silent capture, and no silent capture-avoiding renaming either: the
    caller is expected to have renamed already).
    """
    if not mapping:
        return f
    if check_capture:
        bound = bound_vars(f)
        for x, t in mapping.items():
            clash = term_vars(t) & bound
            if clash:
                raise SubstitutionError(
                    f"substituting {x} would capture {sorted(clash)}")

    def walk(node: Formula, mapping: dict[str, Term]) -> Formula:
        if not mapping:
            return node
        if isinstance(node, Atom):
            return Atom(node.pred, tuple(substitute_term(a, mapping) for a in node.args),
                        node.positive)
        if isinstance(node, Eq):
            return Eq(substitute_term(node.left, mapping),
                      substitute_term(node.right, mapping), node.positive)
        if isinstance(node, Cmp):
            return Cmp(node.op, substitute_term(node.left, mapping),
                       substitute_term(node.right, mapping), node.positive)
        if isinstance(node, Truth):
            return node
        if isinstance(node, BINARY_TYPES):
            return type(node)(walk(node.left, mapping), walk(node.right, mapping))
        if isinstance(node, QUANT_TYPES):
            inner = {k: v for k, v in mapping.items() if k != node.var}
            return type(node)(node.var, walk(node.body, inner))
        raise TypeError(f"not a formula: {node!r}")

    return walk(f, mapping)


# --------------------------------------------------------------- closure

def closure(f: Formula, kind: str = "choice") -> Formula:
    """Prefix quantifiers over the free variables, in lexicographic order.

    kind is "choice" for the choice-universal closure or "blind" for the
    blind-universal closure.
    """
    quant = {"choice": ChoiceAll, "blind": ForAll}[kind]
    out = f
    for x in sorted(free_vars(f), reverse=True):
        out = quant(x, out)
    return out


# --------------------------------------------------------- elementarize

def is_elementary(f: Formula) -> bool:
    """No choice operators anywhere: a moveless game, won by truth."""
    if isinstance(f, CHOICE_TYPES):
        return False
    return all(is_elementary(c) for c in children(f))


def elementarize(f: Formula) -> Formula:
    """Replace choice-or/choice-ex subformulas by falsehood and
    choice-and/choice-all subformulas by truth (outermost first)."""
    if isinstance(f, (ChoiceOr, ChoiceEx)):
        return Truth(False)
    if isinstance(f, (ChoiceAnd, ChoiceAll)):
        return Truth(True)
    if isinstance(f, ATOMIC_TYPES):
        return f
    return with_children(f, tuple(elementarize(c) for c in children(f)))


def elementarize_sequent(s: Sequent) -> Formula:
    """Conjunction of elementarized antecedents implying the elementarized
    succedent (just the succedent's elementarization when the antecedent is
    empty)."""
    from .ast import implies

    succ = elementarize(s.succedent)
    if not s.antecedent:
        return succ
    ante = elementarize(s.antecedent[0])
    for g in s.antecedent[1:]:
        ante = And(ante, elementarize(g))
    return implies(ante, succ)


# ---------------------------------------------------------- size bounds

def _is_size_poly(t: Term, banned: str) -> bool:
    """A (0, ', +, x)-combination of sizes |y| of variables other than
    `banned`.  Sizes of constants are also allowed, so the shape survives
    prefixation (a game move substitutes a constant for a guard's
    parameter)."""
    if isinstance(t, Const):
        return t.num.value == 0
    if isinstance(t, Len):
        return isinstance(t.arg, Const) or (
            isinstance(t.arg, Var) and t.arg.name != banned)
    if isinstance(t, Suc):
        return _is_size_poly(t.arg, banned)
    if isinstance(t, (Sum, Prod)):
        return _is_size_poly(t.left, banned) and _is_size_poly(t.right, banned)
    return False


def is_polynomial_sizebound(s: Formula, x: str) -> bool:
    """True iff s is the atom |x| <= tau(|y1|,...,|yn|) with the yi distinct
    from x and tau a (0, ', +, x)-combination."""
    return (isinstance(s, Cmp) and s.positive and s.op == "<="
            and isinstance(s.left, Len) and isinstance(s.left.arg, Var)
            and s.left.arg.name == x and _is_size_poly(s.right, x))


def unbounded_choice_quantifier(f: Formula) -> OccPath | None:
    """Path of the first choice-quantified subformula violating the bounded
    shape, or None if the formula is polynomially bounded.

    The required shapes: every choice-universal  !y: G  has G = S -> H and
    every choice-existential  ?y: G  has G = S & H, with S a polynomial
    sizebound for y.
    """

    def walk(node: Formula, path: OccPath) -> OccPath | None:
        if isinstance(node, ChoiceAll):
            body = node.body
            # S -> H is stored as (negated S) | H
            ok = (isinstance(body, Or)
                  and is_polynomial_sizebound(_unnegate(body.left), node.var))
        elif isinstance(node, ChoiceEx):
            body = node.body
            ok = isinstance(body, And) and is_polynomial_sizebound(body.left, node.var)
        else:
            ok = True
        if isinstance(node, (ChoiceAll, ChoiceEx)) and not ok:
            return path
        for sel, kid in zip(_selectors(node), children(node)):
            bad = walk(kid, path + (sel,))
            if bad is not None:
                return bad
        return None

    return walk(f, ())


def _selectors(f: Formula) -> tuple[str, ...]:
    if isinstance(f, BINARY_TYPES):
        return ("l", "r")
    if isinstance(f, QUANT_TYPES):
        return ("b",)
    return ()


def _unnegate(f: Formula) -> Formula:
    """The positive version of a (possibly negated) comparison atom."""
    if isinstance(f, Cmp) and not f.positive:
        return Cmp(f.op, f.left, f.right, True)
    return f


def is_polynomially_bounded(f: Formula) -> bool:
    return unbounded_choice_quantifier(f) is None


def sizebound_of(f: Formula) -> tuple[str, Term] | None:
    """For a bounded choice quantifier node, the (variable, size polynomial)
    pair of its guard; None for anything else."""
    if isinstance(f, ChoiceAll) and isinstance(f.body, Or):
        guard = _unnegate(f.body.left)
        if is_polynomial_sizebound(guard, f.var):
            return f.var, guard.right
    if isinstance(f, ChoiceEx) and isinstance(f.body, And):
        guard = f.body.left
        if is_polynomial_sizebound(guard, f.var):
            return f.var, guard.right
    return None


# ------------------------------------------------------ alpha equality

def alpha_key(f: Formula) -> tuple:
    """A canonical key invariant under renaming of bound variables."""

    def term_key(t: Term, env: dict[str, int]) -> tuple:
        if isinstance(t, Var):
            if t.name in env:
                return ("bv", env[t.name])
            return ("fv", t.name)
        if isinstance(t, Const):
            return ("c", t.num.bits)
        if isinstance(t, (Suc, Len, Pow2)):
            return (type(t).__name__, term_key(t.arg, env))
        if isinstance(t, (Sum, Prod)):
            return (type(t).__name__, term_key(t.left, env), term_key(t.right, env))
        if isinstance(t, App):
            return ("app", t.fn) + tuple(term_key(a, env) for a in t.args)
        if isinstance(t, BitAt):
            return ("bit", term_key(t.arg, env), term_key(t.index, env))
        if isinstance(t, Slice):
            return ("slice", term_key(t.arg, env), term_key(t.start, env),
                    term_key(t.width, env))
        raise TypeError(f"not a term: {t!r}")

    def walk(node: Formula, env: dict[str, int], depth: int) -> tuple:
        if isinstance(node, Truth):
            return ("truth", node.positive)
        if isinstance(node, Atom):
            return ("atom", node.pred, node.positive) + tuple(
                term_key(a, env) for a in node.args)
        if isinstance(node, Eq):
            return ("eq", node.positive, term_key(node.left, env), term_key(node.right, env))
        if isinstance(node, Cmp):
            return ("cmp", node.op, node.positive, term_key(node.left, env),
                    term_key(node.right, env))
        if isinstance(node, BINARY_TYPES):
            return (type(node).__name__, walk(node.left, env, depth),
                    walk(node.right, env, depth))
        if isinstance(node, QUANT_TYPES):
            env2 = dict(env)
            env2[node.var] = depth
            return (type(node).__name__, walk(node.body, env2, depth + 1))
        raise TypeError(f"not a formula: {node!r}")

    return walk(f, {}, 0)


def alpha_eq(f: Formula, g: Formula) -> bool:
    return alpha_key(f) == alpha_key(g)


def sequent_alpha_key(s: Sequent, *, antecedent_as_multiset: bool = False) -> tuple:
    ante = tuple(alpha_key(g) for g in s.antecedent)
    if antecedent_as_multiset:
        ante = tuple(sorted(ante))
    return (ante, alpha_key(s.succedent))
