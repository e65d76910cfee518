"""Canonical ASCII printer.

print(parse(text)) is the canonical spelling; parse(print(ast)) == ast.
Implication is re-sugared only in the simple case where the left disjunct is
a negated atom, e.g.  x != 0 | p  prints as  x = 0 -> p.
"""

from __future__ import annotations

from .ast import (
    App, Atom, BitAt, Cmp, Const, Eq, Exists, ForAll, Len, Pow2, Prod, Slice,
    Suc, Sum, Truth, Var, ZERO,
    And, Or, ChoiceAll, ChoiceAnd, ChoiceEx, ChoiceOr,
    Formula, Sequent, Term,
)

_PREC = {Or: 1, And: 2, ChoiceOr: 3, ChoiceAnd: 4}
_OPNAME = {Or: "|", And: "&", ChoiceOr: "U", ChoiceAnd: "n"}
_QNAME = {ChoiceAll: "!", ChoiceEx: "?", ForAll: "all ", Exists: "ex "}

_DOUBLE = Suc(Suc(ZERO))  # the term 0'' used by the t0/t1 abbreviations


def print_term(t: Term, prec: int = 0) -> str:
    # postfix abbreviations first: t#1 = (0''*t)', t#0 = 0''*t
    if isinstance(t, Suc) and isinstance(t.arg, Prod) and t.arg.left == _DOUBLE:
        return print_term(t.arg.right, 3) + "#1"
    if isinstance(t, Prod) and t.left == _DOUBLE:
        return print_term(t.right, 3) + "#0"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return str(t.num)
    if isinstance(t, Suc):
        return print_term(t.arg, 3) + "'"
    if isinstance(t, Sum):
        s = f"{print_term(t.left, 1)} + {print_term(t.right, 2)}"
        return f"({s})" if prec > 1 else s
    if isinstance(t, Prod):
        s = f"{print_term(t.left, 2)} * {print_term(t.right, 3)}"
        return f"({s})" if prec > 2 else s
    if isinstance(t, App):
        return f"{t.fn}({', '.join(print_term(a) for a in t.args)})"
    if isinstance(t, Len):
        return f"len({print_term(t.arg)})"
    if isinstance(t, Pow2):
        return f"pow2({print_term(t.arg)})"
    if isinstance(t, BitAt):
        return f"bit({print_term(t.arg)}, {print_term(t.index)})"
    if isinstance(t, Slice):
        return (f"sub({print_term(t.arg)}, {print_term(t.start)}, "
                f"{print_term(t.width)})")
    raise TypeError(f"not a term: {t!r}")


def _atom_str(f: Formula) -> str:
    if isinstance(f, Truth):
        return "T" if f.positive else "F"
    if isinstance(f, Atom):
        body = f.pred if not f.args else f"{f.pred}({', '.join(print_term(a) for a in f.args)})"
        return body if f.positive else "!" + body
    if isinstance(f, Eq):
        op = "=" if f.positive else "!="
        return f"{print_term(f.left)} {op} {print_term(f.right)}"
    if isinstance(f, Cmp):
        body = f"{print_term(f.left)} {f.op} {print_term(f.right)}"
        return body if f.positive else f"!({body})"
    raise TypeError(f"not an atom: {f!r}")


def _negated_atom(f: Formula) -> Formula | None:
    """The positive version when f is a negated atom, else None."""
    if isinstance(f, (Atom, Eq, Cmp)) and not f.positive:
        return type(f)(**{**f.__dict__, "positive": True})
    return None


def print_formula(f: Formula, prec: int = 0) -> str:
    if isinstance(f, (Truth, Atom, Eq, Cmp)):
        return _atom_str(f)
    if isinstance(f, Or):
        lhs = _negated_atom(f.left)
        if lhs is not None:
            s = f"{print_formula(lhs, 1)} -> {print_formula(f.right, 0)}"
            return f"({s})" if prec > 0 else s
    if isinstance(f, (Or, And, ChoiceOr, ChoiceAnd)):
        p = _PREC[type(f)]
        s = f"{print_formula(f.left, p)} {_OPNAME[type(f)]} {print_formula(f.right, p + 1)}"
        return f"({s})" if prec > p else s
    if isinstance(f, (ChoiceAll, ChoiceEx, ForAll, Exists)):
        q = _QNAME[type(f)]
        s = f"{q}{f.var}: {print_formula(f.body, 5)}"
        # quantifier scope is the tightest unit: parenthesize as an operand
        # of any binary connective, but not as another quantifier's body
        return f"({s})" if 0 < prec <= 4 else s
    raise TypeError(f"not a formula: {f!r}")


def print_sequent(s: Sequent) -> str:
    ante = ", ".join(print_formula(g) for g in s.antecedent)
    return f"{ante} |- {print_formula(s.succedent)}" if ante else f"|- {print_formula(s.succedent)}"


def pretty(obj) -> str:
    if isinstance(obj, Sequent):
        return print_sequent(obj)
    return print_formula(obj)
