"""Abstract syntax of formulas and sequents.

Formulas are kept in a negation normal form: negation appears only as the
``positive=False`` flag on atoms (and as the flipped truth constant).  The
parser expands ``->`` and pushes ``!`` inward through the usual dualities, so
every stored formula obeys the "negation on atoms only" discipline.

Operator vocabulary:

* parallel connectives ``And`` / ``Or`` and blind quantifiers ``ForAll`` /
  ``Exists``: no moves of their own, classical truth at the leaves;
* choice connectives ``ChoiceAnd`` / ``ChoiceOr`` and choice quantifiers
  ``ChoiceAll`` / ``ChoiceEx``: resolved by a move of one player
  (ChoiceAnd/ChoiceAll by the environment, ChoiceOr/ChoiceEx by the machine).

Terms are built from 0, variables, successor, sum, product and (at the pure
sequent-calculus level) applications of uninterpreted function letters.  The
interpreted size/power/bit/substring pseudoterms are term constructors that
may appear inside comparison atoms; they never occur inside proper terms of
the arithmetic fragment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from ..numerals import Numeral


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    num: Numeral

    @staticmethod
    def of(value: int) -> "Const":
        return Const(Numeral.from_int(value))


@dataclass(frozen=True)
class Suc:
    arg: "Term"


@dataclass(frozen=True)
class Sum:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Prod:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple["Term", ...]


# Interpreted pseudoterms, legal only inside comparison atoms.

@dataclass(frozen=True)
class Len:
    arg: "Term"


@dataclass(frozen=True)
class Pow2:
    arg: "Term"


@dataclass(frozen=True)
class BitAt:
    arg: "Term"
    index: "Term"


@dataclass(frozen=True)
class Slice:
    arg: "Term"
    start: "Term"
    width: "Term"


Term = Union[Var, Const, Suc, Sum, Prod, App, Len, Pow2, BitAt, Slice]

ZERO = Const(Numeral(""))
PSEUDO_TERM_TYPES = (Len, Pow2, BitAt, Slice)


def double(t: Term) -> Term:
    """The term 0''*t, i.e. the binary 0-successor t0 (appends a 0 bit)."""
    return Prod(Suc(Suc(ZERO)), t)


def double_suc(t: Term) -> Term:
    """The term (0''*t)', i.e. the binary 1-successor t1 (appends a 1 bit)."""
    return Suc(double(t))


# ------------------------------------------------------------- formulas

@dataclass(frozen=True)
class Truth:
    positive: bool  # True: automatically machine-won; False: environment-won


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...]
    positive: bool = True


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term
    positive: bool = True


@dataclass(frozen=True)
class Cmp:
    op: str  # "<=" or "<"
    left: Term
    right: Term
    positive: bool = True


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ChoiceAnd:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ChoiceOr:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ChoiceAll:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ChoiceEx:
    var: str
    body: "Formula"


Formula = Union[
    Truth, Atom, Eq, Cmp,
    And, Or, ChoiceAnd, ChoiceOr,
    ForAll, Exists, ChoiceAll, ChoiceEx,
]

TOP = Truth(True)
BOT = Truth(False)

ATOMIC_TYPES = (Truth, Atom, Eq, Cmp)
BINARY_TYPES = (And, Or, ChoiceAnd, ChoiceOr)
QUANT_TYPES = (ForAll, Exists, ChoiceAll, ChoiceEx)
CHOICE_TYPES = (ChoiceAnd, ChoiceOr, ChoiceAll, ChoiceEx)

_BINARY_DUAL = {And: Or, Or: And, ChoiceAnd: ChoiceOr, ChoiceOr: ChoiceAnd}
_QUANT_DUAL = {ForAll: Exists, Exists: ForAll, ChoiceAll: ChoiceEx, ChoiceEx: ChoiceAll}


def negate(f: Formula) -> Formula:
    """Dual of f, with negation pushed to the atoms.  Involutive."""
    if isinstance(f, Truth):
        return Truth(not f.positive)
    if isinstance(f, (Atom, Eq, Cmp)):
        return type(f)(**{**f.__dict__, "positive": not f.positive})
    if isinstance(f, BINARY_TYPES):
        return _BINARY_DUAL[type(f)](negate(f.left), negate(f.right))
    if isinstance(f, QUANT_TYPES):
        return _QUANT_DUAL[type(f)](f.var, negate(f.body))
    raise TypeError(f"not a formula: {f!r}")


def implies(e: Formula, f: Formula) -> Formula:
    """e -> f, stored expanded as (negation of e) | f."""
    return Or(negate(e), f)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, BINARY_TYPES):
        return (f.left, f.right)
    if isinstance(f, QUANT_TYPES):
        return (f.body,)
    return ()


def with_children(f: Formula, kids: tuple[Formula, ...]) -> Formula:
    if isinstance(f, BINARY_TYPES):
        return type(f)(kids[0], kids[1])
    if isinstance(f, QUANT_TYPES):
        return type(f)(f.var, kids[0])
    if kids:
        raise ValueError("atomic formula has no children")
    return f


# ------------------------------------------------------------- sequents

@dataclass(frozen=True)
class Sequent:
    antecedent: tuple[Formula, ...]
    succedent: Formula


# ----------------------------------------------------- occurrence paths

# A path is a tuple of selectors from the root of a formula: "l"/"r" for the
# children of a binary connective, "b" for a quantifier body.  Paths address
# surface occurrences only: they may pass through parallel connectives and
# blind quantifiers but never descend through a choice operator.

OccPath = tuple[str, ...]


class PathError(ValueError):
    pass


def subformula_at(f: Formula, path: OccPath) -> Formula:
    node = f
    for step, sel in enumerate(path):
        if isinstance(node, CHOICE_TYPES):
            raise PathError(f"path descends through a choice operator at step {step}")
        if sel in ("l", "r") and isinstance(node, BINARY_TYPES):
            node = node.left if sel == "l" else node.right
        elif sel == "b" and isinstance(node, QUANT_TYPES):
            node = node.body
        else:
            raise PathError(f"selector {sel!r} does not match node at step {step}")
    return node


def replace_at(f: Formula, path: OccPath, replacement: Formula) -> Formula:
    """Replace exactly the addressed surface occurrence."""
    if not path:
        return replacement
    if isinstance(f, CHOICE_TYPES):
        raise PathError("path descends through a choice operator")
    sel = path[0]
    if sel in ("l", "r") and isinstance(f, BINARY_TYPES):
        kid = f.left if sel == "l" else f.right
        new = replace_at(kid, path[1:], replacement)
        return type(f)(new, f.right) if sel == "l" else type(f)(f.left, new)
    if sel == "b" and isinstance(f, QUANT_TYPES):
        return type(f)(f.var, replace_at(f.body, path[1:], replacement))
    raise PathError(f"selector {sel!r} does not match node")


def surface_occurrences(f: Formula, *, through_blind: bool = True) -> list[tuple[OccPath, Formula]]:
    """All (path, subformula) pairs not in the scope of any choice operator.

    The choice nodes themselves are included (they are addressable); nothing
    below them is.
    """
    out: list[tuple[OccPath, Formula]] = []

    def walk(node: Formula, path: OccPath):
        out.append((path, node))
        if isinstance(node, CHOICE_TYPES):
            return
        if isinstance(node, BINARY_TYPES):
            walk(node.left, path + ("l",))
            walk(node.right, path + ("r",))
        elif isinstance(node, QUANT_TYPES) and through_blind:
            walk(node.body, path + ("b",))

    walk(f, ())
    return out
