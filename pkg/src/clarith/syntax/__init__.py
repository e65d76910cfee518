"""Formula/term/sequent syntax: AST, parser, canonical printer, hygiene ops."""

from .ast import (
    App, Atom, BitAt, Cmp, Const, Eq, Exists, ForAll, Len, Pow2, Prod, Slice,
    Suc, Sum, Truth, Var, ZERO, TOP, BOT,
    And, Or, ChoiceAll, ChoiceAnd, ChoiceEx, ChoiceOr,
    ATOMIC_TYPES, BINARY_TYPES, CHOICE_TYPES, QUANT_TYPES,
    Formula, OccPath, PathError, Sequent, Term,
    children, double, double_suc, implies, negate, replace_at, subformula_at,
    surface_occurrences, with_children,
)
from .lexer import FormulaSyntaxError
from .ops import (
    SubstitutionError, all_vars, alpha_eq, alpha_key, bound_vars, closure,
    elementarize, elementarize_sequent, free_vars, fresh_name, hygienic,
    is_elementary, is_polynomial_sizebound, is_polynomially_bounded,
    sequent_alpha_key, sequent_vars, sizebound_of, substitute,
    substitute_term, term_vars, unbounded_choice_quantifier,
)
from .parser import parse, parse_formula, parse_sequent, parse_term
from .printer import pretty, print_formula, print_sequent, print_term
