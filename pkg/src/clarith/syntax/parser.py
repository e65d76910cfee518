"""Recursive-descent parser for formulas and sequents.

Grammar (binding from loosest to tightest; quantifiers and negation bind
tightest, so their scope is the smallest following unit):

    sequent  :=  [ formula ("," formula)* ] "|-" formula
    formula  :=  or-level ( "->" formula )?          # expanded at parse time
    or-level :=  and-level ( "|" and-level )*        # parallel disjunction
    and-level:=  cor-level ( "&" cor-level )*        # parallel conjunction
    cor-level:=  cand-level ( "U" cand-level )*      # choice disjunction
    cand-level:= unit ( "n" unit )*                  # choice conjunction
    unit     :=  "!" IDENT ":" unit | "?" IDENT ":" unit    # choice quantifiers
              |  "all" IDENT [":"] unit | "ex" IDENT [":"] unit   # blind quantifiers
              |  "!" unit                                   # negation
              |  "T" | "F" | "(" formula ")" | comparison | predicate
    comparison := term ( "=" | "!=" | "<=" | "<" ) term
    term     :=  factor ( "+" factor )*
    factor   :=  postfix ( "*" postfix )*
    postfix  :=  primary ( "'" | "#0" | "#1" )*      # successor, t0 = 0''*t, t1 = (0''*t)'
    primary  :=  NUMERAL | IDENT | IDENT "(" term-list ")"
              |  "len" "(" term ")" | "pow2" "(" term ")"
              |  "bit" "(" term "," term ")" | "sub" "(" term "," term "," term ")"
              |  "(" term ")"

Unicode operators are accepted as aliases.  Implication is stored expanded;
negation is pushed to the atoms; bound variables are renamed so the free and
bound variable sets of the result are disjoint.
"""

from __future__ import annotations

from ..numerals import Numeral
from .ast import (
    App, Atom, BitAt, Cmp, Const, Eq, Exists, ForAll, Len, Pow2, Prod, Slice,
    Suc, Sum, Truth, Var,
    And, Or, ChoiceAll, ChoiceAnd, ChoiceEx, ChoiceOr,
    Formula, Sequent, Term, double, double_suc, negate,
)
from .lexer import FormulaSyntaxError, Token, tokenize
from .ops import bound_vars, free_vars, hygienic

_QUANT = {"!": ChoiceAll, "?": ChoiceEx, "all": ForAll, "ex": Exists}
_BINARY_LEVELS = [("|", Or), ("&", And), ("U", ChoiceOr), ("n", ChoiceAnd)]
_CMP_OPS = ("=", "!=", "<=", "<")


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0
        self.pred_arity: dict[str, int] = {}
        self.fn_arity: dict[str, int] = {}

    # -- token plumbing ------------------------------------------------
    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> Token:
        tok = self.toks[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind in ("op", "kw")

    def eat(self, text: str) -> Token:
        if not self.at(text):
            tok = self.peek()
            raise FormulaSyntaxError(f"expected {text!r}, found {tok.text!r}", tok.pos)
        return self.next()

    def fail(self, message: str):
        raise FormulaSyntaxError(message, self.peek().pos)

    # -- formulas ------------------------------------------------------
    def formula(self) -> Formula:
        left = self.binary(0)
        if self.at("->"):
            self.next()
            right = self.formula()
            return Or(negate(left), right)
        return left

    def binary(self, level: int) -> Formula:
        if level == len(_BINARY_LEVELS):
            return self.unit()
        opname, ctor = _BINARY_LEVELS[level]
        node = self.binary(level + 1)
        while self.at(opname):
            self.next()
            node = ctor(node, self.binary(level + 1))
        return node

    def unit(self) -> Formula:
        tok = self.peek()
        if tok.text in ("!", "?") and self.peek(1).kind == "ident" and self.peek(2).text == ":":
            self.next()
            var = self.next().text
            self.next()
            return _QUANT[tok.text](var, self.unit())
        if tok.kind == "kw" and tok.text in ("all", "ex", "n", "U"):
            # "n"/"U" reach unit position only via the unicode quantifier
            # spellings (a binary connective cannot start a formula)
            if tok.text in ("all", "ex") or self.peek(1).kind == "ident":
                self.next()
                name = self.peek()
                if name.kind != "ident":
                    self.fail("expected a variable after quantifier")
                self.next()
                if self.at(":"):
                    self.next()
                ctor = {"all": ForAll, "ex": Exists, "n": ChoiceAll, "U": ChoiceEx}[tok.text]
                return ctor(name.text, self.unit())
        if tok.text == "!":
            self.next()
            return negate(self.unit())
        if tok.text == "T" and tok.kind == "kw":
            self.next()
            return Truth(True)
        if tok.text == "F" and tok.kind == "kw":
            self.next()
            return Truth(False)
        return self.atom()

    def atom(self) -> Formula:
        start = self.pos
        if self.at("("):
            # Could be a parenthesized formula or a parenthesized term that
            # starts a comparison; try the comparison reading first.
            try:
                return self.comparison()
            except FormulaSyntaxError:
                self.pos = start
            self.next()
            inner = self.formula()
            self.eat(")")
            return inner
        return self.comparison()

    def comparison(self) -> Formula:
        left = self.term()
        tok = self.peek()
        if tok.text in _CMP_OPS and tok.kind == "op":
            self.next()
            right = self.term()
            if tok.text == "=":
                atom = Eq(left, right)
            elif tok.text == "!=":
                atom = Eq(left, right, positive=False)
            else:
                atom = Cmp(tok.text, left, right)
            self.register_atom_terms(left, tok.pos)
            self.register_atom_terms(right, tok.pos)
            return atom
        # bare predicate: a variable-shaped or application-shaped term
        if isinstance(left, Var):
            self.register(self.pred_arity, left.name, 0, tok.pos)
            return Atom(left.name, ())
        if isinstance(left, App):
            self.register(self.pred_arity, left.fn, len(left.args), tok.pos)
            for arg in left.args:
                self.register_atom_terms(arg, tok.pos)
            return Atom(left.fn, left.args)
        self.fail("expected a comparison or predicate")

    def register(self, table: dict[str, int], name: str, arity: int, pos: int):
        seen = table.setdefault(name, arity)
        if seen != arity:
            raise FormulaSyntaxError(
                f"{name!r} used with arity {arity} but previously {seen}", pos)

    def register_atom_terms(self, t: Term, pos: int):
        """Record function-letter arities inside a successfully parsed atom."""
        if isinstance(t, App):
            self.register(self.fn_arity, t.fn, len(t.args), pos)
            for a in t.args:
                self.register_atom_terms(a, pos)
        elif isinstance(t, (Suc, Len, Pow2)):
            self.register_atom_terms(t.arg, pos)
        elif isinstance(t, (Sum, Prod)):
            self.register_atom_terms(t.left, pos)
            self.register_atom_terms(t.right, pos)
        elif isinstance(t, BitAt):
            self.register_atom_terms(t.arg, pos)
            self.register_atom_terms(t.index, pos)
        elif isinstance(t, Slice):
            self.register_atom_terms(t.arg, pos)
            self.register_atom_terms(t.start, pos)
            self.register_atom_terms(t.width, pos)

    # -- terms ---------------------------------------------------------
    def term(self) -> Term:
        node = self.factor()
        while self.at("+"):
            self.next()
            node = Sum(node, self.factor())
        return node

    def factor(self) -> Term:
        node = self.postfix()
        while self.at("*"):
            self.next()
            node = Prod(node, self.postfix())
        return node

    def postfix(self) -> Term:
        node = self.primary()
        while True:
            if self.at("'"):
                self.next()
                node = Suc(node)
            elif self.at("#0"):
                self.next()
                node = double(node)
            elif self.at("#1"):
                self.next()
                node = double_suc(node)
            else:
                return node

    def primary(self) -> Term:
        tok = self.peek()
        if tok.kind == "numeral":
            self.next()
            return Const(Numeral.parse(tok.text))
        if tok.kind == "kw" and tok.text in ("len", "pow2", "bit", "sub"):
            self.next()
            args = self.term_args(tok.text, {"len": 1, "pow2": 1, "bit": 2, "sub": 3}[tok.text])
            if tok.text == "len":
                return Len(args[0])
            if tok.text == "pow2":
                return Pow2(args[0])
            if tok.text == "bit":
                return BitAt(args[0], args[1])
            return Slice(args[0], args[1], args[2])
        if tok.kind == "ident":
            self.next()
            if self.at("("):
                args = self.term_args(tok.text, None)
                self.register(self.fn_arity, tok.text, len(args), tok.pos)
                return App(tok.text, tuple(args))
            return Var(tok.text)
        if self.at("("):
            self.next()
            inner = self.term()
            self.eat(")")
            return inner
        self.fail("expected a term")

    def term_args(self, name: str, arity: int | None) -> list[Term]:
        self.eat("(")
        args = [self.term()]
        while self.at(","):
            self.next()
            args.append(self.term())
        self.eat(")")
        if arity is not None and len(args) != arity:
            self.fail(f"{name} takes {arity} argument(s), got {len(args)}")
        return args

    # -- sequents --------------------------------------------------
    def sequent(self) -> Sequent:
        formulas: list[Formula] = []
        if not self.at("|-"):
            formulas.append(self.formula())
            while self.at(","):
                self.next()
                formulas.append(self.formula())
        self.eat("|-")
        succ = self.formula()
        return Sequent(tuple(formulas), succ)

    def finish(self):
        tok = self.peek()
        if tok.kind != "end":
            raise FormulaSyntaxError(f"unexpected trailing input {tok.text!r}", tok.pos)


def parse_formula(text: str, *, rename: bool = True) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.finish()
    return hygienic(f) if rename else f


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.finish()
    return t


def parse_sequent(text: str, *, rename: bool = True) -> Sequent:
    p = _Parser(text)
    s = p.sequent()
    p.finish()
    if not rename:
        return s
    taken: set[str] = set()
    for f in (*s.antecedent, s.succedent):
        taken |= free_vars(f)
    out = []
    for f in (*s.antecedent, s.succedent):
        g = hygienic(f, taken)
        taken |= free_vars(g) | bound_vars(g)
        out.append(g)
    return Sequent(tuple(out[:-1]), out[-1])


def parse(text: str) -> Formula | Sequent:
    """Parse a formula, or a sequent when the text contains the turnstile."""
    if "|-" in text or "∘–" in text or "⟹" in text:
        return parse_sequent(text)
    return parse_formula(text)
