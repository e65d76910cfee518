"""Classical first-order prover used as the stability oracle.

Validity of an elementary formula is checked by refuting its negation with
a ground tableau: free variables are frozen to fresh constants, existentials
are skolemized, connectives are expanded, and universal formulas are
instantiated over the branch's ground terms in iteratively deepened rounds.
Equality is the logical identity predicate: branches close under the
congruence closure of their equations (so reflexivity, substitution into
functions and predicates, and chains of equations all work) but never by
arithmetic.

Interpreted pseudoterms (len, pow2, bit, sub) are treated as uninterpreted
function letters here: a formula claimed valid is then valid under every
reading of them, which is the sound direction for a checker.

Outcomes: "valid", "invalid" (some branch saturated while open, which is a
Herbrand countermodel), or "unknown" when the node budget or round limit
runs out.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .syntax import (
    App, Atom, BitAt, Cmp, Const, Eq, Exists, ForAll, Len, Pow2, Prod, Slice,
    Suc, Sum, Truth, Var,
    And, Or, Formula, Term, free_vars, negate, substitute, term_vars,
)


class BudgetExhausted(Exception):
    pass


def freeze_free_vars(f: Formula) -> Formula:
    """Replace free variables by fresh 0-ary function letters so the prover
    can treat them as constants."""
    mapping = {x: App(f"_fv_{x}", ()) for x in free_vars(f)}
    return substitute(f, mapping, check_capture=False)


def _skolemize(f: Formula, universals: tuple[Term, ...], counter) -> Formula:
    if isinstance(f, (Truth, Atom, Eq, Cmp)):
        return f
    if isinstance(f, (And, Or)):
        return type(f)(_skolemize(f.left, universals, counter),
                       _skolemize(f.right, universals, counter))
    if isinstance(f, ForAll):
        return ForAll(f.var, _skolemize(f.body, universals + (Var(f.var),), counter))
    if isinstance(f, Exists):
        sk = App(f"_sk{next(counter)}", universals)
        body = substitute(f.body, {f.var: sk}, check_capture=False)
        return _skolemize(body, universals, counter)
    raise TypeError(f"not an elementary formula: {f!r}")


# ------------------------------------------------------- term machinery

def subterms(t: Term) -> list[Term]:
    out = [t]
    for a in _term_args(t):
        out += subterms(a)
    return out


def _term_args(t: Term) -> tuple[Term, ...]:
    if isinstance(t, (Suc, Len, Pow2)):
        return (t.arg,)
    if isinstance(t, (Sum, Prod)):
        return (t.left, t.right)
    if isinstance(t, App):
        return t.args
    if isinstance(t, BitAt):
        return (t.arg, t.index)
    if isinstance(t, Slice):
        return (t.arg, t.start, t.width)
    return ()


def _term_head(t: Term) -> tuple:
    if isinstance(t, App):
        return ("app", t.fn, len(t.args))
    if isinstance(t, Const):
        return ("const", t.num.bits)
    if isinstance(t, Var):
        return ("var", t.name)
    return (type(t).__name__, len(_term_args(t)))


class Congruence:
    """Union-find congruence closure over a finite set of ground terms."""

    def __init__(self, max_members: int = 3000):
        self.parent: dict[Term, Term] = {}
        self.members: list[Term] = []
        self.max_members = max_members

    def add(self, t: Term):
        if t not in self.parent:
            if len(self.members) >= self.max_members:
                raise BudgetExhausted()
            self.parent[t] = t
            self.members.append(t)
            for a in _term_args(t):
                self.add(a)

    def find(self, t: Term) -> Term:
        while self.parent[t] != t:
            self.parent[t] = self.parent[self.parent[t]]
            t = self.parent[t]
        return t

    def union(self, s: Term, t: Term):
        self.add(s)
        self.add(t)
        rs, rt = self.find(s), self.find(t)
        if rs != rt:
            self.parent[rs] = rt

    def close(self):
        changed = True
        while changed:
            changed = False
            signature: dict[tuple, Term] = {}
            for t in self.members:
                args = _term_args(t)
                if not args:
                    continue
                key = (_term_head(t), tuple(self.find(a) for a in args))
                other = signature.setdefault(key, t)
                if other is not t and self.find(other) != self.find(t):
                    self.union(other, t)
                    changed = True


@dataclass
class Branch:
    pos_eqs: list[tuple[Term, Term]] = field(default_factory=list)
    dis_eqs: list[tuple[Term, Term]] = field(default_factory=list)
    atoms: list[tuple[str, tuple[Term, ...], bool]] = field(default_factory=list)
    universals: list[ForAll] = field(default_factory=list)
    used: set[tuple[int, Term]] = field(default_factory=set)
    lit_counts: dict = field(default_factory=dict)
    journal: list = field(default_factory=list)

    def snapshot(self) -> tuple:
        return (len(self.pos_eqs), len(self.dis_eqs), len(self.atoms),
                len(self.universals), set(self.used), len(self.journal))

    def restore(self, snap: tuple):
        ne, nd, na, nu, used, nj = snap
        del self.pos_eqs[ne:]
        del self.dis_eqs[nd:]
        del self.atoms[na:]
        del self.universals[nu:]
        self.used = used
        while len(self.journal) > nj:
            key = self.journal.pop()
            self.lit_counts[key] -= 1
            if not self.lit_counts[key]:
                del self.lit_counts[key]

    def _record(self, key) -> None:
        self.lit_counts[key] = self.lit_counts.get(key, 0) + 1
        self.journal.append(key)

    def add_literal(self, f) -> bool:
        """Store one literal; True when it closes the branch against an
        exact (syntactic) complement -- the congruence pass at the next
        quiet point catches the rest."""
        if isinstance(f, Eq):
            key = ("eq", f.left, f.right)
            if f.positive:
                self.pos_eqs.append((f.left, f.right))
                self._record(key)
                return (("ne", f.left, f.right) in self.lit_counts
                        or ("ne", f.right, f.left) in self.lit_counts)
            self.dis_eqs.append((f.left, f.right))
            self._record(("ne", f.left, f.right))
            return (f.left == f.right
                    or ("eq", f.left, f.right) in self.lit_counts
                    or ("eq", f.right, f.left) in self.lit_counts)
        if isinstance(f, Atom):
            name, args, pos = f.pred, f.args, f.positive
        else:  # comparison treated as an uninterpreted predicate
            name, args, pos = f"_cmp_{f.op}", (f.left, f.right), f.positive
        self.atoms.append((name, args, pos))
        self._record(("at", name, args, pos))
        return ("at", name, args, not pos) in self.lit_counts

    def closed(self) -> bool:
        cc = Congruence()
        for s, t in self.pos_eqs:
            cc.union(s, t)
        for _, args, _pos in self.atoms:
            for a in args:
                cc.add(a)
        for s, t in self.dis_eqs:
            cc.add(s)
            cc.add(t)
        cc.close()
        for s, t in self.dis_eqs:
            if cc.find(s) == cc.find(t):
                return True
        by_pred: dict[tuple[str, int], list[tuple[tuple[Term, ...], bool]]] = {}
        for name, args, pos in self.atoms:
            by_pred.setdefault((name, len(args)), []).append((args, pos))
        for rows in by_pred.values():
            pos_rows = [a for a, p in rows if p]
            neg_rows = [a for a, p in rows if not p]
            for ra in pos_rows:
                for rb in neg_rows:
                    if all(cc.find(a) == cc.find(b) for a, b in zip(ra, rb)):
                        return True
        return False

    def ground_terms(self) -> list[Term]:
        seen: dict[Term, None] = {}
        sources: list[Term] = []
        for s, t in self.pos_eqs + self.dis_eqs:
            sources += [s, t]
        for _, args, _ in self.atoms:
            sources += list(args)
        for u in self.universals:
            sources += _ground_terms_of(u)
        for t in sources:
            for sub in subterms(t):
                if not term_vars(sub):
                    seen.setdefault(sub, None)
        return list(seen) or [Const.of(0)]


def _ground_terms_of(f: Formula) -> list[Term]:
    if isinstance(f, Atom):
        src = list(f.args)
    elif isinstance(f, (Eq, Cmp)):
        src = [f.left, f.right]
    elif isinstance(f, (And, Or)):
        return _ground_terms_of(f.left) + _ground_terms_of(f.right)
    elif isinstance(f, (ForAll, Exists)):
        return _ground_terms_of(f.body)
    else:
        return []
    out = []
    for t in src:
        for sub in subterms(t):
            if not term_vars(sub):
                out.append(sub)
    return out


class _Prover:
    def __init__(self, node_budget: int):
        self.budget = node_budget
        self.nodes = 0
        self.saw_saturated_open = False
        self.hit_round_limit = False

    def spend(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted()

    def refute(self, queue: list[Formula], branch: Branch, rounds: int) -> bool:
        """True iff every branch closes.  On a False return, the flags say
        whether the open branch was genuinely saturated or just hit the
        round quota."""
        self.spend()
        queue = list(queue)
        while queue:
            self.spend()
            f = queue.pop()
            if isinstance(f, Truth):
                if not f.positive:
                    return True
                continue
            if isinstance(f, And):
                queue += [f.left, f.right]
                continue
            if isinstance(f, Or):
                snap = branch.snapshot()
                if not self.refute(queue + [f.left], branch, rounds):
                    return False
                branch.restore(snap)
                return self.refute(queue + [f.right], branch, rounds)
            if isinstance(f, ForAll):
                branch.universals.append(f)
                continue
            if isinstance(f, Exists):
                raise AssertionError("skolemization left an existential behind")
            if not isinstance(f, (Eq, Atom, Cmp)):
                raise TypeError(f"unexpected formula {f!r}")
            if branch.add_literal(f):
                return True
        # quiet point: the full congruence pass runs once per round, not
        # once per literal
        if branch.closed():
            return True
        if rounds <= 0:
            self.hit_round_limit = True
            return False
        terms = branch.ground_terms()
        # a gamma round whose instance count dwarfs the remaining budget, or
        # whose literal set can no longer be congruence-checked affordably,
        # cannot finish: give up early instead of thrashing
        pending = len(terms) * len(branch.universals)
        if pending + self.nodes > self.budget or len(terms) > 120:
            raise BudgetExhausted()
        new: list[Formula] = []
        for idx, u in enumerate(branch.universals):
            for t in terms:
                key = (idx, t)
                if key not in branch.used:
                    branch.used.add(key)
                    new.append(substitute(u.body, {u.var: t}, check_capture=False))
        if not new:
            self.saw_saturated_open = True
            return False
        return self.refute(new, branch, rounds - 1)


@dataclass
class ProofOutcome:
    status: str  # "valid" | "invalid" | "unknown"
    nodes: int = 0
    detail: str = ""


def prove_valid(f: Formula, node_budget: int = 100_000, max_rounds: int = 4,
                ) -> ProofOutcome:
    """Decide classical validity of an elementary formula, within budget.

    max_rounds=0 disables universal instantiation altogether: expansion is
    then purely propositional plus congruence, the deterministic replay mode
    for instantiation certificates."""
    counter = itertools.count()
    frozen = freeze_free_vars(f)
    negated = _skolemize(negate(frozen), (), counter)
    total = 0
    for rounds in (range(1, max_rounds + 1) if max_rounds else (0,)):
        prover = _Prover(node_budget)
        branch = Branch()
        try:
            closed = prover.refute([negated], branch, rounds)
        except BudgetExhausted:
            return ProofOutcome("unknown", total + prover.nodes, "node budget exhausted")
        total += prover.nodes
        if closed:
            return ProofOutcome("valid", total)
        if prover.saw_saturated_open and not prover.hit_round_limit:
            return ProofOutcome("invalid", total, "open saturated tableau branch")
    return ProofOutcome("unknown", total, f"no closure within {max_rounds} rounds")
