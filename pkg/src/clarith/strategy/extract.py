"""Compile a checked arithmetic proof into a playable strategy plus an
explicit polynomial certificate for its move sizes.

Axioms map to their canonical strategies; a Logical Consequence line maps to
the proof-walking interpreter over the strategies of its premises; an
induction line maps to the chain composition.  Certificates compose by
sequence concatenation, so their size grows additively with the proof.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import cla4, cl12
from ..polyfun import (
    ExplicitPolyFn, GraphTerm, TermBuilder, compose, single, sum_bounds,
)
from ..syntax import (
    And, Atom, BitAt, Cmp, Const, Eq, Exists, ForAll, Len, Pow2, Prod, Slice,
    Suc, Sum, Truth, Var,
    ChoiceAll, ChoiceAnd, ChoiceEx, ChoiceOr, Formula, Term,
    alpha_eq, alpha_key, closure, free_vars, sizebound_of,
)
from ..game import choice_depth
from .specs import (
    CompiledProofSpec, InductionSpec, SilentSpec, StrategySpec,
)
from .runtime import axiom_strategy


class ExtractionError(Exception):
    pass


# ---------------------------------------------------------- size analysis

def _formula_height(f: Formula) -> int:
    kids = []
    if hasattr(f, "left"):
        kids = [f.left, f.right]
    elif hasattr(f, "body"):
        kids = [f.body]
    return 1 + max((_formula_height(k) for k in kids), default=0)


def _max_const_size(f: Formula) -> int:
    out = 0

    def term(t: Term) -> int:
        if isinstance(t, Const):
            return len(t.num)
        if isinstance(t, (Suc, Len, Pow2)):
            return term(t.arg)
        if isinstance(t, (Sum, Prod)):
            return max(term(t.left), term(t.right))
        if isinstance(t, BitAt):
            return max(term(t.arg), term(t.index))
        if isinstance(t, Slice):
            return max(term(t.arg), term(t.start), term(t.width))
        if hasattr(t, "args"):
            return max((term(a) for a in t.args), default=0)
        return 0

    def walk(node: Formula) -> int:
        if isinstance(node, (Truth,)):
            return 0
        if isinstance(node, (Atom,)):
            return max((term(a) for a in node.args), default=0)
        if isinstance(node, (Eq, Cmp)):
            return max(term(node.left), term(node.right))
        if hasattr(node, "left"):
            return max(walk(node.left), walk(node.right))
        return walk(node.body)

    return walk(f)


def _overhead_constant(formulas: list[Formula]) -> int:
    """Bound on move-prefix length plus literal constant sizes: any machine
    move is a component prefix (at most twice the formula height) plus either
    a pick bit or a numeral."""
    h = max((_formula_height(f) for f in formulas), default=1)
    c = max((_max_const_size(f) for f in formulas), default=0)
    return 2 * h + c + 2


def size_cap_term(f: Formula, builder: TermBuilder, env_node: int) -> int:
    """A DAG node bounding the size of any constant a reasonable play of f
    can mention: free variables are capped by the input, each sizebound
    translates with its argument sizes capped recursively, and everything is
    summed (sums dominate maxima since all constructors are monotone)."""
    caps: dict[str, int] = {}
    total = env_node

    def bound_term(t: Term) -> int:
        if isinstance(t, Const):
            return builder.const(t.num.value)
        if isinstance(t, Len):
            if isinstance(t.arg, Const):
                return builder.const(len(t.arg.num))
            if not isinstance(t.arg, Var):
                raise ExtractionError("sizebound arguments must be variables")
            return caps.get(t.arg.name, env_node)
        if isinstance(t, Suc):
            return builder.suc(bound_term(t.arg))
        if isinstance(t, Sum):
            return builder.add(bound_term(t.left), bound_term(t.right))
        if isinstance(t, Prod):
            return builder.mul(bound_term(t.left), bound_term(t.right))
        raise ExtractionError(f"unexpected sizebound term {t!r}")

    def walk(node: Formula):
        nonlocal total
        guard = sizebound_of(node)
        if guard is not None:
            var, bound = guard
            cap = bound_term(bound)
            caps[var] = cap
            total = builder.add(total, cap)
        if hasattr(node, "left"):
            walk(node.left)
            walk(node.right)
        elif hasattr(node, "body"):
            walk(node.body)

    walk(f)
    return total


# ------------------------------------------------------------ certificates

def silent_certificate() -> ExplicitPolyFn:
    b = TermBuilder()
    return single(b.done(b.const(1)))


def successor_certificate() -> ExplicitPolyFn:
    b = TermBuilder()
    return single(b.done(b.suc(b.var())))


def _provider_answer_bindings(proof: cl12.Proof) -> int:
    """How many numerals a single walk of the proof can receive from its
    resource sessions: the wait entries that bind a fresh variable at an
    antecedent slot.  Only those grow the circulating constants -- machine
    emissions and real environment moves are already covered by the input
    bound."""
    count = 0
    earlier: dict[str, cl12.ProofLine] = {}
    for line in proof.lines:
        if isinstance(line.rule, cl12.Wait):
            entries, _ = cl12.analyze_wait(line, earlier)
            count += sum(1 for e in entries
                         if e.obligation.ant is not None and e.fresh_var)
        earlier[line.label] = line
    return count


def lc_certificate(proof: cl12.Proof, provider_certs: list[ExplicitPolyFn]
                   ) -> ExplicitPolyFn:
    """Iterate y -> sum of provider bounds at y, plus y, plus overhead, once
    per provider answer the walk can absorb: every constant circulating in
    the walk is produced by the environment, by such an answer, or appears
    in the proof itself."""
    formulas = [l.sequent.succedent for l in proof.lines]
    for l in proof.lines:
        formulas.extend(l.sequent.antecedent)
    overhead = _overhead_constant(formulas)
    n = len(provider_certs)
    steps = _provider_answer_bindings(proof) + 1
    b = TermBuilder()
    node = b.var()
    kconst = b.const(overhead)
    for _ in range(steps):
        acc = b.add(node, kconst)
        for i in range(n):
            acc = b.add(acc, b.ph(f"g{i}", node))
        node = acc
    functional = b.done(node)
    parts = {f"g{i}": cert for i, cert in enumerate(provider_certs)}
    return compose(functional, parts) if parts else single(functional)


def induction_certificate(formula: Formula, game: Formula,
                          parts: list[ExplicitPolyFn]) -> ExplicitPolyFn:
    """depth * (y + 1) * phi(eta(y)) + eta(y) + overhead, with phi the summed
    premise bounds and eta the sizebound cap of the induction formula."""
    phi = parts[0]
    for p in parts[1:]:
        phi = sum_bounds(phi, p)
    depth = max(choice_depth(formula), 1)
    overhead = _overhead_constant([game])
    b = TermBuilder()
    y = b.var()
    eta = size_cap_term(formula, b, y)
    eta = b.add(eta, b.const(overhead))
    product = b.mul(b.const(depth), b.mul(b.suc(y), b.ph("phi", eta)))
    root = b.add(product, eta)
    return compose(b.done(root), {"phi": phi})


# --------------------------------------------------------------- extraction

@dataclass
class Extraction:
    spec: StrategySpec
    certificate: ExplicitPolyFn
    game: Formula


def extraction_blockers(proof: cla4.Cla4Proof, audit: cla4.AuditReport) -> list[str]:
    """Lines that stop a proof from compiling to a strategy."""
    problems = []
    if not audit.ok:
        bad = audit.first_failure()
        problems.append(f"proof rejected at line {bad.label}")
    if audit.trusted_stability:
        problems.append(f"{audit.trusted_stability} trusted stability step(s)")
    for line in proof.lines:
        if isinstance(line.just, cla4.PaTrusted):
            sent = cla4.sentence_of(line.sentence)
            from ..syntax import is_elementary
            if not is_elementary(sent):
                problems.append(
                    f"line {line.label}: trusted arithmetic on a non-elementary sentence")
    return problems


def extract(proof: cla4.Cla4Proof, *, audit: cla4.AuditReport | None = None
            ) -> Extraction:
    """Strategy plus certificate for the proof's conclusion.

    Requires an extraction-ready proof: fully checked, no trusted stability
    steps, trusted arithmetic only on elementary sentences (whose strategy is
    silent)."""
    if audit is None:
        audit = cla4.check_proof(proof)
    blockers = extraction_blockers(proof, audit)
    if blockers:
        raise ExtractionError("; ".join(blockers))
    memo: dict[str, Extraction] = {}
    for line in proof.lines:
        memo[line.label] = _extract_line(line, memo)
    return memo[proof.lines[-1].label]


def _extract_line(line: cla4.Cla4Line, memo: dict[str, Extraction]) -> Extraction:
    game = cla4.sentence_of(line.sentence)
    j = line.just
    if isinstance(j, cla4.Axiom):
        if j.k in (8, 9):
            return Extraction(axiom_strategy(j.k), successor_certificate(), game)
        return Extraction(SilentSpec(game), silent_certificate(), game)
    if isinstance(j, cla4.PaTrusted):
        return Extraction(SilentSpec(game), silent_certificate(), game)
    if isinstance(j, cla4.Lc):
        premise_ex = [memo[ref] for ref in line.premises]
        providers = _align_providers(j.proof, premise_ex)
        spec = CompiledProofSpec(j.proof, tuple(p.spec for p in providers), game)
        cert = lc_certificate(j.proof, [p.certificate for p in providers])
        return Extraction(spec, cert, game)
    if isinstance(j, cla4.Induction):
        base, left, right = memo[j.basis], memo[j.left], memo[j.right]
        f = cla4.match_induction(line.sentence, j.var, base.game, left.game,
                                 right.game)
        if f is None:
            raise ExtractionError(
                f"line {line.label}: premises fit no reading of the induction")
        spec = InductionSpec(f, j.var, base.spec, left.spec, right.spec, game)
        cert = induction_certificate(
            f, game, [base.certificate, left.certificate, right.certificate])
        return Extraction(spec, cert, game)
    raise ExtractionError(f"line {line.label}: no strategy for {j!r}")


def _align_providers(proof: cl12.Proof, premise_ex: list[Extraction]) -> list[Extraction]:
    """Match the attached proof's antecedent slots to premise strategies by
    formula identity (the premise multiset equals the antecedent multiset)."""
    remaining = list(premise_ex)
    out: list[Extraction] = []
    for ant in proof.conclusion.antecedent:
        hit = next((e for e in remaining if alpha_eq(e.game, ant)), None)
        if hit is None:
            raise ExtractionError("antecedent formula has no matching premise strategy")
        remaining.remove(hit)
        out.append(hit)
    if remaining:
        raise ExtractionError("premise strategy unused by the attached proof")
    return out
