"""Proof objects and rule checking for the sequent calculus.

A proof is a sequence of lines, each a sequent with a justification naming
one of the six rules.  Checking a Choose or Replicate line recomputes the
required premise from the conclusion and matches it against the referenced
earlier line (alpha-equivalence; antecedents positional except Replicate,
which matches the antecedent as a multiset with one duplicate removed).
Checking a Wait line verifies the four structural conditions -- every
environment-movable surface choice in the conclusion must have its premise
among the referenced lines -- plus stability of the conclusion.

Stability evidence comes in three tiers: the built-in prover, an attached
certificate of instantiation hints, or a trust tag.  Trusted uses are always
surfaced in the report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .syntax import (
    ChoiceAll, ChoiceAnd, ChoiceEx, ChoiceOr, Const, Formula, OccPath,
    Sequent, Term, Var,
    alpha_eq, bound_vars, elementarize_sequent, free_vars, fresh_name,
    replace_at, sequent_alpha_key, sequent_vars, subformula_at, substitute,
    surface_occurrences,
)
from .tableau import ProofOutcome, prove_valid


# ----------------------------------------------------------- evidence

@dataclass(frozen=True)
class Builtin:
    def describe(self) -> str:
        return "builtin"


@dataclass(frozen=True)
class Certificate:
    """Instantiation hints: each group names an antecedent slot and the
    terms for its leading blind-universal prefix.  Replay adds exactly those
    instances and runs the prover with instantiation disabled, so checking
    a certificate is fast and deterministic."""
    instances: tuple[tuple[int, tuple[Term, ...]], ...]

    def describe(self) -> str:
        return f"cert[{len(self.instances)} instances]"


@dataclass(frozen=True)
class Trusted:
    tag: str

    def describe(self) -> str:
        return f"trusted:{self.tag}"


Evidence = Union[Builtin, Certificate, Trusted]


# -------------------------------------------------------- justifications

@dataclass(frozen=True)
class OrChoose:
    path: OccPath
    i: int


@dataclass(frozen=True)
class AndChoose:
    ant: int
    path: OccPath
    i: int


@dataclass(frozen=True)
class ExChoose:
    path: OccPath
    term: Term


@dataclass(frozen=True)
class AllChoose:
    ant: int
    path: OccPath
    term: Term


@dataclass(frozen=True)
class Replicate:
    ant: int


@dataclass(frozen=True)
class Wait:
    pass


Rule = Union[OrChoose, AndChoose, ExChoose, AllChoose, Replicate, Wait]


@dataclass(frozen=True)
class ProofLine:
    label: str
    sequent: Sequent
    rule: Rule
    premises: tuple[str, ...] = ()
    evidence: Evidence = Builtin()


@dataclass(frozen=True)
class Proof:
    lines: tuple[ProofLine, ...]

    @property
    def conclusion(self) -> Sequent:
        return self.lines[-1].sequent

    def line(self, label: str) -> ProofLine:
        for l in self.lines:
            if l.label == label:
                return l
        raise KeyError(label)


def seq_eq(a: Sequent, b: Sequent) -> bool:
    return sequent_alpha_key(a) == sequent_alpha_key(b)


# ------------------------------------------------------ Wait obligations

@dataclass(frozen=True)
class Obligation:
    """One environment-movable surface choice occurrence in a conclusion."""
    ant: int | None  # None: in the succedent
    path: OccPath
    node: Formula

    @property
    def binary(self) -> bool:
        return isinstance(self.node, (ChoiceAnd, ChoiceOr))

    def describe(self) -> str:
        where = "succedent" if self.ant is None else f"antecedent #{self.ant}"
        kind = {ChoiceAnd: "choice-and", ChoiceOr: "choice-or",
                ChoiceAll: "choice-all", ChoiceEx: "choice-ex"}[type(self.node)]
        return f"{kind} at {where} path {'.'.join(self.path) or '<root>'}"


def wait_obligations(x: Sequent) -> list[Obligation]:
    out: list[Obligation] = []
    for path, node in surface_occurrences(x.succedent):
        if isinstance(node, (ChoiceAnd, ChoiceAll)):
            out.append(Obligation(None, path, node))
    for i, g in enumerate(x.antecedent):
        for path, node in surface_occurrences(g):
            if isinstance(node, (ChoiceOr, ChoiceEx)):
                out.append(Obligation(i, path, node))
    return out


def _slot_formula(s: Sequent, ant: int | None) -> Formula:
    return s.succedent if ant is None else s.antecedent[ant]


def _with_slot(s: Sequent, ant: int | None, f: Formula) -> Sequent:
    if ant is None:
        return Sequent(s.antecedent, f)
    new = list(s.antecedent)
    new[ant] = f
    return Sequent(tuple(new), s.succedent)


def expected_binary_premise(x: Sequent, ob: Obligation, i: int) -> Sequent:
    child = ob.node.left if i == 0 else ob.node.right
    return _with_slot(x, ob.ant, replace_at(_slot_formula(x, ob.ant), ob.path, child))


def match_fresh_premise(x: Sequent, ob: Obligation, candidate: Sequent) -> str | None:
    """If candidate is x with the quantified obligation occurrence replaced
    by its body at a variable fresh for x, return that variable."""
    node = ob.node
    if not isinstance(node, (ChoiceAll, ChoiceEx)):
        return None
    if len(candidate.antecedent) != len(x.antecedent):
        return None
    taken = sequent_vars(x)
    try:
        cand_sub = subformula_at(_slot_formula(candidate, ob.ant), ob.path)
    except Exception:
        return None
    candidates = sorted((free_vars(cand_sub) | {fresh_name("w", taken | sequent_vars(candidate))})
                        - taken)
    for y in candidates:
        try:
            body_y = substitute(node.body, {node.var: Var(y)})
        except Exception:
            continue
        expected = _with_slot(x, ob.ant,
                              replace_at(_slot_formula(x, ob.ant), ob.path, body_y))
        if seq_eq(expected, candidate):
            return y
    return None


@dataclass
class WaitEntry:
    """Resolution of one obligation branch against a referenced premise."""
    obligation: Obligation
    branch: int | None  # 0/1 for binary choices, None for quantifiers
    premise: str
    fresh_var: str | None = None


def analyze_wait(line: ProofLine, lines_by_label: dict[str, ProofLine]
                 ) -> tuple[list[WaitEntry], list[str]]:
    x = line.sequent
    refs = [lines_by_label[p] for p in line.premises if p in lines_by_label]
    entries: list[WaitEntry] = []
    problems: list[str] = []
    for ob in wait_obligations(x):
        if ob.binary:
            for i in (0, 1):
                expected = expected_binary_premise(x, ob, i)
                hit = next((r for r in refs if seq_eq(r.sequent, expected)), None)
                if hit is None:
                    problems.append(
                        f"missing premise for branch {i} of {ob.describe()}")
                else:
                    entries.append(WaitEntry(ob, i, hit.label))
        else:
            hit = None
            for r in refs:
                y = match_fresh_premise(x, ob, r.sequent)
                if y is not None:
                    hit = WaitEntry(ob, None, r.label, y)
                    break
            if hit is None:
                problems.append(
                    f"missing fresh-variable premise for {ob.describe()}")
            else:
                entries.append(hit)
    return entries, problems


# ----------------------------------------------------------- stability

@dataclass
class StabilityVerdict:
    status: str  # "valid" | "refuted" | "unknown"
    via: str = ""
    nodes: int = 0


_stability_cache: dict[tuple, StabilityVerdict] = {}


def replay_certificate(x: Sequent, cert: "Certificate", *,
                       node_budget: int = 100_000) -> "ProofOutcome":
    """Check stability against attached instantiation hints.

    Each hint instantiates the leading blind-universal prefix of the named
    antecedent's elementarization; the strengthened implication is then
    checked with instantiation turned off.  Sound because every added
    conjunct is an instance of an antecedent the implication already
    assumes."""
    from .syntax import And as ParAnd, ForAll, elementarize, implies
    elz = elementarize_sequent(x)
    added = None
    for ant_idx, terms in cert.instances:
        if not 0 <= ant_idx < len(x.antecedent):
            return ProofOutcome("unknown", 0, f"no antecedent #{ant_idx}")
        g = elementarize(x.antecedent[ant_idx])
        mapping = {}
        body = g
        for t in terms:
            if not isinstance(body, ForAll):
                return ProofOutcome("unknown", 0,
                                    f"antecedent #{ant_idx} has too few universals")
            mapping[body.var] = t
            body = body.body
        try:
            inst = substitute(body, mapping)
        except Exception as e:
            return ProofOutcome("unknown", 0, f"bad instance: {e}")
        added = inst if added is None else ParAnd(added, inst)
    goal = elz if added is None else implies(added, elz)
    return prove_valid(goal, node_budget=node_budget, max_rounds=0)


def stability(x: Sequent, *, node_budget: int = 100_000, max_rounds: int = 4,
              model_size: int = 3, use_models: bool = True) -> StabilityVerdict:
    """Classical validity of the sequent's elementarization: valid, refuted
    (a finite countermodel falsifies it), or unknown within budget."""
    elz = elementarize_sequent(x)
    key = sequent_alpha_key(Sequent((), elz))
    hit = _stability_cache.get(key)
    if hit is not None:
        return hit
    if use_models:
        # a cheap countermodel pass first: tiny models kill most invalid
        # sequents long before the tableau would saturate
        from .models import find_countermodel
        quick = find_countermodel(elz, max_size=2, combo_limit=5_000, samples=200)
        if quick is not None:
            verdict = StabilityVerdict("refuted", f"countermodel of size {quick.size}")
            _stability_cache[key] = verdict
            return verdict
    outcome = prove_valid(elz, node_budget=node_budget, max_rounds=max_rounds)
    if outcome.status == "valid":
        verdict = StabilityVerdict("valid", "builtin prover", outcome.nodes)
    elif outcome.status == "invalid":
        verdict = StabilityVerdict("refuted", "open tableau branch", outcome.nodes)
    else:
        verdict = StabilityVerdict("unknown", outcome.detail, outcome.nodes)
        if use_models:
            from .models import find_countermodel
            model = find_countermodel(elz, max_size=model_size)
            if model is not None:
                verdict = StabilityVerdict(
                    "refuted", f"countermodel of size {model.size}", outcome.nodes)
    if verdict.status != "unknown":
        _stability_cache[key] = verdict
    return verdict


# ------------------------------------------------------------- checking

@dataclass
class LineDiagnostic:
    label: str
    ok: bool
    messages: list[str] = field(default_factory=list)


@dataclass
class CheckReport:
    ok: bool
    diagnostics: list[LineDiagnostic]
    trusted_stability: list[tuple[str, str]]  # (label, tag)
    conclusion: Sequent | None

    def first_failure(self) -> LineDiagnostic | None:
        return next((d for d in self.diagnostics if not d.ok), None)


def _check_term_condition(term: Term, premise: Sequent) -> str | None:
    if isinstance(term, Const):
        return None
    if isinstance(term, Var):
        if term.name in bound_vars(premise.succedent) or any(
                term.name in bound_vars(g) for g in premise.antecedent):
            return f"variable {term.name} has bound occurrences in the premise"
        return None
    return "choice parameter must be a constant or a variable"


def check_line(line: ProofLine, lines_by_label: dict[str, ProofLine],
               *, stability_kwargs: dict | None = None
               ) -> tuple[list[str], list[tuple[str, str]]]:
    """Violations (empty when the line checks) and trusted-stability uses."""
    problems: list[str] = []
    trusted: list[tuple[str, str]] = []
    x = line.sequent
    rule = line.rule
    refs = []
    for p in line.premises:
        if p not in lines_by_label:
            problems.append(f"premise {p} does not name an earlier line")
        else:
            refs.append(lines_by_label[p])
    if problems:
        return problems, trusted

    def the_premise() -> Sequent | None:
        if len(refs) != 1:
            problems.append(f"{type(rule).__name__} takes exactly one premise")
            return None
        return refs[0].sequent

    if isinstance(rule, (OrChoose, AndChoose)):
        if rule.i not in (0, 1):
            problems.append("choice index must be 0 or 1")
            return problems, trusted
        ant = None if isinstance(rule, OrChoose) else rule.ant
        wanted = ChoiceOr if isinstance(rule, OrChoose) else ChoiceAnd
        premise = the_premise()
        if premise is None:
            return problems, trusted
        try:
            slot = _slot_formula(x, ant)
            node = subformula_at(slot, rule.path)
        except Exception as e:
            problems.append(f"bad occurrence path: {e}")
            return problems, trusted
        if not isinstance(node, wanted):
            problems.append(f"occurrence is not a {wanted.__name__} node")
            return problems, trusted
        child = node.left if rule.i == 0 else node.right
        expected = _with_slot(x, ant, replace_at(slot, rule.path, child))
        if not seq_eq(expected, premise):
            problems.append("premise does not match the required replacement")
        return problems, trusted

    if isinstance(rule, (ExChoose, AllChoose)):
        ant = None if isinstance(rule, ExChoose) else rule.ant
        wanted = ChoiceEx if isinstance(rule, ExChoose) else ChoiceAll
        premise = the_premise()
        if premise is None:
            return problems, trusted
        bad = _check_term_condition(rule.term, premise)
        if bad:
            problems.append(bad)
        try:
            slot = _slot_formula(x, ant)
            node = subformula_at(slot, rule.path)
        except Exception as e:
            problems.append(f"bad occurrence path: {e}")
            return problems, trusted
        if not isinstance(node, wanted):
            problems.append(f"occurrence is not a {wanted.__name__} node")
            return problems, trusted
        try:
            inst = substitute(node.body, {node.var: rule.term})
        except Exception as e:
            problems.append(f"substitution rejected: {e}")
            return problems, trusted
        expected = _with_slot(x, ant, replace_at(slot, rule.path, inst))
        if not seq_eq(expected, premise):
            problems.append("premise does not match the chosen instance")
        return problems, trusted

    if isinstance(rule, Replicate):
        premise = the_premise()
        if premise is None:
            return problems, trusted
        if not 0 <= rule.ant < len(x.antecedent):
            problems.append("replicate index out of range")
            return problems, trusted
        if not alpha_eq(premise.succedent, x.succedent):
            problems.append("replicate premise changes the succedent")
        expected = sorted(sequent_alpha_key(Sequent(
            x.antecedent + (x.antecedent[rule.ant],), x.succedent))[0])
        got = sorted(sequent_alpha_key(premise)[0])
        if expected != got:
            problems.append(
                "premise antecedent is not the conclusion's plus one duplicate")
        return problems, trusted

    if isinstance(rule, Wait):
        entries, missing = analyze_wait(line, lines_by_label)
        problems += missing
        sk = stability_kwargs or {}
        if isinstance(line.evidence, Trusted):
            trusted.append((line.label, line.evidence.tag))
        elif isinstance(line.evidence, Certificate):
            outcome = replay_certificate(x, line.evidence,
                                         node_budget=sk.get("node_budget", 100_000))
            if outcome.status != "valid":
                problems.append(
                    f"stability certificate does not replay ({outcome.status})")
        else:
            verdict = stability(x, **sk)
            if verdict.status == "refuted":
                problems.append(f"stability refuted: {verdict.via}")
            elif verdict.status == "unknown":
                problems.append(
                    "stability unknown within budget; attach a certificate "
                    "or mark the line trusted")
        return problems, trusted

    problems.append(f"unknown rule {rule!r}")
    return problems, trusted


def check_proof(proof: Proof, *, stability_kwargs: dict | None = None) -> CheckReport:
    diagnostics: list[LineDiagnostic] = []
    trusted: list[tuple[str, str]] = []
    seen: dict[str, ProofLine] = {}
    ok = True
    for line in proof.lines:
        if line.label in seen:
            diagnostics.append(LineDiagnostic(line.label, False,
                                              ["duplicate line label"]))
            ok = False
            continue
        problems, tr = check_line(line, seen, stability_kwargs=stability_kwargs)
        trusted += tr
        diagnostics.append(LineDiagnostic(line.label, not problems, problems))
        if problems:
            ok = False
        seen[line.label] = line
    return CheckReport(ok, diagnostics, trusted, proof.conclusion if proof.lines else None)
