"""Arithmetic-level proof checking: axioms, Logical Consequence with attached
sequent proofs, binary induction, trusted-arithmetic steps, audit reporting.

A proof is a sequence of sentences.  A non-sentence line is read as its
choice-universal closure.  Each line is an axiom, a recorded arithmetic fact
(trusted, allowed only for elementary sentences; variable-free ones are
auto-discharged by the evaluator instead), a Logical Consequence step with
an attached sequent-calculus proof, or a binary-induction step whose three
premises must be the closures of F(0), F(x) -> F(x0), F(x) -> F(x1) for a
polynomially bounded F.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from . import cl12
from .evaluate import evaluate
from .interp import UndecidableFragmentError
from .syntax import (
    And, ChoiceAll, Const, Eq, Exists, ForAll, Formula, Or, Sequent, Suc, Var,
    all_vars, alpha_eq, alpha_key, closure, double, free_vars, implies, is_elementary,
    negate, parse_formula, print_formula, substitute,
    unbounded_choice_quantifier,
)

AXIOM_TEXT = {
    1: "all x: (0 != x')",
    2: "all x: all y: (x' = y' -> x = y)",
    3: "all x: (x + 0 = x)",
    4: "all x: all y: (x + y' = (x + y)')",
    5: "all x: (x * 0 = 0)",
    6: "all x: all y: (x * y' = (x * y) + x)",
    8: "!x: ?y: (y = x')",
    9: "!x: ?y: (y = x#0)",
}

AXIOMS = {k: parse_formula(v) for k, v in AXIOM_TEXT.items()}


# -------------------------------------------------------- justifications

@dataclass(frozen=True)
class Axiom:
    k: int


@dataclass(frozen=True)
class PaTrusted:
    tag: str


@dataclass(frozen=True)
class Lc:
    proof: cl12.Proof


@dataclass(frozen=True)
class Induction:
    var: str
    basis: str
    left: str
    right: str


Justification = Union[Axiom, PaTrusted, Lc, Induction]


@dataclass(frozen=True)
class Cla4Line:
    label: str
    sentence: Formula
    just: Justification
    premises: tuple[str, ...] = ()


@dataclass(frozen=True)
class Cla4Proof:
    lines: tuple[Cla4Line, ...]

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].sentence

    def line(self, label: str) -> Cla4Line:
        for l in self.lines:
            if l.label == label:
                return l
        raise KeyError(label)


def sentence_of(f: Formula) -> Formula:
    """The line as checked: its choice-universal closure."""
    return closure(f, "choice") if free_vars(f) else f


# --------------------------------------------------------------- axioms

def _match_peano_induction(sentence: Formula) -> Formula | None:
    """The instance F(x) when the sentence is the blind closure of
    F(0) & all x:(F(x) -> F(x')) -> all x: F(x) with F elementary."""
    body = sentence
    while isinstance(body, ForAll):
        body = body.body
    if not isinstance(body, Or):
        return None
    lhs, rhs = negate(body.left), body.right
    if not (isinstance(lhs, And) and isinstance(rhs, ForAll)):
        return None
    step = lhs.right
    if not (isinstance(step, ForAll) and isinstance(step.body, Or)):
        return None
    x, fx = rhs.var, rhs.body
    if not is_elementary(fx):
        return None
    y = step.var
    try:
        want_step = Or(negate(substitute(fx, {x: Var(y)})),
                       substitute(fx, {x: Suc(Var(y))}))
        want_base = substitute(fx, {x: Const.of(0)})
    except Exception:
        return None
    if alpha_eq(step.body, want_step) and alpha_eq(lhs.left, want_base):
        return fx
    return None


def is_axiom(sentence: Formula) -> Axiom | Formula | None:
    """Axiom(k) for axioms 1-6, 8, 9; the instance formula for the elementary
    induction scheme (axiom 7); None otherwise."""
    if free_vars(sentence):
        return None
    for k, ax in AXIOMS.items():
        if alpha_eq(sentence, ax):
            return Axiom(k)
    return _match_peano_induction(sentence)


# ------------------------------------------------------------- induction

def induction_candidates(conclusion: Formula, var: str
                         ) -> list[tuple[Formula, Formula, Formula, Formula]]:
    """Possible (F, basis, left step, right step) readings of an induction on
    var concluding the given sentence.

    The conclusion determines the induction formula only up to where its
    closure prefix ends and F's own leading choice-universals begin, so
    every split whose prefix covers var and reproduces the closure order is
    a candidate; the premises then pick the right one.
    """
    closed = sentence_of(conclusion)
    prefix: list[str] = []
    core = closed
    bodies = []
    while isinstance(core, ChoiceAll):
        prefix.append(core.var)
        core = core.body
        bodies.append(core)
    out = []
    for k in range(1, len(prefix) + 1):
        if var not in prefix[:k]:
            continue
        f = bodies[k - 1]
        if sorted(free_vars(f)) != sorted(prefix[:k]):
            continue  # this split would not re-close to the conclusion
        try:
            basis = sentence_of(substitute(f, {var: Const.of(0)}))
            left = sentence_of(implies(f, substitute(f, {var: double(Var(var))})))
            right = sentence_of(implies(f, substitute(f, {var: Suc(double(Var(var)))})))
        except Exception:
            continue
        out.append((f, basis, left, right))
    if not out:
        raise ValueError(f"conclusion has no choice-universal prefix over {var}")
    return out


def induction_parts(conclusion: Formula, var: str) -> tuple[Formula, Formula, Formula, Formula]:
    """The narrowest induction reading (compatibility helper)."""
    return induction_candidates(conclusion, var)[0]


def match_induction(conclusion: Formula, var: str, basis: Formula,
                    left: Formula, right: Formula) -> Formula | None:
    """The induction formula whose required premise shapes the given
    premises are, or None."""
    try:
        candidates = induction_candidates(conclusion, var)
    except ValueError:
        return None
    for f, want_b, want_l, want_r in candidates:
        if alpha_eq(basis, want_b) and alpha_eq(left, want_l) \
                and alpha_eq(right, want_r):
            return f
    return None


# ---------------------------------------------------------------- audit

@dataclass
class AuditReport:
    ok: bool
    pa_trusted: int = 0
    trusted_stability: int = 0
    extraction_ready: bool = False
    lines: int = 0
    diagnostics: list[cl12.LineDiagnostic] = field(default_factory=list)
    trusted_labels: list[str] = field(default_factory=list)

    def first_failure(self) -> cl12.LineDiagnostic | None:
        return next((d for d in self.diagnostics if not d.ok), None)

    def summary(self) -> str:
        status = "ok" if self.ok else "REJECTED"
        extra = "" if self.extraction_ready else " (not extraction-ready)"
        return (f"{status}: {self.lines} lines, {self.pa_trusted} trusted "
                f"arithmetic, {self.trusted_stability} trusted stability{extra}")


def check_lc(line: Cla4Line, by_label: dict[str, Cla4Line],
             *, stability_kwargs: dict | None = None) -> tuple[list[str], cl12.CheckReport]:
    problems: list[str] = []
    proof = line.just.proof
    report = cl12.check_proof(proof, stability_kwargs=stability_kwargs)
    if not report.ok:
        bad = report.first_failure()
        problems.append(f"attached proof fails at line {bad.label}: {'; '.join(bad.messages)}")
    expected_succ = sentence_of(line.sentence)
    concl = proof.conclusion
    if not alpha_eq(concl.succedent, expected_succ):
        problems.append("attached proof does not conclude this sentence's closure")
    expected_ante = []
    for ref in line.premises:
        if ref not in by_label:
            problems.append(f"premise {ref} does not name an earlier line")
            return problems, report
        expected_ante.append(sentence_of(by_label[ref].sentence))
    got = sorted(alpha_key(g) for g in concl.antecedent)
    want = sorted(alpha_key(g) for g in expected_ante)
    if got != want:
        problems.append("attached proof's antecedent does not match the premises")
    return problems, report


def check_induction(line: Cla4Line, by_label: dict[str, Cla4Line]) -> list[str]:
    problems: list[str] = []
    j = line.just
    refs = {}
    for name, ref in (("basis", j.basis), ("left", j.left), ("right", j.right)):
        if ref not in by_label:
            problems.append(f"{name} premise {ref} does not name an earlier line")
        else:
            refs[name] = sentence_of(by_label[ref].sentence)
    if problems:
        return problems
    f = match_induction(line.sentence, j.var, refs["basis"], refs["left"],
                        refs["right"])
    if f is None:
        try:
            _, basis, left, right = induction_parts(line.sentence, j.var)
        except ValueError as e:
            return [str(e)]
        for name, want in (("basis", basis), ("left", left), ("right", right)):
            if not alpha_eq(refs[name], want):
                problems.append(
                    f"{name} premise is not the closure of the required shape")
        return problems or ["premises do not fit any reading of the induction"]
    bad = unbounded_choice_quantifier(f)
    if bad is not None:
        problems.append(
            "induction formula is not polynomially bounded: offending choice "
            f"quantifier at path {'.'.join(bad) or '<root>'}")
    return problems


def check_proof(proof: Cla4Proof, *, stability_kwargs: dict | None = None) -> AuditReport:
    report = AuditReport(ok=True, lines=len(proof.lines))
    by_label: dict[str, Cla4Line] = {}
    for line in proof.lines:
        problems: list[str] = []
        if line.label in by_label:
            problems.append("duplicate line label")
        j = line.just
        if isinstance(j, Axiom):
            got = is_axiom(sentence_of(line.sentence))
            if isinstance(got, Axiom):
                if got.k != j.k:
                    problems.append(f"sentence is axiom {got.k}, not {j.k}")
            elif got is not None:
                if j.k != 7:
                    problems.append("sentence is an induction-scheme instance (axiom 7)")
            else:
                problems.append("sentence matches no axiom")
        elif isinstance(j, PaTrusted):
            sent = sentence_of(line.sentence)
            if not is_elementary(sent):
                problems.append("trusted arithmetic facts must be elementary sentences")
            elif not all_vars(sent):
                # ground variable-free: decided outright instead of trusted
                try:
                    if not evaluate(sent):
                        problems.append("recorded arithmetic fact evaluates to false")
                except UndecidableFragmentError:
                    report.pa_trusted += 1
                    report.trusted_labels.append(line.label)
            else:
                report.pa_trusted += 1
                report.trusted_labels.append(line.label)
        elif isinstance(j, Lc):
            lc_problems, sub = check_lc(line, by_label, stability_kwargs=stability_kwargs)
            problems += lc_problems
            report.trusted_stability += len(sub.trusted_stability)
        elif isinstance(j, Induction):
            problems += check_induction(line, by_label)
        else:
            problems.append(f"unknown justification {j!r}")
        report.diagnostics.append(cl12.LineDiagnostic(line.label, not problems, problems))
        if problems:
            report.ok = False
        by_label[line.label] = line
    report.extraction_ready = report.ok and report.trusted_stability == 0
    return report
