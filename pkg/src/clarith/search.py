"""Bounded backward proof search for the sequent calculus.

Sound by construction (everything found re-checks) and incomplete by
design: machine-choice parameters range over the sequent's free variables
plus small constants, replication is capped, and the whole search runs
under a node budget.  A None result is a legitimate outcome, not an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import cl12
from .syntax import (
    ChoiceAll, ChoiceAnd, ChoiceEx, ChoiceOr, Const, Formula, Sequent, Term,
    Var, alpha_key, free_vars, fresh_name, replace_at, sequent_vars,
    subformula_at, substitute, surface_occurrences,
)


@dataclass
class SearchBudget:
    depth: int = 40
    replicate_cap: int = 2
    numeral_cap: int = 2
    node_budget: int = 200_000
    stability_nodes: int = 20_000
    stability_rounds: int = 3
    model_size: int = 2


@dataclass
class _Deriv:
    sequent: Sequent
    rule: cl12.Rule
    subs: tuple["_Deriv", ...]


class _OutOfNodes(Exception):
    pass


def _seq_key(s: Sequent) -> tuple:
    return (tuple(alpha_key(g) for g in s.antecedent), alpha_key(s.succedent))


class _Searcher:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.proved: dict[tuple, _Deriv] = {}
        self.failed: dict[tuple, list[tuple[int, int]]] = {}

    def _spend(self):
        self.nodes += 1
        if self.nodes > self.budget.node_budget:
            raise _OutOfNodes()

    def _known_failure(self, key: tuple, depth: int, rep: int) -> bool:
        return any(d >= depth and r >= rep for d, r in self.failed.get(key, ()))

    def _note_failure(self, key: tuple, depth: int, rep: int):
        pts = self.failed.setdefault(key, [])
        pts[:] = [(d, r) for d, r in pts if not (d <= depth and r <= rep)]
        pts.append((depth, rep))

    def _stable(self, x: Sequent) -> bool:
        v = cl12.stability(x, node_budget=self.budget.stability_nodes,
                           max_rounds=self.budget.stability_rounds,
                           model_size=self.budget.model_size)
        return v.status == "valid"

    def prove(self, x: Sequent, depth: int, rep: int) -> _Deriv | None:
        self._spend()
        key = _seq_key(x)
        if key in self.proved:
            return self.proved[key]
        if depth <= 0 or self._known_failure(key, depth, rep):
            return None
        deriv = self._try_rules(x, depth, rep)
        if deriv is not None:
            self.proved[key] = deriv
        else:
            self._note_failure(key, depth, rep)
        return deriv

    # ------------------------------------------------------------- rules

    def _try_rules(self, x: Sequent, depth: int, rep: int) -> _Deriv | None:
        deriv = self._try_wait(x, depth, rep)
        if deriv is not None:
            return deriv
        for cand in self._choose_candidates(x):
            rule, premise = cand
            sub = self.prove(premise, depth - 1, rep)
            if sub is not None:
                return _Deriv(x, rule, (sub,))
        if rep > 0:
            seen: set[tuple] = set()
            for i, g in enumerate(x.antecedent):
                gk = alpha_key(g)
                if gk in seen:
                    continue
                seen.add(gk)
                premise = Sequent(x.antecedent + (g,), x.succedent)
                sub = self.prove(premise, depth - 1, rep - 1)
                if sub is not None:
                    return _Deriv(x, cl12.Replicate(i), (sub,))
        return None

    def _try_wait(self, x: Sequent, depth: int, rep: int) -> _Deriv | None:
        if not self._stable(x):
            return None
        subs: list[_Deriv] = []
        for ob in cl12.wait_obligations(x):
            if ob.binary:
                for i in (0, 1):
                    premise = cl12.expected_binary_premise(x, ob, i)
                    sub = self.prove(premise, depth - 1, rep)
                    if sub is None:
                        return None
                    subs.append(sub)
            else:
                node = ob.node
                y = fresh_name("w", sequent_vars(x))
                try:
                    body = substitute(node.body, {node.var: Var(y)})
                except Exception:
                    return None
                slot = x.succedent if ob.ant is None else x.antecedent[ob.ant]
                replaced = replace_at(slot, ob.path, body)
                premise = (Sequent(x.antecedent, replaced) if ob.ant is None else
                           Sequent(x.antecedent[:ob.ant] + (replaced,)
                                   + x.antecedent[ob.ant + 1:], x.succedent))
                sub = self.prove(premise, depth - 1, rep)
                if sub is None:
                    return None
                subs.append(sub)
        return _Deriv(x, cl12.Wait(), tuple(subs))

    def _terms(self, x: Sequent) -> list[Term]:
        out: list[Term] = [Var(v) for v in sorted(sequent_vars(x) & _free_of(x))]
        out += [Const.of(k) for k in range(self.budget.numeral_cap + 1)]
        return out

    def _choose_candidates(self, x: Sequent):
        for path, node in surface_occurrences(x.succedent):
            if isinstance(node, ChoiceOr):
                for i in (0, 1):
                    child = node.left if i == 0 else node.right
                    yield (cl12.OrChoose(path, i),
                           Sequent(x.antecedent, replace_at(x.succedent, path, child)))
            elif isinstance(node, ChoiceEx):
                for t in self._terms(x):
                    try:
                        inst = substitute(node.body, {node.var: t})
                    except Exception:
                        continue
                    yield (cl12.ExChoose(path, t),
                           Sequent(x.antecedent, replace_at(x.succedent, path, inst)))
        for ant, g in enumerate(x.antecedent):
            for path, node in surface_occurrences(g):
                if isinstance(node, ChoiceAnd):
                    for i in (0, 1):
                        child = node.left if i == 0 else node.right
                        new = x.antecedent[:ant] + (replace_at(g, path, child),) \
                            + x.antecedent[ant + 1:]
                        yield (cl12.AndChoose(ant, path, i), Sequent(new, x.succedent))
                elif isinstance(node, ChoiceAll):
                    for t in self._terms(x):
                        try:
                            inst = substitute(node.body, {node.var: t})
                        except Exception:
                            continue
                        new = x.antecedent[:ant] + (replace_at(g, path, inst),) \
                            + x.antecedent[ant + 1:]
                        yield (cl12.AllChoose(ant, path, t), Sequent(new, x.succedent))


def _free_of(x: Sequent) -> set[str]:
    out = free_vars(x.succedent)
    for g in x.antecedent:
        out |= free_vars(g)
    return out


def _linearize(root: _Deriv) -> cl12.Proof:
    lines: list[cl12.ProofLine] = []
    labels: dict[int, str] = {}
    by_exact: dict[tuple, str] = {}

    def emit(d: _Deriv) -> str:
        if id(d) in labels:
            return labels[id(d)]
        premise_labels = tuple(emit(s) for s in d.subs)
        key = (_seq_key(d.sequent), repr(d.rule), premise_labels)
        if key in by_exact:
            labels[id(d)] = by_exact[key]
            return by_exact[key]
        label = str(len(lines) + 1)
        lines.append(cl12.ProofLine(label, d.sequent, d.rule, premise_labels))
        labels[id(d)] = label
        by_exact[key] = label
        return label

    emit(root)
    return cl12.Proof(tuple(lines))


def search(x: Sequent, budget: SearchBudget | None = None) -> cl12.Proof | None:
    """A checked proof of the sequent within budget, or None."""
    budget = budget or SearchBudget()
    searcher = _Searcher(budget)
    try:
        deriv = searcher.prove(x, budget.depth, budget.replicate_cap)
    except _OutOfNodes:
        return None
    if deriv is None:
        return None
    proof = _linearize(deriv)
    report = cl12.check_proof(proof)
    if not report.ok:  # pragma: no cover - soundness net
        raise AssertionError(
            f"search produced an uncheckable proof: {report.first_failure()}")
    return proof
