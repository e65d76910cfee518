"""Stability oracle: the classical prover and the finite-model refuter."""

import random

import pytest

from clarith.cl12 import stability
from clarith.models import eval_model, find_countermodel
from clarith.syntax import parse_formula, parse_sequent
from clarith.tableau import prove_valid

VALID = [
    "p -> p",
    "all x: p(x) -> p(y)",
    "all x: (ex y: (y = f(x)))",
    "all x:(cube(x) = mul(mul(x,x),x)) & t = mul(s,s) & r = mul(t,s) -> r = cube(s)",
    "t = r' & r = s#0 -> t = (s#0)'",
    "x = x",
    "x = y -> y = x",
    "x = y & y = z -> x = z",
    "x = y -> f(x) = f(y)",
    "all x:(p(x) -> q(x)) & all x: p(x) -> q(c)",
    "x = y & p(x) -> p(y)",
]

INVALID = [
    "p -> q",
    "F | (all x: p(x))",
    "p | !q",
    "all x: p(x) -> all x: q(x)",
    "x = y",
    "f(x) = x",
    "ex y: (all x: p(x) -> p(y)) -> q",
]


@pytest.mark.parametrize("text", VALID)
def test_valid_formulas_proved(text):
    assert prove_valid(parse_formula(text)).status == "valid"


@pytest.mark.parametrize("text", INVALID)
def test_invalid_formulas_never_claimed_valid(text):
    out = prove_valid(parse_formula(text))
    assert out.status != "valid"
    if out.status == "unknown":
        assert find_countermodel(parse_formula(text)) is not None


def test_budget_exhaustion_reports_unknown():
    f = parse_formula("all x:(p(x) -> p(f(x))) & p(c) -> p(f(f(f(f(f(c))))))")
    out = prove_valid(f, node_budget=3, max_rounds=1)
    assert out.status == "unknown"
    # with budget the chain closes
    assert prove_valid(f, max_rounds=8).status == "valid"


def test_stability_of_sequents():
    assert stability(parse_sequent("?y:(y = r'), r = s#0 |- ?y:(y = (s#0)')")).status == "valid"
    assert stability(parse_sequent("|- F | (all x: p(x))")).status == "refuted"
    assert stability(parse_sequent("p n q |- (p n q) & (p n q)")).status == "valid"
    assert stability(parse_sequent("|- p n q")).status == "valid"
    assert stability(parse_sequent("|- p U q")).status == "refuted"


def test_certificate_instances_replay():
    from clarith.cl12 import Certificate, replay_certificate
    from clarith.syntax import parse_sequent, parse_term
    seq = parse_sequent(
        "all x:(p(x) -> p(f(x))), p(c) |- p(f(f(c)))")
    cert = Certificate(((0, (parse_term("c"),)), (0, (parse_term("f(c)"),))))
    assert replay_certificate(seq, cert).status == "valid"
    # an incomplete instance list replays to unknown, never to valid
    partial = Certificate(((0, (parse_term("c"),)),))
    assert replay_certificate(seq, partial).status != "valid"
    # gamma-free proving alone cannot close it either
    assert prove_valid(
        parse_formula("all x:(p(x) -> p(f(x))) & p(c) -> p(f(f(c)))"),
        max_rounds=0).status == "unknown"


# ------------------------------------------------- soundness vs tiny models

def random_elementary_sequent(rng: random.Random):
    """Small predicate-only sequents over p, q(.), r(.,.)."""
    atoms = ["p", "q(x)", "q(y)", "r(x, y)", "r(y, x)", "x = y"]

    def formula(depth):
        if depth == 0:
            a = rng.choice(atoms)
            return a if rng.random() < 0.5 else f"!({a})"
        op = rng.choice(["&", "|", "->", "U", "n"])
        if rng.random() < 0.25:
            q = rng.choice(["all", "ex"])
            return f"{q} x: ({formula(depth - 1)})"
        return f"({formula(depth - 1)}) {op} ({formula(depth - 1)})"

    n_ante = rng.randint(0, 2)
    parts = [formula(rng.randint(1, 2)) for _ in range(n_ante)]
    succ = formula(rng.randint(1, 2))
    return parse_sequent(", ".join(parts) + (" |- " if parts else "|- ") + succ)


def test_prover_sound_against_exhaustive_model_search():
    """No valid-claim may survive an exhaustive countermodel of size <= 3."""
    rng = random.Random(11)
    checked = 0
    for _ in range(150):
        seq = random_elementary_sequent(rng)
        from clarith.syntax import elementarize_sequent
        elz = elementarize_sequent(seq)
        model = find_countermodel(elz, max_size=3, exhaustive_only=True)
        if model is None:
            continue
        checked += 1
        assert not eval_model(elz, model)
        assert prove_valid(elz).status != "valid"
    assert checked >= 40  # the sample actually exercised the falsifiable case
