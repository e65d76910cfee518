"""Stretch corpus: binary predecessor and addition, checked and played.

These proofs stack every composition mechanism: LC walks over induction
strategies that themselves consume LC walks over axiom strategies, with
certificate-backed stability on the inner step proofs.
"""

import random

import pytest

from clarith import cla4
from clarith.numerals import Numeral
from clarith.polyfun import eval_explicit
from clarith.proofio import load_cla4
from clarith.strategy import ScriptedEnvironment, extract, play


@pytest.fixture(scope="module")
def binarypred(corpus_dir):
    proof = load_cla4(corpus_dir / "binarypred.cla4")
    report = cla4.check_proof(proof)
    assert report.ok, report.first_failure()
    return extract(proof, audit=report)


@pytest.fixture(scope="module")
def addition(corpus_dir):
    proof = load_cla4(corpus_dir / "addition.cla4")
    report = cla4.check_proof(proof)
    assert report.ok, report.first_failure()
    assert report.trusted_stability == 0
    assert report.extraction_ready
    return extract(proof, audit=report)


def test_binarypred_checks_without_trusted_stability(corpus_dir):
    report = cla4.check_proof(load_cla4(corpus_dir / "binarypred.cla4"))
    assert report.ok and report.trusted_stability == 0
    assert report.extraction_ready


def test_binarypred_names_the_predecessor_and_parity(binarypred):
    rec = play(binarypred.spec, ScriptedEnvironment(["110"]))
    assert [str(m) for m in rec.run] == ["B:110", "T:11", "T:0"]
    assert rec.verdict.winner == "T"
    rng = random.Random(51)
    for _ in range(60):
        v = rng.getrandbits(rng.randint(0, 64))
        rec = play(binarypred.spec,
                   ScriptedEnvironment([str(Numeral.from_int(v))]))
        assert rec.verdict.winner == "T", (v, rec.notes)
        answers = [m.move for m in rec.run if m.player == "T"]
        pred, parity = int(answers[0], 2), int(answers[1])
        assert v == 2 * pred + parity


def test_addition_answers_the_sum(addition):
    rec = play(addition.spec, ScriptedEnvironment(["110", "11"]),
               tick_budget=100_000)
    assert rec.run[-1].move == "1001"  # 6 + 3 = 9
    assert rec.verdict.winner == "T"


def test_addition_random_sweep_with_certificate(addition):
    rng = random.Random(8)
    bound_at = {}  # the certificate value is costly at large backgrounds
    for _ in range(25):
        x = rng.getrandbits(rng.randint(0, 12))
        y = rng.getrandbits(rng.randint(0, 12))
        rec = play(addition.spec, ScriptedEnvironment(
            [str(Numeral.from_int(x)), str(Numeral.from_int(y))]),
            tick_budget=100_000)
        assert rec.verdict.winner == "T", (x, y, rec.notes[:3])
        assert int(rec.run[-1].move, 2) == x + y
        ell = rec.meters.background
        if ell not in bound_at:
            bound_at[ell] = eval_explicit(addition.certificate, ell)
        assert all(m.size <= bound_at[ell] for m in rec.meters.machine_moves)


def test_generator_reproduces_the_committed_file(corpus_dir):
    import sys
    sys.path.insert(0, str(corpus_dir.parent / "scripts"))
    import build_addition_proof
    assert build_addition_proof.build() == (corpus_dir / "addition.cla4").read_text()
