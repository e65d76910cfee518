"""Strategies: axiom agents, proof walking, induction chains, meters."""

import random

import pytest

from clarith import cla4, cl12
from clarith.interp import Interpretation
from clarith.numerals import Numeral
from clarith.polyfun import eval_explicit
from clarith.proofio import load_cl12, load_cla4
from clarith.strategy import (
    CompiledProofSpec, InductionAgent, OracleSpec, RandomEnvironment,
    ScriptedEnvironment, SilentSpec, axiom_strategy, extract, moderate, play,
    reasonable_wrap, spawn,
)
from clarith.strategy.bundle import load_bundle, save_bundle, Bundle, spec_from_json, spec_to_json
from clarith.game import GameState, LabMove, apply_move
from clarith.syntax import parse_formula


@pytest.fixture(scope="module")
def onesuc_ext(corpus_dir):
    return extract(load_cla4(corpus_dir / "onesuc.cla4"))


@pytest.fixture(scope="module")
def zeroness_ext(corpus_dir):
    return extract(load_cla4(corpus_dir / "zeroness.cla4"))


# ------------------------------------------------------------- axiom agents

def test_unary_successor_strategy():
    rec = play(axiom_strategy(8), ScriptedEnvironment(["101"]))
    assert [m.move for m in rec.run] == ["101", "110"]
    assert rec.verdict.winner == "T"


def test_doubling_strategy():
    rec = play(axiom_strategy(9), ScriptedEnvironment(["101"]))
    assert rec.run[-1].move == "1010"
    assert rec.verdict.winner == "T"


def test_elementary_axiom_strategy_is_silent():
    rec = play(axiom_strategy(3), ScriptedEnvironment([]))
    assert rec.run == () and rec.verdict.winner == "T"


def test_axiom_strategy_random_sweep():
    rng = random.Random(12)
    for _ in range(50):
        env = RandomEnvironment(seed=rng.randrange(1 << 30), max_bits=256)
        assert play(axiom_strategy(8), env).verdict.winner == "T"


# ----------------------------------------------------------- proof walking

def test_onesuc_answers_binary_one_successor(onesuc_ext):
    rec = play(onesuc_ext.spec, ScriptedEnvironment(["101"]))
    assert rec.run[-1].move == "1011"
    for v in (0, 1, 5, 12345, (1 << 300) + 17):
        rec = play(onesuc_ext.spec, ScriptedEnvironment([str(Numeral.from_int(v))]))
        assert int(rec.run[-1].move, 2) == 2 * v + 1
        assert rec.verdict.winner == "T"


def test_cube_compiles_with_oracle_provider(corpus_dir):
    proof = load_cl12(corpus_dir / "cube.cl12")
    cube_def, mult_game = proof.conclusion.antecedent
    spec = CompiledProofSpec(
        proof, (SilentSpec(cube_def),
                OracleSpec(mult_game, lambda a, b: a * b, 2, "mult")),
        proof.conclusion.succedent)
    interp = Interpretation(functions={"cube": lambda v: v ** 3,
                                       "mul": lambda a, b: a * b})
    rec = play(spec, ScriptedEnvironment(["11"]), interp=interp)
    assert rec.run[-1].move == "11011"  # 3 cubed
    assert rec.verdict.winner == "T"


def test_wrong_provider_loses_without_crashing(corpus_dir):
    proof = load_cl12(corpus_dir / "cube.cl12")
    cube_def, mult_game = proof.conclusion.antecedent
    spec = CompiledProofSpec(
        proof, (SilentSpec(cube_def),
                OracleSpec(mult_game, lambda a, b: a * b + 1, 2, "off-by-one")),
        proof.conclusion.succedent)
    interp = Interpretation(functions={"cube": lambda v: v ** 3,
                                       "mul": lambda a, b: a * b})
    rec = play(spec, ScriptedEnvironment(["11"]), interp=interp)
    assert rec.verdict.winner == "B"


def test_illegal_provider_aborts_session_with_fault_note(corpus_dir):
    proof = load_cl12(corpus_dir / "cube.cl12")
    cube_def, mult_game = proof.conclusion.antecedent

    class Garbage(OracleSpec):
        pass

    import clarith.strategy.runtime as rt

    class GarbageAgent(rt.Agent):
        def __init__(self, game):
            self.game = game

        def observe(self, move):
            return ["not-a-move!!"]

    orig = rt.spawn

    def patched(spec, interp=None):
        if isinstance(spec, Garbage):
            return GarbageAgent(spec.game)
        return orig(spec, interp) if interp else orig(spec)

    rt.spawn = patched
    try:
        spec = CompiledProofSpec(
            proof, (SilentSpec(cube_def), Garbage(mult_game, None, 2, "junk")),
            proof.conclusion.succedent)
        interp = Interpretation(functions={"cube": lambda v: v ** 3,
                                           "mul": lambda a, b: a * b})
        rec = play(spec, ScriptedEnvironment(["11"]), interp=interp)
        assert any("fault" in n for n in rec.notes)
        assert rec.verdict.winner == "B"
    finally:
        rt.spawn = orig


# --------------------------------------------------------------- induction

def test_zeroness_decides_correctly(zeroness_ext):
    for x, answer in [(0, "0"), (1, "1"), (6, "1"), (1 << 100, "1")]:
        rec = play(zeroness_ext.spec, ScriptedEnvironment([str(Numeral.from_int(x))]))
        assert rec.run[-1].move == answer
        assert rec.verdict.winner == "T"


def test_session_count_is_bit_length_plus_one(zeroness_ext):
    for x in (0, 1, 6, 9, 1000):
        agent = spawn(zeroness_ext.spec)
        agent.observe(str(Numeral.from_int(x)))
        expected = 1 if x == 0 else x.bit_length() + 1
        assert agent.session_count() == expected


def test_chain_session_order_matches_bits(zeroness_ext):
    """For input 1001 the chain is base, step-1, step-0, step-0, step-1."""
    agent = spawn(zeroness_ext.spec)
    agent.observe("1001")
    assert agent.session_count() == 5
    left = zeroness_ext.spec.left.proof
    right = zeroness_ext.spec.right.proof
    # each session wraps a proof walker; identify steps by their proof object
    proofs = [getattr(s.agent.inner, "proof", None) for s in agent.sessions]
    assert proofs[1] is right and proofs[2] is left and proofs[3] is left \
        and proofs[4] is right


# ------------------------------------------------------------- moderation

def test_unreasonable_move_clipped_to_zero():
    g = parse_formula("!z:(0 = 0 & ?y:(len(y) <= len(z)' & z = y#0))")
    st = apply_move(GameState(g), LabMove("B", "11"))
    assert moderate(st, "1.1111") == "1.0"
    assert moderate(st, "1.10") == "1.10"


def test_reasonable_wrap_of_silent_is_silent():
    g = parse_formula("!z:(0 = 0 & ?y:(len(y) <= len(z)' & z = y#0))")
    w = reasonable_wrap(SilentSpec(g), g)
    assert w.start() == [] and w.observe("11") == [] and w.tick() == []


# ------------------------------------------------- certificates and meters

def test_certificate_honesty_on_random_plays(onesuc_ext, zeroness_ext):
    rng = random.Random(77)
    for ext in (onesuc_ext, zeroness_ext):
        for _ in range(60):
            v = rng.getrandbits(rng.randint(0, 512))
            rec = play(ext.spec, ScriptedEnvironment([str(Numeral.from_int(v))]))
            assert rec.verdict.winner == "T"
            bound = eval_explicit(ext.certificate, rec.meters.background)
            assert all(m.size <= bound for m in rec.meters.machine_moves)


def test_background_meter_definition(onesuc_ext):
    rec = play(onesuc_ext.spec, ScriptedEnvironment(["111", "0"]))
    assert rec.meters.background == 3
    rec2 = play(axiom_strategy(3), ScriptedEnvironment([]))
    assert rec2.meters.background == 0  # no environment moves


def test_replay_determinism(zeroness_ext):
    runs = set()
    for _ in range(3):
        rec = play(zeroness_ext.spec, ScriptedEnvironment(["10110"]))
        runs.add(tuple(str(m) for m in rec.run))
    assert len(runs) == 1


# ----------------------------------------------------------------- bundles

def test_bundle_round_trip(tmp_path, zeroness_ext):
    p = tmp_path / "z.bundle"
    save_bundle(p, Bundle(zeroness_ext.game, zeroness_ext.spec,
                          zeroness_ext.certificate, "xyz"))
    loaded = load_bundle(p)
    assert loaded.game == zeroness_ext.game
    assert spec_to_json(loaded.spec) == spec_to_json(zeroness_ext.spec)
    rec = play(loaded.spec, ScriptedEnvironment(["110"]))
    assert rec.verdict.winner == "T"


# ------------------------------------------------------- extraction gating

def test_trusted_stability_blocks_extraction(corpus_dir):
    from clarith.proofio import parse_cla4
    from clarith.strategy.extract import ExtractionError
    text = """
I. 0 = 0 U 0 != 0 ; lc ; proof={
    1. |- 0 = 0 ; wait ; evidence=trusted:felt-right
    2. |- 0 = 0 U 0 != 0 ; or-choose at=s i=0 ; premises=1
}
"""
    proof = parse_cla4(text)
    report = cla4.check_proof(proof)
    assert report.ok and report.trusted_stability == 1
    assert not report.extraction_ready
    with pytest.raises(ExtractionError):
        extract(proof, audit=report)
