"""Acceptance criteria.

Each test implements one acceptance criterion at its stated tolerance and
prints one PASS line on success (run with -s to see them; any failure fails
the suite).  Criteria 1-9 cover the core toolkit and run with no frontend
built.
"""

import random
import time

import pytest

from clarith import cl12, cla4
from clarith.game import adjudicate, enumerate_legal_runs, initial_state
from clarith.models import eval_model, find_countermodel
from clarith.numerals import Numeral
from clarith.polyfun import (
    ExplicitPolyFn, SUM_OVERHEAD, TermBuilder, eval_explicit, eval_graph,
    single, squaring_chain, sum_bounds,
)
from clarith.proofio import load_cl12, load_cla4
from clarith.search import SearchBudget, search
from clarith.strategy import ScriptedEnvironment, extract, play, spawn
from clarith.strategy.moderate import moderate
from clarith.syntax import elementarize_sequent, parse_formula, parse_sequent
from clarith.tableau import prove_valid
from clarith.hpm import SymbolCodec, initial_configuration, load_spec, run_hpm, step
from clarith.hpm.predicates import pred_D, pred_E
from clarith.hpm.codec import Symbol
from clarith.game import GameState, LabMove, apply_move


def report(n, text):
    print(f"ACCEPTANCE {n}: PASS - {text}")


def test_criterion_1_corpus_verification(corpus_dir):
    """The checker accepts the three worked proofs verbatim, quickly."""
    t0 = time.perf_counter()
    cube = load_cl12(corpus_dir / "cube.cl12")
    r1 = cl12.check_proof(cube)
    assert r1.ok and len(cube.lines) == 10

    onesuc = load_cla4(corpus_dir / "onesuc.cla4")
    r2 = cla4.check_proof(onesuc)
    assert r2.ok and len(onesuc.lines) == 3
    (lc_line,) = [l for l in onesuc.lines if isinstance(l.just, cla4.Lc)]
    assert len(lc_line.just.proof.lines) == 7

    zero = load_cla4(corpus_dir / "zeroness.cla4")
    r3 = cla4.check_proof(zero)
    assert r3.ok and len(zero.lines) == 7
    assert r3.pa_trusted == 3
    assert len([l for l in zero.lines if isinstance(l.just, cla4.Lc)]) == 3
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    report(1, f"corpus verified (10+3/7+7/3 lines, 3 trusted arithmetic) "
              f"in {elapsed:.2f}s")


def test_criterion_2_mutation_robustness(corpus_dir):
    """At least 100 single-edit mutations per corpus proof are rejected or
    change the conclusion; none is wrongly accepted."""
    from test_cl12 import mutate as mutate_cl12
    t0 = time.perf_counter()
    rng = random.Random(20240811)

    cube = load_cl12(corpus_dir / "cube.cl12")
    from clarith.syntax import print_sequent
    survived = 0
    for _ in range(120):
        mutant = mutate_cl12(cube, rng)
        if mutant == cube:
            continue
        rep = cl12.check_proof(mutant)
        if rep.ok:
            assert print_sequent(mutant.conclusion) != print_sequent(cube.conclusion)
        survived += 1
    assert survived >= 100

    for name in ("onesuc.cla4", "zeroness.cla4"):
        proof = load_cla4(corpus_dir / name)
        from clarith.proofio import format_cla4, parse_cla4
        from clarith.syntax import print_formula
        base_concl = print_formula(proof.conclusion)
        count = 0
        attempts = 0
        while count < 100 and attempts < 600:
            attempts += 1
            mutant = _random_cla4_mutation(proof, rng)
            if mutant is None or mutant == proof:
                continue
            rep = cla4.check_proof(mutant)
            if rep.ok:
                assert print_formula(mutant.conclusion) != base_concl, name
            count += 1
        assert count >= 100, name
    report(2, f"3x100+ single-edit mutations rejected or conclusion-changed "
              f"in {time.perf_counter() - t0:.1f}s")


def _random_cla4_mutation(proof, rng):
    """Edit a rule id, premise ref, parameter, or an embedded sequent-proof
    line of an arithmetic proof."""
    from test_cl12 import mutate as mutate_cl12
    lines = list(proof.lines)
    idx = rng.randrange(len(lines))
    line = lines[idx]
    j = line.just
    labels = [l.label for l in proof.lines]
    roll = rng.random()
    if isinstance(j, cla4.Lc) and roll < 0.6:
        mutated = mutate_cl12(j.proof, rng)
        if mutated == j.proof:
            return None
        lines[idx] = cla4.Cla4Line(line.label, line.sentence, cla4.Lc(mutated),
                                   line.premises)
    elif isinstance(j, cla4.Lc) and line.premises:
        prem = list(line.premises)
        k = rng.randrange(len(prem))
        prem[k] = rng.choice([l for l in labels if l != prem[k]])
        lines[idx] = cla4.Cla4Line(line.label, line.sentence, j, tuple(prem))
    elif isinstance(j, cla4.Induction):
        field = rng.choice(["basis", "left", "right", "var"])
        if field == "var":
            new = cla4.Induction("zz", j.basis, j.left, j.right)
        else:
            cur = getattr(j, field)
            new = cla4.Induction(**{**j.__dict__, field: rng.choice(
                [l for l in labels if l != cur])})
        lines[idx] = cla4.Cla4Line(line.label, line.sentence, new, line.premises)
    elif isinstance(j, cla4.Axiom):
        lines[idx] = cla4.Cla4Line(line.label, line.sentence,
                                   cla4.Axiom(j.k % 9 + 1), line.premises)
    elif isinstance(j, cla4.PaTrusted):
        lines[idx] = cla4.Cla4Line(line.label, line.sentence,
                                   cla4.Axiom(rng.randint(1, 9)), line.premises)
    else:
        return None
    return cla4.Cla4Proof(tuple(lines))


def test_criterion_3_thirteen_run_oracle():
    """The two-choice implication game has exactly 13 legal runs, 10 won by
    the machine and 3 by the environment, with the published winners."""
    t0 = time.perf_counter()
    st0 = initial_state(parse_formula("(0=0 n 0=1) -> (10=11 n 10=10)"))
    runs = enumerate_legal_runs(st0)
    assert len(runs) == 13
    winners = {tuple((m.player, m.move) for m in r): adjudicate(st0, r).winner
               for r in runs}
    assert sum(1 for w in winners.values() if w == "T") == 10
    assert sum(1 for w in winners.values() if w == "B") == 3
    losses = {k for k, w in winners.items() if w == "B"}
    assert losses == {(("B", "1.0"),),
                      (("T", "0.0"), ("B", "1.0")),
                      (("B", "1.0"), ("T", "0.0"))}
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    report(3, f"13 legal runs, 10 machine wins, 3 environment wins "
              f"in {elapsed:.3f}s")


def test_criterion_4_end_to_end_extraction(corpus_dir):
    """The extracted binary-1-successor strategy answers 2x+1 on 1000 random
    inputs up to 512 bits, every move within its certificate."""
    t0 = time.perf_counter()
    ext = extract(load_cla4(corpus_dir / "onesuc.cla4"))
    rng = random.Random(512512)
    for _ in range(1000):
        v = rng.getrandbits(rng.randint(0, 512))
        rec = play(ext.spec, ScriptedEnvironment([str(Numeral.from_int(v))]))
        assert rec.verdict.winner == "T"
        assert int(rec.run[-1].move, 2) == 2 * v + 1
        bound = eval_explicit(ext.certificate, rec.meters.background)
        assert all(m.size <= bound for m in rec.meters.machine_moves)
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    report(4, f"1000 random 512-bit plays answered 2x+1 under certificate "
              f"in {elapsed:.1f}s")


def test_criterion_5_end_to_end_induction(corpus_dir):
    """The composed zeroness strategy decides 1000 random inputs with
    bit-length+1 sessions, and moderated copying clips the published
    oversized constant to 0."""
    t0 = time.perf_counter()
    ext = extract(load_cla4(corpus_dir / "zeroness.cla4"))
    rng = random.Random(99)
    for _ in range(1000):
        v = rng.getrandbits(rng.randint(0, 96))
        agent = spawn(ext.spec)
        rec = play(agent, ScriptedEnvironment([str(Numeral.from_int(v))]))
        assert rec.verdict.winner == "T"
        assert rec.run[-1].move == ("0" if v == 0 else "1")
        assert agent.session_count() == (1 if v == 0 else v.bit_length() + 1)
    # the published clipping example: 1111 against |y| <= |z|' with z = 11
    g = parse_formula("!z:(0 = 0 & ?y:(len(y) <= len(z)' & z = y#0))")
    st = apply_move(GameState(g), LabMove("B", "11"))
    assert moderate(st, "1.1111") == "1.0"
    assert moderate(st, "1.10") == "1.10"
    report(5, f"1000 induction plays, session counts |x|+1, clipping fires "
              f"in {time.perf_counter() - t0:.1f}s")


def test_criterion_6_negative_and_positive_provability():
    """Bounded search refuses the four unprovable principles and finds their
    provable counterparts."""
    t0 = time.perf_counter()
    unprovable = [
        "|- !x: p(x) -> all x: p(x)",
        "|- ?y: !x: (p(x) -> p(y))",
        "|- !x: ?y: (y = f(x))",
        "|- p n q -> (p n q) & (p n q)",
    ]
    provable = [
        "|- all x: p(x) -> !x: p(x)",
        "|- !x: ?y: (p(x) -> p(y))",
        "|- all x: ex y: (y = f(x))",
        "p n q |- (p n q) & (p n q)",
    ]
    for text in unprovable:
        assert search(parse_sequent(text)) is None, text
    for text in provable:
        proof = search(parse_sequent(text))
        assert proof is not None and cl12.check_proof(proof).ok, text
    report(6, f"4 refusals + 4 discoveries in {time.perf_counter() - t0:.1f}s")


def test_criterion_7_codec_coherence(machines_dir):
    """decode(encode) identity and block-surgery successor agreement on 1000
    random reachable configurations across three machines; the translation
    and denotation predicates accept their published examples."""
    t0 = time.perf_counter()
    rng = random.Random(777)
    total = 0
    for name in ("beeper", "appender", "pulse"):
        spec = load_spec(machines_dir / f"{name}.hpm")
        codec = SymbolCodec(spec)
        configs = []
        while len(configs) < 334:
            script = {}
            if spec.move_alphabet and rng.random() < 0.6:
                script[rng.randrange(5)] = ["".join(
                    rng.choice(spec.move_alphabet)
                    for _ in range(rng.randint(1, 6)))]
            configs.extend(run_hpm(spec, script, fuel=rng.randint(1, 20)).configs)
        for cfg in configs[:334]:
            code = codec.encode(cfg)
            assert codec.decode(code) == cfg
            assert codec.successor(code) == codec.encode(step(spec, cfg))
            total += 1
    spec = load_spec(machines_dir / "appender.hpm")
    codec = SymbolCodec(spec)
    assert pred_E(codec, 0b101, codec.encode_seq([Symbol("run", b) for b in "101"]))
    assert pred_D(codec, codec.encode_seq([Symbol("work", b) for b in "101"]), 0b101)
    report(7, f"{total} configurations round-trip with coherent successors "
              f"in {time.perf_counter() - t0:.1f}s")


def test_criterion_8_polynomial_certificates():
    """The shared-squaring DAG is y^8, the two-placeholder composition is
    (y^2+y^3)^3, the three-entry sequence is (y^8+y^8)^8, and bound summation
    grows by exactly its overhead."""
    t0 = time.perf_counter()
    fig1 = squaring_chain(3)
    for y in range(11):
        assert eval_graph(fig1, y) == y ** 8
    b = TermBuilder()
    yv = b.var()
    fig2 = b.done(b.ph("f2", b.add(b.ph("f1", yv), b.ph("f2", yv))))
    for y in range(11):
        assert eval_graph(fig2, y, {"f1": lambda v: v * v,
                                    "f2": lambda v: v ** 3}) == (y**2 + y**3) ** 3
    seq = ExplicitPolyFn((("f1", fig1), ("f2", fig1), ("f3", fig2)))
    for y in (0, 1, 2):
        assert eval_explicit(seq, y) == (y**8 + y**8) ** 8
    a = single(squaring_chain(2), "a")
    c = single(squaring_chain(1), "c")
    s = sum_bounds(a, c)
    assert s.size == a.size + c.size + SUM_OVERHEAD
    report(8, f"certificate identities and the exact additive-size law "
              f"in {time.perf_counter() - t0:.2f}s")


def test_criterion_9_stability_soundness():
    """Zero valid-claims on 500 random sequents whose elementarizations are
    falsified by exhaustive models of size at most 3."""
    t0 = time.perf_counter()
    from test_tableau import random_elementary_sequent
    rng = random.Random(314159)
    falsified = 0
    attempts = 0
    while falsified < 500 and attempts < 5000:
        attempts += 1
        seq = random_elementary_sequent(rng)
        elz = elementarize_sequent(seq)
        model = find_countermodel(elz, max_size=3, exhaustive_only=True)
        if model is None:
            continue
        assert not eval_model(elz, model)
        falsified += 1
        outcome = prove_valid(elz)
        assert outcome.status != "valid", seq
    assert falsified == 500
    report(9, f"500 falsifiable sequents, zero valid-claims "
              f"in {time.perf_counter() - t0:.1f}s")
