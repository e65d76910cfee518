"""Game semantics: legal moves, prefixation, adjudication, run enumeration."""

import pytest
from hypothesis import given, settings, strategies as st

from clarith.evaluate import evaluate
from clarith.game import (
    ENVIRONMENT, GameState, IllegalMoveError, LabMove, MACHINE,
    adjudicate, apply_move, choice_depth, enumerate_legal_runs, format_run,
    initial_state, is_legal, legal_moves, parse_run, wn_empty,
)
from clarith.interp import UndecidableFragmentError, finite_interpretation
from clarith.syntax import negate, parse_formula, print_formula

EX34 = "(0=0 n 0=1) -> (10=11 n 10=10)"

# the thirteen legal runs and their winners, as enumerated in the source
EX34_TABLE = {
    (): "T",
    (("T", "0.0"),): "T",
    (("T", "0.1"),): "T",
    (("B", "1.0"),): "B",
    (("B", "1.1"),): "T",
    (("T", "0.0"), ("B", "1.0")): "B",
    (("B", "1.0"), ("T", "0.0")): "B",
    (("T", "0.1"), ("B", "1.0")): "T",
    (("B", "1.0"), ("T", "0.1")): "T",
    (("T", "0.0"), ("B", "1.1")): "T",
    (("B", "1.1"), ("T", "0.0")): "T",
    (("T", "0.1"), ("B", "1.1")): "T",
    (("B", "1.1"), ("T", "0.1")): "T",
}


def test_example_game_has_thirteen_runs_with_the_right_winners():
    st0 = initial_state(parse_formula(EX34))
    runs = enumerate_legal_runs(st0)
    assert len(runs) == 13
    got = {tuple((m.player, m.move) for m in run): adjudicate(st0, run).winner
           for run in runs}
    assert got == EX34_TABLE


def test_machine_wins_ten_of_thirteen():
    st0 = initial_state(parse_formula(EX34))
    winners = [adjudicate(st0, r).winner for r in enumerate_legal_runs(st0)]
    assert winners.count("T") == 10 and winners.count("B") == 3


def test_elementary_game_has_exactly_one_run():
    st0 = initial_state(parse_formula("0 = 0 | 0 * 1 = 1"))
    assert enumerate_legal_runs(st0) == [()]
    assert wn_empty(st0) == "T"


def test_numeral_choice_moves():
    st0 = initial_state(parse_formula("!x:(x = 0 U x != 0)"))
    sites = legal_moves(st0)
    assert [s.mover for s in sites] == [ENVIRONMENT]
    assert sites[0].kind == "numeral"
    nxt = apply_move(st0, LabMove("B", "101"))
    assert nxt.formula == parse_formula("101 = 0 U 101 != 0")
    assert legal_moves(nxt)[0].mover == MACHINE


def test_machine_has_no_move_in_choice_and():
    st0 = initial_state(parse_formula("p n q"), finite_interpretation([0]))
    assert legal_moves(st0, MACHINE) == []
    with pytest.raises(IllegalMoveError):
        apply_move(st0, LabMove("T", "0"))
    assert wn_empty(st0) == "T"


def test_blind_quantifier_passes_moves_through():
    # one blind variable, one choice: the wrapper stays while moves go inside
    g = parse_formula("all y:(even(y) U odd(y) -> !x:(even(x + y) U odd(x + y)))")
    st0 = initial_state(g, finite_interpretation(
        [0, 1, 2, 3], predicates={"even": [(0,), (2,)], "odd": [(1,), (3,)]}))
    s1 = apply_move(st0, LabMove("B", "1.11"))
    assert s1.formula == parse_formula(
        "all y:(even(y) U odd(y) -> even(11 + y) U odd(11 + y))")
    s2 = apply_move(s1, LabMove("B", "0.0"))
    assert s2.formula == parse_formula(
        "all y:(!even(y) | even(11 + y) U odd(11 + y))")
    s3 = apply_move(s2, LabMove("T", "1.1"))
    assert s3.formula == parse_formula("all y:(!even(y) | odd(11 + y))")


def test_illegal_moves_lose_for_the_offender():
    st0 = initial_state(parse_formula("p n q"), finite_interpretation([0]))
    v = adjudicate(st0, (LabMove("T", "garbage"),))
    assert v.winner == "B" and v.reason == "illegal-move" and v.offender == "T"
    v2 = adjudicate(st0, (LabMove("B", "garbage"),))
    assert v2.winner == "T" and v2.offender == "B"


def test_adjudicate_reasons():
    st0 = initial_state(parse_formula("p n q"), finite_interpretation([0]))
    assert adjudicate(st0, ()).reason == "terminal-structure"
    st1 = initial_state(parse_formula("0 = 0"))
    assert adjudicate(st1, ()).reason == "terminal-truth"


def test_undecidable_fragment_raises_without_interpretation():
    st0 = initial_state(parse_formula("?x:(!p(x)) | all x: p(x)"))
    with pytest.raises(UndecidableFragmentError):
        wn_empty(st0)
    # with a finite test interpretation it becomes decidable
    st1 = initial_state(parse_formula("?x:(!p(x)) | all x: p(x)"),
                        finite_interpretation([0, 1], predicates={"p": [(0,)]}))
    assert wn_empty(st1) == "B"  # unresolved choice-ex loses; the blind half is false


def test_transcript_round_trip():
    run = (LabMove("B", "101"), LabMove("T", "1011"))
    assert parse_run(format_run(run)) == run


# ------------------------------------------------------------- properties

_games = st.sampled_from([
    "(p n q) U r",
    "!x:(x = 0 U x != 0)",
    "(p U q) & (p n r)",
    "?x:(x = 1) | (p n q)",
    "all y:(p(y) n q(y))",
    "(0=0 n 0=1) -> (10=11 n 10=10)",
])

_interp = finite_interpretation(
    [0, 1, 2], predicates={"p": [(0,), ()], "q": [(1,)], "r": []})


@settings(max_examples=40, deadline=None)
@given(_games, st.integers(0, 1 << 30))
def test_prefixation_law(text, seed):
    """Runs of the evolved game are exactly the continuations of the original,
    with the same winners."""
    import random
    rng = random.Random(seed)
    st0 = initial_state(parse_formula(text), _interp)
    sites = legal_moves(st0)
    if not sites:
        return
    site = rng.choice(sites)
    move = rng.choice(site.moves(range(5)))  # stay within the enumeration bound
    lm = LabMove(site.mover, move)
    evolved = apply_move(st0, lm)
    tails = {tuple(r) for r in enumerate_legal_runs(evolved, numeral_bound=4)}
    with_prefix = {tuple(r[1:]) for r in enumerate_legal_runs(st0, numeral_bound=4)
                   if r[:1] == (lm,)}
    assert tails == with_prefix
    for tail in sorted(tails, key=repr)[:12]:
        assert adjudicate(evolved, tail) == adjudicate(st0, (lm,) + tail)


@settings(max_examples=30, deadline=None)
@given(_games)
def test_depth_decreases_and_bounds_run_length(text):
    st0 = initial_state(parse_formula(text), _interp)
    d = choice_depth(st0.formula)
    for site in legal_moves(st0):
        for move in site.moves(range(3)):
            nxt = apply_move(st0, LabMove(site.mover, move))
            assert choice_depth(nxt.formula) < d
    assert all(len(r) <= d for r in enumerate_legal_runs(st0, numeral_bound=3))


@settings(max_examples=25, deadline=None)
@given(_games)
def test_double_negation_preserves_adjudication(text):
    f = parse_formula(text)
    st0 = initial_state(f, _interp)
    st1 = initial_state(negate(negate(f)), _interp)
    assert st0.formula == st1.formula
    for run in enumerate_legal_runs(st0, numeral_bound=3):
        assert adjudicate(st0, run) == adjudicate(st1, run)


def test_pseudoterm_evaluation_examples():
    # |1111| <= |11|' is false: 4 <= 3 fails
    assert not evaluate(parse_formula("len(1111) <= len(11)'"))
    # appending a bit: value of t#0 and t#1
    assert evaluate(parse_formula("101#0 = 1010"))
    assert evaluate(parse_formula("101#1 = 1011"))
    assert evaluate(parse_formula("0 = 0"))
    # bits count from the left, substring values, powers
    assert evaluate(parse_formula("bit(100, 0) = 1 & bit(100, 1) = 0"))
    assert evaluate(parse_formula("sub(111010, 10, 11) = 101"))
    assert evaluate(parse_formula("pow2(101) = 100000"))
    # out-of-range pseudoterm atoms are false, their negations true
    assert not evaluate(parse_formula("bit(10, 101) = 0"))
    assert evaluate(parse_formula("bit(10, 101) != 0"))
