import pytest
from hypothesis import given, settings, strategies as st

from tensorgames.arena import Tensor, build_game, dual, enumerate_plays
from tensorgames.bracketing import (
    ResourceCount, attach_brackets, check_axioms, classic_wb_oracle, is_wb_play, kappa,
    suffix_kappas, wb_violation,
)
from tensorgames.errors import MalformedQALabels, RootHasQueries, UnknownQuery, WrongInitiationPolarity
from tensorgames.fixtures import boolean_game, pcf2_game, play, triple_game
from tensorgames.generate import gen_random_game, qa_oracle_labels


def _tiny():
    return build_game(["r", "x", "y"], [("q", "r", "x", "O"), ("a", "x", "y", "P")], "r")


def test_attach_brackets_validates():
    with pytest.raises(RootHasQueries):
        attach_brackets(_tiny(), {"r": {"z": "O"}}, {})
    with pytest.raises(UnknownQuery):
        attach_brackets(_tiny(), {"nowhere": {"z": "O"}}, {})
    # an Opponent move cannot open a Proponent query
    with pytest.raises(WrongInitiationPolarity):
        attach_brackets(_tiny(), {"x": {"z": "P"}}, {})


def test_boolean_question_opens_one_opponent_query():
    g = boolean_game()
    assert kappa(g, play(g, ["q"])) == ResourceCount(0, 1)
    assert kappa(g, play(g, ["q", "tt"])) == ResourceCount(0, 0)


def test_suffix_kappas_agree_with_kappa():
    g = pcf2_game()
    p = play(g, ["q1", "q2", "q3", "tt3", "tt2"])
    ks = suffix_kappas(g, p)
    assert ks == [kappa(g, p[i:]) for i in range(len(p) + 1)]


def test_violation_names_the_segment():
    g = pcf2_game()
    p = play(g, ["q1", "q2", "q3", "tt1"])
    i, j = wb_violation(g, p)
    assert (p[i].label, p[j].label) in {("q3", "tt1"), ("q1", "tt1"), ("q2", "tt1")}


def test_oracle_rejects_malformed_labels():
    with pytest.raises(MalformedQALabels):
        classic_wb_oracle([("A", "x")])
    with pytest.raises(MalformedQALabels):
        classic_wb_oracle(["nonsense"])
    assert classic_wb_oracle([("Q", 1), ("Q", 2), ("A", 2), ("A", 1)])
    assert not classic_wb_oracle([("Q", 1), ("Q", 2), ("A", 1)])


def test_fixture_axioms():
    for g in (boolean_game(), pcf2_game(), triple_game(), Tensor((boolean_game(), dual(pcf2_game())))):
        assert check_axioms(g, 6).ok


def test_axioms_catch_a_broken_residual():
    # the answer turns the Opponent query into a Proponent one
    g = build_game(["r", "x", "y"], [("q", "r", "x", "O"), ("a", "x", "y", "P")], "r")
    bad = attach_brackets(g, {"x": {"k": "O"}, "y": {"k": "P"}}, {"a": {"k": "k"}}, validate=False)
    rep = check_axioms(bad, 4)
    assert not rep.ok
    assert rep.violations[0].axiom == "local"


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_counting_matches_stack_on_qa_games(seed):
    g = gen_random_game(seed, 8, kind="qa")
    lab = qa_oracle_labels(g)
    for p in enumerate_plays(g, 10):
        assert is_wb_play(g, p) == classic_wb_oracle([lab(m) for m in p])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 100_000))
def test_kappa_is_subadditive_on_random_games(seed):
    g = gen_random_game(seed, 7)
    for p in enumerate_plays(g, 8):
        for k in range(len(p) + 1):
            assert kappa(g, p) <= kappa(g, p[:k]) + kappa(g, p[k:])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 100_000))
def test_generated_games_satisfy_axioms(seed):
    assert check_axioms(gen_random_game(seed, 7), 6).ok
