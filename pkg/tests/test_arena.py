import pytest
from hypothesis import given, settings, strategies as st

from tensorgames.arena import (
    ONE, OPPONENT, PROPONENT, Tensor, build_game, dual, enumerate_plays, is_alternating, is_path,
    materialize, project_play, replay, structurally_equal,
)
from tensorgames.errors import DanglingMove, DuplicateId, NotATensorGame, ParallelMove, UnknownRoot
from tensorgames.fixtures import boolean_game, pcf2_game, play
from tensorgames.generate import gen_random_game


def test_build_rejects_bad_tables():
    with pytest.raises(UnknownRoot):
        build_game(["a"], [], "b")
    with pytest.raises(DuplicateId):
        build_game(["a", "a"], [], "a")
    with pytest.raises(DanglingMove):
        build_game(["a"], [("m", "a", "z", "O")], "a")
    with pytest.raises(DuplicateId):
        build_game(["a", "b"], [("m", "a", "b", "O"), ("m", "a", "b", "P")], "a")
    with pytest.raises(ParallelMove):
        build_game(["a", "b"], [("m", "a", "b", "O"), ("n", "a", "b", "O")], "a", strict=True)


def test_boolean_plays():
    g = boolean_game()
    plays = enumerate_plays(g, 4)
    assert sorted(tuple(m.label for m in p) for p in plays) == [(), ("q",), ("q", "ff"), ("q", "tt")]


def test_dual_flips_polarity_and_is_involutive():
    g = boolean_game()
    d = dual(g)
    assert [m.polarity for m in d.moves(d.root)] == [PROPONENT]
    assert structurally_equal(dual(d), g, 4)


def test_unit_has_no_moves():
    assert ONE.moves(ONE.root) == () or list(ONE.moves(ONE.root)) == []
    assert enumerate_plays(ONE, 5) == [()]


def test_tensor_interleaves_and_projects():
    g = boolean_game()
    t = Tensor((g, g))
    p = replay(t, [(0, "q"), (1, "q"), (1, "tt"), (0, "ff")])
    assert p is not None and is_path(t, p)
    assert [m.label for m in project_play(p, "left", t)] == ["q", "ff"]
    assert [m.label for m in project_play(p, 1, t)] == ["q", "tt"]
    with pytest.raises(NotATensorGame):
        project_play(play(g, ["q"]), 0, g)


def test_replay_rejects_illegal_moves():
    g = pcf2_game()
    assert replay(g, ["q1", "tt3"]) is None
    assert replay(g, ["q1", "q2", "tt2"]) is not None


def test_materialize_keeps_the_play_tree():
    t = Tensor((boolean_game(), dual(boolean_game())))
    m = materialize(t, 4)
    assert len(m.positions) == 16
    assert len(enumerate_plays(m, 4)) == len(enumerate_plays(t, 4))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_random_game_plays_alternate_and_start_with_opponent(seed):
    g = gen_random_game(seed, 6)
    for p in enumerate_plays(g, 8):
        assert is_alternating(p, g)
        if p:
            assert p[0].polarity == OPPONENT


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_tensor_plays_project_to_component_plays(seed):
    a, b = gen_random_game(seed, 4), gen_random_game(seed + 1, 4)
    t = Tensor((a, b))
    for p in enumerate_plays(t, 4):
        assert is_path(a, project_play(p, 0, t))
        assert is_path(b, project_play(p, 1, t))
