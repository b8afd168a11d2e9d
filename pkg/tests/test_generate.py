import pytest
from hypothesis import given, settings, strategies as st

from tensorgames.bracketing import check_axioms
from tensorgames.errors import GenerationBudgetExceeded
from tensorgames.formats import dump_game
from tensorgames.generate import gen_random_game, gen_random_wb_strategy, wb_replies
from tensorgames.strategy import arrow, is_wb_strategy, plays_upto


def test_generation_is_deterministic():
    assert dump_game(gen_random_game(1, 6)) == dump_game(gen_random_game(1, 6))
    assert dump_game(gen_random_game(1, 6)) != dump_game(gen_random_game(2, 6))


def test_kinds_are_balanced():
    kinds = [gen_random_game(s, 5).kind for s in range(200)]
    assert 70 < kinds.count("qa") < 130


def test_budget():
    with pytest.raises(GenerationBudgetExceeded):
        gen_random_game(3, 12, kind="multi", cap=1)
    with pytest.raises(ValueError):
        gen_random_game(3, 0)


def test_position_cap_is_respected():
    for s in range(30):
        assert len(gen_random_game(s, 12, cap=60).positions) <= 60


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_random_strategies_are_deterministic_and_wb(seed):
    g = arrow(gen_random_game(seed, 5), gen_random_game(seed + 1, 5))
    s1 = gen_random_wb_strategy(seed, g)
    s2 = gen_random_wb_strategy(seed, g)
    p1 = [tuple(m.label for m in p) for p in plays_upto(s1, 6)]
    assert p1 == [tuple(m.label for m in p) for p in plays_upto(s2, 6)]
    assert is_wb_strategy(s1, 8)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_generated_games_pass_the_axioms(seed):
    assert check_axioms(gen_random_game(seed, 6), 6).ok


def test_wb_replies_only_offers_proponent_moves():
    g = gen_random_game(5, 6)
    for m in g.moves(g.root):
        for r in wb_replies(g, (m,)):
            assert r.polarity > 0
