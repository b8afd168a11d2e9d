import pytest
from hypothesis import given, settings, strategies as st

from tensorgames.arena import structurally_equal
from tensorgames.errors import ParseError
from tensorgames.fixtures import PCF2_SPECS, TRIPLE_SPECS, boolean_game, pcf2_game, triple_game
from tensorgames.formats import (
    Sym, dump_game, dump_sexpr, dump_strategy, parse_game_file, parse_sexpr, parse_sexprs,
    parse_strategy_file,
)
from tensorgames.generate import gen_random_game
from tensorgames.laws import boolean_maps
from tensorgames.strategy import compose, strategies_equal


def test_sexpr_basics():
    assert parse_sexprs("(a (b c) \"d e\") ; comment\n x") == [["a", ["b", "c"], "d e"], "x"]
    assert isinstance(parse_sexpr("a"), Sym)
    assert dump_sexpr(["a", "b c", 3, "12"]) == '(a "b c" 3 "12")'
    for bad in ("(a", "a)", "", "(a) (b)"):
        with pytest.raises(ParseError):
            parse_sexpr(bad)


@settings(max_examples=200, deadline=None)
@given(st.recursive(st.text(min_size=1, max_size=6), lambda sub: st.lists(sub, max_size=4), max_leaves=10))
def test_sexpr_round_trip(x):
    assert parse_sexpr(dump_sexpr(x)) == x


def test_arena_files_round_trip():
    for game, specs in ((triple_game(), TRIPLE_SPECS), (pcf2_game(), PCF2_SPECS)):
        game.arena = specs
        text = dump_game(game)
        back = parse_game_file(text)
        assert structurally_equal(back, game, 8)
        assert dump_game(back) == text


def test_explicit_game_round_trip():
    g = boolean_game()
    back = parse_game_file(dump_game(g))
    assert structurally_equal(back, g, 4)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_random_games_round_trip(seed):
    g = gen_random_game(seed, 7)
    back = parse_game_file(dump_game(g))
    assert structurally_equal(back, g, 10)


def test_strategy_round_trip_and_composition():
    m = boolean_maps()
    files = {k: dump_strategy(s, 8) for k, s in m.items()}
    back = {k: parse_strategy_file(t) for k, t in files.items()}
    for k in m:
        assert strategies_equal(back[k], m[k], 8)
        assert dump_strategy(back[k], 8) == files[k]
    assert strategies_equal(compose(back["not"], back["not"]), m["id"], 8)


@pytest.mark.parametrize("text", [
    "(arena X (move q1 Q))",
    "(arena X (move q1 O (frob a)))",
    "(game X (position a))",
    "(game X (root a) (position a (query k Z)))",
    "(strategy s (on (arena X (move q O))) (notplay))",
    "(strategy s (arrow (arena X (move q O))) (play))",
    "(widget)",
])
def test_malformed_files(text):
    with pytest.raises(ParseError):
        if "strategy" in text:
            parse_strategy_file(text)
        else:
            parse_game_file(text)
