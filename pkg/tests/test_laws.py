from tensorgames.arena import Tensor
from tensorgames.fixtures import boolean_game
from tensorgames.laws import (
    LawResult, boolean_maps, law_suite, modality_adjunction_check, play_set_law,
)
from tensorgames.strategy import arrow, copycat, make_strategy

G = boolean_game()


def corrupted_copycat():
    """Copycat on G_B that answers ff when the argument says tt."""
    q = [(1, "q"), (0, "q")]
    return make_strategy(arrow(G, G), [[], q, q + [(0, "tt"), (1, "ff")], q + [(0, "ff"), (1, "ff")]],
                         name="bad-id")


def test_suite_holds_on_small_samples():
    rep = law_suite(6, {"G_B": G})
    assert rep.ok, rep.lines()
    assert all(line.endswith("HOLDS") for line in rep.lines())


def test_corrupted_copycat_fails_with_a_witness():
    r = play_set_law("identity[bad]", corrupted_copycat(), copycat(G), 8)
    assert not r.holds
    assert [m.label for m in r.witness][-1] == (1, "ff")
    assert r.line().startswith("LAW identity[bad] depth=8 FAILS witness=")


def test_a_law_whose_sides_cannot_be_built_fails():
    def broken():
        raise ValueError("no such map")

    r = play_set_law("broken", broken, copycat(G), 4)
    assert not r.holds and "ValueError" in r.witness


def test_not_is_not_the_identity():
    r = play_set_law("not=id", boolean_maps(G)["not"], copycat(G), 8)
    assert not r.holds


def test_modality_adjunction():
    rep = modality_adjunction_check(8)
    assert rep.ok, rep.lines()
    names = {r.name for r in rep}
    assert "unit-terminal[¡B]" in names


def test_report_line_format():
    assert LawResult("x", 3, True).line() == "LAW x depth=3 HOLDS"
    assert "witness=<empty>" in LawResult("x", 3, False, ()).line()


def test_tensor_sample():
    assert law_suite(4, {"GxG": Tensor((G, G))}).ok
