import pytest

from tensorgames.arena import ONE, Tensor
from tensorgames.category import (
    Bang, bang_copycat, contraction, dereliction, epsilon, eta, fixpoint, fixpoint_approximant,
    promotion, structural, symmetry, trace, trace_compact, weakening,
)
from tensorgames.errors import GameError
from tensorgames.fixtures import boolean_game
from tensorgames.laws import boolean_maps, constant_true_bang
from tensorgames.strategy import (
    arrow, compose, copycat, first_difference, is_wb_strategy, plays_upto, tensor_strategies,
)

G = boolean_game()
M = boolean_maps(G)


def opening_reply(strategy, label):
    g = strategy.game
    r = strategy.respond((g.find(g.root, label),))
    return r.label if r else None


def test_symmetry_swaps_components():
    s = symmetry(G, G)
    assert opening_reply(s, (1, (0, "q"))) == (0, (1, "q"))
    assert first_difference(compose(s, symmetry(G, G)), copycat(Tensor((G, G))), 8) is None


def test_trace_of_a_tensor_with_the_identity():
    sigma = tensor_strategies(M["not"], copycat(G))
    assert first_difference(trace(sigma), M["not"], 8) is None


def test_direct_trace_agrees_with_the_compact_route():
    for sigma in (symmetry(G, G), tensor_strategies(M["true"], copycat(G)),
                  compose(symmetry(G, G), tensor_strategies(M["not"], copycat(G)))):
        assert first_difference(trace(sigma), trace_compact(sigma), 8) is None


def test_unit_and_counit_are_copycats():
    assert is_wb_strategy(eta(G), 6)
    assert is_wb_strategy(epsilon(G), 6)
    assert len(plays_upto(eta(G), 4)) == len(plays_upto(copycat(G), 4))


def test_bang_opens_copies():
    b = Bang(G)
    labels = [m.label for m in b.moves(b.root)]
    assert labels == [("open", "q")]
    pos = b.find(b.root, ("open", "q")).target
    assert {m.label for m in b.moves(pos)} == {(1, "tt"), (1, "ff"), ("open", "q")}


def test_dereliction_uses_one_copy():
    d = dereliction(G)
    assert opening_reply(d, (1, "q")) == (0, ("open", "q"))


def test_contraction_routes_by_opening():
    c = contraction(G)
    assert opening_reply(c, (1, (1, ("open", "q")))) == (0, ("open", "q"))
    assert is_wb_strategy(c, 8)
    assert plays_upto(weakening(G), 8) == [()]


def test_promotion_copies_the_strategy():
    der_not = compose(dereliction(G), M["not"])
    p = promotion(der_not)
    assert is_wb_strategy(p, 8)
    assert first_difference(compose(p, dereliction(G)), der_not, 8) is None
    assert first_difference(promotion(dereliction(G)), bang_copycat(G), 8) is None


def test_fixpoints():
    true = constant_true_bang(G)
    fix = fixpoint(true)
    assert [[m.label for m in p] for p in plays_upto(fix, 4)] == [[], [(1, "q"), (1, "tt")]]
    assert first_difference(fixpoint_approximant(true, 1), fix, 6) is None
    assert plays_upto(fixpoint(dereliction(G)), 10) == [()]
    assert plays_upto(fixpoint_approximant(dereliction(G), 4), 6) == [()]


def test_fixpoint_needs_a_bang_source():
    with pytest.raises(GameError):
        fixpoint(M["not"])


def test_structural_unitors():
    u = structural(Tensor((ONE, G)), G)
    assert opening_reply(u, (1, "q")) == (0, (1, "q"))
    assert first_difference(compose(u, structural(G, Tensor((ONE, G)))), copycat(Tensor((ONE, G))), 8) is None
    assert arrow(ONE, G).parts[1] is G
