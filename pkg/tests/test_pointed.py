import pytest

from tensorgames.arena import POINTED_UNIT, Coalesced, dual
from tensorgames.bracketing import check_axioms
from tensorgames.errors import NotPointed, ShapeMismatch
from tensorgames.fixtures import boolean_game
from tensorgames.laws import linear_boolean
from tensorgames.pointed import (
    BOTTOM, affine_strip, coalesce, coalesced_structural, curry, double_neg_maps, evaluation,
    initial_move, is_affine, is_pointed, is_transverse, lift_negation, lollipop, phi, phi_inverse,
    pointed_contraction, pointed_copycat, pointed_dereliction, pointed_exponential,
    pointed_weakening, strength, uncurry,
)
from tensorgames.strategy import arrow, compose, copycat, enumerate_strategies, first_difference, is_wb_strategy

B = linear_boolean()


def test_pointedness():
    assert is_pointed(POINTED_UNIT) and is_pointed(B) and is_pointed(lift_negation(B))
    assert not is_pointed(boolean_game())
    assert initial_move(B).label == "neg"
    with pytest.raises(NotPointed):
        coalesce(boolean_game(), B)


def test_affine_strip():
    st = affine_strip(B)
    assert not is_affine(B)
    assert is_affine(st) and is_affine(POINTED_UNIT)
    assert affine_strip(st) == st
    assert check_axioms(st, 8).ok


def test_unit_of_the_coalesced_tensor():
    ia = coalesce(POINTED_UNIT, B)
    there = coalesced_structural(ia, B)
    back = coalesced_structural(B, ia)
    assert first_difference(compose(there, back), copycat(ia), 8) is None
    assert first_difference(compose(back, there), copycat(B), 8) is None


def test_transverse_strategies():
    found = enumerate_strategies(arrow(B, B), 4)
    assert any(is_transverse(s) for s in found)
    assert not all(is_transverse(s) for s in found)
    assert is_transverse(copycat(B))


def test_phi_and_curry_roundtrip():
    ev = evaluation(B)
    nb = lift_negation(B)
    assert is_wb_strategy(ev, 8)
    back = phi_inverse(phi(ev, B, nb, POINTED_UNIT), B, nb, POINTED_UNIT)
    assert first_difference(back, ev, 8) is None
    neg = lift_negation(B)
    c = copycat(neg)
    assert first_difference(curry(uncurry(c, neg, B), neg, B), c, 8) is None
    with pytest.raises(ShapeMismatch):
        curry(c, neg, B)


def test_lollipop_is_a_negated_coalesced_tensor():
    lo = lollipop(B, POINTED_UNIT)
    assert is_pointed(lo)
    assert check_axioms(lo, 6).ok
    assert check_axioms(BOTTOM, 6).ok


def test_strength_and_double_negation_maps():
    assert is_wb_strategy(strength(B, B), 10)
    left, right = double_neg_maps(B, B)
    assert is_wb_strategy(left, 10) and is_wb_strategy(right, 10)
    w = first_difference(left, right, 10)
    assert w is not None and len(w) == 4


def test_pointed_exponential_comonoid():
    e = pointed_exponential(B)
    assert is_pointed(e)
    for s in (pointed_dereliction(B), pointed_weakening(B), pointed_contraction(B), pointed_copycat(B)):
        assert is_wb_strategy(s, 8), s.name
        assert is_transverse(s), s.name
    assert check_axioms(Coalesced((e, e)), 6).ok


def test_dual_of_pointed_is_not_pointed():
    assert not is_pointed(dual(B))
