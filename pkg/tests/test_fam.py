import itertools
import math

import pytest

from tensorgames.arena import POINTED_UNIT
from tensorgames.errors import IndexMismatch, NotSingleton, ShapeMismatch
from tensorgames.fam import (
    EMPTY, UNIT, FamMorphism, copair, distributivity, fam_affine, fam_compose, fam_coproduct,
    fam_equal, fam_evaluation, fam_identity, fam_negation, fam_phi, fam_phi_inverse, fam_tensor,
    injection, singleton, singleton_fixpoint,
)
from tensorgames.laws import linear_boolean
from tensorgames.pointed import affine_strip, is_transverse, lift_negation
from tensorgames.strategy import arrow, copycat, enumerate_strategies, first_difference, is_wb_strategy, plays_upto

TWO = fam_coproduct(UNIT, UNIT)
B = linear_boolean()


def test_one_plus_one_has_two_unit_components():
    assert len(TWO) == 2
    assert all(TWO[i] == POINTED_UNIT for i in TWO.indices)


def test_negation_of_a_singleton_is_the_lift():
    assert fam_negation(singleton(B)).only() == lift_negation(B)


def test_negation_of_one_plus_one_lets_opponent_choose():
    n = fam_negation(TWO).only()
    (lift,) = n.moves(n.root)
    assert lift.label == "neg" and lift.polarity > 0
    choices = n.moves(lift.target)
    assert len(choices) == 2 and all(m.polarity < 0 for m in choices)


def test_empty_family_absorbs_tensor():
    assert len(fam_tensor(EMPTY, TWO)) == 0
    assert len(fam_coproduct(EMPTY, TWO)) == 2


def test_morphism_validation():
    with pytest.raises(IndexMismatch):
        FamMorphism(TWO, UNIT, {}, {}, "bad")
    with pytest.raises(IndexMismatch):
        fam_compose(fam_identity(TWO), fam_identity(UNIT))


def test_copair_of_injections_is_the_identity():
    objs = (UNIT, singleton(B))
    c = copair(injection(objs, 0), injection(objs, 1))
    assert fam_equal(c, fam_identity(fam_coproduct(*objs)), 8)


def test_copair_is_the_unique_mediator():
    # maps out of 1 + 1 into 1 + 1 are exactly the four reindexings
    f = copair(injection((UNIT, UNIT), 1), injection((UNIT, UNIT), 0))
    assert fam_equal(fam_compose(injection((UNIT, UNIT), 0), f), injection((UNIT, UNIT), 1), 6)
    assert fam_equal(fam_compose(f, f), fam_identity(TWO), 6)


def test_distributivity_round_trips():
    for a, b, c in ((singleton(B), UNIT, TWO), (TWO, TWO, UNIT), (UNIT, EMPTY, TWO)):
        to, back = distributivity(a, b, c)
        assert fam_equal(fam_compose(to, back), fam_identity(to.src), 8)
        assert fam_equal(fam_compose(back, to), fam_identity(back.src), 8)


def test_affine_modality_strips_pointwise():
    n = fam_negation(TWO)
    assert fam_affine(n).only() == affine_strip(n.only())
    with pytest.raises(NotSingleton):
        fam_affine(TWO)


def test_fixpoint_needs_singletons():
    with pytest.raises(NotSingleton):
        singleton_fixpoint(fam_identity(TWO))


def test_evaluation_is_transverse_and_wb():
    ev = fam_evaluation(TWO)
    for i in ev.src.indices:
        assert is_transverse(ev[i]) and is_wb_strategy(ev[i], 8)


def test_phi_rejects_strategies_that_skip_the_lift():
    src = fam_tensor(UNIT, UNIT)
    silent = FamMorphism(src, fam_negation(UNIT), {t: "*" for t in src.indices},
                         {t: _empty(src[t]) for t in src.indices}, "silent")
    with pytest.raises(ShapeMismatch):
        fam_phi(silent, UNIT, UNIT, UNIT)


def _empty(game):
    from tensorgames.strategy import empty_strategy

    return empty_strategy(arrow(game, fam_negation(UNIT).only()))


def _homs(src, dst, depth=6):
    return [s for s in enumerate_strategies(arrow(src, dst), depth)
            if len(plays_upto(s, 2)) > 1 and is_transverse(s) and is_wb_strategy(s, depth)]


@pytest.mark.parametrize("name", ["B,1,2", "2,B,1", "B,2,1", "1,2,2"])
def test_phi_is_a_bijection_on_small_hom_sets(name):
    objs = {"1": UNIT, "2": TWO, "B": singleton(B)}
    f, g, h = (objs[x] for x in name.split(","))
    fg = fam_tensor(f, g)
    nh = fam_negation(h)
    ngh = fam_negation(fam_tensor(g, h))
    left = {t: _homs(fg[t], nh.only()) for t in fg.indices}
    right = {i: _homs(f[i], ngh.only()) for i in f.indices}
    assert math.prod(map(len, left.values())) == math.prod(map(len, right.values()))
    images = []
    for choice in itertools.product(*left.values()):
        comps = dict(zip(fg.indices, choice))
        sigma = FamMorphism(fg, nh, {t: "*" for t in fg.indices}, comps, "s")
        tau = fam_phi(sigma, f, g, h)
        key = []
        for i in f.indices:
            matches = [k for k, r in enumerate(right[i]) if first_difference(tau[i], r, 6) is None]
            assert len(matches) == 1
            key.append(matches[0])
        images.append(tuple(key))
        back = fam_phi_inverse(tau, f, g, h)
        for t in fg.indices:
            assert first_difference(back[t], sigma[t], 6) is None
    assert len(set(images)) == len(images)


def test_singleton_fixpoint_of_a_constant():
    # !B -> B answering the opening with the lift and then true
    from tensorgames.fam import fam_bang

    src = fam_bang(singleton(B))
    cands = [s for s in _homs(src.only(), B, 6)]
    assert cands
    f = FamMorphism(src, singleton(B), {"*": "*"}, {"*": cands[0]}, "c")
    fix = singleton_fixpoint(f)
    assert fix.src.same(UNIT)
    assert is_wb_strategy(fix["*"], 8)
    assert copycat(B) is not None
