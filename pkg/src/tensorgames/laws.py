"""Executable categorical laws, checked as bounded play-set equalities."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arena import ONE, OPPONENT, POINTED_UNIT, Coalesced, Tensor, dual, enumerate_plays, project_play
from .bracketing import kappa
from .category import (
    Bang,
    bang_copycat,
    bang_map,
    contraction,
    dereliction,
    epsilon,
    eta,
    fixpoint,
    promotion,
    structural,
    symmetry,
    trace,
    unfold,
    weakening,
)
from .fam import (
    UNIT,
    distributivity,
    fam_compose,
    fam_coproduct,
    fam_evaluation,
    fam_identity,
    fam_negation,
    fam_phi,
    fam_phi_inverse,
    singleton,
)
from .fixtures import boolean_game
from .pointed import (
    Negation,
    affine_strip,
    evaluation,
    is_transverse,
    lift_negation,
    phi,
    phi_inverse,
    pointed_copycat,
    pointed_dereliction,
    pointed_promotion,
)
from .strategy import (
    Iso,
    arrow,
    arrow_iso,
    compose,
    compose_all,
    copycat,
    enumerate_strategies,
    first_difference,
    is_wb_strategy,
    iso_strategy,
    make_strategy,
    tensor_strategies,
    transport,
)


@dataclass
class LawResult:
    name: str
    depth: int
    holds: bool
    witness: object = None

    def line(self) -> str:
        out = f"LAW {self.name} depth={self.depth} {'HOLDS' if self.holds else 'FAILS'}"
        if not self.holds:
            out += f" witness={_show_witness(self.witness)}"
        return out


@dataclass
class LawReport:
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.results)

    def __bool__(self) -> bool:
        return self.ok

    def __iter__(self):
        return iter(self.results)

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]

    def failures(self) -> list:
        return [r for r in self.results if not r.holds]


def _show_witness(w) -> str:
    if isinstance(w, tuple) and all(hasattr(m, "label") for m in w):
        return ",".join(repr(m.label) for m in w) or "<empty>"
    return repr(w)


def play_set_law(name, left, right, depth, iso=None) -> LawResult:
    """``left`` and ``right`` (strategies or thunks) have the same plays up to ``depth``."""
    try:
        s = left() if callable(left) and not hasattr(left, "respond") else left
        t = right() if callable(right) and not hasattr(right, "respond") else right
        w = first_difference(s, t, depth, iso)
    except Exception as exc:  # a law whose sides cannot even be built fails
        return LawResult(name, depth, False, f"{type(exc).__name__}: {exc}")
    return LawResult(name, depth, w is None, w)


def predicate_law(name, check, depth) -> LawResult:
    try:
        w = check()
    except Exception as exc:
        return LawResult(name, depth, False, f"{type(exc).__name__}: {exc}")
    return LawResult(name, depth, w is None, w)


# ---------------------------------------------------------------------------
# samples


def boolean_maps(game=None):
    """``id``, ``not`` and constant ``true`` on the boolean game."""
    g = game or boolean_game()
    a = arrow(g, g)
    q = [(1, "q"), (0, "q")]
    neg = make_strategy(a, [[], q, q + [(0, "tt"), (1, "ff")], q + [(0, "ff"), (1, "tt")]], name="not")
    true = make_strategy(a, [[], [(1, "q"), (1, "tt")]], name="true")
    return {"id": copycat(g), "not": neg, "true": true}


def constant_true_bang(game=None):
    g = game or boolean_game()
    return make_strategy(arrow(Bang(g), g), [[], [(1, "q"), (1, "tt")]], name="true!")


def linear_boolean():
    """The pointed boolean game: two lifts around the two-element sum."""
    return lift_negation(Negation(((0, POINTED_UNIT), (1, POINTED_UNIT))))


def default_samples():
    g = boolean_game()
    return {"1": ONE, "G_B": g, "G_BxG_B": Tensor((g, g))}


# ---------------------------------------------------------------------------
# the suite


def law_suite(depth: int = 8, samples=None) -> LawReport:
    """Category, symmetric monoidal, compact closed, comonoid and comonad laws."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    samples = samples or default_samples()
    g = boolean_game()
    maps = boolean_maps(g)
    rep = LawReport()
    add = rep.results.append

    for name, a in samples.items():
        cc = copycat(a)
        add(play_set_law(f"snake[{name}]", lambda a=a: _snake(a), cc, depth))
        add(play_set_law(f"snake-dual[{name}]", lambda a=a: _snake_dual(a), lambda a=a: copycat(dual(a)), depth))
        add(play_set_law(f"unitor[{name}]",
                         lambda a=a: compose(structural(Tensor((ONE, a)), a), structural(a, Tensor((ONE, a)))),
                         lambda a=a: copycat(Tensor((ONE, a))), depth))
        add(predicate_law(f"kappa-tensorial[{name}(x)G_B]", lambda a=a: _kappa_tensorial(a, g, depth), depth))

    for name, s in maps.items():
        add(play_set_law(f"identity-left[{name}]", lambda s=s: compose(copycat(g), s), s, depth))
        add(play_set_law(f"identity-right[{name}]", lambda s=s: compose(s, copycat(g)), s, depth))
    trip = [("not", "not", "true"), ("true", "not", "not"), ("not", "id", "not")]
    for x, y, z in trip:
        sx, sy, sz = maps[x], maps[y], maps[z]
        add(play_set_law(f"associativity[{x};{y};{z}]", lambda: compose(compose(sx, sy), sz),
                         lambda: compose(sx, compose(sy, sz)), depth))

    neg, true = maps["not"], maps["true"]
    add(play_set_law("tensor-functorial[not,true]",
                     lambda: compose(tensor_strategies(neg, true), tensor_strategies(true, neg)),
                     lambda: tensor_strategies(compose(neg, true), compose(true, neg)), depth))
    add(play_set_law("symmetry-involutive[G_B,G_BxG_B]",
                     lambda: compose(symmetry(g, Tensor((g, g))), symmetry(Tensor((g, g)), g)),
                     lambda: copycat(Tensor((g, Tensor((g, g))))), depth))
    add(play_set_law("symmetry-natural[not,true]",
                     lambda: compose(tensor_strategies(neg, true), symmetry(g, g)),
                     lambda: compose(symmetry(g, g), tensor_strategies(true, neg)), depth))
    gg = Tensor((g, g))
    add(play_set_law("associator-inverse[G_B]",
                     lambda: compose(structural(Tensor((gg, g)), Tensor((g, gg))),
                                     structural(Tensor((g, gg)), Tensor((gg, g)))),
                     lambda: copycat(Tensor((gg, g))), depth))
    add(play_set_law("yanking[G_B]", lambda: trace(symmetry(g, g)), lambda: copycat(g), depth))

    # the exponential as a comonoid and a comonad
    bg = Bang(g)
    add(play_set_law("counit-left[!G_B]",
                     lambda: compose_all(contraction(g), tensor_strategies(weakening(g), copycat(bg)),
                                         structural(Tensor((ONE, bg)), bg)),
                     lambda: bang_copycat(g), depth))
    add(play_set_law("counit-right[!G_B]",
                     lambda: compose_all(contraction(g), tensor_strategies(copycat(bg), weakening(g)),
                                         structural(Tensor((bg, ONE)), bg)),
                     lambda: bang_copycat(g), depth))
    add(play_set_law("contraction-commutative[!G_B]",
                     lambda: compose(contraction(g), symmetry(bg, bg)), lambda: contraction(g), depth))
    add(play_set_law("contraction-coassociative[!G_B]",
                     lambda: compose_all(contraction(g), tensor_strategies(contraction(g), copycat(bg)),
                                         structural(Tensor((Tensor((bg, bg)), bg)), Tensor((bg, Tensor((bg, bg)))))),
                     lambda: compose(contraction(g), tensor_strategies(copycat(bg), contraction(g))),
                     depth))
    add(play_set_law("bang-functorial[G_B]", lambda: bang_map(copycat(g)), lambda: bang_copycat(g), depth))
    der_not = compose(dereliction(g), neg)
    add(play_set_law("comonad-counit[der;not]", lambda: compose(promotion(der_not), dereliction(g)),
                     der_not, depth))
    add(play_set_law("comonad-unit[G_B]", lambda: promotion(dereliction(g)), lambda: bang_copycat(g), depth))
    add(play_set_law("comonad-assoc[der;not]",
                     lambda: compose(promotion(der_not), promotion(der_not)),
                     lambda: promotion(compose(promotion(der_not), der_not)), depth))
    for nm, sigma in (("true", constant_true_bang(g)), ("der;not", der_not)):
        add(play_set_law(f"fixpoint-unfolding[{nm}]", lambda s=sigma: unfold(fixpoint(s), s),
                         lambda s=sigma: fixpoint(s), depth))

    # the pointed exponential !(¡ -)
    b = linear_boolean()
    pd = pointed_dereliction(b)
    add(play_set_law("pointed-comonad-counit[B]", lambda: compose(pointed_promotion(pd), pd), pd, depth))
    add(play_set_law("pointed-comonad-unit[B]", lambda: pointed_promotion(pd), lambda: pointed_copycat(b), depth))

    # the negation bijection and distributivity
    ev = evaluation(b)
    nb = lift_negation(b)
    add(play_set_law("phi-roundtrip[ev]", lambda: phi_inverse(phi(ev, b, nb, POINTED_UNIT), b, nb, POINTED_UNIT),
                     ev, depth))
    fb = fam_coproduct(UNIT, UNIT)
    fev = fam_evaluation(fb)
    nfb = fam_negation(fb)
    add(predicate_law("fam-phi-roundtrip[ev]",
                      lambda: _fam_diff(fam_phi_inverse(fam_phi(fev, fb, nfb, UNIT), fb, nfb, UNIT), fev, depth),
                      depth))
    x = singleton(b)
    to, back = distributivity(x, UNIT, fb)
    add(predicate_law("distributivity-iso[B,1,1+1]",
                      lambda: _fam_diff(fam_compose(to, back), fam_identity(to.src), depth)
                      or _fam_diff(fam_compose(back, to), fam_identity(back.src), depth), depth))
    return rep


def _snake(a):
    """``A ~ A (x) 1 -> A (x) (A* (x) A) ~ (A (x) A*) (x) A -> 1 (x) A ~ A``."""
    d = dual(a)
    return compose_all(
        structural(a, Tensor((a, ONE))),
        tensor_strategies(copycat(a), eta(a)),
        structural(Tensor((a, Tensor((d, a)))), Tensor((Tensor((a, d)), a))),
        tensor_strategies(epsilon(a), copycat(a)),
        structural(Tensor((ONE, a)), a),
    )


def _snake_dual(a):
    d = dual(a)
    return compose_all(
        structural(d, Tensor((ONE, d))),
        tensor_strategies(eta(a), copycat(d)),
        structural(Tensor((Tensor((d, a)), d)), Tensor((d, Tensor((a, d))))),
        tensor_strategies(copycat(d), epsilon(a)),
        structural(Tensor((d, ONE)), d),
    )


def _kappa_tensorial(a, b, depth):
    game = Tensor((a, b))
    for p in enumerate_plays(game, depth):
        left, right = project_play(p, "left", game), project_play(p, "right", game)
        if kappa(game, p) != kappa(a, left) + kappa(b, right):
            return p
    return None


def _fam_diff(f, g, depth):
    if not (f.src.same(g.src) and f.dst.same(g.dst)):
        return "different domains or codomains"
    for i in f.src.indices:
        if f.reindex[i] != g.reindex[i]:
            return ("reindex", i)
        w = first_difference(f[i], g[i], depth)
        if w is not None:
            return w
    return None


# ---------------------------------------------------------------------------
# modalities as adjunctions


def modality_adjunction_check(depth: int = 8) -> LawReport:
    """Triangle identities for the affine adjunction, the pointed exponential
    comonad, and terminality of the unit among affine games."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    rep = LawReport()
    add = rep.results.append
    b = linear_boolean()
    st = affine_strip(b)
    lab = lambda m: m.label  # noqa: E731
    counit = iso_strategy(Iso(st, b, lab, lab), "der¡")
    add(predicate_law("affine-counit-wb[B]",
                      lambda: None if is_wb_strategy(counit, depth) and is_transverse(counit) else "not wb",
                      depth))
    # on an affine game the counit is the identity
    stst = affine_strip(st)
    add(play_set_law("affine-triangle-left[¡B]", iso_strategy(Iso(stst, st, lab, lab)), copycat(st), depth))
    # the strip of the counit is the identity on the strip
    lifted = transport(counit, arrow_iso(Iso.identity(st), Iso(b, st, lab, lab)))
    add(play_set_law("affine-triangle-right[B]", lifted, copycat(st), depth))

    pd = pointed_dereliction(b)
    add(play_set_law("exponential-comonad-counit[B]", lambda: compose(pointed_promotion(pd), pd), pd, depth))
    add(play_set_law("exponential-comonad-unit[B]", lambda: pointed_promotion(pd), lambda: pointed_copycat(b),
                     depth))

    for name, m in (("I", POINTED_UNIT), ("¡B", st), ("¡I(.)¡B", Coalesced((POINTED_UNIT, st)))):
        add(predicate_law(f"unit-terminal[{name}]", lambda m=m: _terminal_witness(m, depth), depth))
    return rep


def _terminal_witness(m, depth):
    game = arrow(m, POINTED_UNIT)
    found = []
    for s in enumerate_strategies(game, min(depth, 4)):
        if all(s.respond((o,)) is not None for o in game.moves(game.root) if o.polarity == OPPONENT) \
                and is_transverse(s):
            found.append(s)
    return None if len(found) == 1 else f"{len(found)} transverse total morphisms"


__all__ = [
    "LawReport",
    "LawResult",
    "boolean_maps",
    "constant_true_bang",
    "default_samples",
    "law_suite",
    "linear_boolean",
    "modality_adjunction_check",
    "play_set_law",
]
