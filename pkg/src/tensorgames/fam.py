"""Finite families of pointed games and their morphisms."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arena import POINTED_UNIT, PROPONENT, Coalesced, Game
from .errors import GamesNotIsomorphic, IndexMismatch, NotSingleton, ShapeMismatch
from .pointed import (
    LIFT,
    SINGLE,
    Negation,
    _curry_iso,
    _first,
    _phi_iso,
    affine_strip,
    coalesced_structural,
    coalesced_tensor,
    pointed_exponential,
    pointed_fixpoint,
)
from .strategy import Strategy, arrow, compose, copycat, strategies_equal, swap_permutation, transport


@dataclass(frozen=True)
class FamObject:
    indices: tuple
    components: dict = field(compare=False)

    def __post_init__(self):
        if set(self.indices) != set(self.components) or len(set(self.indices)) != len(self.indices):
            raise IndexMismatch("components must be given exactly on the index set")

    def __getitem__(self, i) -> Game:
        return self.components[i]

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def key(self):
        return tuple((i, self.components[i].key) for i in self.indices)

    def same(self, other: "FamObject") -> bool:
        return self.key == other.key

    def is_singleton(self) -> bool:
        return len(self.indices) == 1

    def only(self) -> Game:
        if not self.is_singleton():
            raise NotSingleton(f"family with {len(self)} components")
        return self.components[self.indices[0]]


def family(*games, indices=None) -> FamObject:
    idx = tuple(indices) if indices is not None else tuple(range(len(games)))
    return FamObject(idx, dict(zip(idx, games)))


def singleton(game: Game) -> FamObject:
    return FamObject((SINGLE,), {SINGLE: game})


UNIT = singleton(POINTED_UNIT)
EMPTY = FamObject((), {})


@dataclass
class FamMorphism:
    src: FamObject
    dst: FamObject
    reindex: dict
    components: dict
    name: str = "f"

    def __post_init__(self):
        for i in self.src.indices:
            if i not in self.reindex or self.reindex[i] not in self.dst.components:
                raise IndexMismatch(f"reindexing is not total at {i!r}")
            if i not in self.components:
                raise IndexMismatch(f"missing component at {i!r}")

    def __getitem__(self, i) -> Strategy:
        return self.components[i]


def fam_identity(obj: FamObject) -> FamMorphism:
    return FamMorphism(obj, obj, {i: i for i in obj.indices},
                       {i: copycat(obj[i]) for i in obj.indices}, "id")


def fam_compose(f: FamMorphism, g: FamMorphism) -> FamMorphism:
    if not f.dst.same(g.src):
        raise IndexMismatch("codomain and domain differ")
    return FamMorphism(
        f.src, g.dst,
        {i: g.reindex[f.reindex[i]] for i in f.src.indices},
        {i: compose(f[i], g[f.reindex[i]]) for i in f.src.indices},
        f"{f.name};{g.name}",
    )


def fam_equal(f: FamMorphism, g: FamMorphism, depth: int = 10) -> bool:
    if not (f.src.same(g.src) and f.dst.same(g.dst)):
        return False
    return all(f.reindex[i] == g.reindex[i] and strategies_equal(f[i], g[i], depth)
               for i in f.src.indices)


# ---------------------------------------------------------------------------
# tensor and coproduct


def _coalesce_all(games):
    games = tuple(games)
    return games[0] if len(games) == 1 else Coalesced(games)


def fam_tensor(*objs: FamObject) -> FamObject:
    """Componentwise coalesced tensor, indexed by tuples of indices."""
    idx = [()]
    for o in objs:
        idx = [t + (i,) for t in idx for i in o.indices]
    comps = {t: Coalesced(tuple(o[i] for o, i in zip(objs, t))) for t in idx}
    return FamObject(tuple(idx), comps)


def fam_tensor_maps(*maps: FamMorphism) -> FamMorphism:
    src = fam_tensor(*(m.src for m in maps))
    dst = fam_tensor(*(m.dst for m in maps))
    reindex = {t: tuple(m.reindex[i] for m, i in zip(maps, t)) for t in src.indices}
    comps = {t: coalesced_tensor(*(m[i] for m, i in zip(maps, t))) for t in src.indices}
    return FamMorphism(src, dst, reindex, comps, "(x)".join(m.name for m in maps))


def fam_coproduct(*objs: FamObject) -> FamObject:
    idx = tuple((k, i) for k, o in enumerate(objs) for i in o.indices)
    return FamObject(idx, {(k, i): objs[k][i] for k, i in idx})


def injection(objs, k: int) -> FamMorphism:
    total = fam_coproduct(*objs)
    src = objs[k]
    return FamMorphism(src, total, {i: (k, i) for i in src.indices},
                       {i: copycat(src[i]) for i in src.indices}, f"in{k}")


def copair(*maps: FamMorphism) -> FamMorphism:
    dst = maps[0].dst
    for m in maps:
        if not m.dst.same(dst):
            raise IndexMismatch("copair needs a common codomain")
    src = fam_coproduct(*(m.src for m in maps))
    reindex = {(k, i): maps[k].reindex[i] for k, i in src.indices}
    comps = {(k, i): maps[k][i] for k, i in src.indices}
    return FamMorphism(src, dst, reindex, comps, "[" + ",".join(m.name for m in maps) + "]")


def restrict(f: FamMorphism, src: FamObject, along) -> FamMorphism:
    """``f`` precomposed with an index map ``along`` whose components are identities."""
    return FamMorphism(src, f.dst, {i: f.reindex[along(i)] for i in src.indices},
                       {i: f[along(i)] for i in src.indices}, f.name)


def distributivity(a: FamObject, b: FamObject, c: FamObject):
    """``(a (x) b) + (a (x) c) -> a (x) (b + c)`` and its inverse."""
    left = fam_coproduct(fam_tensor(a, b), fam_tensor(a, c))
    right = fam_tensor(a, fam_coproduct(b, c))
    fwd = {(k, (i, j)): (i, (k, j)) for k, (i, j) in left.indices}
    bwd = {v: k for k, v in fwd.items()}
    to = FamMorphism(left, right, fwd, {i: copycat(left[i]) for i in left.indices}, "dist")
    back = FamMorphism(right, left, bwd, {i: copycat(right[i]) for i in right.indices}, "dist^-1")
    return to, back


# ---------------------------------------------------------------------------
# negation, modalities


def component_names(obj: FamObject) -> dict:
    """Name of each index as a component of the negation (``"*"`` for singletons)."""
    if obj.is_singleton():
        return {obj.indices[0]: SINGLE}
    return {i: i for i in obj.indices}


def fam_negation(obj: FamObject) -> FamObject:
    names = component_names(obj)
    return singleton(Negation(tuple((names[i], obj[i]) for i in obj.indices)))


BOTTOM = fam_negation(UNIT)


def fam_affine(obj: FamObject) -> FamObject:
    return singleton(affine_strip(obj.only()))


def fam_bang(obj: FamObject) -> FamObject:
    return singleton(pointed_exponential(obj.only()))


def singleton_fixpoint(f: FamMorphism) -> FamMorphism:
    if not (f.src.is_singleton() and f.dst.is_singleton()):
        raise NotSingleton("fixpoints exist on singleton families only")
    fix = pointed_fixpoint(f[f.src.indices[0]])
    return FamMorphism(UNIT, f.dst, {SINGLE: f.dst.indices[0]}, {SINGLE: fix}, f"fix({f.name})")


# ---------------------------------------------------------------------------
# the negation bijection on families


class _Split(Strategy):
    """``x -> not F`` assembled from one strategy per choice of component of ``F``.

    ``branches`` maps a component name to ``(iso, strategy)`` where ``iso``
    goes from the strategy's game to this one.
    """

    def __init__(self, game, branches, name):
        super().__init__(game, name)
        self.branches = branches

    def _respond(self, play):
        if len(play) == 1:
            # every branch shares the opening; the lift is the only transverse reply
            return (1, LIFT)
        name = play[2].label[1][0]
        if name not in self.branches:
            return None
        iso, s = self.branches[name]
        try:
            src = iso.transport(play, backwards=True)
        except GamesNotIsomorphic:
            return None
        r = s.respond(src)
        return None if r is None else iso.fwd(r)


def _check_lift(strategies):
    for s in strategies:
        for o in s.game.moves(s.game.root):
            if o.polarity == PROPONENT:
                continue
            r = s.respond((o,))
            if r is None or r.label != (1, LIFT):
                raise ShapeMismatch(f"{s.name} does not answer the opening with the lift")


def fam_phi(sigma: FamMorphism, f: FamObject, g: FamObject, h: FamObject) -> FamMorphism:
    """``f (x) g -> not h`` to ``f -> not (g (x) h)``; components must answer the opening."""
    gh = fam_tensor(g, h)
    hneg = fam_negation(h).only()
    ghneg = fam_negation(gh).only()
    hn, ghn = component_names(h), component_names(gh)
    _check_lift(sigma.components.values())
    comps = {}
    for i in f.indices:
        branches = {}
        for j in g.indices:
            names = {hn[k]: ghn[(j, k)] for k in h.indices}
            iso = _phi_iso(f[i], g[j], None, cneg=hneg, bcneg=ghneg, names=names)
            s = sigma[(i, j)]
            for k in h.indices:
                branches[ghn[(j, k)]] = (iso, s)
        comps[i] = _Split(arrow(f[i], ghneg), branches, f"phi({sigma.name})[{i}]")
    target = fam_negation(gh)
    return FamMorphism(f, target, {i: SINGLE for i in f.indices}, comps, f"phi({sigma.name})")


def fam_phi_inverse(tau: FamMorphism, f: FamObject, g: FamObject, h: FamObject) -> FamMorphism:
    gh = fam_tensor(g, h)
    hneg = fam_negation(h).only()
    ghneg = fam_negation(gh).only()
    hn, ghn = component_names(h), component_names(gh)
    fg = fam_tensor(f, g)
    comps = {}
    for i, j in fg.indices:
        names = {hn[k]: ghn[(j, k)] for k in h.indices}
        iso = _phi_iso(f[i], g[j], None, cneg=hneg, bcneg=ghneg, names=names)
        comps[(i, j)] = transport(tau[i], iso.inverse(), name=f"phi^-1({tau.name})[{i},{j}]")
    return FamMorphism(fg, fam_negation(h), {t: SINGLE for t in fg.indices}, comps,
                       f"phi^-1({tau.name})")


def fam_curry(sigma: FamMorphism, gamma: FamObject, a: FamObject) -> FamMorphism:
    """``gamma (x) a -> bottom`` to ``gamma -> not a``."""
    neg = fam_negation(a).only()
    names = component_names(a)
    _check_lift(sigma.components.values())
    comps = {}
    for g in gamma.indices:
        branches = {}
        for j in a.indices:
            branches[names[j]] = (_curry_iso(gamma[g], a[j], neg, names[j]), sigma[(g, j)])
        comps[g] = _Split(arrow(gamma[g], neg), branches, f"curry({sigma.name})[{g}]")
    return FamMorphism(gamma, fam_negation(a), {g: SINGLE for g in gamma.indices}, comps,
                       f"curry({sigma.name})")


def fam_uncurry(tau: FamMorphism, gamma: FamObject, a: FamObject) -> FamMorphism:
    neg = fam_negation(a).only()
    names = component_names(a)
    ga = fam_tensor(gamma, a)
    comps = {}
    for g, j in ga.indices:
        iso = _curry_iso(gamma[g], a[j], neg, names[j]).inverse()
        comps[(g, j)] = transport(tau[g], iso, name=f"uncurry({tau.name})[{g},{j}]")
    return FamMorphism(ga, BOTTOM, {t: SINGLE for t in ga.indices}, comps, f"uncurry({tau.name})")


def fam_evaluation(a: FamObject) -> FamMorphism:
    """``a (x) not a -> bottom``."""
    neg = fam_negation(a)
    ev = fam_uncurry(fam_identity(neg), neg, a)  # not a (x) a -> bottom
    src = fam_tensor(a, neg)
    comps = {}
    for j, s in src.indices:
        swap = coalesced_structural(src[(j, s)], ev.src[(s, j)],
                                    swap_permutation(a[j], neg.only(), Coalesced))
        comps[(j, s)] = compose(swap, ev[(s, j)])
    return FamMorphism(src, BOTTOM, {t: SINGLE for t in src.indices}, comps, "ev")


def first_label(game: Game):
    return _first(game)
