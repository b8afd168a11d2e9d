"""Pointed games: coalesced tensor, negation, the affine and exponential modalities."""

from __future__ import annotations

from .arena import (
    COALESCED_ROOT,
    POINTED_UNIT,
    PROPONENT,
    Coalesced,
    Game,
    Move,
    dual,
    replay,
    sentinel,
)
from .category import Bang, CopyRouter, Promotion, _bang_slots, fixpoint
from .errors import GamesNotIsomorphic, NotPointed, NotSingleton, ShapeMismatch
from .strategy import (
    Iso,
    OracleStrategy,
    StatefulStrategy,
    Strategy,
    arrow,
    compose,
    plays_upto,
    regroup,
    swap_permutation,
    transport,
)

NEG_ROOT = sentinel("neg-root")
LIFTED = sentinel("lifted")
POINT_ROOT = sentinel("point-root")
LIFT = "neg"
POINT = "pt"


def is_pointed(game: Game) -> bool:
    try:
        first = game.moves(game.root)
    except NotPointed:
        return False
    return len(first) == 1 and first[0].polarity == PROPONENT


def initial_move(game: Game) -> Move:
    first = game.moves(game.root)
    if len(first) != 1 or first[0].polarity != PROPONENT:
        raise NotPointed(f"{game!r} has no unique initial Proponent move")
    return first[0]


def require_pointed(*games: Game) -> None:
    for g in games:
        initial_move(g)


def is_transverse(strategy: Strategy) -> bool:
    """Every reply to the opening Opponent move lands in the codomain."""
    for p in plays_upto(strategy, 2):
        if len(p) == 2 and (p[0].label[0] != 0 or p[1].label[0] != 1):
            return False
    return True


def is_affine(game: Game) -> bool:
    m = initial_move(game)
    return not game.queries(m.target)


def coalesce(*parts: Game) -> Coalesced:
    require_pointed(*parts)
    return Coalesced(parts)


# ---------------------------------------------------------------------------
# negation


class Negation(Game):
    """Lift of the duals of several pointed components by one Proponent move.

    The lift move ``"neg"`` initiates a single query, and every initial move
    of a dualised component complies with it.  A component position ``x`` of
    the component named ``idx`` is the pair ``(idx, x)``; component moves are
    labelled ``(idx, label)``.
    """

    def __init__(self, components):
        self.components = tuple(components)
        self.table = dict(self.components)
        super().__init__(NEG_ROOT, ("neg",) + tuple((i, g.key) for i, g in self.components))

    def _moves(self, pos):
        if pos is NEG_ROOT:
            return (Move(LIFT, NEG_ROOT, LIFTED, PROPONENT),)
        if pos is LIFTED:
            return tuple(
                Move((i, m.label), LIFTED, (i, m.target), -m.polarity)
                for i, g in self.components
                for m in g.moves(g.root)
            )
        i, x = pos
        return tuple(Move((i, m.label), pos, (i, m.target), -m.polarity) for m in self.table[i].moves(x))

    def _queries(self, pos):
        if pos is NEG_ROOT:
            return {}
        if pos is LIFTED:
            return {LIFT: PROPONENT}
        i, x = pos
        return {q: -p for q, p in self.table[i].queries(x).items()}

    def _residual(self, move):
        if move.source is NEG_ROOT or move.source is LIFTED:
            return {}
        i, label = move.label
        inner = Move(label, move.source[1], move.target[1], -move.polarity)
        return self.table[i].residual(inner)


SINGLE = "*"


def lift_negation(game: Game) -> Negation:
    require_pointed(game)
    return Negation(((SINGLE, game),))


BOTTOM = Negation(((SINGLE, POINTED_UNIT),))


# ---------------------------------------------------------------------------
# affine strip, negative part, pointing


class Strip(Game):
    """``A`` without the queries initiated by its first move and their residuals.

    Positions are pairs ``(x, removed)`` where ``removed`` is the frozenset of
    queries at ``x`` descending from the first move.
    """

    def __init__(self, inner: Game):
        self.inner = inner
        super().__init__((inner.root, frozenset()), ("strip", inner.key))

    def _moves(self, pos):
        x, removed = pos
        out = []
        for m in self.inner.moves(x):
            if x == self.inner.root:
                gone = frozenset(self.inner.queries(m.target))
            else:
                res = self.inner.residual(m)
                gone = frozenset(res[q] for q in removed if q in res)
            out.append(Move(m.label, pos, (m.target, gone), m.polarity))
        return out

    def _queries(self, pos):
        x, removed = pos
        return {q: p for q, p in self.inner.queries(x).items() if q not in removed}

    def _residual(self, move):
        (x, removed), (y, gone) = move.source, move.target
        inner = Move(move.label, x, y, move.polarity)
        return {a: b for a, b in self.inner.residual(inner).items() if a not in removed}


def affine_strip(game: Game) -> Game:
    """The affine game of ``game``; the game itself when it is already affine."""
    if is_affine(game):
        return game
    return Strip(game)


class NegPart(Game):
    """The negative game left after the initial move of an affine pointed game."""

    def __init__(self, inner: Game):
        self.inner = inner
        super().__init__(initial_move(inner).target, ("negpart", inner.key))

    def _moves(self, pos):
        return self.inner.moves(pos)

    def _queries(self, pos):
        return self.inner.queries(pos)

    def _residual(self, move):
        return self.inner.residual(move)


class Point(Game):
    """An affine pointed game from a negative one: one Proponent move, then the game."""

    def __init__(self, inner: Game):
        self.inner = inner
        super().__init__(POINT_ROOT, ("point", inner.key))

    def _moves(self, pos):
        if pos is POINT_ROOT:
            return (Move(POINT, POINT_ROOT, self.inner.root, PROPONENT),)
        return self.inner.moves(pos)

    def _queries(self, pos):
        if pos is POINT_ROOT:
            return {}
        return self.inner.queries(pos)

    def _residual(self, move):
        if move.source is POINT_ROOT:
            return {}
        return self.inner.residual(move)


def pointed_exponential(game: Game) -> Point:
    """``!`` of the negative part of the affine strip, pointed again."""
    return Point(Bang(NegPart(affine_strip(game))))


def exponential_base(game: Point) -> Game:
    """The pointed game ``A`` such that ``game`` is the pointed exponential of ``A``."""
    neg = game.inner.inner
    inner = neg.inner
    return inner.inner if isinstance(inner, Strip) else inner


def lollipop(a: Game, b: Game) -> Negation:
    """``a -o not b`` as the negation of the coalesced tensor."""
    return lift_negation(coalesce(a, b))




# ---------------------------------------------------------------------------
# the negation bijection


def _first(game):
    return initial_move(game).label


def _phi_iso(a: Game, b: Game, c: Game, *, cneg=None, bcneg=None, names=None) -> Iso:
    """Move bijection between ``a (.) b -> not c`` and ``a -> not (b (.) c)``.

    With ``cneg``/``bcneg`` the negations may range over several components;
    ``names`` then sends a component name of ``cneg`` to the name of the
    matching ``b (.) c`` component of ``bcneg``.
    """
    if cneg is None:
        cneg, bcneg, names = lift_negation(c), lift_negation(coalesce(b, c)), {SINGLE: SINGLE}
    back = {v: k for k, v in names.items()}
    left = arrow(coalesce(a, b), cneg)
    right = arrow(a, bcneg)
    b0 = _first(b)

    def fwd(m):
        side, lab = m.label
        if side == 0:
            if lab[0] == "sync":
                return (0, lab[1][0])
            k, inner = lab
            if k == 0:
                return (0, inner)
            return (1, (names[m.source[1][0]], (0, inner)))
        if lab == LIFT:
            return (1, LIFT)
        k, inner = lab
        if m.source[1] is LIFTED:
            return (1, (names[k], ("sync", (b0, inner))))
        return (1, (names[k], (1, inner)))

    def bwd(m):
        side, lab = m.label
        if side == 0:
            if m.source[0] == a.root:
                return (0, ("sync", (lab, b0)))
            return (0, (0, lab))
        if lab == LIFT:
            return (1, LIFT)
        name, inner = lab
        if name not in back:
            raise GamesNotIsomorphic(f"component {name!r} has no counterpart")
        if m.source[1] is LIFTED:
            if inner[0] != "sync" or inner[1][0] != b0:
                raise GamesNotIsomorphic("unexpected initial move")
            return (1, (back[name], inner[1][1]))
        k, rest = inner
        return (0, (1, rest)) if k == 0 else (1, (back[name], rest))

    return Iso(left, right, fwd, bwd, "phi")


def phi(sigma: Strategy, a: Game, b: Game, c: Game) -> Strategy:
    """``a (.) b -> not c`` to ``a -> not (b (.) c)``."""
    iso = _phi_iso(a, b, c)
    if sigma.game != iso.src:
        raise ShapeMismatch(f"{sigma!r} is not on {iso.src!r}")
    return transport(sigma, iso, name=f"phi({sigma.name})")


def phi_inverse(tau: Strategy, a: Game, b: Game, c: Game) -> Strategy:
    iso = _phi_iso(a, b, c).inverse()
    if tau.game != iso.src:
        raise ShapeMismatch(f"{tau!r} is not on {iso.src!r}")
    return transport(tau, iso, name=f"phi^-1({tau.name})")


def _curry_iso(gamma: Game, a: Game, neg=None, name=SINGLE) -> Iso:
    """Move bijection between ``gamma (.) a -> bottom`` and ``gamma -> neg``,
    where ``a`` is the component ``name`` of the negation ``neg``."""
    if neg is None:
        neg = lift_negation(a)
    left = arrow(coalesce(gamma, a), BOTTOM)
    right = arrow(gamma, neg)
    a0 = _first(a)

    def fwd(m):
        side, lab = m.label
        if side == 0:
            if lab[0] == "sync":
                return (0, lab[1][0])
            k, inner = lab
            return (0, inner) if k == 0 else (1, (name, inner))
        if lab == LIFT:
            return (1, LIFT)
        return (1, (name, a0))

    def bwd(m):
        side, lab = m.label
        if side == 0:
            if m.source[0] == gamma.root:
                return (0, ("sync", (lab, a0)))
            return (0, (0, lab))
        if lab == LIFT:
            return (1, LIFT)
        if lab[0] != name:
            raise GamesNotIsomorphic(f"component {lab[0]!r} has no counterpart")
        if m.source[1] is LIFTED:
            return (1, (SINGLE, ("sync", ())))
        return (0, (1, lab[1]))

    return Iso(left, right, fwd, bwd, "curry")


def curry(sigma: Strategy, gamma: Game, a: Game) -> Strategy:
    iso = _curry_iso(gamma, a)
    if sigma.game != iso.src:
        raise ShapeMismatch(f"{sigma!r} is not on {iso.src!r}")
    return transport(sigma, iso, name=f"curry({sigma.name})")


def uncurry(tau: Strategy, gamma: Game, a: Game) -> Strategy:
    iso = _curry_iso(gamma, a).inverse()
    if tau.game != iso.src:
        raise ShapeMismatch(f"{tau!r} is not on {iso.src!r}")
    return transport(tau, iso, name=f"uncurry({tau.name})")


def evaluation(a: Game) -> Strategy:
    """``a (.) not a -> bottom``."""
    from .strategy import copycat

    neg = lift_negation(a)
    ev = uncurry(copycat(neg), neg, a)
    swap = coalesced_structural(coalesce(a, neg), coalesce(neg, a), swap_permutation(a, neg, Coalesced))
    return compose(swap, ev)


# ---------------------------------------------------------------------------
# coalesced structure on strategies


def coalesced_structural(src: Game, dst: Game, perm=None, name="iso") -> Strategy:
    from .strategy import iso_strategy

    return iso_strategy(regroup(src, dst, perm, name), name)


class CoalescedTensor(StatefulStrategy):
    """The coalesced tensor of transverse strategies."""

    def __init__(self, strategies, name=None):
        self.parts = tuple(strategies)
        src = Coalesced(dual(s.game.parts[0]) for s in self.parts)
        dst = Coalesced(s.game.parts[1] for s in self.parts)
        super().__init__(arrow(src, dst), name or "(.)".join(s.name for s in self.parts))

    def initial_state(self):
        return tuple(() for _ in self.parts)

    def step(self, state, play, o_move):
        side, lab = o_move.label
        if not play:
            if side != 0:
                return None, state
            new, replies = [], []
            for s, first in zip(self.parts, lab[1]):
                m = s.game.find(s.game.root, (0, first))
                r = s.respond((m,)) if m is not None else None
                if r is None or r.label[0] != 1:
                    return None, state
                new.append((m, r))
                replies.append(r.label[1])
            return (1, ("sync", tuple(replies))), tuple(new)
        j, inner = lab
        s = self.parts[j]
        sub = state[j]
        m = s.game.find(sub[-1].target, (side, inner))
        if m is None:
            return None, state
        r = s.respond(sub + (m,))
        if r is None:
            return None, state
        rs, rl = r.label
        return (rs, (j, rl)), state[:j] + (sub + (m, r),) + state[j + 1 :]


def coalesced_tensor(*strategies: Strategy, name=None) -> Strategy:
    return CoalescedTensor(strategies, name)


# ---------------------------------------------------------------------------
# scripted copycats: strength and the two double-negation maps


def nest(path, label):
    for k in reversed(path):
        label = (k, label)
    return label


_NO = object()


def unnest(path, label):
    for k in path:
        if not (isinstance(label, tuple) and len(label) == 2 and label[0] == k):
            return _NO
        label = label[1]
    return label


class ScriptedCopycat(Strategy):
    """A fixed opening exchange followed by copycat between pairs of sub-games.

    ``script`` lists ``(opponent_label, reply_label)`` pairs; ``ports`` lists
    pairs of label paths whose moves are mirrored into each other.
    """

    def __init__(self, game, script, ports, name=None):
        super().__init__(game, name)
        self.script = tuple(script)
        self.ports = tuple(ports)

    def _respond(self, play):
        k = len(play) // 2
        if k < len(self.script):
            for i in range(k + 1):
                if play[2 * i].label != self.script[i][0]:
                    return None
            return self.script[k][1]
        lab = play[-1].label
        for x, y in self.ports:
            for src, dst in ((x, y), (y, x)):
                inner = unnest(src, lab)
                if inner is not _NO:
                    return nest(dst, inner)
        return None


def _double(game):
    return lift_negation(lift_negation(game))


def strength(a: Game, b: Game) -> Strategy:
    """``a (.) not not b -> not not (a (.) b)``."""
    a0, b0 = _first(a), _first(b)
    game = arrow(coalesce(a, _double(b)), _double(coalesce(a, b)))
    script = [
        ((0, ("sync", (a0, LIFT))), (1, LIFT)),
        ((1, (SINGLE, LIFT)), (0, (1, (SINGLE, LIFT)))),
        ((0, (1, (SINGLE, (SINGLE, b0)))), (1, (SINGLE, (SINGLE, ("sync", (a0, b0)))))),
    ]
    ports = [((0, 0), (1, SINGLE, SINGLE, 0)), ((0, 1, SINGLE, SINGLE), (1, SINGLE, SINGLE, 1))]
    return ScriptedCopycat(game, script, ports, "strength")


def double_neg_maps(a: Game, b: Game):
    """The two maps ``not not a (.) not not b -> not not (a (.) b)``.

    The left one asks ``a`` first, the right one asks ``b`` first.
    """
    a0, b0 = _first(a), _first(b)
    game = arrow(coalesce(_double(a), _double(b)), _double(coalesce(a, b)))
    ask = [(0, (0, (SINGLE, LIFT))), (0, (1, (SINGLE, LIFT)))]
    answer = [(0, (0, (SINGLE, (SINGLE, a0)))), (0, (1, (SINGLE, (SINGLE, b0))))]
    done = (1, (SINGLE, (SINGLE, ("sync", (a0, b0)))))
    ports = [((0, 0, SINGLE, SINGLE), (1, SINGLE, SINGLE, 0)),
             ((0, 1, SINGLE, SINGLE), (1, SINGLE, SINGLE, 1))]
    out = []
    for order, name in (((0, 1), "left"), ((1, 0), "right")):
        first, second = order
        script = [
            ((0, ("sync", (LIFT, LIFT))), (1, LIFT)),
            ((1, (SINGLE, LIFT)), ask[first]),
            (answer[first], ask[second]),
            (answer[second], done),
        ]
        out.append(ScriptedCopycat(game, script, ports, name))
    return tuple(out)


# ---------------------------------------------------------------------------
# the pointed exponential as a comonoid


def _pointed_router(a: Game, target: Game, opening_reply, name) -> Strategy:
    src = pointed_exponential(a)
    return CopyRouter(src, target, src, a, name, opening=((0, POINT), opening_reply))


def pointed_dereliction(a: Game) -> Strategy:
    return _pointed_router(a, a, (1, _first(a)), "der")


def pointed_weakening(a: Game) -> Strategy:
    return _pointed_router(a, POINTED_UNIT, (1, ("sync", ())), "weak")


def pointed_contraction(a: Game) -> Strategy:
    e = pointed_exponential(a)
    return _pointed_router(a, Coalesced((e, e)), (1, ("sync", (POINT, POINT))), "contr")


def pointed_copycat(a: Game) -> Strategy:
    e = pointed_exponential(a)
    return _pointed_router(a, e, (1, POINT), "id!")


class PointedPromotion(Promotion):
    """``sigma: !G -> a`` lifted to ``!G -> !a`` for pointed exponentials ``!G``."""

    def __init__(self, sigma: Strategy, name=None):
        a = sigma.game.parts[1]
        src = dual(sigma.game.parts[0])
        first_o = _first(src)
        m = sigma.game.find(sigma.game.root, (0, first_o))
        r = sigma.respond((m,)) if m is not None else None
        if r is None or r.label != (1, _first(a)):
            raise NotPointed("promotion needs a transverse strategy")
        self.fresh = (m, r)
        self.opening = ((0, first_o), (1, POINT))
        super().__init__(sigma, name, target=pointed_exponential(a))

    def _source_slots(self, src):
        if src == POINTED_UNIT:
            return [], (lambda k, lab: (k, lab)), (lambda lab: lab)
        return _bang_slots(src, Point, Coalesced)


def pointed_promotion(sigma: Strategy, name=None) -> Strategy:
    return PointedPromotion(sigma, name)


def pointed_fixpoint(sigma: Strategy, name=None) -> Strategy:
    """Fixpoint of ``sigma: !a -> a`` in pointed games, as ``I -> a``.

    The forced first exchange is dropped, the fixpoint is taken in the
    underlying negative games, and the exchange is put back.
    """
    a = sigma.game.parts[1]
    src = dual(sigma.game.parts[0])
    if not isinstance(src, Point) or src != pointed_exponential(a):
        raise NotSingleton(f"fixpoint needs a strategy !a -> a, got {sigma.game!r}")
    neg = src.inner.inner
    bang = src.inner
    prefix = ((0, POINT), (1, _first(a)))
    inner_game = arrow(bang, neg)

    def inner(play):
        full = replay(sigma.game, [lab for lab in prefix] + [m.label for m in play])
        if full is None:
            return None
        r = sigma.respond(full)
        return None if r is None else r.label

    fix = fixpoint(OracleStrategy(inner_game, inner, f"{sigma.name}'"))
    outer = arrow(POINTED_UNIT, a)

    def reply(play):
        if len(play) == 1:
            return (1, _first(a)) if play[0].label == (0, ("sync", ())) else None
        rest = replay(fix.game, [m.label for m in play[2:]])
        if rest is None:
            return None
        r = fix.respond(rest)
        return None if r is None else r.label

    return OracleStrategy(outer, reply, name or f"fix({sigma.name})")
