"""Compact closure, trace, the exponential comonad and fixpoints."""

from __future__ import annotations

from .arena import ONE, OPPONENT, Coalesced, Game, Move, Tensor, dual, play_end
from .errors import GameError, StrategyError
from .strategy import (
    Iso,
    StatefulStrategy,
    Strategy,
    arrow,
    compose,
    compose_all,
    copycat,
    empty_strategy,
    iso_strategy,
    regroup,
    swap_permutation,
    tensor_strategies,
    transport,
)


class Bang(Game):
    """The exponential ``!A``: words of positions, one letter per open copy.

    Copies are numbered from 1.  A copy move is labelled ``(i, label)`` and
    an Opponent opening of a new copy ``("open", label)``.
    """

    def __init__(self, inner: Game):
        self.inner = inner
        super().__init__((), ("bang", inner.key))

    def _moves(self, word):
        inner = self.inner
        out = []
        for i, x in enumerate(word, 1):
            for m in inner.moves(x):
                out.append(Move((i, m.label), word, word[: i - 1] + (m.target,) + word[i:], m.polarity))
        for m in inner.moves(inner.root):
            if m.polarity == OPPONENT:
                out.append(Move(("open", m.label), word, word + (m.target,), OPPONENT))
        return out

    def _queries(self, word):
        return {(i, q): p for i, x in enumerate(word, 1) for q, p in self.inner.queries(x).items()}

    def _residual(self, move):
        word = move.source
        i, label = move.label
        if i == "open":
            return {(j, q): (j, q) for j, x in enumerate(word, 1) for q in self.inner.queries(x)}
        inner_move = Move(label, word[i - 1], move.target[i - 1], move.polarity)
        out = {}
        for j, x in enumerate(word, 1):
            if j == i:
                for a, b in self.inner.residual(inner_move).items():
                    out[(j, a)] = (j, b)
            else:
                for q in self.inner.queries(x):
                    out[(j, q)] = (j, q)
        return out


def bang(game: Game) -> Bang:
    return Bang(game)


# ---------------------------------------------------------------------------
# compact closure and trace


def eta(game: Game) -> Strategy:
    """The unit ``1 -> dual(A) (x) A``."""
    cc = copycat(game)
    return transport(cc, regroup(cc.game, arrow(ONE, Tensor((dual(game), game)))), name="eta")


def epsilon(game: Game) -> Strategy:
    """The counit ``A (x) dual(A) -> 1``."""
    cc = copycat(game)
    return transport(cc, regroup(cc.game, arrow(Tensor((game, dual(game))), ONE)), name="epsilon")


def structural(src: Game, dst: Game, perm=None, name="iso") -> Strategy:
    """Copycat along the canonical regrouping iso between two tensor trees."""
    return iso_strategy(regroup(src, dst, perm, name), name)


def symmetry(a: Game, b: Game) -> Strategy:
    return structural(Tensor((a, b)), Tensor((b, a)), swap_permutation(a, b), "sym")


#: Feedback rounds a trace may take before its silence is read as divergence.
FEEDBACK_LIMIT = 128


class Trace(StatefulStrategy):
    """Feedback of the ``U`` component of ``sigma: A (x) U -> B (x) U``."""

    def __init__(self, sigma: Strategy, name=None):
        g = sigma.game
        try:
            src, dst = g.parts[0], g.parts[1]
            a_bar, u_bar = src.parts
            b, u = dst.parts
        except (AttributeError, ValueError):
            raise StrategyError("trace needs a strategy on (A (x) U) -> (B (x) U)") from None
        if u_bar != dual(u):
            raise StrategyError("traced component differs on the two sides")
        self.sigma = sigma
        super().__init__(Tensor((a_bar, b)), name or f"Tr({sigma.name})")

    def initial_state(self):
        return ()

    def step(self, state, play, o_move):
        g = self.sigma.game
        side, label = o_move.label
        move = g.find(play_end(g, state), (side, (0, label)))
        p = state
        for _ in range(FEEDBACK_LIMIT):
            if move is None:
                return None, state
            p = p + (move,)
            r = self.sigma.respond(p)
            if r is None:
                return None, state
            p = p + (r,)
            rs, (k, inner) = r.label
            if k == 0:
                return (rs, inner), p
            move = g.find(r.target, (1 - rs, (1, inner)))
        return None, state


def trace(sigma: Strategy, name=None) -> Strategy:
    return Trace(sigma, name)


def trace_compact(sigma: Strategy) -> Strategy:
    """The same trace computed through eta and epsilon."""
    g = sigma.game
    a = dual(g.parts[0].parts[0])
    u = g.parts[1].parts[1]
    b = g.parts[1].parts[0]
    ub = dual(u)
    steps = [
        structural(a, Tensor((a, ONE))),
        tensor_strategies(copycat(a), eta(ub)),
        structural(Tensor((a, Tensor((u, ub)))), Tensor((Tensor((a, u)), ub))),
        tensor_strategies(sigma, copycat(ub)),
        structural(Tensor((Tensor((b, u)), ub)), Tensor((b, Tensor((u, ub))))),
        tensor_strategies(copycat(b), epsilon(u)),
        structural(Tensor((b, ONE)), b),
    ]
    return compose_all(*steps)


# ---------------------------------------------------------------------------
# copy routing: dereliction, contraction, weakening


def _slots(game: Game):
    if type(game) in (Tensor, Coalesced):
        return list(game.parts), (lambda s, lab: (s, lab)), (lambda lab: lab)
    return [game], (lambda s, lab: lab), (lambda lab: (0, lab))


class CopyRouter(StatefulStrategy):
    """``source -> T`` where every factor of ``T`` is ``bang_part`` or ``plain_part``.

    Each copy opened by Opponent in the target is served by a fresh source
    copy; source copies are numbered by opening order.  ``opening`` is an
    optional scripted first exchange ``(opponent_label, reply_label)``.
    """

    def __init__(self, source: Game, target: Game, bang_part: Game, plain_part: Game,
                 name=None, opening=None):
        self.source = source
        self.opening = opening
        parts, self._wrap, self._unwrap = _slots(target)
        self.kinds = []
        for p in parts:
            if p == bang_part:
                self.kinds.append("bang")
            elif p == plain_part:
                self.kinds.append("plain")
            else:
                raise GameError(f"target factor {p!r} is neither !A nor A")
        super().__init__(arrow(source, target), name or "router")

    def initial_state(self):
        return ((), {}, {})  # (target copies per slot, (slot, copy) -> g, g -> (slot, copy))

    def step(self, state, play, o_move):
        if self.opening is not None and not play:
            expected, reply = self.opening
            return (reply if o_move.label == expected else None), state
        opened, fwd, bwd = state
        side, label = o_move.label
        if side == 0:
            g, inner = label
            s, j = bwd[g]
            out = (j, inner) if self.kinds[s] == "bang" else inner
            return (1, self._wrap(s, out)), state
        s, inner = self._unwrap(label)
        counts = dict(opened)
        if self.kinds[s] == "bang":
            j, inner = inner
            is_open = j == "open"
        else:
            is_open = counts.get(s, 0) == 0
            j = 1
        if not is_open:
            return (0, (fwd[(s, j)], inner)), state
        j = counts.get(s, 0) + 1
        counts[s] = j
        g = len(bwd) + 1
        fwd = dict(fwd)
        bwd = dict(bwd)
        fwd[(s, j)] = g
        bwd[g] = (s, j)
        return (0, ("open", inner)), (tuple(sorted(counts.items())), fwd, bwd)


def router(game: Game, target: Game, name=None) -> Strategy:
    b = Bang(game)
    return CopyRouter(b, target, b, game, name)


def dereliction(game: Game) -> Strategy:
    return router(game, game, "der")


def contraction(game: Game) -> Strategy:
    b = Bang(game)
    return router(game, Tensor((b, b)), "contr")


def weakening(game: Game) -> Strategy:
    return router(game, ONE, "weak")


def bang_copycat(game: Game) -> Strategy:
    return router(game, Bang(game), "id!")


# ---------------------------------------------------------------------------
# promotion


def _bang_slots(game: Game, slot=Bang, node=Tensor):
    if isinstance(game, slot):
        return [game], (lambda k, lab: lab), (lambda lab: (0, lab))
    if type(game) is node and all(isinstance(p, slot) for p in game.parts):
        return list(game.parts), (lambda k, lab: (k, lab)), (lambda lab: lab)
    raise GameError(f"promotion needs a source made of exponentials, got {game!r}")


class Promotion(StatefulStrategy):
    """``sigma: S -> B`` lifted to ``S -> !B``, one copy of sigma per copy of ``B``."""

    opening = None
    fresh = ()

    def __init__(self, sigma: Strategy, name=None, *, target=None):
        src = dual(sigma.game.parts[0])
        self.slots, self._wrap, self._unwrap = self._source_slots(src)
        self.sigma = sigma
        if target is None:
            target = Bang(sigma.game.parts[1])
        super().__init__(arrow(src, target), name or f"prom({sigma.name})")

    def _source_slots(self, src):
        return _bang_slots(src)

    def initial_state(self):
        # local plays per target copy, (j, k, local) -> global, (k, global) -> (j, local), counts
        return ((), {}, {}, {})

    def step(self, state, play, o_move):
        if self.opening is not None and not play:
            expected, reply = self.opening
            return (reply if o_move.label == expected else None), state
        locals_, lmap, gmap, counts = state
        g = self.sigma.game
        side, label = o_move.label
        if side == 1:
            j, inner = label
            if j == "open":
                j = len(locals_) + 1
                locals_ = locals_ + (self.fresh,)
            local_label = (1, inner)
        else:
            k, (gi, inner) = self._unwrap(label)
            j, li = gmap[(k, gi)]
            local_label = (0, self._wrap(k, (li, inner)))
        lp = locals_[j - 1]
        m = g.find(play_end(g, lp), local_label)
        if m is None:
            return None, state
        r = self.sigma.respond(lp + (m,))
        if r is None:
            return None, state
        locals_ = locals_[: j - 1] + (lp + (m, r),) + locals_[j:]
        rs, rl = r.label
        if rs == 1:
            return (1, (j, rl)), (locals_, lmap, gmap, counts)
        k, (li, inner) = self._unwrap(rl)
        if li == "open":
            lmap, gmap, counts = dict(lmap), dict(gmap), dict(counts)
            gi = counts.get(k, 0) + 1
            counts[k] = gi
            local_index = sum(1 for (jj, kk, _) in lmap if jj == j and kk == k) + 1
            lmap[(j, k, local_index)] = gi
            gmap[(k, gi)] = (j, local_index)
            return (0, self._wrap(k, ("open", inner))), (locals_, lmap, gmap, counts)
        return (0, self._wrap(k, (lmap[(j, k, li)], inner))), (locals_, lmap, gmap, counts)


def promotion(sigma: Strategy, name=None) -> Strategy:
    return Promotion(sigma, name)


def bang_map(sigma: Strategy) -> Strategy:
    """Functorial action of ``!`` on ``sigma: A -> B``."""
    a = dual(sigma.game.parts[0])
    return promotion(compose(dereliction(a), sigma))


# ---------------------------------------------------------------------------
# fixpoints


def fixpoint(sigma: Strategy, name=None) -> Strategy:
    """Fixpoint of ``sigma: !A -> A`` as a strategy ``1 -> A``.

    Trace over ``!A`` of ``1 (x) !A ~ !A -> !A (x) !A -> A (x) !A`` where the
    last map is ``sigma`` next to its promotion.
    """
    src = dual(sigma.game.parts[0])
    if not isinstance(src, Bang):
        raise GameError("fixpoint needs a strategy !A -> A")
    a = sigma.game.parts[1]
    if src.inner != a:
        raise GameError("fixpoint needs matching A on both sides")
    body = compose_all(
        structural(Tensor((ONE, src)), src),
        contraction(a),
        tensor_strategies(sigma, promotion(sigma)),
    )
    return trace(body, name or f"fix({sigma.name})")


def fixpoint_approximant(sigma: Strategy, rounds: int) -> Strategy:
    """The Kleene approximant: ``rounds`` unfoldings of ``promotion(-); sigma`` from the empty strategy."""
    a = sigma.game.parts[1]
    approx = empty_strategy(arrow(ONE, a))
    for _ in range(rounds):
        approx = compose(promotion(approx), sigma)
    return approx


def unfold(fix: Strategy, sigma: Strategy) -> Strategy:
    return compose(promotion(fix), sigma)
