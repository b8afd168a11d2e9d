"""Deterministic strategies, copycat along isomorphisms, composition.

A strategy is represented by its oracle: ``respond(play)`` takes an
odd-length play whose even prefix belongs to the strategy and returns the
Proponent reply, or ``None`` when the strategy has none.  Play sets are only
ever materialised up to a depth.
"""

from __future__ import annotations

import threading
from collections import deque

from .arena import (
    OPPONENT,
    PROPONENT,
    Coalesced,
    Game,
    Move,
    Tensor,
    dual,
    play_end,
)
from .bracketing import suffix_kappas
from .errors import (
    GamesNotIsomorphic,
    IllegalMove,
    MiddleGameMismatch,
    NonAlternating,
    NonDeterministic,
    NotPrefixClosed,
    ProponentStarts,
    StrategyError,
)

DEFAULT_DEPTH = 10
INTERACTION_LIMIT = 2000


def arrow(a: Game, b: Game) -> Tensor:
    """The game of morphisms ``a -> b``, i.e. the tensor of the dual of ``a`` with ``b``."""
    return Tensor((dual(a), b))


class Strategy:
    def __init__(self, game: Game, name: str | None = None):
        self.game = game
        self.name = name or type(self).__name__
        self._memo: dict = {}
        self._lock = threading.Lock()

    def _respond(self, play) -> Move | None:
        raise NotImplementedError

    def respond(self, play) -> Move | None:
        play = tuple(play)
        try:
            return self._memo[play]
        except KeyError:
            pass
        r = self._respond(play)
        if r is not None and not isinstance(r, Move):
            r = self.game.find(play_end(self.game, play), r)
        if r is not None and r.polarity != PROPONENT:
            raise StrategyError(f"{self.name} answered with an Opponent move {r!r}")
        with self._lock:
            self._memo.setdefault(play, r)
        return r

    def contains(self, play) -> bool:
        """Membership of an even-length play (odd plays: membership of their prefix)."""
        play = tuple(play)
        for i in range(1, len(play), 2):
            if play[i - 1].polarity != OPPONENT:
                return False
            if self.respond(play[:i]) != play[i]:
                return False
        return len(play) % 2 == 0 or play[-1].polarity == OPPONENT

    def plays_upto(self, depth: int = DEFAULT_DEPTH) -> list:
        return plays_upto(self, depth)

    def __repr__(self) -> str:
        return f"<Strategy {self.name} on {self.game!r}>"


class StatefulStrategy(Strategy):
    """A strategy defined by a transition function over an internal state.

    ``step(state, play, o_move)`` returns ``(reply, new_state)``; ``reply`` is
    a Move, a label of the game or ``None``.  States are cached per even play.
    """

    _MISSING = object()

    def __init__(self, game, name=None):
        super().__init__(game, name)
        self._states = {(): self.initial_state()}

    def initial_state(self):
        return None

    def step(self, state, play, o_move):
        raise NotImplementedError

    def _state(self, even):
        st = self._states.get(even, self._MISSING)
        if st is not self._MISSING or not even:
            return st
        prev = self._state(even[:-2])
        if prev is self._MISSING:
            return prev
        self.respond(even[:-1])
        return self._states.get(even, self._MISSING)

    def _respond(self, play):
        state = self._state(play[:-1])
        if state is self._MISSING:
            return None
        reply, new_state = self.step(state, play[:-1], play[-1])
        if reply is None:
            return None
        if not isinstance(reply, Move):
            reply = self.game.find(play[-1].target, reply)
            if reply is None:
                return None
        self._states[play + (reply,)] = new_state
        return reply


class OracleStrategy(Strategy):
    def __init__(self, game, fn, name=None):
        super().__init__(game, name)
        self._fn = fn

    def _respond(self, play):
        return self._fn(play)


class TableStrategy(Strategy):
    """Strategy given by a finite table from odd plays (as label tuples) to labels."""

    def __init__(self, game, table, name=None):
        super().__init__(game, name)
        self.table = dict(table)

    def _respond(self, play):
        return self.table.get(tuple(m.label for m in play))


def empty_strategy(game: Game, name: str = "empty") -> Strategy:
    return TableStrategy(game, {}, name)


def _as_moves(game, play):
    pos = game.root
    out = []
    for item in play:
        label = item.label if isinstance(item, Move) else item
        m = game.find(pos, label)
        if m is None:
            raise IllegalMove(f"{label!r} is not a move at {pos!r}")
        out.append(m)
        pos = m.target
    return tuple(out)


def make_strategy(game: Game, plays=None, *, oracle=None, name=None) -> Strategy:
    """Validate a play set (or wrap an oracle) as a strategy.

    ``plays`` is an iterable of plays given as move labels or Moves, which
    must contain the empty play.
    """
    if oracle is not None:
        return OracleStrategy(game, oracle, name)
    plays = [_as_moves(game, p) for p in plays]
    pset = set(plays)
    if () not in pset:
        raise NotPrefixClosed("a strategy contains the empty play")
    table = {}
    for p in sorted(pset, key=len):
        if not p:
            continue
        if p[0].polarity != OPPONENT:
            raise ProponentStarts(f"play {p!r} starts with a Proponent move")
        for i in range(1, len(p)):
            if p[i].polarity == p[i - 1].polarity:
                raise NonAlternating(f"play {p!r} is not alternating")
        if len(p) % 2:
            raise NotPrefixClosed(f"odd-length play {p!r}")
        if p[:-2] not in pset:
            raise NotPrefixClosed(f"missing prefix of {p!r}")
        key = tuple(m.label for m in p[:-1])
        if key in table and table[key] != p[-1].label:
            raise NonDeterministic(f"two replies after {key!r}")
        table[key] = p[-1].label
    return TableStrategy(game, table, name)


# ---------------------------------------------------------------------------
# materialisation and comparison


def plays_upto(strategy: Strategy, depth: int = DEFAULT_DEPTH) -> list:
    """Every even-length play of ``strategy`` of length at most ``depth``."""
    game = strategy.game
    out = [()]
    queue = deque([()])
    while queue:
        p = queue.popleft()
        if len(p) + 2 > depth:
            continue
        for m in game.moves(play_end(game, p)):
            if m.polarity != OPPONENT:
                continue
            q = p + (m,)
            r = strategy.respond(q)
            if r is not None:
                q = q + (r,)
                out.append(q)
                queue.append(q)
    return out


def strategies_equal(s: Strategy, t: Strategy, depth: int = DEFAULT_DEPTH, iso=None) -> bool:
    return first_difference(s, t, depth, iso) is None


def first_difference(s: Strategy, t: Strategy, depth: int = DEFAULT_DEPTH, iso=None):
    """A play in one strategy but not the other, or ``None``."""
    if iso is None and s.game != t.game:
        iso = regroup(s.game, t.game)
    left = plays_upto(s, depth)
    if iso is not None:
        left = [iso.transport(p) for p in left]
    right = plays_upto(t, depth)
    lset, rset = set(left), set(right)
    for p in left:
        if p not in rset:
            return p
    for p in right:
        if p not in lset:
            return p
    return None


# ---------------------------------------------------------------------------
# well-bracketing


def wb_strategy_violation(strategy: Strategy, depth: int = DEFAULT_DEPTH):
    """A play ``s m t n`` of the strategy with ``m`` Opponent and
    ``kappa(m t n)`` having no Proponent but some Opponent query, or ``None``."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    game = strategy.game
    for p in plays_upto(strategy, depth):
        if not p:
            continue
        ks = suffix_kappas(game, p)
        for i, m in enumerate(p):
            if m.polarity == OPPONENT and ks[i].plus == 0 and ks[i].minus != 0:
                return p, i
    return None


def is_wb_strategy(strategy: Strategy, depth: int = DEFAULT_DEPTH) -> bool:
    return wb_strategy_violation(strategy, depth) is None


# ---------------------------------------------------------------------------
# isomorphisms and copycat


class Iso:
    """A bijection of moves between two games given on labels.

    ``fwd`` sends a move of ``src`` (with the positions and polarity it has
    in ``src``) to the label of the matching move in ``dst``; ``bwd`` goes back.
    """

    def __init__(self, src: Game, dst: Game, fwd, bwd, name="iso"):
        self.src, self.dst, self.fwd, self.bwd, self.name = src, dst, fwd, bwd, name

    @classmethod
    def identity(cls, game: Game) -> "Iso":
        lab = lambda m: m.label
        return cls(game, game, lab, lab, "id")

    def inverse(self) -> "Iso":
        return Iso(self.dst, self.src, self.bwd, self.fwd, f"{self.name}^-1")

    def then(self, other: "Iso") -> "Iso":
        def fwd(m):
            return other.fwd(self._image(m, self.fwd, self.dst))

        def bwd(m):
            return self.bwd(self._image(m, other.bwd, other.src))

        return Iso(self.src, other.dst, fwd, bwd, f"{self.name};{other.name}")

    @staticmethod
    def _image(m, fn, target_game):
        # positions of the image are not needed by label functions; keep the polarity
        return Move(fn(m), None, None, m.polarity)

    def transport(self, play, backwards: bool = False):
        fn, target = (self.bwd, self.src) if backwards else (self.fwd, self.dst)
        pos = target.root
        out = []
        for m in play:
            label = fn(m)
            n = target.find(pos, label)
            if n is None:
                raise GamesNotIsomorphic(f"{self.name}: no image for {m!r} at {pos!r}")
            out.append(n)
            pos = n.target
        return tuple(out)

    def dual(self) -> "Iso":
        flip = lambda fn: (lambda m: fn(Move(m.label, m.source, m.target, -m.polarity)))
        return Iso(dual(self.src), dual(self.dst), flip(self.fwd), flip(self.bwd), self.name)


def tensor_iso(*isos: Iso) -> Iso:
    src = Tensor(i.src for i in isos)
    dst = Tensor(i.dst for i in isos)

    def side(attr):
        def fn(m):
            k, label = m.label
            return (k, getattr(isos[k], attr)(Move(label, _at(m.source, k), _at(m.target, k), m.polarity)))

        return fn

    return Iso(src, dst, side("fwd"), side("bwd"), "(x)".join(i.name for i in isos))


def _at(pos, k):
    return pos[k] if isinstance(pos, tuple) else None


def arrow_iso(left: Iso, right: Iso) -> Iso:
    """Iso between ``a -> b`` and ``a' -> b'`` induced by ``a ~ a'`` and ``b ~ b'``."""
    d = left.dual()
    out = tensor_iso(d, right)
    return Iso(arrow(left.src, right.src), arrow(left.dst, right.dst), out.fwd, out.bwd,
               f"{left.name}->{right.name}")


class IsoStrategy(Strategy):
    """Copycat along an isomorphism: a strategy on ``arrow(iso.src, iso.dst)``."""

    def __init__(self, iso: Iso, name=None):
        super().__init__(arrow(iso.src, iso.dst), name or f"cc[{iso.name}]")
        self.iso = iso

    def _respond(self, play):
        m = play[-1]
        k, label = m.label
        pos = m.target
        if k == 1:
            out = (0, self.iso.bwd(Move(label, m.source[1], pos[1], m.polarity)))
        else:
            out = (1, self.iso.fwd(Move(label, m.source[0], pos[0], -m.polarity)))
        return self.game.find(pos, out)


def iso_strategy(iso: Iso, name=None) -> Strategy:
    return IsoStrategy(iso, name)


def copycat(game: Game) -> Strategy:
    return IsoStrategy(Iso.identity(game), name=f"id[{getattr(game, 'name', None) or type(game).__name__}]")


def transport(strategy: Strategy, iso: Iso, name=None) -> Strategy:
    """The strategy ``iso`` sends ``strategy`` to, on ``iso.dst``."""
    if iso.src != strategy.game:
        raise GamesNotIsomorphic("iso does not start at the strategy's game")

    def reply(play):
        try:
            src_play = iso.transport(play, backwards=True)
        except GamesNotIsomorphic:
            return None
        r = strategy.respond(src_play)
        if r is None:
            return None
        return iso.fwd(r)

    return OracleStrategy(iso.dst, reply, name or f"{strategy.name}@{iso.name}")


# ---------------------------------------------------------------------------
# regrouping tensor and coalesced trees


def _node_kind(game):
    if type(game) is Tensor:
        return Tensor
    if type(game) is Coalesced:
        return Coalesced
    return None


def _leaves(game, kind, path=()):
    if type(game) is kind:
        out = []
        for k, part in enumerate(game.parts):
            out.extend(_leaves(part, kind, path + (k,)))
        return out
    return [(path, game)]


def swap_permutation(a: Game, b: Game, kind=Tensor) -> list:
    """Leaf permutation taking ``a . b`` to ``b . a`` once units are dropped."""
    na, nb = len(_leaves(a, kind)), len(_leaves(b, kind))
    return list(range(na, na + nb)) + list(range(na))


def _sync_leaves(game, kind, label):
    if type(game) is kind:
        out = []
        for part, inner in zip(game.parts, label[1]):
            out.extend(_sync_leaves(part, kind, inner))
        return out
    return [label]


def _build_sync(game, kind, it):
    if type(game) is kind:
        return ("sync", tuple(_build_sync(p, kind, it) for p in game.parts))
    return next(it)


def _descend(game, kind, label):
    path = []
    while type(game) is kind:
        k, label = label
        path.append(k)
        game = game.parts[k]
    return tuple(path), label


def _wrap(path, label):
    for k in reversed(path):
        label = (k, label)
    return label


def _is_opening(game, m) -> bool:
    if m.source is not None:
        return m.source == game.root
    # composed isos forget positions; fall back on the label
    return game.find(game.root, m.label) is not None


def regroup(src: Game, dst: Game, perm=None, name="regroup") -> Iso:
    """Canonical iso between two bracketings of the same leaves.

    Tensor (or coalesced) nodes are flattened and their units dropped;
    ``perm[i]`` is the source leaf sent to destination leaf ``i``.
    """
    if src == dst and perm is None:
        return Iso.identity(src)
    kind = _node_kind(src) or _node_kind(dst)
    if kind is None:
        raise GamesNotIsomorphic(f"{src!r} and {dst!r} are different games")
    sl = _leaves(src, kind)
    dl = _leaves(dst, kind)
    if perm is None:
        perm = list(range(len(sl)))
    perm = list(perm)
    if len(sl) != len(dl) or sorted(perm) != list(range(len(sl))):
        raise GamesNotIsomorphic(f"leaf count mismatch between {src!r} and {dst!r}")
    for i, j in enumerate(perm):
        if dl[i][1] != sl[j][1]:
            raise GamesNotIsomorphic(f"leaf {i} of {dst!r} differs from leaf {j} of {src!r}")
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    s_index = {p: i for i, (p, _) in enumerate(sl)}
    d_index = {p: i for i, (p, _) in enumerate(dl)}

    def make(from_game, from_index, to_game, to_leaves, mapping, order):
        def fn(m):
            label = m.label
            if kind is Coalesced:
                if type(from_game) is not kind and _is_opening(from_game, m):
                    return _build_sync(to_game, kind, iter([label]))
                if isinstance(label, tuple) and label[0] == "sync":
                    leaves = _sync_leaves(from_game, kind, label)
                    return _build_sync(to_game, kind, iter([leaves[j] for j in order]))
            path, inner = _descend(from_game, kind, label)
            return _wrap(to_leaves[mapping[from_index[path]]][0], inner)

        return fn

    fwd = make(src, s_index, dst, dl, inv, perm)
    bwd = make(dst, d_index, src, sl, perm, inv)
    return Iso(src, dst, fwd, bwd, name)


# ---------------------------------------------------------------------------
# composition and tensor


class Composite(StatefulStrategy):
    """Parallel interaction on the middle game followed by hiding."""

    def __init__(self, first: Strategy, second: Strategy, name=None):
        g1, g2 = first.game, second.game
        if not (isinstance(g1, Tensor) and isinstance(g2, Tensor) and len(g1.parts) == 2 == len(g2.parts)):
            raise MiddleGameMismatch("composition needs two morphism games")
        if g2.parts[0] != dual(g1.parts[1]):
            raise MiddleGameMismatch(f"{g1.parts[1]!r} vs dual of {g2.parts[0]!r}")
        self.first, self.second = first, second
        super().__init__(Tensor((g1.parts[0], g2.parts[1])), name or f"({first.name};{second.name})")

    def initial_state(self):
        return ((), (), ())

    def step(self, state, play, o_move):
        p1, p2, u = state
        g1, g2 = self.first.game, self.second.game
        k, label = o_move.label
        if k == 0:
            side, move = 0, g1.find(play_end(g1, p1), (0, label))
        else:
            side, move = 1, g2.find(play_end(g2, p2), (1, label))
        if move is None:
            return None, state
        u = u + ((side, move),)
        for _ in range(INTERACTION_LIMIT):
            if side == 0:
                p1 = p1 + (move,)
                r = self.first.respond(p1)
                if r is None:
                    return None, state
                p1 = p1 + (r,)
                u = u + ((0, r),)
                if r.label[0] == 0:
                    return (0, r.label[1]), (p1, p2, u)
                move = g2.find(play_end(g2, p2), (0, r.label[1]))
                side = 1
            else:
                p2 = p2 + (move,)
                r = self.second.respond(p2)
                if r is None:
                    return None, state
                p2 = p2 + (r,)
                u = u + ((1, r),)
                if r.label[0] == 1:
                    return (1, r.label[1]), (p1, p2, u)
                move = g1.find(play_end(g1, p1), (1, r.label[1]))
                side = 0
            if move is None:
                raise StrategyError("middle move has no counterpart in the other strategy's game")
        return None, state

    def witness(self, play):
        """The interaction sequence hidden behind an even play of the composite."""
        st = self._state(tuple(play))
        return None if st is self._MISSING else st[2]


def compose(first: Strategy, second: Strategy, name=None) -> Strategy:
    return Composite(first, second, name)


def compose_all(*strategies: Strategy) -> Strategy:
    out = strategies[0]
    for s in strategies[1:]:
        out = compose(out, s)
    return out


class TensorStrategy(StatefulStrategy):
    def __init__(self, strategies, name=None):
        self.parts = tuple(strategies)
        src = Tensor(dual(s.game.parts[0]) for s in self.parts)
        dst = Tensor(s.game.parts[1] for s in self.parts)
        super().__init__(arrow(src, dst), name or "(x)".join(s.name for s in self.parts))

    def initial_state(self):
        return tuple(() for _ in self.parts)

    def step(self, state, play, o_move):
        side, (j, label) = o_move.label
        s = self.parts[j]
        sub = state[j]
        m = s.game.find(play_end(s.game, sub), (side, label))
        if m is None:
            return None, state
        r = s.respond(sub + (m,))
        if r is None:
            return None, state
        new = state[:j] + (sub + (m, r),) + state[j + 1 :]
        rk, rl = r.label
        return (rk, (j, rl)), new


def tensor_strategies(*strategies: Strategy, name=None) -> Strategy:
    return TensorStrategy(strategies, name)


def strategy_projection(play, index: int, strategy: TensorStrategy):
    """The component play of a tensor strategy's play on its ``index``-th factor."""
    g = strategy.parts[index].game
    labels = [(side, label) for side, (j, label) in (m.label for m in play) if j == index]
    from .arena import replay

    return replay(g, labels)


def enumerate_strategies(game: Game, depth: int, limit: int = 20_000) -> list:
    """Every deterministic strategy on ``game``, cut at plays of length ``depth``."""
    from .errors import GenerationBudgetExceeded

    def below(play):
        if len(play) + 2 > depth:
            return [{}]
        tables = [{}]
        for m in game.moves(play_end(game, play)):
            if m.polarity != OPPONENT:
                continue
            key = tuple(x.label for x in play + (m,))
            options = [{}]
            for r in game.moves(m.target):
                if r.polarity == PROPONENT:
                    for sub in below(play + (m, r)):
                        options.append({key: r.label, **sub})
            tables = [{**t, **o} for t in tables for o in options]
            if len(tables) > limit:
                raise GenerationBudgetExceeded(f"more than {limit} strategies")
        return tables

    return [TableStrategy(game, t, f"s{i}") for i, t in enumerate(below(()))]
