"""Conway games as rooted graphs of polarized moves.

A game exposes its graph lazily through :meth:`Game.moves`, so that infinite
games such as the exponential can share the interface of finite ones.  Every
game also carries the bracketing data (queries and residuals); a plain Conway
game simply has no queries.

Positions are arbitrary hashable values.  At any given position the labels of
the outgoing moves are pairwise distinct, which lets constructions address a
move by ``(position, label)`` alone.
"""

from __future__ import annotations

import threading
from collections import deque
from typing import Hashable, Iterable, NamedTuple

from .errors import (
    DanglingMove,
    DuplicateId,
    ExpansionBudgetExceeded,
    NotATensorGame,
    ParallelMove,
    UnknownRoot,
)

OPPONENT = -1
PROPONENT = +1

DEFAULT_CAP = 10_000


class Move(NamedTuple):
    label: Hashable
    source: Hashable
    target: Hashable
    polarity: int

    def __repr__(self) -> str:
        pol = "O" if self.polarity < 0 else "P"
        return f"{self.label!r}:{pol}"


Path = tuple  # tuple[Move, ...]


class Sentinel:
    """A named, unique position marker used by the lifted constructions."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name

    def __reduce__(self):
        return (_sentinel, (self.name,))


_SENTINELS: dict[str, Sentinel] = {}


def _sentinel(name: str) -> Sentinel:
    if name not in _SENTINELS:
        _SENTINELS[name] = Sentinel(name)
    return _SENTINELS[name]


def sentinel(name: str) -> Sentinel:
    return _sentinel(name)


class Game:
    """Base class of all (multi-bracketed) Conway games.

    Subclasses implement ``_moves``, and optionally ``_queries`` and
    ``_residual``.  Results are memoised; memo tables are guarded by a lock so
    that concurrent expansion stays idempotent.
    """

    cap: int | None = None

    def __init__(self, root: Hashable, key: Hashable):
        self.root = root
        self.key = key
        self._moves_memo: dict = {}
        self._labels_memo: dict = {}
        self._queries_memo: dict = {}
        self._lock = threading.Lock()

    # -- subclass hooks --------------------------------------------------
    def _moves(self, pos) -> Iterable[Move]:
        raise NotImplementedError

    def _queries(self, pos) -> dict:
        return {}

    def _residual(self, move: Move) -> dict:
        return {}

    # -- public interface ------------------------------------------------
    def moves(self, pos) -> tuple[Move, ...]:
        try:
            return self._moves_memo[pos]
        except KeyError:
            pass
        result = tuple(self._moves(pos))
        with self._lock:
            if pos not in self._moves_memo:
                if self.cap is not None and len(self._moves_memo) >= self.cap:
                    raise ExpansionBudgetExceeded(
                        f"{self!r} expanded more than {self.cap} positions"
                    )
                self._moves_memo[pos] = result
            return self._moves_memo[pos]

    def find(self, pos, label) -> Move | None:
        try:
            table = self._labels_memo[pos]
        except KeyError:
            table = {m.label: m for m in self.moves(pos)}
            with self._lock:
                self._labels_memo.setdefault(pos, table)
        return table.get(label)

    def queries(self, pos) -> dict:
        """Map from query id to polarity at ``pos``."""
        try:
            return self._queries_memo[pos]
        except KeyError:
            pass
        result = dict(self._queries(pos))
        with self._lock:
            self._queries_memo.setdefault(pos, result)
        return result

    def residual(self, move: Move) -> dict:
        """The residual relation of ``move`` as a partial injection."""
        return self._residual(move)

    def expanded_positions(self) -> int:
        return len(self._moves_memo)

    def __eq__(self, other) -> bool:
        return isinstance(other, Game) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {short_key(self.key)}>"


def short_key(key, limit: int = 60) -> str:
    text = repr(key)
    return text if len(text) <= limit else text[: limit - 3] + "..."


class ExplicitGame(Game):
    """A fully materialised game given by tables."""

    def __init__(self, positions, moves, root, queries=None, residuals=None, name=None):
        self.positions = tuple(positions)
        self.move_list = tuple(moves)
        self.query_table = {p: dict(qs) for p, qs in (queries or {}).items()}
        self.residual_table = {m: dict(r) for m, r in (residuals or {}).items()}
        self.name = name
        by_source: dict = {p: [] for p in self.positions}
        for m in self.move_list:
            by_source[m.source].append(m)
        self._by_source = {p: tuple(ms) for p, ms in by_source.items()}
        self.by_label = {m.label: m for m in self.move_list}
        key = (
            "explicit",
            name,
            root,
            frozenset(self.move_list),
            frozenset((p, frozenset(q.items())) for p, q in self.query_table.items() if q),
            frozenset(
                (m, frozenset(r.items())) for m, r in self.residual_table.items() if r
            ),
        )
        super().__init__(root, key)

    def _moves(self, pos):
        return self._by_source.get(pos, ())

    def _queries(self, pos):
        return self.query_table.get(pos, {})

    def _residual(self, move):
        return self.residual_table.get(move.label, {})

    def __repr__(self) -> str:
        return f"<ExplicitGame {self.name or ''} |P|={len(self.positions)} |M|={len(self.move_list)}>"


def _polarity(token) -> int:
    if token in (OPPONENT, PROPONENT):
        return token
    if token == "O":
        return OPPONENT
    if token == "P":
        return PROPONENT
    raise ValueError(f"bad polarity {token!r}")


def build_game(positions, moves, root, *, strict: bool = False, name=None) -> ExplicitGame:
    """Validate and build a Conway game.

    ``moves`` is an iterable of ``(id, source, target, polarity)`` where the
    polarity is ``-1``/``+1`` or the tokens ``"O"``/``"P"``.
    """
    positions = list(positions)
    seen = set()
    for p in positions:
        if p in seen:
            raise DuplicateId(f"position {p!r} declared twice")
        seen.add(p)
    if root not in seen:
        raise UnknownRoot(f"root {root!r} is not a position")
    built = []
    ids = set()
    pairs = set()
    for mid, src, tgt, pol in moves:
        if mid in ids:
            raise DuplicateId(f"move {mid!r} declared twice")
        ids.add(mid)
        if src not in seen or tgt not in seen:
            raise DanglingMove(f"move {mid!r} refers to an absent position")
        if strict:
            if (src, tgt) in pairs:
                raise ParallelMove(f"second move between {src!r} and {tgt!r}")
            pairs.add((src, tgt))
        built.append(Move(mid, src, tgt, _polarity(pol)))
    return ExplicitGame(positions, built, root, name=name)


class Dual(Game):
    """Same graph, every polarity of moves and queries reversed."""

    def __init__(self, inner: Game):
        self.inner = inner
        super().__init__(inner.root, ("dual", inner.key))

    def _moves(self, pos):
        return tuple(Move(m.label, m.source, m.target, -m.polarity) for m in self.inner.moves(pos))

    def _queries(self, pos):
        return {q: -p for q, p in self.inner.queries(pos).items()}

    def _residual(self, move):
        return self.inner.residual(Move(move.label, move.source, move.target, -move.polarity))


def dual(game: Game) -> Game:
    """Involutive dual; pushed through tensors since the tensor is self-dual."""
    if isinstance(game, Dual):
        return game.inner
    if type(game) is Tensor:
        return Tensor(dual(p) for p in game.parts)
    return Dual(game)


class Tensor(Game):
    """n-ary tensor product; positions are tuples, moves are ``(k, label)``."""

    def __init__(self, parts):
        self.parts = tuple(parts)
        root = tuple(p.root for p in self.parts)
        super().__init__(root, ("tensor",) + tuple(p.key for p in self.parts))

    def component_move(self, move: Move) -> tuple[int, Move]:
        k, label = move.label
        return k, Move(label, move.source[k], move.target[k], move.polarity)

    def _moves(self, pos):
        out = []
        for k, part in enumerate(self.parts):
            for m in part.moves(pos[k]):
                tgt = pos[:k] + (m.target,) + pos[k + 1 :]
                out.append(Move((k, m.label), pos, tgt, m.polarity))
        return out

    def _queries(self, pos):
        out = {}
        for k, part in enumerate(self.parts):
            for q, pol in part.queries(pos[k]).items():
                out[(k, q)] = pol
        return out

    def _residual(self, move):
        k, inner = self.component_move(move)
        out = {}
        for j, part in enumerate(self.parts):
            if j == k:
                for a, b in part.residual(inner).items():
                    out[(k, a)] = (k, b)
            else:
                for q in part.queries(move.source[j]):
                    out[(j, q)] = (j, q)
        return out


def tensor(*games: Game) -> Tensor:
    return Tensor(games)


#: The unit game 1: a single position and no moves.
ONE = Tensor(())


COALESCED_ROOT = _sentinel("coalesced-root")


class Coalesced(Game):
    """n-ary coalesced product of pointed games.

    The first move plays the initial move of every part at once and is
    labelled ``("sync", labels)``; afterwards the game behaves like the
    tensor of the parts, with tuple positions and ``(k, label)`` moves.
    """

    def __init__(self, parts):
        self.parts = tuple(parts)
        super().__init__(COALESCED_ROOT, ("coalesced",) + tuple(p.key for p in self.parts))

    def initial_moves(self) -> tuple[Move, ...]:
        from .errors import NotPointed

        out = []
        for p in self.parts:
            first = p.moves(p.root)
            if len(first) != 1 or first[0].polarity != PROPONENT:
                raise NotPointed(f"{p!r} does not have a unique Proponent initial move")
            out.append(first[0])
        return tuple(out)

    def _moves(self, pos):
        if pos is COALESCED_ROOT:
            first = self.initial_moves()
            label = ("sync", tuple(m.label for m in first))
            return (Move(label, pos, tuple(m.target for m in first), PROPONENT),)
        return Tensor._moves(self, pos)

    def _queries(self, pos):
        if pos is COALESCED_ROOT:
            return {}
        return Tensor._queries(self, pos)

    def _residual(self, move):
        if move.source is COALESCED_ROOT:
            return {}
        return Tensor._residual(self, move)

    component_move = Tensor.component_move


#: The unit of the coalesced product: one Proponent move and nothing else.
POINTED_UNIT = Coalesced(())


def is_unit_like(game: Game) -> bool:
    return not game.moves(game.root)


# ---------------------------------------------------------------------------
# plays


def play_end(game: Game, path) -> Hashable:
    return path[-1].target if path else game.root


def replay(game: Game, labels, start=None) -> tuple[Move, ...] | None:
    """Rebuild a path of ``game`` from its move labels; ``None`` if illegal."""
    pos = game.root if start is None else start
    out = []
    for label in labels:
        m = game.find(pos, label)
        if m is None:
            return None
        out.append(m)
        pos = m.target
    return tuple(out)


def is_path(game: Game, path, start=None) -> bool:
    pos = game.root if start is None else start
    for m in path:
        if game.find(pos, m.label) != m:
            return False
        pos = m.target
    return True


def enumerate_plays(game: Game, max_len: int, start=None) -> list[tuple[Move, ...]]:
    """All paths from ``start`` (default: the root) of length at most ``max_len``."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    first = game.root if start is None else start
    out = [()]
    frontier = [((), first)]
    for _ in range(max_len):
        nxt = []
        for path, pos in frontier:
            for m in game.moves(pos):
                p = path + (m,)
                out.append(p)
                nxt.append((p, m.target))
        frontier = nxt
    return out


def is_alternating(path, game: Game | None = None) -> bool:
    return all(path[i + 1].polarity == -path[i].polarity for i in range(len(path) - 1))


_SIDES = {"left": 0, "right": 1}


def project_play(path, component, game: Game | None = None) -> tuple[Move, ...]:
    """The subsequence of a tensor play belonging to one component."""
    k = _SIDES.get(component, component)
    out = []
    for m in path:
        label = m.label
        if not (isinstance(label, tuple) and len(label) == 2 and isinstance(label[0], int)):
            raise NotATensorGame(f"move {m!r} is not a tensor move")
        if not (isinstance(m.source, tuple) and isinstance(m.target, tuple)):
            raise NotATensorGame(f"move {m!r} has non-tuple positions")
        if label[0] == k:
            out.append(Move(label[1], m.source[k], m.target[k], m.polarity))
    if game is not None and not isinstance(game, Tensor):
        raise NotATensorGame(f"{game!r} is not a tensor game")
    return tuple(out)


def reachable_positions(game: Game, depth: int) -> list:
    seen = {game.root}
    order = [game.root]
    frontier = deque([(game.root, 0)])
    while frontier:
        pos, d = frontier.popleft()
        if d >= depth:
            continue
        for m in game.moves(pos):
            if m.target not in seen:
                seen.add(m.target)
                order.append(m.target)
                frontier.append((m.target, d + 1))
    return order


def structurally_equal(g: Game, h: Game, depth: int = 8) -> bool:
    """Compare two games position by position up to ``depth`` moves."""
    if g.root != h.root:
        return False
    seen = {g.root}
    frontier = deque([(g.root, 0)])
    while frontier:
        pos, d = frontier.popleft()
        if g.queries(pos) != h.queries(pos):
            return False
        if d >= depth:
            continue
        gm = set(g.moves(pos))
        hm = set(h.moves(pos))
        if gm != hm:
            return False
        for m in gm:
            if g.residual(m) != h.residual(m):
                return False
            if m.target not in seen:
                seen.add(m.target)
                frontier.append((m.target, d + 1))
    return True


def materialize(game: Game, depth: int, name=None) -> ExplicitGame:
    """Copy the part of ``game`` reachable within ``depth`` moves into tables."""
    positions = reachable_positions(game, depth)
    inside = set(positions)
    found = [m for pos in positions for m in game.moves(pos) if m.target in inside]
    global_labels = len({m.label for m in found}) == len(found)
    moves = []
    residuals = {}
    for m in found:
        nm = m if global_labels else Move((m.source, m.label), m.source, m.target, m.polarity)
        moves.append(nm)
        residuals[nm.label] = game.residual(m)
    queries = {p: game.queries(p) for p in positions}
    return ExplicitGame(positions, moves, game.root, queries, residuals, name=name)
