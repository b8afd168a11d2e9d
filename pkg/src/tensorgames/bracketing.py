"""Queries, residuals and the resource function kappa.

A query id is any hashable; the residual of a move is a dict sending each
surviving source query to its residual at the target.  A source query missing
from the dict is complied with by the move, a target query that is nobody's
image is initiated by it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arena import ExplicitGame, Game, Move, OPPONENT, PROPONENT
from .errors import (
    MalformedQALabels,
    ResidualChangesPolarity,
    ResidualNotInjective,
    RootHasQueries,
    UnknownQuery,
    WrongCompliancePolarity,
    WrongInitiationPolarity,
)


@dataclass(frozen=True)
class ResourceCount:
    plus: int = 0
    minus: int = 0

    def __add__(self, other: "ResourceCount") -> "ResourceCount":
        return ResourceCount(self.plus + other.plus, self.minus + other.minus)

    def __le__(self, other: "ResourceCount") -> bool:
        return self.plus <= other.plus and self.minus <= other.minus

    def __iter__(self):
        return iter((self.plus, self.minus))


ZERO = ResourceCount(0, 0)


def _count(queries: dict, ids) -> ResourceCount:
    plus = minus = 0
    for q in ids:
        if queries[q] > 0:
            plus += 1
        else:
            minus += 1
    return ResourceCount(plus, minus)


# ---------------------------------------------------------------------------
# validation


def move_defects(game: Game, move: Move) -> list[tuple[type, str]]:
    """Locally checkable defects of one move (empty list when valid)."""
    src_q = game.queries(move.source)
    tgt_q = game.queries(move.target)
    res = game.residual(move)
    out = []
    images = set()
    for a, b in res.items():
        if a not in src_q:
            out.append((UnknownQuery, f"{move!r}: residual of unknown query {a!r}"))
            continue
        if b not in tgt_q:
            out.append((UnknownQuery, f"{move!r}: residual {b!r} is not a target query"))
            continue
        if b in images:
            out.append((ResidualNotInjective, f"{move!r}: two queries share residual {b!r}"))
        images.add(b)
        if src_q[a] != tgt_q[b]:
            out.append((ResidualChangesPolarity, f"{move!r}: {a!r} changes polarity"))
    for a, pol in src_q.items():
        if a not in res and pol == move.polarity:
            out.append((WrongCompliancePolarity, f"{move!r} complies with own-polarity query {a!r}"))
    for b, pol in tgt_q.items():
        if b not in images and pol != move.polarity:
            out.append((WrongInitiationPolarity, f"{move!r} initiates opposite-polarity query {b!r}"))
    return out


def attach_brackets(game: ExplicitGame, queries, residuals, *, validate: bool = True,
                    name=None) -> ExplicitGame:
    """Equip an explicit Conway game with queries and residual relations.

    ``queries`` maps a position to ``{query: polarity}`` (polarity as +-1 or
    ``"O"``/``"P"``); ``residuals`` maps a move id to ``{source_query: target_query}``.
    """
    from .arena import _polarity

    qtable = {p: {q: _polarity(pol) for q, pol in qs.items()} for p, qs in queries.items()}
    for p in qtable:
        if p not in game.positions:
            raise UnknownQuery(f"queries declared at unknown position {p!r}")
    for m in residuals:
        if m not in game.by_label:
            raise UnknownQuery(f"residual declared for unknown move {m!r}")
    out = ExplicitGame(
        game.positions,
        game.move_list,
        game.root,
        qtable,
        residuals,
        name=name if name is not None else game.name,
    )
    if validate:
        if out.queries(out.root):
            raise RootHasQueries("there are no queries at the root")
        for m in out.move_list:
            defects = move_defects(out, m)
            if defects:
                cls, msg = defects[0]
                raise cls(msg)
    return out


# ---------------------------------------------------------------------------
# residuals and kappa


def _start(game: Game, path, start=None):
    if start is not None:
        return start
    return path[0].source if path else game.root


def residuals_along(game: Game, path, query, start=None):
    """Return ``(r[s], [s]r)``; each is a set with at most one element.

    The forward part is computed when ``query`` lives at the start of the
    path, the backward part when it lives at its end.
    """
    first = _start(game, path, start)
    last = path[-1].target if path else first
    at_start = query in game.queries(first)
    at_end = query in game.queries(last)
    if not (at_start or at_end):
        raise UnknownQuery(f"{query!r} is neither at the start nor at the end of the path")
    forward = set()
    if at_start:
        cur = query
        for m in path:
            cur = game.residual(m).get(cur)
            if cur is None:
                break
        if cur is not None:
            forward = {cur}
    backward = set()
    if at_end:
        cur = query
        for m in reversed(path):
            inverse = {b: a for a, b in game.residual(m).items()}
            cur = inverse.get(cur)
            if cur is None:
                break
        if cur is not None:
            backward = {cur}
    return forward, backward


def kappa(game: Game, path, start=None) -> ResourceCount:
    """Count the Proponent and Opponent queries initiated by ``path``."""
    if not path:
        return ZERO
    return suffix_kappas(game, path)[0]


def suffix_kappas(game: Game, path) -> list[ResourceCount]:
    """``[kappa(path[i:]) for i in range(len(path) + 1)]`` in one backward sweep."""
    n = len(path)
    out = [ZERO] * (n + 1)
    if not n:
        return out
    end_q = game.queries(path[-1].target)
    ancestor = {q: q for q in end_q}
    for i in range(n - 1, -1, -1):
        inverse = {b: a for a, b in game.residual(path[i]).items()}
        ancestor = {q: inverse[c] for q, c in ancestor.items() if c in inverse}
        out[i] = _count(end_q, (q for q in end_q if q not in ancestor))
    return out


def wb_violation(game: Game, play):
    """First subpath ``(i, j)`` breaking the counting criterion, or ``None``."""
    for j in range(1, len(play)):
        n = play[j]
        ks = suffix_kappas(game, play[: j + 1])
        for i in range(j):
            m = play[i]
            k = ks[i]
            if m.polarity == OPPONENT and n.polarity == PROPONENT:
                if k.plus == 0 and k.minus != 0:
                    return i, j
            elif m.polarity == PROPONENT and n.polarity == OPPONENT:
                if k.minus == 0 and k.plus != 0:
                    return i, j
    return None


def is_wb_play(game: Game, play) -> bool:
    return wb_violation(game, play) is None


# ---------------------------------------------------------------------------
# the three axioms


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""


@dataclass
class AxiomReport:
    depth: int
    paths_checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _compose(rel: dict, res: dict) -> dict:
    return {a: res[b] for a, b in rel.items() if b in res}


def check_axioms(game: Game, depth: int, *, max_violations: int = 50) -> AxiomReport:
    """Exhaustively check accuracy, suffix domination, sub-additivity and
    parallel-path coherence over every subpath of every play of length at
    most ``depth``."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    report = AxiomReport(depth)
    found = report.violations

    def flag(axiom, witness, detail=""):
        if len(found) < max_violations:
            found.append(Violation(axiom, tuple(witness), detail))

    if game.queries(game.root):
        flag("root-queries", (), "queries at the root")
    coherence: dict = {}
    checked_moves = set()

    # kstack[j][i] = kappa(u[i:j]); rstack[j][i] = residual relation of u[i:j]
    def visit(u, kstack, rstack):
        report.paths_checked += 1
        j = len(u)
        if j:
            m = u[-1]
            if (m.source, m.label) not in checked_moves:
                checked_moves.add((m.source, m.label))
                for _, msg in move_defects(game, m):
                    flag("local", (m,), msg)
            ks = suffix_kappas(game, u)
            res = game.residual(m)
            prev = rstack[-1]
            rels = [_compose(prev[i], res) for i in range(j - 1)]
            rels.append(dict(res))
            rels.append({q: q for q in game.queries(m.target)})
            k_m = ks[j - 1]
            own = k_m.minus if m.polarity == PROPONENT else k_m.plus
            if own:
                flag("accuracy", u[j - 1 :], "move initiates opposite-polarity queries")
            for i in range(j - 1):
                s_k = kstack[-1][i]
                sm = ks[i]
                if m.polarity == PROPONENT:
                    ok = sm.plus == s_k.plus + k_m.plus
                else:
                    ok = sm.minus == s_k.minus + k_m.minus
                if not ok:
                    flag("accuracy", u[i:], f"kappa({i}:{j}) not additive on last move")
            for i in range(j):
                for k in range(i + 1, j):
                    whole = ks[i]
                    if not ks[k] <= whole:
                        flag("suffix-domination", u[i:], f"split at {k - i}")
                    if not whole <= kstack[k][i] + ks[k]:
                        flag("sub-additivity", u[i:], f"split at {k - i}")
            for i in range(j):
                key = (u[i].source, m.target)
                rel = frozenset(rels[i].items())
                seen = coherence.get(key)
                if seen is None:
                    coherence[key] = (rel, u[i:])
                elif seen[0] != rel:
                    flag("coherence", u[i:], f"differs from parallel path {seen[1]!r}")
            kstack.append(ks)
            rstack.append(rels)
        if j < depth:
            pos = u[-1].target if u else game.root
            for m in game.moves(pos):
                visit(u + (m,), kstack, rstack)
        if j:
            kstack.pop()
            rstack.pop()

    root_rel = [{q: q for q in game.queries(game.root)}]
    visit((), [[ZERO]], [root_rel])
    return report


# ---------------------------------------------------------------------------
# the classical stack discipline


def classic_wb_oracle(play) -> bool:
    """Well-bracketing as a stack discipline over ``(mode, tag)`` pairs.

    ``mode`` is ``"Q"`` or ``"A"``; a question's tag names it, an answer's
    tag names the question it answers.
    """
    stack = []
    asked = set()
    ok = True
    for item in play:
        try:
            mode, tag = item
        except (TypeError, ValueError):
            raise MalformedQALabels(f"not a (mode, tag) pair: {item!r}") from None
        if mode == "Q":
            if tag in asked:
                raise MalformedQALabels(f"question {tag!r} asked twice")
            asked.add(tag)
            stack.append(tag)
        elif mode == "A":
            if tag not in asked:
                raise MalformedQALabels(f"answer to unknown question {tag!r}")
            if stack and stack[-1] == tag:
                stack.pop()
            else:
                ok = False
                if tag in stack:
                    stack.remove(tag)
        else:
            raise MalformedQALabels(f"mode must be Q or A, got {mode!r}")
    return ok
