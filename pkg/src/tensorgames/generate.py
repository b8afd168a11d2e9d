"""Seeded random games and well-bracketed strategies for property tests."""

from __future__ import annotations

import random

from .arena import OPPONENT, PROPONENT, Game, play_end
from .bracketing import suffix_kappas
from .errors import GenerationBudgetExceeded
from .fixtures import MoveSpec, qa_labels, qa_tree_game
from .strategy import OracleStrategy, arrow

DEFAULT_CAP = 120


def _spec(label, pol, **kw):
    return MoveSpec(label, pol, kw.get("enabler"), kw.get("answers"),
                    tuple(kw.get("initiates", ())), tuple(kw.get("complies", ())), kw.get("qa"))


def qa_arena(rng: random.Random, size: int) -> list[MoveSpec]:
    """Questions justified by questions of the other player, each opening one query
    that its answers close."""
    specs = [_spec("q0", OPPONENT, initiates=["q0"], qa=("Q", "q0"))]
    questions = [specs[0]]
    for k in range(1, size):
        j = rng.choice(questions)
        pol = -j.polarity
        if rng.random() < 0.45:
            label = f"a{k}"
            specs.append(_spec(label, pol, enabler=j.label, answers=j.label, complies=[j.label],
                               qa=("A", j.label)))
        else:
            label = f"q{k}"
            s = _spec(label, pol, enabler=j.label, initiates=[label], qa=("Q", label))
            specs.append(s)
            questions.append(s)
    return specs


def multi_arena(rng: random.Random, size: int) -> list[MoveSpec]:
    """Moves opening up to three queries and closing some of the other player's."""
    specs = []
    opened = {OPPONENT: [], PROPONENT: []}
    for k in range(size):
        if not specs:
            pol, enabler = OPPONENT, None
        else:
            e = rng.choice(specs)
            pol, enabler = -e.polarity, e.label
        label = f"m{k}"
        theirs = opened[-pol]
        complies = rng.sample(theirs, min(len(theirs), rng.randint(0, 2)))
        inits = [f"{label}.{i}" for i in range(rng.randint(0, 3))]
        opened[pol].extend(inits)
        specs.append(_spec(label, pol, enabler=enabler, initiates=inits, complies=complies))
    return specs


def gen_random_game(seed: int, size: int = 6, *, kind: str | None = None,
                    cap: int = DEFAULT_CAP, max_depth: int = 12):
    """A random multi-bracketed game, deterministic in ``seed``.

    ``kind`` is ``"qa"`` (one query per question) or ``"multi"``; by default
    it is drawn with even odds.  The play tree is cut so that it has at most
    ``cap`` positions.
    """
    if size < 1:
        raise ValueError("size must be positive")
    rng = random.Random(seed)
    if kind is None:
        kind = rng.choice(["qa", "multi"])
    specs = qa_arena(rng, size) if kind == "qa" else multi_arena(rng, size)
    for depth in range(max_depth, 0, -1):
        game = qa_tree_game(specs, max_depth=depth, name=f"random-{kind}-{seed}")
        if len(game.positions) <= cap:
            game.arena = specs
            game.kind = kind
            return game
    raise GenerationBudgetExceeded(f"no cut of the play tree fits in {cap} positions")


def qa_oracle_labels(game):
    """``(mode, tag)`` labelling of the moves of a generated question/answer game."""
    return qa_labels(game.arena)


# ---------------------------------------------------------------------------
# strategies


def wb_replies(game: Game, play) -> list:
    """Proponent replies after the odd play ``play`` that keep it well-bracketed."""
    out = []
    for r in game.moves(play_end(game, play)):
        if r.polarity != PROPONENT:
            continue
        q = tuple(play) + (r,)
        ks = suffix_kappas(game, q)
        if all(not (m.polarity == OPPONENT and ks[i].plus == 0 and ks[i].minus != 0)
               for i, m in enumerate(q)):
            out.append(r)
    return out


def gen_random_wb_strategy(seed: int, game: Game, depth: int | None = None, *,
                           partial: float = 0.1, name=None) -> OracleStrategy:
    """A well-bracketed strategy on ``game`` built reply by reply.

    Each reply is drawn, from a generator seeded by ``seed`` and the play, among
    the replies that keep the play well-bracketed; with probability
    ``partial`` the strategy stops.  Plays longer than ``depth`` get no reply.
    """

    def reply(play):
        if depth is not None and len(play) >= depth:
            return None
        rng = random.Random(f"{seed}|{[m.label for m in play]!r}")
        if rng.random() < partial:
            return None
        options = wb_replies(game, play)
        return rng.choice(options).label if options else None

    return OracleStrategy(game, reply, name or f"wb{seed}")


def gen_wb_pair(seed: int, size: int = 7, *, partial: float = 0.0):
    """Composable well-bracketed ``(A -> B, B -> C)`` on three random games."""
    a, b, c = (gen_random_game(seed * 3 + k, size, max_depth=10) for k in range(3))
    sigma = gen_random_wb_strategy(seed * 2, arrow(a, b), partial=partial, name=f"s{seed}")
    tau = gen_random_wb_strategy(seed * 2 + 1, arrow(b, c), partial=partial, name=f"t{seed}")
    return sigma, tau
