"""Hand-encoded games used throughout the tests and demos.

``qa_tree_game`` unfolds an arena-like description into the tree of its
alternating plays, which keeps every fixture trivially coherent on
parallel paths.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arena import ExplicitGame, Move, OPPONENT, PROPONENT, build_game
from .bracketing import attach_brackets


@dataclass(frozen=True)
class MoveSpec:
    label: str
    polarity: int
    enabler: str | None = None
    answers: str | None = None
    initiates: tuple = ()
    complies: tuple = ()
    qa: tuple | None = field(default=None, compare=False)


def qa_tree_game(specs, *, max_depth: int = 32, name=None, alternating: bool = True) -> ExplicitGame:
    """The tree of plays of an arena description.

    A move may be played once, after its enabler, and an answer only while its
    question has no answer yet.  Queries named in ``initiates`` are opened at
    the target and those named in ``complies`` are closed.
    """
    specs = list(specs)
    by_label = {s.label: s for s in specs}
    positions = [()]
    moves = []
    queries = {(): {}}
    residuals = {}
    frontier = [((), {})]
    for _ in range(max_depth):
        nxt = []
        for hist, live in frontier:
            played = set(hist)
            answered = {by_label[h].answers for h in hist if by_label[h].answers}
            for s in specs:
                if s.label in played:
                    continue
                if s.enabler is not None and s.enabler not in played:
                    continue
                if s.answers is not None and s.answers in answered:
                    continue
                if alternating:
                    expected = OPPONENT if len(hist) % 2 == 0 else PROPONENT
                    if s.polarity != expected:
                        continue
                new_live = {q: p for q, p in live.items() if q not in s.complies}
                for q in s.initiates:
                    new_live[q] = s.polarity
                tgt = hist + (s.label,)
                mid = "/".join(tgt)
                positions.append(tgt)
                moves.append((mid, hist, tgt, s.polarity))
                queries[tgt] = new_live
                residuals[mid] = {q: q for q in live if q in new_live and q not in s.initiates}
                nxt.append((tgt, new_live))
        frontier = nxt
        if not frontier:
            break
    game = build_game(positions, moves, (), name=name)
    game = attach_brackets(game, queries, residuals, name=name)
    return _relabel_tree(game, name)


def _relabel_tree(game: ExplicitGame, name) -> ExplicitGame:
    """Use the bare arena label on each tree edge (unique per position)."""
    moves = []
    residuals = {}
    for m in game.move_list:
        short = m.target[-1]
        moves.append(Move(short, m.source, m.target, m.polarity))
        residuals[(m.source, short)] = game.residual_table.get(m.label, {})
    return TreeGame(game.positions, moves, game.root, game.query_table, residuals, name=name)


class TreeGame(ExplicitGame):
    """Explicit game whose residual table is keyed by ``(source, label)``."""

    def _residual(self, move):
        return self.residual_table.get((move.source, move.label), {})


def spec(label, pol, enabler=None, answers=None, initiates=(), complies=(), qa=None):
    return MoveSpec(label, OPPONENT if pol == "O" else PROPONENT, enabler, answers,
                    tuple(initiates), tuple(complies), qa)


def boolean_game() -> ExplicitGame:
    """G_B: the boolean arena as a three-move Conway game with one query."""
    g = build_game(
        ["*", "x", "y1", "y2"],
        [("q", "*", "x", "O"), ("tt", "x", "y1", "P"), ("ff", "x", "y2", "P")],
        "*",
        name="G_B",
    )
    return attach_brackets(g, {"x": {"qhat": "O"}}, {"q": {}, "tt": {}, "ff": {}})


def plain_boolean_game() -> ExplicitGame:
    return build_game(
        ["*", "x", "y1", "y2"],
        [("q", "*", "x", "O"), ("tt", "x", "y1", "P"), ("ff", "x", "y2", "P")],
        "*",
        name="G_B",
    )


PCF2_SPECS = [
    spec("q1", "O", initiates=["1"], qa=("Q", "1")),
    spec("q2", "P", enabler="q1", initiates=["2"], qa=("Q", "2")),
    spec("tt2", "O", enabler="q2", answers="q2", complies=["2"], qa=("A", "2")),
    spec("ff2", "O", enabler="q2", answers="q2", complies=["2"], qa=("A", "2")),
    spec("q3", "O", enabler="q2", initiates=["3"], qa=("Q", "3")),
    spec("tt3", "P", enabler="q3", answers="q3", complies=["3"], qa=("A", "3")),
    spec("ff3", "P", enabler="q3", answers="q3", complies=["3"], qa=("A", "3")),
    spec("tt1", "P", enabler="q1", answers="q1", complies=["1"], qa=("A", "1")),
    spec("ff1", "P", enabler="q1", answers="q1", complies=["1"], qa=("A", "1")),
]


def pcf2_game() -> ExplicitGame:
    """Plays of the arena (B3 => B2) => B1, one query per question."""
    return qa_tree_game(PCF2_SPECS, name="PCF2")


TRIPLE_SPECS = [
    spec("q1", "O", initiates=["1", "a", "b"]),
    spec("qL", "P", enabler="q1", complies=["a"], initiates=["L"]),
    spec("ttL", "O", enabler="qL", answers="qL", complies=["L"]),
    spec("ffL", "O", enabler="qL", answers="qL", complies=["L"]),
    spec("qR", "P", enabler="q1", complies=["b"], initiates=["R"]),
    spec("ttR", "O", enabler="qR", answers="qR", complies=["R"]),
    spec("ffR", "O", enabler="qR", answers="qR", complies=["R"]),
    spec("tt1", "P", enabler="q1", answers="q1", complies=["1"]),
    spec("ff1", "P", enabler="q1", answers="q1", complies=["1"]),
]


def triple_game() -> ExplicitGame:
    """(B (x) B) -o B where the opening question initiates three queries."""
    return qa_tree_game(TRIPLE_SPECS, name="TRIPLE")


def qa_labels(specs):
    table = {s.label: s.qa for s in specs}
    return lambda move: table[move.label]


def play(game, labels):
    """Replay ``labels`` from the root of ``game``; raises on illegal moves."""
    from .arena import replay

    out = replay(game, labels)
    if out is None:
        raise ValueError(f"{labels!r} is not a play of {game!r}")
    return out
