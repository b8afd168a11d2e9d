"""S-expression text formats for formulas, proofs, PCF terms, games and strategies."""

from __future__ import annotations

import re

from .errors import ParseError

_TOKEN = re.compile(r'\s*(?:(;[^\n]*)|(\()|(\))|("(?:[^"\\]|\\.)*")|([^\s();"]+))')


class Sym(str):
    """A bare symbol, as opposed to a quoted string."""


_OPEN, _CLOSE = object(), object()


def tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character at offset {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        comment, lp, rp, string, atom = m.groups()
        if comment:
            continue
        if lp:
            out.append(_OPEN)
        elif rp:
            out.append(_CLOSE)
        elif string:
            out.append(re.sub(r"\\(.)", r"\1", string[1:-1]))
        elif atom:
            out.append(Sym(atom))
    return out


def parse_sexprs(text: str) -> list:
    """All top-level expressions of ``text``; lists for parenthesised forms."""
    tokens = tokenize(text)
    stack = [[]]
    for tok in tokens:
        if tok is _OPEN:
            stack.append([])
        elif tok is _CLOSE:
            if len(stack) == 1:
                raise ParseError("unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise ParseError("unbalanced '('")
    return stack[0]


def parse_sexpr(text: str):
    items = parse_sexprs(text)
    if len(items) != 1:
        raise ParseError(f"expected one expression, found {len(items)}")
    return items[0]


_BARE = re.compile(r"[^\s();\"]+")


def dump_sexpr(x, indent: int | None = None, _level: int = 0) -> str:
    if isinstance(x, (list, tuple)):
        parts = [dump_sexpr(y, indent, _level + 1) for y in x]
        flat = "(" + " ".join(parts) + ")"
        if indent is None or len(flat) + _level * indent <= 88:
            return flat
        pad = "\n" + " " * ((_level + 1) * indent)
        return "(" + parts[0] + "".join(pad + p for p in parts[1:]) + ")"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    s = str(x)
    if isinstance(x, Sym) or (_BARE.fullmatch(s) and not _looks_numeric(s)):
        return s
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _looks_numeric(s: str) -> bool:
    return bool(re.fullmatch(r"-?\d+", s))


def head(x):
    return x[0] if isinstance(x, list) and x else None


def expect_list(x, what: str) -> list:
    if not isinstance(x, list) or not x:
        raise ParseError(f"expected {what}, got {dump_sexpr(x)}")
    return x


def as_int(x) -> int:
    try:
        return int(x)
    except (TypeError, ValueError):
        raise ParseError(f"expected an integer, got {dump_sexpr(x)}") from None


# ---------------------------------------------------------------------------
# formulas and proofs


def parse_formula(x):
    from . import logic as L

    if not isinstance(x, list):
        if x == "1":
            return L.ONE_F
        if x == "0":
            return L.ZERO_F
        if x in ("bool", "B"):
            return L.BOOL
        return L.Atom(str(x))
    op = head(x)
    unary = {"not": L.Neg, "affine": L.Aff, "bang": L.Exp}
    binary = {"tensor": L.Tens, "plus": L.Plus}
    if op in unary and len(x) == 2:
        return unary[op](parse_formula(x[1]))
    if op in binary and len(x) >= 3:
        out = parse_formula(x[-1])
        for y in reversed(x[1:-1]):
            out = binary[op](parse_formula(y), out)
        return out
    raise ParseError(f"not a formula: {dump_sexpr(x)}")


def formula_sexpr(f):
    from . import logic as L

    if isinstance(f, L.One):
        return Sym("1")
    if isinstance(f, L.Zero):
        return Sym("0")
    if isinstance(f, L.Bool):
        return Sym("bool")
    if isinstance(f, L.Atom):
        return Sym(f.name)
    if isinstance(f, (L.Tens, L.Plus)):
        op = "tensor" if isinstance(f, L.Tens) else "plus"
        return [Sym(op), formula_sexpr(f.left), formula_sexpr(f.right)]
    op = {L.Neg: "not", L.Aff: "affine", L.Exp: "bang"}[type(f)]
    return [Sym(op), formula_sexpr(f.body)]


def parse_sequent(x):
    from .logic import Sequent

    x = expect_list(x, "(sequent (ctx ...) [formula])")
    if head(x) != "sequent" or len(x) not in (2, 3) or head(x[1]) != "ctx":
        raise ParseError(f"expected (sequent (ctx ...) [formula]), got {dump_sexpr(x)}")
    ctx = tuple(parse_formula(f) for f in x[1][1:])
    concl = parse_formula(x[2]) if len(x) == 3 else None
    return Sequent(ctx, concl)


def sequent_sexpr(s):
    out = [Sym("sequent"), [Sym("ctx")] + [formula_sexpr(f) for f in s.context]]
    if s.conclusion is not None:
        out.append(formula_sexpr(s.conclusion))
    return out


_ANNOTATIONS = {"split", "at", "perm", "formula"}


def parse_proof(x):
    from .logic import ProofTree

    x = expect_list(x, "a proof node")
    rule = x[0]
    if isinstance(rule, list):
        raise ParseError(f"a proof node starts with a rule name, got {dump_sexpr(x)}")
    data, premises = {}, []
    for y in x[1:]:
        h = head(y)
        if h in _ANNOTATIONS:
            if len(y) < 2:
                raise ParseError(f"empty annotation {dump_sexpr(y)}")
            if h == "split":
                data["split"] = as_int(y[1])
            elif h == "at":
                data["index"] = as_int(y[1])
            elif h == "perm":
                data["perm"] = tuple(as_int(v) for v in y[1:])
            else:
                data["formula"] = parse_formula(y[1])
        else:
            premises.append(parse_proof(y))
    return ProofTree(str(rule), tuple(premises), **data)


def proof_sexpr(t):
    out = [Sym(t.rule)]
    if t.formula is not None:
        out.append([Sym("formula"), formula_sexpr(t.formula)])
    if t.split is not None:
        out.append([Sym("split"), t.split])
    if t.index is not None:
        out.append([Sym("at"), t.index])
    if t.perm is not None:
        out.append([Sym("perm")] + list(t.perm))
    return out + [proof_sexpr(p) for p in t.premises]


def parse_proof_file(text: str):
    """``(sequent ...)`` followed by the proof tree; returns ``(goal, tree)``."""
    items = parse_sexprs(text)
    if len(items) != 2:
        raise ParseError("a proof file holds a goal sequent and a proof tree")
    return parse_sequent(items[0]), parse_proof(items[1])


def dump_proof_file(goal, tree) -> str:
    return dump_sexpr(sequent_sexpr(goal), 2) + "\n" + dump_sexpr(proof_sexpr(tree), 2) + "\n"


# ---------------------------------------------------------------------------
# games
#
# Arena form, unfolded into its tree of plays:
#   (arena NAME (move q1 O (init 1 a)) (move qL P (after q1) (answers q1) (comply a)) ...)
# Explicit form, positions and moves given directly:
#   (game NAME (root *) (position x (query qhat O)) (move q * x O (keep qhat qhat)) ...)

_POL = {"O": -1, "P": 1}
_POL_NAME = {-1: "O", 1: "P"}


def _polarity_token(x) -> int:
    if x not in _POL:
        raise ParseError(f"polarity must be O or P, got {dump_sexpr(x)}")
    return _POL[x]


def _clauses(items, allowed, what):
    out = {}
    for c in items:
        c = expect_list(c, f"a clause of {what}")
        if c[0] not in allowed:
            raise ParseError(f"unknown clause {dump_sexpr(c[0])} in {what}")
        out.setdefault(str(c[0]), []).append([str(v) for v in c[1:]])
    return out


def parse_arena(x):
    from .fixtures import MoveSpec

    x = expect_list(x, "(arena NAME (move ...) ...)")
    if head(x) != "arena" or len(x) < 3:
        raise ParseError("an arena needs a name and at least one move")
    specs = []
    for m in x[2:]:
        m = expect_list(m, "(move LABEL O|P ...)")
        if head(m) != "move" or len(m) < 3:
            raise ParseError(f"expected (move LABEL O|P ...), got {dump_sexpr(m)}")
        label = str(m[1])
        cl = _clauses(m[3:], {"after", "answers", "init", "comply"}, f"move {label}")
        one = lambda k: cl[k][0][0] if k in cl and cl[k][0] else None  # noqa: E731
        flat = lambda k: tuple(v for vs in cl.get(k, []) for v in vs)  # noqa: E731
        specs.append(MoveSpec(label, _polarity_token(m[2]), one("after"), one("answers"),
                              flat("init"), flat("comply")))
    return str(x[1]), specs


def arena_sexpr(name, specs):
    out = [Sym("arena"), str(name)]
    for s in specs:
        m = [Sym("move"), s.label, Sym(_POL_NAME[s.polarity])]
        if s.enabler is not None:
            m.append([Sym("after"), s.enabler])
        if s.answers is not None:
            m.append([Sym("answers"), s.answers])
        if s.initiates:
            m.append([Sym("init")] + list(s.initiates))
        if s.complies:
            m.append([Sym("comply")] + list(s.complies))
        out.append(m)
    return out


def parse_explicit_game(x):
    from .arena import build_game
    from .bracketing import attach_brackets

    x = expect_list(x, "(game NAME ...)")
    if head(x) != "game" or len(x) < 3:
        raise ParseError("a game needs a name and clauses")
    name = str(x[1])
    root, positions, queries, moves, residuals = None, [], {}, [], {}
    for c in x[2:]:
        c = expect_list(c, "a game clause")
        h = head(c)
        if h == "root" and len(c) == 2:
            root = str(c[1])
        elif h == "position" and len(c) >= 2:
            p = str(c[1])
            positions.append(p)
            for q in c[2:]:
                q = expect_list(q, "(query NAME O|P)")
                if head(q) != "query" or len(q) != 3:
                    raise ParseError(f"expected (query NAME O|P), got {dump_sexpr(q)}")
                queries.setdefault(p, {})[str(q[1])] = _polarity_token(q[2])
        elif h == "move" and len(c) >= 5:
            mid = str(c[1])
            moves.append((mid, str(c[2]), str(c[3]), _polarity_token(c[4])))
            for k in c[5:]:
                k = expect_list(k, "(keep FROM TO)")
                if head(k) != "keep" or len(k) != 3:
                    raise ParseError(f"expected (keep FROM TO), got {dump_sexpr(k)}")
                residuals.setdefault(mid, {})[str(k[1])] = str(k[2])
        else:
            raise ParseError(f"bad game clause {dump_sexpr(c)}")
    if root is None:
        raise ParseError(f"game {name} has no (root ...)")
    return attach_brackets(build_game(positions, moves, root, name=name), queries, residuals, name=name)


def explicit_game_sexpr(game):
    """Explicit form of a finite game; positions and labels are printed as strings."""
    out = [Sym("game"), str(game.name or "game"), [Sym("root"), _atom(game.root)]]
    index = {}
    for p in game.positions:
        index[p] = _atom(p)
        clause = [Sym("position"), index[p]]
        for q, pol in sorted(game.query_table.get(p, {}).items(), key=repr):
            clause.append([Sym("query"), _atom(q), Sym(_POL_NAME[pol])])
        out.append(clause)
    for m in game.move_list:
        clause = [Sym("move"), _atom(m.label), index[m.source], index[m.target], Sym(_POL_NAME[m.polarity])]
        for a, b in sorted(game.residual(m).items(), key=repr):
            clause.append([Sym("keep"), _atom(a), _atom(b)])
        out.append(clause)
    return out


def _atom(v) -> str:
    if isinstance(v, tuple):
        return "/".join(map(str, v)) or "."
    return str(v)


def parse_game(x):
    """A game from its arena or explicit form."""
    from .fixtures import qa_tree_game

    h = head(x)
    if h == "arena":
        name, specs = parse_arena(x)
        game = qa_tree_game(specs, name=name)
        game.arena = specs
        return game
    if h == "game":
        return parse_explicit_game(x)
    raise ParseError(f"expected (arena ...) or (game ...), got {dump_sexpr(x)[:60]}")


def game_sexpr(game):
    specs = getattr(game, "arena", None)
    if specs is not None:
        return arena_sexpr(game.name, specs)
    return explicit_game_sexpr(game)


def parse_game_file(text: str):
    return parse_game(parse_sexpr(text))


def dump_game(game) -> str:
    return dump_sexpr(game_sexpr(game), 2) + "\n"


# ---------------------------------------------------------------------------
# strategies
#
#   (strategy NAME (arrow GAME GAME) (play) (play (1 q) (0 q)) ...)
# or (strategy NAME (on GAME) ...) for a strategy on a single game.  A move of
# an arrow is (0 LABEL) on the left and (1 LABEL) on the right.


def parse_strategy(x):
    from .strategy import arrow, make_strategy

    x = expect_list(x, "(strategy NAME GAME PLAY...)")
    if head(x) != "strategy" or len(x) < 3:
        raise ParseError("a strategy needs a name and a game")
    name, g = str(x[1]), expect_list(x[2], "(arrow A B) or (on A)")
    if head(g) == "arrow" and len(g) == 3:
        game, sides = arrow(parse_game(g[1]), parse_game(g[2])), True
    elif head(g) == "on" and len(g) == 2:
        game, sides = parse_game(g[1]), False
    else:
        raise ParseError(f"expected (arrow A B) or (on A), got {dump_sexpr(g)[:60]}")
    plays = []
    for p in x[3:]:
        if head(p) != "play":
            raise ParseError(f"expected (play ...), got {dump_sexpr(p)}")
        plays.append([_parse_label(m, sides) for m in p[1:]])
    return make_strategy(game, plays or [[]], name=name)


def _parse_label(m, sides):
    if not sides:
        return str(m)
    if not isinstance(m, list) or len(m) != 2 or m[0] not in ("0", "1"):
        raise ParseError(f"arrow moves are (0 LABEL) or (1 LABEL), got {dump_sexpr(m)}")
    return (int(m[0]), str(m[1]))


def strategy_sexpr(strategy, depth: int, name=None):
    """The plays of ``strategy`` up to ``depth``; its game must be an arrow of
    two file-backed games, or a file-backed game."""
    from .arena import Tensor
    from .strategy import plays_upto

    game = strategy.game
    sides = isinstance(game, Tensor) and len(game.parts) == 2
    if sides:
        from .arena import Dual

        left = game.parts[0]
        left = left.inner if isinstance(left, Dual) else left
        g = [Sym("arrow"), game_sexpr(left), game_sexpr(game.parts[1])]
    else:
        g = [Sym("on"), game_sexpr(game)]
    out = [Sym("strategy"), str(name or strategy.name or "s"), g]
    for p in plays_upto(strategy, depth):
        out.append([Sym("play")] + [[m.label[0], _atom(m.label[1])] if sides else _atom(m.label) for m in p])
    return out


def parse_strategy_file(text: str):
    return parse_strategy(parse_sexpr(text))


def dump_strategy(strategy, depth: int, name=None) -> str:
    return dump_sexpr(strategy_sexpr(strategy, depth, name), 2) + "\n"
