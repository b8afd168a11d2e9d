"""Command-line entry point: ``tensorgames <command> ...``.

Exit status is 0 when the check holds, 1 when it fails for a semantic reason
and 2 on unreadable or unparsable input.  Results go to stdout one line at a
time; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from dataclasses import dataclass

from . import formats
from .arena import ONE, Tensor, dual, replay
from .bracketing import check_axioms, is_wb_play, wb_violation
from .errors import GameError, LogicError, ParseError
from .fixtures import boolean_game, pcf2_game, triple_game

OK, FAILED, BAD_INPUT = 0, 1, 2
DISCIPLINES = ("linear", "affine", "exponential")


@dataclass
class Config:
    depth: int = 10
    cap: int = 10_000
    seed: int = 0
    discipline: str = "linear"

    def __post_init__(self):
        if self.depth < 1 or self.cap < 1:
            raise ValueError("depth and cap must be at least 1")


def default_depth() -> int:
    raw = os.environ.get("TG_DEPTH")
    if raw is None:
        return 10
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"TG_DEPTH must be an integer, got {raw!r}") from None


class InputError(Exception):
    """Unreadable or malformed input; exit status 2."""


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _parsed(fn, path):
    text = _read(path)
    try:
        return fn(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _out(line: str) -> None:
    print(line, flush=True)


# ---------------------------------------------------------------------------
# combinator expressions, e.g. neg(affine(neg(oplus(one,one))))

_EXPR_TOKEN = re.compile(r"\s*([A-Za-z_][\w]*|\d+|[(),\[\]])")


def _tokens(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _EXPR_TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"bad expression near {text[pos:pos + 10]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def _constants():
    from .fam import EMPTY, UNIT

    g = boolean_game()
    return {
        "one": UNIT, "zero": EMPTY, "unit": ONE, "1": ONE,
        "G_B": g, "G_BxG_B": Tensor((g, g)), "PCF2": pcf2_game(), "TRIPLE": triple_game(),
    }


def _as_fam(x):
    from .fam import FamObject, singleton

    return x if isinstance(x, FamObject) else singleton(x)


def _as_game(x):
    from .fam import FamObject

    return x.only() if isinstance(x, FamObject) else x


def _functions():
    from .fam import fam_affine, fam_bang, fam_coproduct, fam_negation, fam_tensor

    return {
        "oplus": lambda *a: fam_coproduct(*map(_as_fam, a)),
        "otimes": lambda *a: fam_tensor(*map(_as_fam, a)),
        "neg": lambda a: fam_negation(_as_fam(a)),
        "affine": lambda a: fam_affine(_as_fam(a)),
        "bang": lambda a: fam_bang(_as_fam(a)),
        "tensor": lambda *a: Tensor(tuple(map(_as_game, a))),
        "dual": lambda a: dual(_as_game(a)),
    }


def parse_expression(text: str):
    """A game or family from a combinator expression."""
    from .fam import family

    toks = _tokens(text)
    consts, funcs = _constants(), _functions()
    pos = 0

    def take(expected=None):
        nonlocal pos
        if pos >= len(toks):
            raise ParseError(f"unexpected end of expression {text!r}")
        t = toks[pos]
        if expected is not None and t != expected:
            raise ParseError(f"expected {expected!r}, got {t!r} in {text!r}")
        pos += 1
        return t

    def args(close):
        out = [expr()]
        while toks[pos:pos + 1] == [","]:
            take(",")
            out.append(expr())
        take(close)
        return out

    def expr():
        t = take()
        if t == "fam":
            take("[")
            return family(*map(_as_game, args("]")))
        if t in funcs and toks[pos:pos + 1] == ["("]:
            take("(")
            try:
                return funcs[t](*args(")"))
            except TypeError as exc:
                raise ParseError(f"{t}: {exc}") from None
        if t in consts:
            return consts[t]
        raise ParseError(f"unknown name {t!r} in {text!r}")

    out = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input in {text!r}")
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_check_game(args, cfg) -> int:
    game = _parsed(formats.parse_game_file, args.path)
    _out(f"GAME {game.name} positions={len(game.positions)} moves={len(game.move_list)}")
    return OK


def cmd_axioms(args, cfg) -> int:
    game = _parsed(formats.parse_game_file, args.path)
    rep = check_axioms(game, cfg.depth)
    for v in rep.violations:
        _out(f"VIOLATION {v.axiom} witness={','.join(str(m.label) for m in v.witness)}")
    _out(f"AXIOMS {'ok' if rep.ok else 'violated'} depth={cfg.depth} paths={rep.paths_checked}")
    return OK if rep.ok else FAILED


def cmd_wb_play(args, cfg) -> int:
    game = _parsed(formats.parse_game_file, args.path)
    labels = [x for x in args.play.split(",") if x]
    play = replay(game, labels)
    if play is None:
        print(f"not a play of {game.name}: {args.play}", file=sys.stderr)
        _out("WB false")
        return FAILED
    ok = is_wb_play(game, play)
    if not ok:
        i, j = wb_violation(game, play)
        print(f"the segment from {play[i].label} to {play[j].label} breaks the bracketing",
              file=sys.stderr)
    _out(f"WB {'true' if ok else 'false'}")
    return OK if ok else FAILED


def cmd_compose(args, cfg) -> int:
    from .strategy import compose, is_wb_strategy

    sigma = _parsed(formats.parse_strategy_file, args.sigma)
    tau = _parsed(formats.parse_strategy_file, args.tau)
    comp = compose(sigma, tau, name=args.name)
    _write(args.out, formats.dump_strategy(comp, cfg.depth))
    wb = is_wb_strategy(comp, cfg.depth)
    if args.out not in (None, "-"):
        _out(f"COMPOSED {comp.name} depth={cfg.depth} wb={'true' if wb else 'false'}")
    return OK


def cmd_laws(args, cfg) -> int:
    from .laws import law_suite

    samples = None
    if args.samples:
        samples = {}
        for part in _split_top(args.samples):
            samples[part] = _as_game(parse_expression(part))
    rep = law_suite(cfg.depth, samples)
    for line in rep.lines():
        _out(line)
    return OK if rep.ok else FAILED


def _split_top(text):
    """Split a comma list, ignoring commas nested in brackets."""
    out, level, cur = [], 0, ""
    for ch in text:
        if ch in "([":
            level += 1
        elif ch in ")]":
            level -= 1
        if ch == ";" or (ch == "," and level == 0):
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def _checked(args, cfg):
    from .logic import check_proof

    goal, tree = _parsed(formats.parse_proof_file, args.path)
    return check_proof(tree, goal, discipline=cfg.discipline)


def cmd_check_proof(args, cfg) -> int:
    try:
        proof = _checked(args, cfg)
    except LogicError as exc:
        _out(f"PROOF rejected: {exc}")
        return FAILED
    _out(f"PROOF ok {formats.dump_sexpr(formats.sequent_sexpr(proof.sequent))}")
    return OK


def cmd_interpret(args, cfg) -> int:
    from .logic import interpret_proof
    from .strategy import is_wb_strategy, plays_upto

    try:
        proof = _checked(args, cfg)
    except LogicError as exc:
        _out(f"PROOF rejected: {exc}")
        return FAILED
    f = interpret_proof(proof, cfg.discipline)
    all_wb = True
    for i in f.src.indices:
        s = f[i]
        if args.emit == "plays":
            for p in plays_upto(s, cfg.depth):
                _out(f"PLAY {i!r} " + " ".join(repr(m.label) for m in p))
        wb = is_wb_strategy(s, cfg.depth)
        all_wb &= wb
        _out(f"COMPONENT {i!r} -> {f.reindex[i]!r} wb={'true' if wb else 'false'}")
    _out(f"INTERPRETED components={len(f.src.indices)} wb={'true' if all_wb else 'false'}")
    return OK if all_wb else FAILED


def cmd_pcf_run(args, cfg) -> int:
    from .pcf import parse_pcf, pcf_eval

    term = _parsed(parse_pcf, args.path)
    try:
        result = pcf_eval(term, cfg.depth, cfg.discipline)
    except LogicError as exc:
        print(f"ill-typed: {exc}", file=sys.stderr)
        return FAILED
    _out(f"RESULT {result}")
    return OK


def cmd_random_game(args, cfg) -> int:
    from .generate import gen_random_game

    game = gen_random_game(cfg.seed, args.size, kind=args.kind, cap=min(cfg.cap, 10_000))
    _write(args.out, formats.dump_game(game))
    return OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tensorgames", description=__doc__.splitlines()[0])
    p.add_argument("--depth", type=int, default=None, help="play-length bound (TG_DEPTH, default 10)")
    p.add_argument("--cap", type=int, default=10_000, help="position budget for expansion")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--depth", type=int, default=argparse.SUPPRESS)
        return sp

    add("check-game", cmd_check_game, "parse and validate a game file").add_argument("path")
    add("axioms", cmd_axioms, "check the bracketing axioms exhaustively").add_argument("path")
    sp = add("wb-play", cmd_wb_play, "decide whether a play is well-bracketed")
    sp.add_argument("path")
    sp.add_argument("--play", required=True, help="comma-separated move labels")
    sp = add("compose", cmd_compose, "compose two strategy files")
    sp.add_argument("sigma")
    sp.add_argument("tau")
    sp.add_argument("--out", default=None)
    sp.add_argument("--name", default=None)
    add("laws", cmd_laws, "run the categorical law suite").add_argument(
        "--samples", default=None, help="comma-separated sample games or expressions")
    for name, fn, help_ in (("check-proof", cmd_check_proof, "check a proof file"),
                            ("interpret", cmd_interpret, "interpret a proof as strategies"),
                            ("pcf-run", cmd_pcf_run, "evaluate a PCF program")):
        sp = add(name, fn, help_)
        sp.add_argument("path")
        sp.add_argument("--discipline", choices=DISCIPLINES, default="linear")
        if name == "interpret":
            sp.add_argument("--emit", choices=("plays", "summary"), default="summary")
    sp = add("random-game", cmd_random_game, "write a seeded random game")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--size", type=int, default=6)
    sp.add_argument("--kind", choices=("qa", "multi"), default=None)
    sp.add_argument("--out", default=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        depth = args.depth if args.depth is not None else default_depth()
        cfg = Config(depth=depth, cap=args.cap, seed=getattr(args, "seed", 0),
                     discipline=getattr(args, "discipline", "linear"))
    except (ValueError, SystemExit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    try:
        return args.func(args, cfg)
    except (InputError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except GameError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
