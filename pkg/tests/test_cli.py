import os
import subprocess
import sys
from pathlib import Path

import pytest

from tensorgames.cli import Config, main, parse_expression
from tensorgames.errors import ParseError

DEMOS = Path(__file__).resolve().parent.parent / "demos"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_wb_play_accepts_the_nested_play(capsys):
    code, out, _ = run(capsys, "wb-play", DEMOS / "TRIPLE.game", "--play", "q1,qL,ttL,qR,ttR,tt1")
    assert (code, out) == (0, "WB true\n")


def test_wb_play_rejects_the_skipped_query(capsys):
    code, out, err = run(capsys, "wb-play", DEMOS / "TRIPLE.game", "--play", "q1,qR,ttR,tt1")
    assert (code, out) == (1, "WB false\n")
    assert err


def test_pcf_run(capsys):
    assert run(capsys, "pcf-run", DEMOS / "fix_const.pcf")[:2] == (0, "RESULT tt\n")
    assert run(capsys, "pcf-run", DEMOS / "negate.pcf")[:2] == (0, "RESULT ff\n")
    assert run(capsys, "pcf-run", DEMOS / "diverge.pcf", "--depth", "8")[:2] == (0, "RESULT diverge\n")


def test_pcf_run_ill_typed(capsys, tmp_path):
    p = tmp_path / "bad.pcf"
    p.write_text("(lam (x bool) (if x x tt))")
    assert run(capsys, "pcf-run", p)[0] == 1


def test_check_proof_and_interpret(capsys):
    code, out, _ = run(capsys, "check-proof", DEMOS / "true.proof")
    assert code == 0 and out.startswith("PROOF ok")
    code, out, _ = run(capsys, "check-proof", DEMOS / "bad_contraction.proof")
    assert code == 1 and out.startswith("PROOF rejected")
    code, out, _ = run(capsys, "interpret", DEMOS / "true.proof", "--emit", "plays")
    assert code == 0
    assert out.splitlines()[-1] == "INTERPRETED components=1 wb=true"
    assert sum(line.startswith("PLAY") for line in out.splitlines()) == 3


def test_axioms_and_check_game(capsys):
    code, out, _ = run(capsys, "axioms", DEMOS / "PCF2.game", "--depth", "6")
    assert code == 0 and out.startswith("AXIOMS ok depth=6")
    code, out, _ = run(capsys, "check-game", DEMOS / "TRIPLE.game")
    assert code == 0 and out.startswith("GAME TRIPLE")


def test_compose_writes_a_strategy(capsys, tmp_path):
    out_file = tmp_path / "c.strategy"
    code, out, _ = run(capsys, "compose", DEMOS / "not.strategy", DEMOS / "not.strategy",
                       "--out", out_file, "--depth", "8")
    assert code == 0 and "wb=true" in out
    assert "(play (1 q) (0 q) (0 tt) (1 tt))" in out_file.read_text()


def test_laws_lines(capsys):
    code, out, _ = run(capsys, "laws", "--depth", "4", "--samples", "G_B")
    assert code == 0
    lines = out.splitlines()
    assert lines and all(line.startswith("LAW ") and line.endswith(" depth=4 HOLDS") for line in lines)


def test_random_game_is_reproducible(capsys, tmp_path):
    a, b = tmp_path / "a.game", tmp_path / "b.game"
    assert run(capsys, "random-game", "--seed", 4, "--size", 6, "--out", a)[0] == 0
    assert run(capsys, "random-game", "--seed", 4, "--size", 6, "--out", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert run(capsys, "axioms", a, "--depth", 6)[0] == 0


def test_input_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "check-game", tmp_path / "missing.game")[0] == 2
    junk = tmp_path / "junk.game"
    junk.write_text("(arena")
    assert run(capsys, "check-game", junk)[0] == 2
    assert run(capsys, "laws", "--samples", "nope(")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "laws", "--depth", "0")[0] == 2


def test_tg_depth_environment(capsys, monkeypatch):
    monkeypatch.setenv("TG_DEPTH", "4")
    code, out, _ = run(capsys, "axioms", DEMOS / "PCF2.game")
    assert "depth=4" in out
    monkeypatch.setenv("TG_DEPTH", "four")
    assert run(capsys, "axioms", DEMOS / "PCF2.game")[0] == 2


def test_expressions():
    from tensorgames.fam import FamObject

    b = parse_expression("neg(affine(neg(oplus(one,one))))")
    assert isinstance(b, FamObject) and len(b) == 1
    assert len(parse_expression("oplus(one, one, fam[G_B, PCF2])")) == 4
    with pytest.raises(ParseError):
        parse_expression("neg(one")
    with pytest.raises(ValueError):
        Config(depth=0)


def test_module_entry_point():
    env = dict(os.environ, TG_DEPTH="6")
    proc = subprocess.run([sys.executable, "-m", "tensorgames", "pcf-run", str(DEMOS / "fix_const.pcf")],
                          capture_output=True, text=True, env=env, timeout=120)
    assert proc.returncode == 0 and proc.stdout == "RESULT tt\n"
