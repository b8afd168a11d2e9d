import pytest

from tensorgames.errors import LinearityViolation, ParseError, PcfTypeError
from tensorgames.formats import dump_sexpr, parse_sexpr
from tensorgames.pcf import (
    BOOL_T, TBang, TLolli, denotation, parse_pcf, parse_type, pcf_eval, pcf_typecheck, term_sexpr,
)
from tensorgames.strategy import is_wb_strategy

PROGRAMS = {
    "tt": "tt",
    "ff": "ff",
    "(if tt ff tt)": "ff",
    "(if ff ff tt)": "tt",
    "(app (lam (b bool) b) ff)": "ff",
    "(app (lam (b bool) (if b ff tt)) tt)": "ff",
    "(app (lam (f (lolli bool bool)) (app f tt)) (lam (x bool) (if x ff tt)))": "ff",
    "(app (lam (x bool) (lam (y bool) x)) tt ff)": None,  # ill-typed: y unused
    "(app (lam (x (bang bool)) (if (derelict x) (derelict x) ff)) (promote tt))": "tt",
    "(fix (lam (x (bang bool)) tt))": "tt",
    "(fix (lam (x (bang bool)) ff))": "ff",
    "(fix (lam (x (bang bool)) (derelict x)))": "diverge",
    "(fix (lam (x (bang bool)) (if (derelict x) tt ff)))": "diverge",
}


@pytest.mark.parametrize("text", sorted(p for p, r in PROGRAMS.items() if r))
def test_evaluation(text):
    assert pcf_eval(parse_pcf(text), 8) == PROGRAMS[text]


@pytest.mark.parametrize("text", [
    "(app (lam (x bool) (lam (y bool) x)) tt ff)",
    "(lam (x bool) (if x x x))",
    "(app (lam (x bool) x) (lam (y bool) y))",
    "(fix (lam (x bool) x))",
    "(derelict z)",
    "(if (lam (x bool) x) tt ff)",
    "(lam (x bool) (promote x))",
])
def test_ill_typed(text):
    with pytest.raises(PcfTypeError):
        pcf_typecheck(parse_pcf(text))


def test_linearity_is_reported_as_such():
    with pytest.raises(LinearityViolation):
        pcf_typecheck(parse_pcf("(lam (x bool) (if x x tt))"))
    with pytest.raises(LinearityViolation):
        pcf_typecheck(parse_pcf("(lam (x (affine bool)) (if (derelict x) (derelict x) ff))"))


def test_types():
    t = pcf_typecheck(parse_pcf("(lam (f (lolli bool bool)) (app f tt))"))
    assert t == TLolli(TLolli(BOOL_T, BOOL_T), BOOL_T)
    assert parse_type(parse_sexpr("(bang bool)")) == TBang(BOOL_T)
    with pytest.raises(ParseError):
        parse_type(parse_sexpr("(arrow bool bool)"))


@pytest.mark.parametrize("text", [
    "(lam (f (lolli bool bool)) (app f tt))",
    "(lam (x bool) (if x ff tt))",
    "(lam (x (bang bool)) (if (derelict x) (derelict x) ff))",
    "(lam (x (affine bool)) (derelict x))",
    "(lam (f (lolli bool (lolli bool bool))) (app f tt ff))",
])
def test_denotations_are_wb(text):
    assert is_wb_strategy(denotation(parse_pcf(text)), 8)


@pytest.mark.parametrize("text", sorted(PROGRAMS))
def test_term_text_round_trip(text):
    term = parse_pcf(text)
    assert parse_pcf(dump_sexpr(term_sexpr(term))) == term


def test_affine_discipline_evaluates_too():
    assert pcf_eval(parse_pcf("(app (lam (b bool) b) tt)"), 10, "affine") == "tt"
    assert pcf_eval(parse_pcf("(fix (lam (x (bang bool)) ff))"), 10, "exponential") == "ff"
