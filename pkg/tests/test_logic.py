import pytest
from hypothesis import given, settings, strategies as st

from tensorgames.errors import ContextSplitError, RuleMismatch
from tensorgames.formats import (
    dump_proof_file, formula_sexpr, parse_formula, parse_proof_file, parse_sexpr,
)
from tensorgames.logic import (
    BOOL, ONE_F, ZERO_F, Aff, Atom, Exp, Neg, Plus, Tens, check_proof, expand, interpret_context,
    interpret_formula, interpret_proof, node, sequent, show,
)
from tensorgames.strategy import first_difference, is_wb_strategy

TRUE = "(neg-right (neg-left (oplus-right-1 (unit-right))))"
FALSE = "(neg-right (neg-left (oplus-right-2 (unit-right))))"
SWAP = "(oplus-left (unit-left (oplus-right-2 (unit-right))) (unit-left (oplus-right-1 (unit-right))))"
NOT = f"(neg-right (permute (perm 1 0) (neg-left (neg-right (permute (perm 1 0) (neg-left {SWAP}))))))"

PROOFS = {
    "true": ("(sequent (ctx) bool)", TRUE),
    "identity": ("(sequent (ctx bool) bool)", "(axiom)"),
    "not": ("(sequent (ctx bool) bool)", NOT),
    "pair": ("(sequent (ctx bool bool) (tensor bool bool))", "(tensor-right (split 1) (axiom) (axiom))"),
    "unpair": ("(sequent (ctx (tensor bool bool)) (tensor bool bool))",
               "(tensor-left (tensor-right (split 1) (axiom) (axiom)))"),
    "swap": ("(sequent (ctx bool bool) (tensor bool bool))",
             "(permute (perm 1 0) (tensor-right (split 1) (axiom) (axiom)))"),
    "unit": ("(sequent (ctx 1 bool) bool)", "(permute (perm 1 0) (unit-left (axiom)))"),
    "cut": ("(sequent (ctx) bool)", f"(cut (formula bool) (split 0) {TRUE} {NOT})"),
    "zero": ("(sequent (ctx 0) bool)", "(zero-left)"),
}

EXPONENTIAL = {
    "dereliction": ("(sequent (ctx (bang bool)) bool)", "(dereliction (axiom))"),
    "weakening": ("(sequent (ctx (bang bool)) (tensor 1 1))",
                  "(weakening (tensor-right (split 0) (unit-right) (unit-right)))"),
    "contraction": ("(sequent (ctx (bang bool)) (tensor bool bool))",
                    "(contraction (tensor-right (split 1) (dereliction (axiom)) (dereliction (axiom))))"),
    "promotion": ("(sequent (ctx (bang bool)) (bang bool))", "(promotion (dereliction (axiom)))"),
}

AFFINE = {
    "dereliction": ("(sequent (ctx (affine bool)) bool)", "(affine-dereliction (axiom))"),
    "weakening": ("(sequent (ctx (affine bool)) 1)", "(affine-weakening (unit-right))"),
    "strengthening": ("(sequent (ctx (affine bool)) (affine bool))",
                      "(affine-strengthening (affine-dereliction (axiom)))"),
}


def load(goal, tree):
    return parse_proof_file(goal + "\n" + tree)


def interpreted(name, table=PROOFS, discipline="linear"):
    goal, tree = load(*table[name])
    proof = check_proof(tree, goal, discipline=discipline)
    return proof, interpret_proof(proof, discipline)


@pytest.mark.parametrize("name", sorted(PROOFS))
def test_linear_proofs_check_and_interpret_wb(name):
    proof, f = interpreted(name)
    assert f.src.same(interpret_context(proof.sequent.context))
    for i in f.src.indices:
        assert is_wb_strategy(f[i], 8)


@pytest.mark.parametrize("name", sorted(EXPONENTIAL))
def test_exponential_rules(name):
    _, f = interpreted(name, EXPONENTIAL, "linear")
    for i in f.src.indices:
        assert is_wb_strategy(f[i], 8)


@pytest.mark.parametrize("name", sorted(AFFINE))
def test_affine_rules(name):
    _, f = interpreted(name, AFFINE, "linear")
    for i in f.src.indices:
        assert is_wb_strategy(f[i], 8)


def test_true_and_false_differ_and_cut_computes_negation():
    _, t = interpreted("true")
    goal, tree = load("(sequent (ctx) bool)", FALSE)
    fl = interpret_proof(check_proof(tree, goal))
    _, c = interpreted("cut")
    assert first_difference(t[()], fl[()], 8) is not None
    assert first_difference(c[()], fl[()], 8) is None


def test_not_is_an_involution_up_to_cut():
    goal, tree = load("(sequent (ctx bool) bool)", f"(cut (formula bool) (split 1) {NOT} {NOT})")
    twice = interpret_proof(check_proof(tree, goal))
    _, ident = interpreted("identity")
    for i in twice.src.indices:
        assert first_difference(twice[i], ident[i], 8) is None


@pytest.mark.parametrize("goal,tree,error", [
    ("(sequent (ctx) bool)", "(axiom)", RuleMismatch),
    ("(sequent (ctx) bool)", "(frobnicate)", RuleMismatch),
    ("(sequent (ctx bool bool) (tensor bool bool))", "(tensor-right (axiom) (axiom))", ContextSplitError),
    ("(sequent (ctx bool bool) (tensor bool bool))", "(tensor-right (split 5) (axiom) (axiom))",
     ContextSplitError),
    ("(sequent (ctx) bool)", f"(cut (split 0) {TRUE} {NOT})", RuleMismatch),
    ("(sequent (ctx bool) 1)", "(affine-weakening (unit-right))", RuleMismatch),
    ("(sequent (ctx bool) bool)", "(permute (perm 0 0) (axiom))", RuleMismatch),
    ("(sequent (ctx) bool)", "(fix (dereliction (axiom)))", RuleMismatch),
    ("(sequent (ctx bool) bool)", "(promotion (axiom))", RuleMismatch),
])
def test_rejections(goal, tree, error):
    g, t = load(goal, tree)
    with pytest.raises(error):
        check_proof(t, g)


def test_mismatch_reports_the_path():
    g, t = load("(sequent (ctx) bool)", "(neg-right (neg-left (oplus-right-1 (axiom))))")
    with pytest.raises(RuleMismatch) as exc:
        check_proof(t, g)
    assert "0" in str(exc.value)


def test_fix_is_an_extension():
    g, t = load("(sequent (ctx) bool)", "(fix (dereliction (axiom)))")
    assert check_proof(t, g, extensions=True).rule == "fix"


def test_booleans_per_discipline():
    assert show(expand(BOOL, "linear")) == "¬¬(1 ⊕ 1)"
    assert isinstance(expand(BOOL, "affine").body, Aff)
    assert isinstance(expand(BOOL, "exponential").body, Exp)
    assert len(interpret_formula(Plus(ONE_F, ONE_F))) == 2
    assert len(interpret_formula(ZERO_F)) == 0


def test_builders_match_the_parser():
    goal, tree = load(*PROOFS["pair"])
    assert goal == sequent([BOOL, BOOL], Tens(BOOL, BOOL))
    built = node("tensor-right", node("axiom"), node("axiom"), split=1)
    assert built == tree


formulas = st.recursive(
    st.sampled_from([ONE_F, ZERO_F, BOOL, Atom("X"), Atom("Y")]),
    lambda sub: st.one_of(
        st.builds(Tens, sub, sub), st.builds(Plus, sub, sub),
        st.builds(Neg, sub), st.builds(Aff, sub), st.builds(Exp, sub),
    ),
    max_leaves=8,
)


@settings(max_examples=200, deadline=None)
@given(formulas)
def test_formula_text_round_trip(f):
    from tensorgames.formats import dump_sexpr

    assert parse_formula(parse_sexpr(dump_sexpr(formula_sexpr(f)))) == f


@pytest.mark.parametrize("name", sorted(PROOFS))
def test_proof_file_round_trip(name):
    goal, tree = load(*PROOFS[name])
    assert parse_proof_file(dump_proof_file(goal, tree)) == (goal, tree)
