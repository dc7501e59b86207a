import pytest
from hypothesis import given, settings

from conftest import F, T, ctx, problem, seeds
from kripke_nbe.errors import (
    BranchMismatch, CannotInfer, EigenvariableEscape, ShapeMismatch, TypeCheckError,
    UnboundVariable,
)
from kripke_nbe.syntax.terms import (
    App, Case, Dest, Inj1, Lam, Var, children, formula_alpha_eq, subterm_at,
)
from kripke_nbe.testgen import typed_positions
from kripke_nbe.typecheck import check, check_ok, infer, infer_neutral, is_neutral, is_normal


def test_infer_examples():
    assert infer_neutral(ctx("a : X /\\ Y."), T("fst a")) == F("X")
    assert infer_neutral(ctx("a : X."), T("a")) == F("X")
    assert infer_neutral(ctx("f : X -> Y. a : X."), T("f a")) == F("Y")


def test_check_examples():
    check(ctx(), T("fun a => a"), F("X -> X"))
    with pytest.raises(TypeCheckError) as info:
        check(ctx(), T("fun a => a"), F("X -> Y"))
    assert info.value.expected == F("Y") and info.value.actual == F("X")
    c = ctx("const t. c : P(t).")
    check(c, T("[t, c]", c), F("exists x. P(x)", c))


@pytest.mark.parametrize("context, term, formula, error", [
    ("", "a", "X", UnboundVariable),
    ("a : X.", "fst a", "X", ShapeMismatch),
    ("a : X.", "a a", "X", ShapeMismatch),
    ("a : X.", "(a, a)", "X", ShapeMismatch),
    ("c : X \\/ Y.", "case c of inl b => b | inr b => b", "X", TypeCheckError),
    ("", "(fun a => a) (fun a => a)", "X -> X", CannotInfer),
    ("e : exists x. P(x).", "dest e as [x, a] in a", "exists y. P(y)", TypeCheckError),
    ("var y. h : forall x. P(x) -> X.", "h [z]", "P(y) -> X", UnboundVariable),
])
def test_check_errors(context, term, formula, error):
    c = ctx(context)
    with pytest.raises(error):
        check(c, T(term, c), F(formula, c))


def test_branches_must_agree():
    c = ctx("c : X \\/ Y.")
    with pytest.raises(BranchMismatch):
        infer(c, T("case c of inl b => b | inr b => b", c))


def test_eigenvariable_must_not_escape():
    c = ctx("e : exists x. P(x).")
    with pytest.raises(EigenvariableEscape):
        infer(c, T("dest e as [x, a] in a", c))


def test_generalization_needs_a_fresh_variable():
    # the bound x is renamed away from the free one
    c = ctx("var x. h : P(x).")
    assert not check_ok(c, T("gen x => h", c), F("forall y. P(y)", c))
    check(c, T("gen x => h", c), F("forall y. P(x)", c))


def test_case_infers_from_either_branch():
    c = ctx("c : X \\/ Y. d : X. e : X \\/ Z.")
    assert infer(c, T("case c of inl a => inl a | inr a => e", c)) == F("X \\/ Z")
    assert infer(c, T("case c of inl a => d | inr a => d", c)) == F("X")


def test_application_of_a_case_checks_via_the_argument():
    c = ctx("c : X \\/ Y. d : X.")
    check(c, T("(case c of inl a1 => fun b => b | inr a2 => fun b => b) d", c), F("X"))


def test_ascription():
    c = ctx("b : X.")
    assert infer(c, T("((fun a => a) : X -> X) b", c)) == F("X")


def test_grammar_examples():
    assert is_normal(Lam("a", Inj1(Var("a"))))
    assert not is_normal(App(Lam("a", Var("a")), Var("b")))
    assert is_neutral(Case(Var("c"), "a1", Var("a1"), "a2", Var("a2")))


def _subterms(p):
    yield p
    for k in children(p):
        yield from _subterms(k)


@pytest.mark.parametrize("seed", range(300))
def test_generated_terms_check(seed):
    pr = problem(seed)
    check(pr.ctx, pr.term, pr.formula)


@settings(max_examples=200)
@given(seed=seeds)
def test_inferred_neutral_also_checks(seed):
    pr = problem(seed % 5000)
    for path, local, formula, _ in typed_positions(pr.ctx, pr.term, pr.formula):
        sub = subterm_at(pr.term, path)
        if is_neutral(sub):
            try:
                inferred = infer(local, sub)
            except CannotInfer:
                # case/dest whose bodies are introductions only check
                assert isinstance(sub, (Case, Dest))
                continue
            assert formula_alpha_eq(inferred, formula)
            check(local, sub, inferred)


@settings(max_examples=200)
@given(seed=seeds)
def test_neutral_implies_normal(seed):
    for p in _subterms(problem(seed % 5000).term):
        assert not is_neutral(p) or is_normal(p)
