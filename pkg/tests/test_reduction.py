import pytest
from hypothesis import given, settings

from conftest import T, ctx, problem, seeds
from kripke_nbe.errors import FuelExhausted
from kripke_nbe.reduction import beta_eq, beta_nf, has_redex, step, step_innermost
from kripke_nbe.syntax import print_term
from kripke_nbe.syntax.terms import App, Case, Inj1, Inj2, Lam, Pair, Proj1, Var, alpha_eq
from kripke_nbe.testgen import inject_redexes
from kripke_nbe.typecheck import check

a, b = Var("a"), Var("b")


def test_step_examples():
    assert step(App(Lam("a", a), b)) == b
    assert step(Proj1(Pair(Var("p"), Var("q")))) == Var("p")
    assert step(a) is None


def test_beta_nf_examples():
    p = Case(Inj1(b), "a1", Inj2(Var("a1")), "a2", Inj1(Var("a2")))
    assert beta_nf(p, 1000) == Inj2(b)
    assert beta_nf(a, 1) == a


def test_fuel_runs_out_on_a_looping_term():
    omega = T("(fun a => a a) (fun a => a a)")
    with pytest.raises(FuelExhausted):
        beta_nf(omega, 50)


def test_beta_eq_examples():
    assert beta_eq(App(Lam("a", a), b), b, 100)
    assert beta_eq(Lam("a", a), Lam("b", b), 100)
    assert not beta_eq(Inj1(b), Inj2(b), 100)


@pytest.mark.parametrize("term, expected", [
    ("dest [c, (fun z => z) q] as [x, a] in h [x] a", "h [c] q"),
    ("(gen x => h [x]) [c]", "h [c]"),
    ("snd ((fun a => a : X /\\ X -> X /\\ X) (b, b))", "b"),
    ("case (inl b : X \\/ X) of inl a1 => inr a1 | inr a2 => inl a2", "inr b"),
])
def test_quantifier_and_annotated_redexes(term, expected):
    c = ctx("const c.")
    assert print_term(beta_nf(T(term, c))) == expected


def test_annotation_survives_contraction():
    # the reduct stays in head position, so it keeps its formula
    assert print_term(step(T("snd ((fun a => a : X /\\ X -> X /\\ X) (b, b))"))) == \
        "snd (((b, b) : X /\\ X) : X /\\ X)"


def test_no_commuting_conversions():
    p = T("(case c of inl a1 => fun b => b | inr a2 => fun b => b) d")
    assert beta_nf(p) == p


@settings(max_examples=500)
@given(seed=seeds)
def test_subject_reduction_and_confluence(seed):
    pr = problem(seed % 5000)
    p = inject_redexes(pr.term, 1 + seed % 5, seed, pr.ctx, pr.formula)
    q = p
    while q is not None:
        check(pr.ctx, q, pr.formula)
        last, q = q, step(q)
    assert not has_redex(last)
    assert alpha_eq(last, pr.term)
    assert alpha_eq(beta_nf(p, stepper=step_innermost), last)
