import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import F, T, ctx, problem, seeds
from kripke_nbe.errors import ParseError
from kripke_nbe.syntax import (
    Context, NameSupply, parse_formula, parse_term, print_context, print_formula, print_term,
)
from kripke_nbe.syntax.terms import (
    App, Atom, Case, Exists, Forall, Gen, IConst, Imp, Inj1, Inj2, IVar, Lam, Or, Var,
    Witness, alpha_eq, children, free_proof_vars, rebuild, subst_ind_formula, subst_proof,
)
from kripke_nbe.testgen import inject_redexes

a, b = Var("a"), Var("b")


# -- substitution -------------------------------------------------------------

def test_subst_base():
    assert subst_proof(a, "a", b) == b


def test_subst_respects_shadowing():
    assert subst_proof(Lam("a", a), "a", b) == Lam("a", a)


def test_subst_renames_to_avoid_capture():
    assert subst_proof(Lam("b", App(a, b)), "a", b) == Lam("b0", App(b, Var("b0")))


def test_subst_ind_formula():
    Px = Atom("P", (IVar("x"),))
    c = IConst("c")
    assert subst_ind_formula(Px, "x", c) == Atom("P", (c,))
    assert subst_ind_formula(Forall("x", Px), "x", c) == Forall("x", Px)
    Qxy = Atom("Q", (IVar("x"), IVar("y")))
    assert subst_ind_formula(Exists("y", Qxy), "x", IVar("y")) == \
        Exists("y0", Atom("Q", (IVar("y"), IVar("y0"))))


@settings(max_examples=200)
@given(seed=seeds, name=st.sampled_from(["a0", "a1", "h0", "h1", "b"]))
def test_subst_never_captures(seed, name):
    pr = problem(seed % 5000)
    rng = random.Random(seed)
    q = App(Var(name), Var(rng.choice(["a0", "a1", "h2", "x"])))
    for target in sorted(free_proof_vars(pr.term) | {"h0"}):
        out = subst_proof(pr.term, target, q)
        if target in free_proof_vars(pr.term):
            assert free_proof_vars(q) <= free_proof_vars(out)


# -- alpha-equivalence --------------------------------------------------------

def test_alpha_examples():
    assert alpha_eq(Lam("a", a), Lam("b", b))
    assert not alpha_eq(Lam("a", a), Lam("a", b))
    x, y = IVar("x"), IVar("y")
    assert alpha_eq(Gen("x", Witness(x, a)), Gen("y", Witness(y, a)))


def _rename_binders(p, tag):
    """An alpha-variant of ``p`` with every proof binder renamed."""
    kids = [_rename_binders(k, tag) for k in children(p)]
    p = rebuild(p, kids)
    match p:
        case Lam(v, body):
            return Lam(v + tag, subst_proof(body, v, Var(v + tag)))
        case Case(s, v1, q1, v2, q2):
            return Case(s, v1 + tag, subst_proof(q1, v1, Var(v1 + tag)),
                        v2 + tag, subst_proof(q2, v2, Var(v2 + tag)))
    return p


@settings(max_examples=100)
@given(seed=seeds)
def test_alpha_is_an_equivalence(seed):
    p = problem(seed % 5000).term
    q, r = _rename_binders(p, "q"), _rename_binders(p, "r")
    assert alpha_eq(p, p)
    assert alpha_eq(p, q) and alpha_eq(q, p)
    assert alpha_eq(q, r) and alpha_eq(p, r)
    other = problem((seed + 1) % 5000).term
    assert alpha_eq(p, other) == alpha_eq(other, p)


# -- parsing and printing -----------------------------------------------------

def test_precedence():
    assert F("X -> Y \\/ Z") == Imp(Atom("X"), Or(Atom("Y"), Atom("Z")))
    assert F("X /\\ Y \\/ Z") == Or(F("X /\\ Y"), Atom("Z"))
    assert F("X -> Y -> Z") == Imp(Atom("X"), Imp(Atom("Y"), Atom("Z")))


def test_parse_case():
    got = T("fun a => case a of inl a1 => inr a1 | inr a2 => inl a2")
    assert got == Lam("a", Case(a, "a1", Inj2(Var("a1")), "a2", Inj1(Var("a2"))))


def test_quantifier_scopes_right():
    Px = Atom("P", (IVar("x"),))
    assert F("forall x. P(x) -> P(x)") == Forall("x", Imp(Px, Px))


def test_parse_individual_application_and_witness():
    c = ctx("const c. h : forall x. P(x).")
    assert print_term(T("[c, h [c]]", c)) == "[c, h [c]]"
    assert T("h [c]", c).ind == IConst("c")


def test_parser_freshens_shadowed_binders():
    assert F("forall x. exists x. P(x)") == Forall("x", Exists("x0", Atom("P", (IVar("x0"),))))


@pytest.mark.parametrize("text, column", [("X -> (X", 8), ("X /\\ ", 6), ("x -> X", 1)])
def test_parse_error_has_location(text, column):
    with pytest.raises(ParseError) as info:
        parse_formula(text)
    assert info.value.line == 1 and info.value.column == column
    assert f"column {column}" in str(info.value)


def test_parse_error_lists_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse_term("fun a a")
    assert "=>" in info.value.expected


@pytest.mark.parametrize("seed", range(1000))
def test_round_trip(seed):
    pr = problem(seed)
    # injected terms add ascriptions and every redex shape to the mix
    for p in (pr.term, inject_redexes(pr.term, 2, seed, pr.ctx, pr.formula)):
        assert alpha_eq(parse_term(print_term(p), pr.ctx.constants), p)
    assert parse_formula(print_formula(pr.formula), pr.ctx.constants) == pr.formula


# -- contexts -----------------------------------------------------------------

def test_context_file():
    c = ctx("# sample\nconst c.\nvar x.\nh : P(c) -> Q(x).\nk : X.\n")
    assert c.constants == {"c"} and c.ind_vars == {"x"}
    assert [n for n, _ in c.hyps] == ["h", "k"]
    assert ctx(print_context(c)) == c


@pytest.mark.parametrize("text", ["a : X. a : Y.", "a : P(y).", "a : P(c). b : P.", "a : X"])
def test_bad_context_is_a_parse_error(text):
    with pytest.raises(ParseError):
        ctx(text)


def test_world_order():
    small = ctx("a : X.")
    big = small.extend("b", Atom("Y")).extend_ind("x")
    assert small <= big and not big <= small
    assert not ctx("b : Y. a : X.") <= ctx("a : X. b : Y.")


def test_name_supply_skips_taken_names():
    w = ctx("a0 : X. a2 : Y. var x0.")
    s = NameSupply()
    assert [s.proof_var(w), s.proof_var(w), s.ind_var(w)] == ["a1", "a3", "x1"]


def test_context_rejects_duplicates():
    with pytest.raises(ValueError):
        Context().extend("a", Atom("X")).extend("a", Atom("Y"))
