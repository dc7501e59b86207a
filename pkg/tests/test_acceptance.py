"""Acceptance criteria, each run at its stated sample count and threshold.

Every test records one PASS/FAIL line, printed in the "acceptance criteria"
section of the terminal summary.
"""
import time

import pytest

from conftest import ACCEPTANCE, F, T, ctx, monad_laws_hold
from kripke_nbe.cli import main as cli_main
from kripke_nbe.errors import FuelExhausted
from kripke_nbe.nbe import Strategy, normalize
from kripke_nbe.reduction import beta_nf, has_redex, step, step_innermost
from kripke_nbe.syntax import print_formula, print_term
from kripke_nbe.syntax.terms import Case, Var, alpha_eq, term_size
from kripke_nbe.testgen import close_problem, gen_problem, gen_term, inject_redexes
from kripke_nbe.typecheck import check, check_ok, is_normal

FRAGMENT_CYCLE = ("full", "prop", "full", "imp")
FUEL = 100_000


def record(number, ok, detail):
    ACCEPTANCE.append((number, ok, detail))
    assert ok, detail


@pytest.fixture(scope="module")
def corpus():
    """1000 generated problems (sizes 5..40) and their normal forms, timed."""
    start = time.perf_counter()
    rows = []
    for seed in range(1000):
        pr = gen_problem(seed, size=5 + seed % 36, fragment=FRAGMENT_CYCLE[seed % 4])
        rows.append((pr, normalize(pr.ctx, pr.term, pr.formula)))
    return rows, time.perf_counter() - start


def test_criterion_1_type_preservation(corpus):
    rows, elapsed = corpus
    start = time.perf_counter()
    ok = sum(check_ok(pr.ctx, out, pr.formula) for pr, out in rows)
    elapsed += time.perf_counter() - start
    sizes = [term_size(pr.term) for pr, _ in rows]
    with_or = sum("case" in print_term(pr.term) or "inl" in print_term(pr.term) for pr, _ in rows)
    with_ex = sum("dest" in print_term(pr.term) or "[" in print_term(pr.term) for pr, _ in rows)
    record(1, ok == len(rows) and elapsed < 60,
           f"type preservation {ok}/{len(rows)} in {elapsed:.1f}s (limit 60s); "
           f"size budgets 5..40, term sizes {min(sizes)}..{max(sizes)}, "
           f"{with_or} use disjunction, {with_ex} quantifiers")


def test_criterion_2_normal_grammar(corpus):
    rows, _ = corpus
    ok = sum(is_normal(out) for _, out in rows)
    record(2, ok == len(rows), f"is_normal on {ok}/{len(rows)} outputs")


def test_criterion_3_idempotence(corpus):
    rows, _ = corpus
    ok = sum(alpha_eq(normalize(pr.ctx, out, pr.formula), out) for pr, out in rows)
    record(3, ok == len(rows), f"normalize(normalize) = normalize on {ok}/{len(rows)}")


def test_criterion_4_beta_invariance():
    ok = fuel_out = 0
    for seed in range(500):
        pr = gen_problem(10_000 + seed, size=5 + seed % 36, fragment=FRAGMENT_CYCLE[seed % 4])
        injected = inject_redexes(pr.term, 1 + seed % 5, seed, pr.ctx, pr.formula)
        expected = normalize(pr.ctx, pr.term, pr.formula)
        try:
            reduced = beta_nf(injected, FUEL)
        except FuelExhausted:
            fuel_out += 1
            continue
        ok += (alpha_eq(normalize(pr.ctx, injected, pr.formula), expected)
               and alpha_eq(normalize(pr.ctx, reduced, pr.formula), expected))
    record(4, ok == 500 and fuel_out == 0,
           f"injected/original/oracle normal forms agree on {ok}/500; fuel exhausted {fuel_out} times")


REGRESSIONS = [
    ("", "fun a => a", "X -> X", "fun a0 => a0"),
    ("c : X \\/ Y.", "c", "X \\/ Y", "case c of inl a0 => inl a0 | inr a1 => inr a1"),
    ("b : X.", "case (inl b : X \\/ X) of inl a1 => inr a1 | inr a2 => inl a2", "X \\/ X", "inr b"),
    ("c : X \\/ Y. d : X.", "(case c of inl a1 => fun b => b | inr a2 => fun b => b) d", "X",
     "case c of inl a0 => d | inr a1 => d"),
]


def test_criterion_5_regressions():
    bad = []
    for context, term, formula, expected in REGRESSIONS:
        c = ctx(context)
        got = print_term(normalize(c, T(term, c), F(formula, c)))
        if got != expected:
            bad.append(f"{term!r} gave {got!r}")
    record(5, not bad, f"{len(REGRESSIONS) - len(bad)}/{len(REGRESSIONS)} byte-exact" +
           (f"; {'; '.join(bad)}" if bad else ""))


def test_criterion_6_strategy_agreement(capsys):
    agree = 0
    smallest = None
    for seed in range(200):
        pr = close_problem(gen_problem(20_000 + seed, size=5 + seed % 36, fragment="prop"))
        cbn = normalize(pr.ctx, pr.term, pr.formula)
        cbv = normalize(pr.ctx, pr.term, pr.formula, Strategy.CBV)
        if alpha_eq(cbn, cbv):
            agree += 1
        elif smallest is None or term_size(pr.term) < term_size(smallest.term):
            smallest = pr
    exit_code = cli_main(["normalize", "-c", "b : X.", "-e", "b", "-t", "X", "--strategy", "cbv"])
    capsys.readouterr()
    detail = f"CBN = CBV on {agree}/200 closed terms; CBV on an open term exits {exit_code}"
    if smallest is not None:
        detail += (f"; smallest disagreement: {print_term(smallest.term)} "
                   f"at {print_formula(smallest.formula)}")
    record(6, agree == 200 and exit_code == 3, detail)


def test_criterion_7_monad_laws():
    ok = sum(monad_laws_hold(seed) for seed in range(100))
    record(7, ok == 100, f"left/right identity and associativity hold on {ok}/100 values")


def test_criterion_8_oracle_self_check():
    ok = 0
    for seed in range(500):
        pr = gen_problem(30_000 + seed, size=5 + seed % 36, fragment=FRAGMENT_CYCLE[seed % 4])
        p = inject_redexes(pr.term, 1 + seed % 5, seed, pr.ctx, pr.formula)
        typed = True
        q = p
        while (nxt := step(q)) is not None:
            q = nxt
            typed = typed and check_ok(pr.ctx, q, pr.formula)
        inner = beta_nf(p, FUEL, stepper=step_innermost)
        ok += typed and not has_redex(q) and alpha_eq(q, inner)
    record(8, ok == 500, f"subject reduction and outermost = innermost normal form on {ok}/500")


def _case_tree(c, hyps, goal, seed):
    """Split on every hypothesis in turn; leaves are generated in their branch."""
    if not hyps:
        return gen_term(c, goal, 4, seed)
    h, rest = hyps[0], hyps[1:]
    left, right = f"l{len(rest)}", f"r{len(rest)}"
    branch = c.lookup(h)
    return Case(Var(h),
                left, _case_tree(c.extend(left, branch.left), rest, goal, 2 * seed),
                right, _case_tree(c.extend(right, branch.right), rest, goal, 2 * seed + 1))


def test_criterion_9_performance():
    hyps = [f"c{i}" for i in range(10)]
    c = ctx(" ".join(f"{h} : X \\/ Y." for h in hyps))
    goal = F("X \\/ Y")
    term = _case_tree(c, hyps, goal, 1)
    check(c, term, goal)
    start = time.perf_counter()
    out = normalize(c, term, goal)
    elapsed = time.perf_counter() - start
    check(c, out, goal)
    record(9, elapsed < 5, f"case tree of depth 10 over 10 hypotheses normalized in {elapsed:.2f}s "
                           f"(limit 5s), output size {term_size(out)}")
