import functools

from hypothesis import HealthCheck, settings, strategies as st

from kripke_nbe.nbe import evaluate, initial_env
from kripke_nbe.semantics import SAtom, bind, run, unit
from kripke_nbe.syntax import Context, NameSupply, parse_context, parse_formula, parse_term
from kripke_nbe.syntax.terms import And, Atom, Imp, Or, alpha_eq
from kripke_nbe.testgen import Problem, gen_problem, gen_term

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@functools.lru_cache(maxsize=None)
def problem(seed: int, fragment: str = "full") -> Problem:
    """The seed-th generated problem; sizes cycle through 5..40."""
    return gen_problem(seed, size=5 + seed % 36, fragment=fragment)


def atomic_problem(seed: int) -> Problem:
    """A generated problem whose goal is an atom."""
    for i in range(1000):
        p = gen_problem(seed * 1000 + i, size=5 + (seed + i) % 20, fragment="full")
        if isinstance(p.formula, Atom):
            return p
    raise AssertionError("no atomic problem found")


def has_negative_or(a, positive=True) -> bool:
    match a:
        case Or(l, r):
            return not positive or has_negative_or(l, positive) or has_negative_or(r, positive)
        case And(l, r):
            return has_negative_or(l, positive) or has_negative_or(r, positive)
        case Imp(l, r):
            return has_negative_or(l, not positive) or has_negative_or(r, positive)
    return False


def ctx(text: str = "") -> Context:
    return parse_context(text)


def F(text: str, c: Context | None = None):
    return parse_formula(text, c.constants if c else frozenset())


def T(text: str, c: Context | None = None):
    return parse_term(text, c.constants if c else frozenset())


class MonadSetup:
    """Computations over one generated problem at an atomic goal X.

    ``v`` is the denotation of the problem's term; ``q`` and ``r`` are
    generated terms with one extra hypothesis ``b : X``, turned into
    continuations by ``kleisli``.
    """

    def __init__(self, seed):
        pr = atomic_problem(seed)
        self.ctx, self.X = pr.ctx, pr.formula
        self.p = pr.term
        ext = self.ctx.extend("b", self.X)
        self.q = gen_term(ext, self.X, 6, seed + 1)
        self.r = gen_term(ext, self.X, 6, seed + 2)

    def env(self, supply):
        return initial_env(self.ctx, supply)

    def v(self, supply):
        return evaluate(self.p, self.env(supply))

    def kleisli(self, term, supply):
        env = self.env(supply)
        return lambda w, sv: evaluate(term, env.bind("b", unit(w, sv)))

    def observe(self, build):
        return run(build(NameSupply()), self.ctx, self.X)


def monad_laws_hold(seed: int) -> bool:
    """Left/right identity and associativity of unit/bind, observed through run."""
    s = MonadSetup(seed)
    sv = SAtom(s.observe(s.v))
    left_id = alpha_eq(s.observe(lambda n: bind(s.kleisli(s.q, n), unit(s.ctx, sv))),
                       s.observe(lambda n: s.kleisli(s.q, n)(s.ctx, sv)))
    right_id = alpha_eq(s.observe(lambda n: bind(lambda w, v: unit(w, v), s.v(n))),
                        s.observe(s.v))

    def nested_left(n):
        return bind(s.kleisli(s.r, n), bind(s.kleisli(s.q, n), s.v(n)))

    def nested_right(n):
        f, g = s.kleisli(s.q, n), s.kleisli(s.r, n)
        return bind(lambda w, v: bind(g, f(w, v)), s.v(n))

    assoc = alpha_eq(s.observe(nested_left), s.observe(nested_right))
    return left_id and right_id and assoc


# acceptance results, printed at the end of the session
ACCEPTANCE: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")


__all__ = [
    "ACCEPTANCE", "F", "MonadSetup", "T", "atomic_problem", "ctx", "has_negative_or",
    "monad_laws_hold", "problem", "seeds",
]
