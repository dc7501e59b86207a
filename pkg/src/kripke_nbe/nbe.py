"""Normalization by evaluation: evaluate into the forcing domain, then reify.

``evaluate`` interprets a proof term as a forcing computation (soundness);
``reflect`` embeds a neutral term into the domain and ``reify`` reads a
normal term back out of it (completeness). No control operators are used:
the case splits that ``reflect`` must introduce at disjunctions and
existentials are built by handing the rest of the computation, as a
continuation, to both branches.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import CBVOpenTerm, NotNeutral, ShapeMismatch, UnboundInEnv
from .semantics import (
    Forcing, SAll, SAtom, SFun, SLeft, SPair, SRight, SWit, answer_checked,
    bind, unit, validating,
)
from .syntax import Context, NameSupply, print_formula
from .syntax.terms import (
    And, Ann, App, Atom, Case, Dest, Exists, Forall, Gen, IApp, Imp, Inj1,
    Inj2, IVar, Lam, Or, Pair, Proj1, Proj2, Var, Witness, subst_ind_formula,
)
from .typecheck import check, is_neutral


class Strategy(enum.Enum):
    CBN = "cbn"
    CBV = "cbv"


@dataclass(frozen=True)
class Env:
    """Bindings for proof variables (semantic values) and individual variables.

    Unbound individual variables denote themselves.
    """

    proofs: dict = field(default_factory=dict)
    inds: dict = field(default_factory=dict)

    def proof(self, name):
        try:
            return self.proofs[name]
        except KeyError:
            raise UnboundInEnv(f"proof variable {name} has no value") from None

    def ind(self, t):
        if isinstance(t, IVar):
            return self.inds.get(t.name, t)
        return t

    def bind(self, name, value) -> "Env":
        return Env({**self.proofs, name: value}, self.inds)

    def bind_ind(self, name, t) -> "Env":
        return Env(self.proofs, {**self.inds, name: t})


def _shape(expected, sv):
    return ShapeMismatch(f"expected a {expected} value, got {type(sv).__name__}")


# -- call-by-name evaluation --------------------------------------------------

def evaluate(p, env: Env) -> Forcing:
    """Call-by-name interpretation of ``p``; proof variables denote computations."""
    match p:
        case Var(a):
            return env.proof(a)
        case Lam(a, body):
            return unit(None, SFun(lambda w, v: evaluate(body, env.bind(a, v))))
        case App(f, x):
            fun, arg = evaluate(f, env), evaluate(x, env)

            def apply(answer, w, k):
                def go(w2, sv):
                    if not isinstance(sv, SFun):
                        raise _shape("function", sv)
                    return sv.fn(w2, arg)(answer, w2, k)
                return fun(answer, w, go)
            return Forcing(apply)
        case Pair(l, r):
            return unit(None, SPair(evaluate(l, env), evaluate(r, env)))
        case Proj1(q) | Proj2(q):
            pair, first = evaluate(q, env), isinstance(p, Proj1)

            def project(answer, w, k):
                def go(w2, sv):
                    if not isinstance(sv, SPair):
                        raise _shape("pair", sv)
                    return (sv.left if first else sv.right)(answer, w2, k)
                return pair(answer, w, go)
            return Forcing(project)
        case Inj1(q):
            return unit(None, SLeft(evaluate(q, env)))
        case Inj2(q):
            return unit(None, SRight(evaluate(q, env)))
        case Case(s, a1, q1, a2, q2):
            scrut = evaluate(s, env)

            def dispatch(answer, w, k):
                def go(w2, sv):
                    match sv:
                        case SLeft(v):
                            return evaluate(q1, env.bind(a1, v))(answer, w2, k)
                        case SRight(v):
                            return evaluate(q2, env.bind(a2, v))(answer, w2, k)
                    raise _shape("tagged", sv)
                return scrut(answer, w, go)
            return Forcing(dispatch)
        case Gen(x, body):
            return unit(None, SAll(lambda w, t: evaluate(body, env.bind_ind(x, t))))
        case IApp(q, t):
            fun, t = evaluate(q, env), env.ind(t)

            def instantiate(answer, w, k):
                def go(w2, sv):
                    if not isinstance(sv, SAll):
                        raise _shape("universal", sv)
                    return sv.fn(w2, t)(answer, w2, k)
                return fun(answer, w, go)
            return Forcing(instantiate)
        case Witness(t, q):
            return unit(None, SWit(env.ind(t), evaluate(q, env)))
        case Dest(s, x, a, body):
            scrut = evaluate(s, env)

            def open_(answer, w, k):
                def go(w2, sv):
                    if not isinstance(sv, SWit):
                        raise _shape("witness", sv)
                    inner = env.bind_ind(x, sv.ind).bind(a, sv.value)
                    return evaluate(body, inner)(answer, w2, k)
                return scrut(answer, w, go)
            return Forcing(open_)
        case Ann(q, _):
            return evaluate(q, env)
    raise TypeError(f"not a proof term: {p!r}")


def reify(ctx: Context, formula, v: Forcing, supply: NameSupply):
    """Read a normal proof of ``formula`` at ``ctx`` out of ``v``.

    ``v`` is run with ``formula`` as the answer; the continuation converts
    the delivered strong value by recursion on ``formula``.
    """
    k = answer_checked(ctx, formula, lambda w, sv: _reify_strong(w, formula, sv, supply))
    return v(formula, ctx, k)


def _reify_strong(w: Context, formula, sv, supply):
    match formula, sv:
        case Atom(), SAtom(e):
            return e
        case Imp(dom, cod), SFun(f):
            a = supply.proof_var(w)
            w2 = w.extend(a, dom)
            return Lam(a, reify(w2, cod, f(w2, _reflect(w2, dom, Var(a), supply)), supply))
        case And(l, r), SPair(vl, vr):
            return Pair(reify(w, l, vl, supply), reify(w, r, vr, supply))
        case Or(l, _), SLeft(v):
            return Inj1(reify(w, l, v, supply))
        case Or(_, r), SRight(v):
            return Inj2(reify(w, r, v, supply))
        case Forall(x, body), SAll(f):
            x0 = supply.ind_var(w)
            w2 = w.extend_ind(x0)
            t = IVar(x0)
            return Gen(x0, reify(w2, subst_ind_formula(body, x, t), f(w2, t), supply))
        case Exists(x, body), SWit(t, v):
            return Witness(t, reify(w, subst_ind_formula(body, x, t), v, supply))
    raise ShapeMismatch(f"{type(sv).__name__} is not a value of {print_formula(formula)}")


def _reflect(ctx: Context, formula, e, supply: NameSupply) -> Forcing:
    match formula:
        case Atom():
            return unit(ctx, SAtom(e), formula)
        case Imp(dom, cod):
            return unit(ctx, SFun(
                lambda w, v: _reflect(w, cod, App(e, reify(w, dom, v, supply)), supply)), formula)
        case And(l, r):
            return unit(ctx, SPair(_reflect(ctx, l, Proj1(e), supply),
                                   _reflect(ctx, r, Proj2(e), supply)), formula)
        case Forall(x, body):
            return unit(ctx, SAll(
                lambda w, t: _reflect(w, subst_ind_formula(body, x, t), IApp(e, t), supply)), formula)
        case Or(l, r):
            def split(answer, w, k):
                a1 = supply.proof_var(w)
                w1 = w.extend(a1, l)
                q1 = k(w1, SLeft(_reflect(w1, l, Var(a1), supply)))
                a2 = supply.proof_var(w)
                w2 = w.extend(a2, r)
                q2 = k(w2, SRight(_reflect(w2, r, Var(a2), supply)))
                return Case(e, a1, q1, a2, q2)
            return Forcing(split, ctx, formula)
        case Exists(x, body):
            def open_(answer, w, k):
                x0 = supply.ind_var(w)
                a0 = supply.proof_var(w)
                inst = subst_ind_formula(body, x, IVar(x0))
                w1 = w.extend_ind(x0).extend(a0, inst)
                q = k(w1, SWit(IVar(x0), _reflect(w1, inst, Var(a0), supply)))
                return Dest(e, x0, a0, q)
            return Forcing(open_, ctx, formula)
    raise TypeError(f"not a formula: {formula!r}")


# -- call-by-value evaluation -------------------------------------------------
#
# Proof variables denote strong values; pairs, injections and witnesses
# carry strong values; functions still return computations.

def evaluate_cbv(p, env: Env) -> Forcing:
    """Call-by-value interpretation: arguments are forced before they are bound."""
    match p:
        case Var(a):
            return unit(None, env.proof(a))
        case Lam(a, body):
            return unit(None, SFun(lambda w, sv: evaluate_cbv(body, env.bind(a, sv))))
        case App(f, x):
            fun, arg = evaluate_cbv(f, env), evaluate_cbv(x, env)

            def apply(answer, w, k):
                def got_fun(w2, fv):
                    if not isinstance(fv, SFun):
                        raise _shape("function", fv)
                    return arg(answer, w2, lambda w3, av: fv.fn(w3, av)(answer, w3, k))
                return fun(answer, w, got_fun)
            return Forcing(apply)
        case Pair(l, r):
            left, right = evaluate_cbv(l, env), evaluate_cbv(r, env)

            def pair(answer, w, k):
                return left(answer, w, lambda w2, lv: right(
                    answer, w2, lambda w3, rv: k(w3, SPair(lv, rv))))
            return Forcing(pair)
        case Proj1(q) | Proj2(q):
            first = isinstance(p, Proj1)
            return bind(lambda w, sv: unit(None, _component(sv, first)), evaluate_cbv(q, env))
        case Inj1(q):
            return bind(lambda w, sv: unit(None, SLeft(sv)), evaluate_cbv(q, env))
        case Inj2(q):
            return bind(lambda w, sv: unit(None, SRight(sv)), evaluate_cbv(q, env))
        case Case(s, a1, q1, a2, q2):
            def branch(w, sv):
                match sv:
                    case SLeft(v):
                        return evaluate_cbv(q1, env.bind(a1, v))
                    case SRight(v):
                        return evaluate_cbv(q2, env.bind(a2, v))
                raise _shape("tagged", sv)
            return bind(branch, evaluate_cbv(s, env))
        case Gen(x, body):
            return unit(None, SAll(lambda w, t: evaluate_cbv(body, env.bind_ind(x, t))))
        case IApp(q, t):
            t = env.ind(t)

            def inst(w, sv):
                if not isinstance(sv, SAll):
                    raise _shape("universal", sv)
                return sv.fn(w, t)
            return bind(inst, evaluate_cbv(q, env))
        case Witness(t, q):
            t = env.ind(t)
            return bind(lambda w, sv: unit(None, SWit(t, sv)), evaluate_cbv(q, env))
        case Dest(s, x, a, body):
            def open_(w, sv):
                if not isinstance(sv, SWit):
                    raise _shape("witness", sv)
                return evaluate_cbv(body, env.bind_ind(x, sv.ind).bind(a, sv.value))
            return bind(open_, evaluate_cbv(s, env))
        case Ann(q, _):
            return evaluate_cbv(q, env)
    raise TypeError(f"not a proof term: {p!r}")


def _component(sv, first):
    if not isinstance(sv, SPair):
        raise _shape("pair", sv)
    return sv.left if first else sv.right


def reify_cbv(ctx: Context, formula, v: Forcing, supply: NameSupply):
    k = answer_checked(ctx, formula, lambda w, sv: _reify_strong_cbv(w, formula, sv, supply))
    return v(formula, ctx, k)


def _reify_strong_cbv(w: Context, formula, sv, supply):
    match formula, sv:
        case Atom(), SAtom(e):
            return e
        case Imp(dom, cod), SFun(f):
            a = supply.proof_var(w)
            w2 = w.extend(a, dom)
            return Lam(a, reify_cbv(w2, cod, bind(f, _reflect_cbv(w2, dom, Var(a), supply)), supply))
        case And(l, r), SPair(vl, vr):
            return Pair(_reify_strong_cbv(w, l, vl, supply), _reify_strong_cbv(w, r, vr, supply))
        case Or(l, _), SLeft(v):
            return Inj1(_reify_strong_cbv(w, l, v, supply))
        case Or(_, r), SRight(v):
            return Inj2(_reify_strong_cbv(w, r, v, supply))
        case Forall(x, body), SAll(f):
            x0 = supply.ind_var(w)
            w2 = w.extend_ind(x0)
            t = IVar(x0)
            return Gen(x0, reify_cbv(w2, subst_ind_formula(body, x, t), f(w2, t), supply))
        case Exists(x, body), SWit(t, v):
            return Witness(t, _reify_strong_cbv(w, subst_ind_formula(body, x, t), v, supply))
    raise ShapeMismatch(f"{type(sv).__name__} is not a value of {print_formula(formula)}")


def _reflect_cbv(ctx: Context, formula, e, supply: NameSupply) -> Forcing:
    match formula:
        case Atom():
            return unit(ctx, SAtom(e), formula)
        case Imp(dom, cod):
            return unit(ctx, SFun(lambda w, sv: _reflect_cbv(
                w, cod, App(e, _reify_strong_cbv(w, dom, sv, supply)), supply)), formula)
        case Forall(x, body):
            return unit(ctx, SAll(lambda w, t: _reflect_cbv(
                w, subst_ind_formula(body, x, t), IApp(e, t), supply)), formula)
        case And(l, r):
            left = _reflect_cbv(ctx, l, Proj1(e), supply)
            right = _reflect_cbv(ctx, r, Proj2(e), supply)

            def pair(answer, w, k):
                return left(answer, w, lambda w2, lv: right(
                    answer, w2, lambda w3, rv: k(w3, SPair(lv, rv))))
            return Forcing(pair, ctx, formula)
        case Or(l, r):
            def split(answer, w, k):
                a1 = supply.proof_var(w)
                w1 = w.extend(a1, l)
                q1 = _reflect_cbv(w1, l, Var(a1), supply)(answer, w1, lambda w3, sv: k(w3, SLeft(sv)))
                a2 = supply.proof_var(w)
                w2 = w.extend(a2, r)
                q2 = _reflect_cbv(w2, r, Var(a2), supply)(answer, w2, lambda w3, sv: k(w3, SRight(sv)))
                return Case(e, a1, q1, a2, q2)
            return Forcing(split, ctx, formula)
        case Exists(x, body):
            def open_(answer, w, k):
                x0 = supply.ind_var(w)
                a0 = supply.proof_var(w)
                inst = subst_ind_formula(body, x, IVar(x0))
                w1 = w.extend_ind(x0).extend(a0, inst)
                q = _reflect_cbv(w1, inst, Var(a0), supply)(
                    answer, w1, lambda w3, sv: k(w3, SWit(IVar(x0), sv)))
                return Dest(e, x0, a0, q)
            return Forcing(open_, ctx, formula)
    raise TypeError(f"not a formula: {formula!r}")


# -- entry points --------------------------------------------------------------

def initial_env(ctx: Context, supply: NameSupply) -> Env:
    """Every hypothesis denotes its own reflection."""
    return Env({a: _reflect(ctx, f, Var(a), supply) for a, f in ctx.hyps})


def eval_term(ctx: Context, p, formula, env: Env | None = None,
              strategy: Strategy = Strategy.CBN, supply: NameSupply | None = None) -> Forcing:
    """Forcing value of ``formula`` at ``ctx`` denoted by ``p``.

    With no ``env``, hypotheses are reflected (call-by-name only).
    """
    if env is None:
        env = initial_env(ctx, supply or NameSupply()) if strategy is Strategy.CBN else Env()
    v = evaluate(p, env) if strategy is Strategy.CBN else evaluate_cbv(p, env)
    return Forcing(v.compute, ctx, formula)


def normalize(ctx: Context, p, formula, strategy: Strategy | str = Strategy.CBN, *,
              supply: NameSupply | None = None, validate: bool = False,
              typecheck: bool = True):
    """Normal form of ``p : formula`` in ``ctx``.

    Output names come from a fresh :class:`NameSupply` unless one is given,
    so results are reproducible. ``validate`` re-typechecks every
    intermediate answer.
    """
    strategy = Strategy(strategy)
    if typecheck:
        check(ctx, p, formula)
    if strategy is Strategy.CBV and ctx.hyps:
        raise CBVOpenTerm("call-by-value normalization needs a context without hypotheses")
    supply = supply if supply is not None else NameSupply()
    with validating(validate):
        if strategy is Strategy.CBN:
            return reify(ctx, formula, eval_term(ctx, p, formula, supply=supply), supply)
        return reify_cbv(ctx, formula, eval_term(ctx, p, formula, Env(), strategy), supply)


def reflect(ctx: Context, formula, e, supply: NameSupply) -> Forcing:
    """Embed the neutral proof ``e`` of ``formula`` into the forcing domain."""
    if not is_neutral(e):
        raise NotNeutral("only neutral terms can be reflected")
    return _reflect(ctx, formula, e, supply)


def reflect_cbv(ctx: Context, formula, e, supply: NameSupply) -> Forcing:
    """Computation delivering a strong value for the neutral ``e``."""
    if not is_neutral(e):
        raise NotNeutral("only neutral terms can be reflected")
    return _reflect_cbv(ctx, formula, e, supply)
