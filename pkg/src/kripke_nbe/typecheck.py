"""Bidirectional checking of natural-deduction proof terms.

Introduction forms are checked against a goal formula, eliminations infer
their formula from the head. Formulas are compared up to alpha-equivalence.
The ascription ``(p : A)`` switches from checking to inference.
"""
from __future__ import annotations

from .errors import (
    BranchMismatch, CannotInfer, EigenvariableEscape, ShapeMismatch,
    TypeCheckError, UnboundVariable,
)
from .syntax import Context, print_formula, print_term
from .syntax.terms import (
    And, Ann, App, Case, Dest, Exists, Forall, Gen, IApp, IConst, Imp,
    Inj1, Inj2, IVar, Lam, Or, Pair, Proj1, Proj2, Var, Witness, formula_alpha_eq,
    formula_free_vars, fresh_name, subst_ind_formula, subst_ind_term,
    subst_proof, term_names,
)

_INFERABLE = (Var, App, Proj1, Proj2, IApp, Case, Dest, Ann)


def _show(p) -> str:
    text = print_term(p)
    return text if len(text) <= 60 else text[:57] + "..."


def _check_individual(ctx: Context, t, term):
    if isinstance(t, IConst) and t.name in ctx.constants:
        return
    if isinstance(t, IVar) and t.name in ctx.ind_vars:
        return
    raise UnboundVariable(f"individual {t.name} is not in scope", term)


def _check_scope(ctx: Context, formula, term):
    missing = formula_free_vars(formula) - ctx.individuals
    if missing:
        raise UnboundVariable(
            f"formula {print_formula(formula)} mentions unbound {', '.join(sorted(missing))}",
            term)


def _bind_proof(ctx: Context, a: str, body, formula):
    """Extend ``ctx`` with ``a : formula``, renaming ``a`` if already taken."""
    if a in ctx:
        b = fresh_name(a, ctx.names | term_names(body))
        body = subst_proof(body, a, Var(b))
        a = b
    return ctx.extend(a, formula), body


def _bind_ind(ctx: Context, x: str, body, avoid=frozenset()):
    """Extend ``ctx`` with individual ``x``, renaming it if not fresh."""
    if x in ctx.names or x in avoid:
        y = fresh_name(x, ctx.names | term_names(body) | set(avoid))
        body = subst_ind_term(body, x, IVar(y))
        x = y
    return ctx.extend_ind(x), x, body


def _mismatch(term, expected, actual):
    return TypeCheckError(
        f"{_show(term)} has formula {print_formula(actual)} "
        f"but {print_formula(expected)} was expected",
        term, expected, actual)


def infer(ctx: Context, e):
    """Return the formula of an inferable term ``e`` in ``ctx``."""
    match e:
        case Var(a):
            formula = ctx.lookup(a)
            if formula is None:
                raise UnboundVariable(f"proof variable {a} is not in scope", e)
            return formula
        case App(f, arg):
            if not isinstance(f, _INFERABLE):
                raise CannotInfer(f"cannot infer the head of {_show(e)}; add an ascription", e)
            match infer(ctx, f):
                case Imp(dom, cod):
                    check(ctx, arg, dom)
                    return cod
                case other:
                    raise ShapeMismatch(
                        f"{_show(f)} is applied but has formula {print_formula(other)}",
                        f, None, other)
        case Proj1(p) | Proj2(p):
            match _infer_head(ctx, p, e):
                case And(l, r):
                    return l if isinstance(e, Proj1) else r
                case other:
                    raise ShapeMismatch(
                        f"{_show(p)} is projected but has formula {print_formula(other)}",
                        p, None, other)
        case IApp(p, t):
            _check_individual(ctx, t, e)
            match _infer_head(ctx, p, e):
                case Forall(x, body):
                    return subst_ind_formula(body, x, t)
                case other:
                    raise ShapeMismatch(
                        f"{_show(p)} is instantiated but has formula {print_formula(other)}",
                        p, None, other)
        case Case(s, a1, q1, a2, q2):
            left, right = _split_or(ctx, s, e)
            ctx1, q1 = _bind_proof(ctx, a1, q1, left)
            ctx2, q2 = _bind_proof(ctx, a2, q2, right)
            for (cx, q), (cy, other) in (((ctx1, q1), (ctx2, q2)), ((ctx2, q2), (ctx1, q1))):
                if _head_infers(cx, q):
                    c = infer(cx, q)
                    _check_scope(ctx, c, e)
                    _check_branch(cy, other, c)
                    return c
            raise CannotInfer(f"cannot infer the result of {_show(e)}; add an ascription", e)
        case Dest(s, x, a, q):
            ctx2, q = _open_exists(ctx, s, x, a, q, e)
            if not isinstance(q, _INFERABLE):
                raise CannotInfer(f"cannot infer the result of {_show(e)}; add an ascription", e)
            c = infer(ctx2, q)
            if (ctx2.ind_vars - ctx.ind_vars) & formula_free_vars(c):
                raise EigenvariableEscape(f"eigenvariable of {_show(e)} escapes", e)
            return c
        case Ann(p, a):
            _check_scope(ctx, a, e)
            check(ctx, p, a)
            return a
    raise CannotInfer(f"{_show(e)} is an introduction form; its formula cannot be inferred", e)


def _infer_head(ctx, p, e):
    if not isinstance(p, _INFERABLE):
        raise CannotInfer(f"cannot infer the head of {_show(e)}; add an ascription", e)
    return infer(ctx, p)


def _head_infers(ctx, f) -> bool:
    if not isinstance(f, _INFERABLE):
        return False
    try:
        infer(ctx, f)
    except CannotInfer:
        return False
    return True


def _split_or(ctx, s, e):
    match _infer_head(ctx, s, e):
        case Or(l, r):
            return l, r
        case other:
            raise ShapeMismatch(
                f"case on {_show(s)} whose formula {print_formula(other)} is not a disjunction",
                s, None, other)


def _open_exists(ctx, s, x, a, q, e):
    match _infer_head(ctx, s, e):
        case Exists(y, body):
            pass
        case other:
            raise ShapeMismatch(
                f"dest on {_show(s)} whose formula {print_formula(other)} is not existential",
                s, None, other)
    ctx2, x, q = _bind_ind(ctx, x, q)
    ctx2, q = _bind_proof(ctx2, a, q, subst_ind_formula(body, y, IVar(x)))
    return ctx2, q


def _check_branch(ctx, q, c):
    try:
        check(ctx, q, c)
    except TypeCheckError as exc:
        if exc.expected is not None and exc.actual is not None and exc.term is q:
            raise BranchMismatch(f"case branches disagree: {exc}", q, c, exc.actual) from exc
        raise


def check(ctx: Context, p, goal) -> None:
    """Succeed iff ``ctx |- p : goal`` is derivable; raise TypeCheckError otherwise."""
    match p, goal:
        case Lam(a, body), Imp(dom, cod):
            ctx2, body = _bind_proof(ctx, a, body, dom)
            check(ctx2, body, cod)
        case Pair(l, r), And(gl, gr):
            check(ctx, l, gl)
            check(ctx, r, gr)
        case Inj1(q), Or(gl, _):
            check(ctx, q, gl)
        case Inj2(q), Or(_, gr):
            check(ctx, q, gr)
        case Gen(x, body), Forall(y, gbody):
            # the eigenvariable must not occur free in the context
            ctx2, x, body = _bind_ind(ctx, x, body)
            check(ctx2, body, subst_ind_formula(gbody, y, IVar(x)))
        case Witness(t, q), Exists(y, gbody):
            _check_individual(ctx, t, p)
            check(ctx, q, subst_ind_formula(gbody, y, t))
        case Case(s, a1, q1, a2, q2), _:
            left, right = _split_or(ctx, s, p)
            ctx1, q1 = _bind_proof(ctx, a1, q1, left)
            ctx2, q2 = _bind_proof(ctx, a2, q2, right)
            check(ctx1, q1, goal)
            check(ctx2, q2, goal)
        case Dest(s, x, a, q), _:
            ctx2, q = _open_exists(ctx, s, x, a, q, p)
            fresh = ctx2.ind_vars - ctx.ind_vars
            if fresh & formula_free_vars(goal):
                raise EigenvariableEscape(f"eigenvariable of {_show(p)} escapes", p)
            check(ctx2, q, goal)
        case App(f, arg), _ if isinstance(arg, _INFERABLE) and not _head_infers(ctx, f):
            # head without a synthesizable formula: take the domain from the argument
            check(ctx, f, Imp(infer(ctx, arg), goal))
        case (Var() | App() | Proj1() | Proj2() | IApp() | Ann()), _:
            actual = infer(ctx, p)
            if not formula_alpha_eq(actual, goal):
                raise _mismatch(p, goal, actual)
        case (Lam() | Pair() | Inj1() | Inj2() | Gen() | Witness()), _:
            raise ShapeMismatch(
                f"{_show(p)} cannot prove {print_formula(goal)}", p, goal, None)
        case _:
            raise TypeError(f"not a proof term: {p!r}")


def check_ok(ctx: Context, p, goal) -> bool:
    try:
        check(ctx, p, goal)
    except TypeCheckError:
        return False
    return True


infer_neutral = infer


def is_neutral(p) -> bool:
    match p:
        case Var(_):
            return True
        case App(e, r):
            return is_neutral(e) and is_normal(r)
        case Proj1(e) | Proj2(e) | IApp(e, _):
            return is_neutral(e)
        case Case(e, _, r1, _, r2):
            return is_neutral(e) and is_normal(r1) and is_normal(r2)
        case Dest(e, _, _, r):
            return is_neutral(e) and is_normal(r)
    return False


def is_normal(p) -> bool:
    match p:
        case Lam(_, r) | Inj1(r) | Inj2(r) | Gen(_, r) | Witness(_, r):
            return is_normal(r)
        case Pair(r1, r2):
            return is_normal(r1) and is_normal(r2)
    return is_neutral(p)
