"""Small-step beta reduction, used as an oracle independent of the normalizer.

Redexes::

    (fun a => p) q                      ~>  p[q/a]
    fst (p, q) / snd (p, q)             ~>  p / q
    case inl p of inl a1 => q1 | ...    ~>  q1[p/a1]   (and inr)
    (gen x => p) [t]                    ~>  p[t/x]
    dest [t, p] as [x, a] in q          ~>  q[t/x][p/a]

An ascription ``(p : A)`` around the introduction form is looked through
and carried over to the contractum, e.g. ``((fun a => p) : A -> B) q``
becomes ``(p[(q : A)/a] : B)``: without them a reduct or a substituted
argument in head position would no longer synthesize its formula. Once no beta-redex is left, ascriptions are
erased one step at a time, outermost first.

No eta rules and no commuting conversions.
"""
from __future__ import annotations

from .errors import FuelExhausted
from .syntax.terms import (
    And, Ann, App, Case, Dest, Exists, Forall, Gen, IApp, Imp, Inj1, Inj2, Lam, Or,
    Pair, Proj1, Proj2, Witness, alpha_eq, children, rebuild, subst_ind_formula,
    subst_ind_term, subst_many, subst_proof,
)

DEFAULT_FUEL = 100_000


def _peel(p):
    """The term under all ascriptions, and the innermost ascribed formula."""
    formula = None
    while isinstance(p, Ann):
        p, formula = p.term, p.formula
    return p, formula


def _ann(p, formula):
    return p if formula is None else Ann(p, formula)


def contract(p):
    """Contract ``p`` if it is itself a beta-redex, else return None."""
    match p:
        case App(f, q):
            lam, ty = _peel(f)
            if isinstance(lam, Lam):
                if isinstance(ty, Imp):
                    return Ann(subst_proof(lam.body, lam.var, Ann(q, ty.left)), ty.right)
                return subst_proof(lam.body, lam.var, q)
        case Proj1(q) | Proj2(q):
            pair, ty = _peel(q)
            if isinstance(pair, Pair):
                first = isinstance(p, Proj1)
                part = (ty.left if first else ty.right) if isinstance(ty, And) else None
                return _ann(pair.left if first else pair.right, part)
        case Case(s, a1, q1, a2, q2):
            inj, ty = _peel(s)
            ty = ty if isinstance(ty, Or) else None
            match inj:
                case Inj1(v):
                    return subst_proof(q1, a1, _ann(v, ty and ty.left))
                case Inj2(v):
                    return subst_proof(q2, a2, _ann(v, ty and ty.right))
        case IApp(f, t):
            gen, ty = _peel(f)
            if isinstance(gen, Gen):
                body = subst_ind_term(gen.body, gen.var, t)
                if isinstance(ty, Forall):
                    return Ann(body, subst_ind_formula(ty.body, ty.var, t))
                return body
        case Dest(s, x, a, q):
            wit, ty = _peel(s)
            if isinstance(wit, Witness):
                v = wit.body
                if isinstance(ty, Exists):
                    v = Ann(v, subst_ind_formula(ty.body, ty.var, wit.ind))
                # simultaneous: a free x inside the witness body is a different x
                return subst_many(q, {a: v}, {x: wit.ind})
    return None


def _outermost(p, rule):
    reduct = rule(p)
    if reduct is not None:
        return reduct
    kids = children(p)
    for i, kid in enumerate(kids):
        new = _outermost(kid, rule)
        if new is not None:
            return rebuild(p, kids[:i] + (new,) + kids[i + 1:])
    return None


def _innermost(p, rule):
    kids = children(p)
    for i in reversed(range(len(kids))):
        new = _innermost(kids[i], rule)
        if new is not None:
            return rebuild(p, kids[:i] + (new,) + kids[i + 1:])
    return rule(p)


def _erase(p):
    return p.term if isinstance(p, Ann) else None


def step(p):
    """One leftmost-outermost reduction step, or None if ``p`` is beta-normal."""
    reduct = _outermost(p, contract)
    return reduct if reduct is not None else _outermost(p, _erase)


def step_innermost(p):
    """One rightmost-innermost reduction step, or None if ``p`` is beta-normal."""
    reduct = _innermost(p, contract)
    return reduct if reduct is not None else _innermost(p, _erase)


def has_redex(p) -> bool:
    return contract(p) is not None or isinstance(p, Ann) or any(map(has_redex, children(p)))


def beta_nf(p, fuel: int = DEFAULT_FUEL, stepper=step):
    """Iterate ``stepper`` until no redex is left.

    Raises FuelExhausted after ``fuel`` steps; on well-typed input this
    only happens when the budget is far too small.
    """
    for _ in range(fuel):
        nxt = stepper(p)
        if nxt is None:
            return p
        p = nxt
    if stepper(p) is None:
        return p
    raise FuelExhausted(f"no beta-normal form within {fuel} steps")


def beta_eq(p, q, fuel: int = DEFAULT_FUEL) -> bool:
    return alpha_eq(beta_nf(p, fuel), beta_nf(q, fuel))
