"""Abstract syntax for individuals, formulas and proof terms.

Proof variables and individual variables live in separate namespaces.
All nodes are immutable; structural ``==`` is syntactic identity, use
:func:`alpha_eq` for equality up to bound names.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union


# -- individuals ------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class IVar:
    name: str


@dataclass(frozen=True, slots=True)
class IConst:
    name: str


Individual = Union[IVar, IConst]


# -- formulas ---------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Atom:
    name: str
    args: tuple = ()


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Atom, And, Or, Imp, Forall, Exists]


# -- proof terms ------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Lam:
    var: str
    body: "Term"


@dataclass(frozen=True, slots=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True, slots=True)
class Pair:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class Proj1:
    arg: "Term"


@dataclass(frozen=True, slots=True)
class Proj2:
    arg: "Term"


@dataclass(frozen=True, slots=True)
class Inj1:
    arg: "Term"


@dataclass(frozen=True, slots=True)
class Inj2:
    arg: "Term"


@dataclass(frozen=True, slots=True)
class Case:
    scrut: "Term"
    left_var: str
    left: "Term"
    right_var: str
    right: "Term"


@dataclass(frozen=True, slots=True)
class Gen:
    var: str
    body: "Term"


@dataclass(frozen=True, slots=True)
class IApp:
    fun: "Term"
    ind: Individual


@dataclass(frozen=True, slots=True)
class Witness:
    ind: Individual
    body: "Term"


@dataclass(frozen=True, slots=True)
class Dest:
    scrut: "Term"
    ind_var: str
    var: str
    body: "Term"


@dataclass(frozen=True, slots=True)
class Ann:
    """Type ascription ``(p : A)``; lets redexes be checked without
    annotating binders. Never produced by normalization."""

    term: "Term"
    formula: Formula


Term = Union[Var, Lam, App, Pair, Proj1, Proj2, Inj1, Inj2, Case, Gen, IApp,
             Witness, Dest, Ann]

INTRO_FORMS = (Lam, Pair, Inj1, Inj2, Gen, Witness)


# -- fresh names ------------------------------------------------------------

def base_name(name: str) -> str:
    stripped = name.rstrip("0123456789")
    return stripped or name


def fresh_name(name: str, avoid) -> str:
    """First of ``base0, base1, ...`` not in ``avoid``."""
    base = base_name(name)
    i = 0
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


# -- free variables ---------------------------------------------------------

def ind_free(t: Individual) -> set[str]:
    return {t.name} if isinstance(t, IVar) else set()


def formula_free_vars(a: Formula) -> set[str]:
    match a:
        case Atom(_, args):
            return {t.name for t in args if isinstance(t, IVar)}
        case And(l, r) | Or(l, r) | Imp(l, r):
            return formula_free_vars(l) | formula_free_vars(r)
        case Forall(x, body) | Exists(x, body):
            return formula_free_vars(body) - {x}
    raise TypeError(f"not a formula: {a!r}")


def formula_names(a: Formula) -> set[str]:
    """Every individual name occurring in ``a``, bound or free."""
    match a:
        case Atom(_, args):
            return {t.name for t in args}
        case And(l, r) | Or(l, r) | Imp(l, r):
            return formula_names(l) | formula_names(r)
        case Forall(x, body) | Exists(x, body):
            return formula_names(body) | {x}
    raise TypeError(f"not a formula: {a!r}")


def free_proof_vars(p: Term) -> set[str]:
    match p:
        case Var(a):
            return {a}
        case Lam(a, body):
            return free_proof_vars(body) - {a}
        case App(f, x) | Pair(f, x):
            return free_proof_vars(f) | free_proof_vars(x)
        case Proj1(q) | Proj2(q) | Inj1(q) | Inj2(q) | Gen(_, q) | IApp(q, _) \
                | Witness(_, q) | Ann(q, _):
            return free_proof_vars(q)
        case Case(s, a1, q1, a2, q2):
            return (free_proof_vars(s) | (free_proof_vars(q1) - {a1})
                    | (free_proof_vars(q2) - {a2}))
        case Dest(s, _, a, q):
            return free_proof_vars(s) | (free_proof_vars(q) - {a})
    raise TypeError(f"not a proof term: {p!r}")


def free_ind_vars(p: Term) -> set[str]:
    match p:
        case Var(_):
            return set()
        case Lam(_, q) | Proj1(q) | Proj2(q) | Inj1(q) | Inj2(q):
            return free_ind_vars(q)
        case App(f, x) | Pair(f, x):
            return free_ind_vars(f) | free_ind_vars(x)
        case Case(s, _, q1, _, q2):
            return free_ind_vars(s) | free_ind_vars(q1) | free_ind_vars(q2)
        case Gen(x, q):
            return free_ind_vars(q) - {x}
        case IApp(q, t) | Witness(t, q):
            return free_ind_vars(q) | ind_free(t)
        case Dest(s, x, _, q):
            return free_ind_vars(s) | (free_ind_vars(q) - {x})
        case Ann(q, a):
            return free_ind_vars(q) | formula_free_vars(a)
    raise TypeError(f"not a proof term: {p!r}")


def term_names(p: Term) -> set[str]:
    """All identifiers occurring in ``p`` (both namespaces, bound or free)."""
    match p:
        case Var(a):
            return {a}
        case Lam(a, q) | Gen(a, q):
            return term_names(q) | {a}
        case App(f, x) | Pair(f, x):
            return term_names(f) | term_names(x)
        case Proj1(q) | Proj2(q) | Inj1(q) | Inj2(q):
            return term_names(q)
        case Case(s, a1, q1, a2, q2):
            return term_names(s) | term_names(q1) | term_names(q2) | {a1, a2}
        case IApp(q, t) | Witness(t, q):
            return term_names(q) | {t.name}
        case Dest(s, x, a, q):
            return term_names(s) | term_names(q) | {x, a}
        case Ann(q, a):
            return term_names(q) | formula_names(a)
    raise TypeError(f"not a proof term: {p!r}")


def term_size(p: Term) -> int:
    match p:
        case Var(_):
            return 1
        case Lam(_, q) | Proj1(q) | Proj2(q) | Inj1(q) | Inj2(q) | Gen(_, q) \
                | IApp(q, _) | Witness(_, q) | Ann(q, _):
            return 1 + term_size(q)
        case App(f, x) | Pair(f, x):
            return 1 + term_size(f) + term_size(x)
        case Case(s, _, q1, _, q2):
            return 1 + term_size(s) + term_size(q1) + term_size(q2)
        case Dest(s, _, _, q):
            return 1 + term_size(s) + term_size(q)
    raise TypeError(f"not a proof term: {p!r}")


# -- substitution -----------------------------------------------------------

def _subst_ind(t: Individual, isub: dict) -> Individual:
    if isinstance(t, IVar):
        return isub.get(t.name, t)
    return t


def _subst_formula(a: Formula, isub: dict, range_free: set) -> Formula:
    if not isub:
        return a
    match a:
        case Atom(name, args):
            return Atom(name, tuple(_subst_ind(t, isub) for t in args))
        case And(l, r):
            return And(_subst_formula(l, isub, range_free), _subst_formula(r, isub, range_free))
        case Or(l, r):
            return Or(_subst_formula(l, isub, range_free), _subst_formula(r, isub, range_free))
        case Imp(l, r):
            return Imp(_subst_formula(l, isub, range_free), _subst_formula(r, isub, range_free))
        case Forall(x, body) | Exists(x, body):
            inner = {k: v for k, v in isub.items() if k != x}
            if inner and x in range_free:
                y = fresh_name(x, range_free | formula_names(body) | set(inner))
                inner[x] = IVar(y)
                x, range_free = y, range_free | {y}
            return type(a)(x, _subst_formula(body, inner, range_free))
    raise TypeError(f"not a formula: {a!r}")


def subst_ind_formula(a: Formula, x: str, t: Individual) -> Formula:
    """Capture-avoiding ``a[t/x]``."""
    return _subst_formula(a, {x: t}, ind_free(t))


def _subst_term(p: Term, psub: dict, isub: dict, pfree: set, ifree: set) -> Term:
    """Simultaneous capture-avoiding substitution.

    ``pfree``/``ifree`` over-approximate the free proof/individual variables
    of the substitution's range; binders hitting them are renamed.
    """
    if not psub and not isub:
        return p
    match p:
        case Var(a):
            return psub.get(a, p)
        case Lam(a, body):
            a, ps, pf = _bind_proof(a, body, psub, pfree)
            return Lam(a, _subst_term(body, ps, isub, pf, ifree))
        case App(f, x):
            return App(_subst_term(f, psub, isub, pfree, ifree),
                       _subst_term(x, psub, isub, pfree, ifree))
        case Pair(l, r):
            return Pair(_subst_term(l, psub, isub, pfree, ifree),
                        _subst_term(r, psub, isub, pfree, ifree))
        case Proj1(q) | Proj2(q) | Inj1(q) | Inj2(q):
            return type(p)(_subst_term(q, psub, isub, pfree, ifree))
        case Case(s, a1, q1, a2, q2):
            s = _subst_term(s, psub, isub, pfree, ifree)
            a1, ps1, pf1 = _bind_proof(a1, q1, psub, pfree)
            a2, ps2, pf2 = _bind_proof(a2, q2, psub, pfree)
            return Case(s, a1, _subst_term(q1, ps1, isub, pf1, ifree),
                        a2, _subst_term(q2, ps2, isub, pf2, ifree))
        case Gen(x, body):
            x, isub2, if2 = _bind_ind(x, body, isub, ifree, bool(psub))
            return Gen(x, _subst_term(body, psub, isub2, pfree, if2))
        case IApp(q, t):
            return IApp(_subst_term(q, psub, isub, pfree, ifree), _subst_ind(t, isub))
        case Witness(t, q):
            return Witness(_subst_ind(t, isub), _subst_term(q, psub, isub, pfree, ifree))
        case Dest(s, x, a, body):
            s = _subst_term(s, psub, isub, pfree, ifree)
            x, isub2, if2 = _bind_ind(x, body, isub, ifree, bool(psub))
            a, ps, pf = _bind_proof(a, body, psub, pfree)
            return Dest(s, x, a, _subst_term(body, ps, isub2, pf, if2))
        case Ann(q, a):
            return Ann(_subst_term(q, psub, isub, pfree, ifree),
                       _subst_formula(a, isub, ifree))
    raise TypeError(f"not a proof term: {p!r}")


def _bind_proof(a, body, psub, pfree):
    inner = {k: v for k, v in psub.items() if k != a}
    if inner and a in pfree:
        new = fresh_name(a, pfree | term_names(body) | set(inner))
        inner[a] = Var(new)
        return new, inner, pfree | {new}
    return a, inner, pfree


def _bind_ind(x, body, isub, ifree, proof_subst_active):
    inner = {k: v for k, v in isub.items() if k != x}
    if (inner or proof_subst_active) and x in ifree:
        new = fresh_name(x, ifree | term_names(body) | set(inner))
        inner[x] = IVar(new)
        return new, inner, ifree | {new}
    return x, inner, ifree


def subst_proof(p: Term, a: str, q: Term) -> Term:
    """Capture-avoiding ``p[q/a]``."""
    return _subst_term(p, {a: q}, {}, free_proof_vars(q), free_ind_vars(q))


def subst_ind_term(p: Term, x: str, t: Individual) -> Term:
    """Capture-avoiding substitution of an individual into a proof term."""
    return _subst_term(p, {}, {x: t}, set(), ind_free(t))


def rename_proof_var(p: Term, a: str, b: str) -> Term:
    return subst_proof(p, a, Var(b))


# -- alpha-equivalence ------------------------------------------------------

def _ind_eq(s: Individual, t: Individual, env1: dict, env2: dict) -> bool:
    if type(s) is not type(t):
        return False
    if isinstance(s, IConst):
        return s.name == t.name
    l1, l2 = env1.get(s.name), env2.get(t.name)
    if l1 is None and l2 is None:
        return s.name == t.name
    return l1 == l2


def _formula_eq(a, b, ienv1: dict, ienv2: dict, depth: int) -> bool:
    if type(a) is not type(b):
        return False
    match a:
        case Atom(name, args):
            return (name == b.name and len(args) == len(b.args)
                    and all(_ind_eq(s, t, ienv1, ienv2) for s, t in zip(args, b.args)))
        case And(l, r) | Or(l, r) | Imp(l, r):
            return (_formula_eq(l, b.left, ienv1, ienv2, depth)
                    and _formula_eq(r, b.right, ienv1, ienv2, depth))
        case Forall(x, body) | Exists(x, body):
            return _formula_eq(body, b.body, {**ienv1, x: depth}, {**ienv2, b.var: depth}, depth + 1)
    raise TypeError(f"not a formula: {a!r}")


def formula_alpha_eq(a: Formula, b: Formula) -> bool:
    return _formula_eq(a, b, {}, {}, 0)


def _term_eq(p, q, e1, e2, i1, i2, depth) -> bool:
    if type(p) is not type(q):
        return False
    match p:
        case Var(a):
            l1, l2 = e1.get(a), e2.get(q.name)
            if l1 is None and l2 is None:
                return a == q.name
            return l1 == l2
        case Lam(a, body):
            return _term_eq(body, q.body, {**e1, a: depth}, {**e2, q.var: depth}, i1, i2, depth + 1)
        case App(f, x):
            return (_term_eq(f, q.fun, e1, e2, i1, i2, depth)
                    and _term_eq(x, q.arg, e1, e2, i1, i2, depth))
        case Pair(l, r):
            return (_term_eq(l, q.left, e1, e2, i1, i2, depth)
                    and _term_eq(r, q.right, e1, e2, i1, i2, depth))
        case Proj1(s) | Proj2(s) | Inj1(s) | Inj2(s):
            return _term_eq(s, q.arg, e1, e2, i1, i2, depth)
        case Case(s, a1, q1, a2, q2):
            return (_term_eq(s, q.scrut, e1, e2, i1, i2, depth)
                    and _term_eq(q1, q.left, {**e1, a1: depth}, {**e2, q.left_var: depth},
                                 i1, i2, depth + 1)
                    and _term_eq(q2, q.right, {**e1, a2: depth}, {**e2, q.right_var: depth},
                                 i1, i2, depth + 1))
        case Gen(x, body):
            return _term_eq(body, q.body, e1, e2, {**i1, x: depth}, {**i2, q.var: depth}, depth + 1)
        case IApp(s, t):
            return _ind_eq(t, q.ind, i1, i2) and _term_eq(s, q.fun, e1, e2, i1, i2, depth)
        case Witness(t, s):
            return _ind_eq(t, q.ind, i1, i2) and _term_eq(s, q.body, e1, e2, i1, i2, depth)
        case Dest(s, x, a, body):
            return (_term_eq(s, q.scrut, e1, e2, i1, i2, depth)
                    and _term_eq(body, q.body, {**e1, a: depth}, {**e2, q.var: depth},
                                 {**i1, x: depth}, {**i2, q.ind_var: depth}, depth + 1))
        case Ann(s, a):
            return (_formula_eq(a, q.formula, i1, i2, depth)
                    and _term_eq(s, q.term, e1, e2, i1, i2, depth))
    raise TypeError(f"not a proof term: {p!r}")


def alpha_eq(p: Term, q: Term) -> bool:
    """Equality up to consistent renaming of bound proof and individual variables."""
    return _term_eq(p, q, {}, {}, {}, {}, 0)


def subst_many(p: Term, proofs: dict, inds: dict) -> Term:
    """Simultaneous capture-avoiding substitution of proofs and individuals."""
    pfree, ifree = set(), set()
    for q in proofs.values():
        pfree |= free_proof_vars(q)
        ifree |= free_ind_vars(q)
    for t in inds.values():
        ifree |= ind_free(t)
    return _subst_term(p, dict(proofs), dict(inds), pfree, ifree)


# -- generic traversal ------------------------------------------------------

def children(p) -> tuple:
    """Immediate proof-term subterms, left to right."""
    match p:
        case Var():
            return ()
        case Lam(_, q) | Gen(_, q) | Proj1(q) | Proj2(q) | Inj1(q) | Inj2(q) \
                | IApp(q, _) | Witness(_, q) | Ann(q, _):
            return (q,)
        case App(f, x) | Pair(f, x):
            return (f, x)
        case Case(s, _, q1, _, q2):
            return (s, q1, q2)
        case Dest(s, _, _, q):
            return (s, q)
    raise TypeError(f"not a proof term: {p!r}")


def rebuild(p, kids):
    """``p`` with its subterms replaced by ``kids`` (binders unchanged)."""
    match p:
        case Var():
            return p
        case Lam(a, _):
            return Lam(a, kids[0])
        case Gen(x, _):
            return Gen(x, kids[0])
        case Proj1() | Proj2() | Inj1() | Inj2():
            return type(p)(kids[0])
        case IApp(_, t):
            return IApp(kids[0], t)
        case Witness(t, _):
            return Witness(t, kids[0])
        case Ann(_, a):
            return Ann(kids[0], a)
        case App() | Pair():
            return type(p)(*kids)
        case Case(_, a1, _, a2, _):
            return Case(kids[0], a1, kids[1], a2, kids[2])
        case Dest(_, x, a, _):
            return Dest(kids[0], x, a, kids[1])
    raise TypeError(f"not a proof term: {p!r}")


def replace_at(p, path, new):
    """Replace the subterm at ``path`` (a sequence of child indices)."""
    if not path:
        return new
    kids = list(children(p))
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return rebuild(p, kids)


def subterm_at(p, path):
    for i in path:
        p = children(p)[i]
    return p
