"""Pretty-printer producing the concrete syntax accepted by the parser."""
from __future__ import annotations

from .terms import (
    And, Ann, App, Atom, Case, Dest, Exists, Forall, Gen, IApp, Imp, Inj1,
    Inj2, Lam, Or, Pair, Proj1, Proj2, Var, Witness,
)

# binding strength of binary connectives
_PREC = {Imp: 1, Or: 2, And: 3}
_SYM = {Imp: "->", Or: "\\/", And: "/\\"}


def print_formula(a) -> str:
    match a:
        case Atom(name, ()):
            return name
        case Atom(name, args):
            return f"{name}({','.join(t.name for t in args)})"
        case Forall(x, body):
            return f"forall {x}. {print_formula(body)}"
        case Exists(x, body):
            return f"exists {x}. {print_formula(body)}"
        case And(l, r) | Or(l, r) | Imp(l, r):
            prec = _PREC[type(a)]
            return f"{_operand(l, prec, left=True)} {_SYM[type(a)]} {_operand(r, prec, left=False)}"
    raise TypeError(f"not a formula: {a!r}")


def _operand(a, prec, left):
    text = print_formula(a)
    if isinstance(a, (Forall, Exists)):
        return f"({text})"
    inner = _PREC.get(type(a))
    if inner is not None and (inner < prec or (inner == prec and left)):
        return f"({text})"
    return text


def _is_open(p) -> bool:
    """Forms that extend as far right as possible."""
    return isinstance(p, (Lam, Gen, Case, Dest))


def _atom(p) -> str:
    text = print_term(p)
    if isinstance(p, (Var, Pair, Witness, Ann)):
        return text
    return f"({text})"


def _head(p) -> str:
    # application spine heads may themselves be applications
    if isinstance(p, (App, IApp, Proj1, Proj2, Inj1, Inj2)):
        return print_term(p)
    return _atom(p)


def print_term(p) -> str:
    match p:
        case Var(a):
            return a
        case Lam(a, body):
            return f"fun {a} => {print_term(body)}"
        case Gen(x, body):
            return f"gen {x} => {print_term(body)}"
        case App(f, x):
            return f"{_head(f)} {_atom(x)}"
        case IApp(f, t):
            return f"{_head(f)} [{t.name}]"
        case Pair(l, r):
            return f"({print_term(l)}, {print_term(r)})"
        case Witness(t, q):
            return f"[{t.name}, {print_term(q)}]"
        case Proj1(q):
            return f"fst {_atom(q)}"
        case Proj2(q):
            return f"snd {_atom(q)}"
        case Inj1(q):
            return f"inl {_atom(q)}"
        case Inj2(q):
            return f"inr {_atom(q)}"
        case Case(s, a1, q1, a2, q2):
            scrut = _atom(s) if _is_open(s) else print_term(s)
            return (f"case {scrut} of inl {a1} => {print_term(q1)}"
                    f" | inr {a2} => {print_term(q2)}")
        case Dest(s, x, a, body):
            scrut = _atom(s) if _is_open(s) else print_term(s)
            return f"dest {scrut} as [{x}, {a}] in {print_term(body)}"
        case Ann(q, a):
            return f"({print_term(q)} : {print_formula(a)})"
    raise TypeError(f"not a proof term: {p!r}")
