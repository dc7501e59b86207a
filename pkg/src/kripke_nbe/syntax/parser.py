"""Recursive-descent parser for the ASCII concrete syntax.

Formulas::

    A ::= P(t1,...,tn) | P | A /\\ A | A \\/ A | A -> A
        | forall x. A | exists x. A | (A)

``/\\`` binds tighter than ``\\/``, which binds tighter than ``->``; all three
associate to the right. Quantifiers extend as far right as possible.

Proof terms::

    p ::= fun a => p | gen x => p | dest p as [x, a] in p
        | case p of inl a1 => p | inr a2 => p
        | p p | p [t] | fst p | snd p | inl p | inr p
        | (p, p) | [t, p] | (p : A) | a | (p)

Shadowed binders are renamed apart after parsing.
"""
from __future__ import annotations

import re

from ..errors import ParseError
from .terms import (
    And, Ann, App, Atom, Case, Dest, Exists, Forall, Gen, IApp, IConst, Imp,
    Inj1, Inj2, IVar, Lam, Or, Pair, Proj1, Proj2, Var, Witness, fresh_name,
    formula_names, subst_ind_formula, subst_ind_term, subst_proof, term_names,
)

KEYWORDS = frozenset({
    "fun", "gen", "case", "of", "inl", "inr", "fst", "snd", "dest", "as", "in",
    "forall", "exists", "const", "var",
})

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<sym>->|=>|/\\|\\/|[()\[\],.|:])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)


class Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.column})"


def tokenize(text: str, comments: bool = False) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None or (m.lastgroup == "comment" and not comments):
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "sym":
            tokens.append(Token(m.group(), m.group(), line, col))
        elif kind == "ident":
            word = m.group()
            tokens.append(Token(word if word in KEYWORDS else "ident", word, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


_ATOM_START = ("ident", "(", "[")


class Parser:
    """Parses formulas and terms from one token stream.

    ``constants`` decides whether a free individual name is a constant or a
    variable; bound names are always variables.
    """

    def __init__(self, text: str, constants=frozenset(), comments: bool = False):
        self.tokens = tokenize(text, comments=comments)
        self.pos = 0
        self.constants = frozenset(constants)

    # -- token helpers --

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def error(self, message, expected=()):
        t = self.tok
        got = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"{message}, got {got}", t.line, t.column, expected)

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.error("unexpected token", [kind])
        t = self.tok
        self.pos += 1
        return t

    def accept(self, kind: str) -> bool:
        if self.tok.kind == kind:
            self.pos += 1
            return True
        return False

    def lower_ident(self, what: str) -> str:
        t = self.tok
        if t.kind != "ident" or not t.text[0].islower():
            self.error(f"expected {what}", [what])
        self.pos += 1
        return t.text

    def at_end(self):
        if self.tok.kind != "eof":
            self.error("trailing input", ["end of input"])

    # -- individuals --

    def individual(self, bound) -> IVar | IConst:
        name = self.lower_ident("individual")
        if name in bound or name not in self.constants:
            return IVar(name)
        return IConst(name)

    # -- formulas --

    def formula(self, bound=frozenset()):
        if self.tok.kind in ("forall", "exists"):
            quant = Forall if self.tok.kind == "forall" else Exists
            self.pos += 1
            x = self.lower_ident("variable")
            self.expect(".")
            return quant(x, self.formula(bound | {x}))
        left = self.disjunction(bound)
        if self.accept("->"):
            return Imp(left, self.formula(bound))
        return left

    def disjunction(self, bound):
        left = self.conjunction(bound)
        if self.accept("\\/"):
            return Or(left, self._operand(self.disjunction, bound))
        return left

    def conjunction(self, bound):
        left = self.formula_atom(bound)
        if self.accept("/\\"):
            return And(left, self._operand(self.conjunction, bound))
        return left

    def _operand(self, rule, bound):
        # a quantifier may close a binary chain: X /\ forall x. P(x)
        if self.tok.kind in ("forall", "exists"):
            return self.formula(bound)
        return rule(bound)

    def formula_atom(self, bound):
        t = self.tok
        if t.kind == "(":
            self.pos += 1
            a = self.formula(bound)
            self.expect(")")
            return a
        if t.kind in ("forall", "exists"):
            return self.formula(bound)
        if t.kind == "ident" and t.text[0].isupper():
            self.pos += 1
            args = ()
            if self.accept("("):
                items = [self.individual(bound)]
                while self.accept(","):
                    items.append(self.individual(bound))
                self.expect(")")
                args = tuple(items)
            return Atom(t.text, args)
        self.error("expected a formula", ["atom", "(", "forall", "exists"])

    # -- proof terms --

    def term(self, ibound=frozenset()):
        k = self.tok.kind
        if k == "fun":
            self.pos += 1
            a = self.lower_ident("proof variable")
            self.expect("=>")
            return Lam(a, self.term(ibound))
        if k == "gen":
            self.pos += 1
            x = self.lower_ident("individual variable")
            self.expect("=>")
            return Gen(x, self.term(ibound | {x}))
        if k == "case":
            self.pos += 1
            scrut = self.term(ibound)
            self.expect("of")
            self.expect("inl")
            a1 = self.lower_ident("proof variable")
            self.expect("=>")
            q1 = self.term(ibound)
            self.expect("|")
            self.expect("inr")
            a2 = self.lower_ident("proof variable")
            self.expect("=>")
            q2 = self.term(ibound)
            return Case(scrut, a1, q1, a2, q2)
        if k == "dest":
            self.pos += 1
            scrut = self.term(ibound)
            self.expect("as")
            self.expect("[")
            x = self.lower_ident("individual variable")
            self.expect(",")
            a = self.lower_ident("proof variable")
            self.expect("]")
            self.expect("in")
            return Dest(scrut, x, a, self.term(ibound | {x}))
        return self.application(ibound)

    def application(self, ibound):
        k = self.tok.kind
        if k in ("fst", "snd", "inl", "inr"):
            self.pos += 1
            wrap = {"fst": Proj1, "snd": Proj2, "inl": Inj1, "inr": Inj2}[k]
            head = wrap(self.term_atom(ibound))
        elif k in _ATOM_START:
            head = self.term_atom(ibound)
        else:
            self.error("expected a proof term",
                       ["proof variable", "(", "[", "fun", "gen", "case", "dest",
                        "fst", "snd", "inl", "inr"])
        while self.tok.kind in _ATOM_START:
            if self.tok.kind == "[" and self.peek(2).kind == "]":
                self.pos += 1
                t = self.individual(ibound)
                self.expect("]")
                head = IApp(head, t)
            else:
                head = App(head, self.term_atom(ibound))
        return head

    def term_atom(self, ibound):
        t = self.tok
        if t.kind == "ident":
            return Var(self.lower_ident("proof variable"))
        if t.kind == "[":
            self.pos += 1
            ind = self.individual(ibound)
            self.expect(",")
            body = self.term(ibound)
            self.expect("]")
            return Witness(ind, body)
        if t.kind == "(":
            self.pos += 1
            first = self.term(ibound)
            if self.accept(","):
                second = self.term(ibound)
                self.expect(")")
                return Pair(first, second)
            if self.accept(":"):
                a = self.formula(ibound)
                self.expect(")")
                return Ann(first, a)
            self.expect(")")
            return first
        self.error("expected a proof term", ["proof variable", "(", "["])


# -- freshening of shadowed binders --------------------------------------------

def freshen_formula(a, scope=frozenset(), avoid=None):
    """Rename quantifier binders that shadow an enclosing binder."""
    if avoid is None:
        avoid = set(formula_names(a)) | set(scope)
    match a:
        case Atom():
            return a
        case And(l, r) | Or(l, r) | Imp(l, r):
            return type(a)(freshen_formula(l, scope, avoid), freshen_formula(r, scope, avoid))
        case Forall(x, body) | Exists(x, body):
            if x in scope:
                y = fresh_name(x, avoid)
                avoid.add(y)
                body = subst_ind_formula(body, x, IVar(y))
                x = y
            return type(a)(x, freshen_formula(body, scope | {x}, avoid))
    raise TypeError(f"not a formula: {a!r}")


def freshen_term(p, pscope=frozenset(), iscope=frozenset(), avoid=None):
    """Rename proof and individual binders that shadow an enclosing binder."""
    if avoid is None:
        avoid = set(term_names(p)) | set(pscope) | set(iscope)

    def pbind(a, body):
        if a in pscope:
            b = fresh_name(a, avoid)
            avoid.add(b)
            return b, subst_proof(body, a, Var(b))
        return a, body

    def ibind(x, body):
        if x in iscope:
            y = fresh_name(x, avoid)
            avoid.add(y)
            return y, subst_ind_term(body, x, IVar(y))
        return x, body

    match p:
        case Var():
            return p
        case Lam(a, body):
            a, body = pbind(a, body)
            return Lam(a, freshen_term(body, pscope | {a}, iscope, avoid))
        case App(f, x) | Pair(f, x):
            return type(p)(freshen_term(f, pscope, iscope, avoid),
                           freshen_term(x, pscope, iscope, avoid))
        case Proj1(q) | Proj2(q) | Inj1(q) | Inj2(q):
            return type(p)(freshen_term(q, pscope, iscope, avoid))
        case Case(s, a1, q1, a2, q2):
            s = freshen_term(s, pscope, iscope, avoid)
            a1, q1 = pbind(a1, q1)
            a2, q2 = pbind(a2, q2)
            return Case(s, a1, freshen_term(q1, pscope | {a1}, iscope, avoid),
                        a2, freshen_term(q2, pscope | {a2}, iscope, avoid))
        case Gen(x, body):
            x, body = ibind(x, body)
            return Gen(x, freshen_term(body, pscope, iscope | {x}, avoid))
        case IApp(q, t):
            return IApp(freshen_term(q, pscope, iscope, avoid), t)
        case Witness(t, q):
            return Witness(t, freshen_term(q, pscope, iscope, avoid))
        case Dest(s, x, a, body):
            s = freshen_term(s, pscope, iscope, avoid)
            x, body = ibind(x, body)
            a, body = pbind(a, body)
            return Dest(s, x, a, freshen_term(body, pscope | {a}, iscope | {x}, avoid))
        case Ann(q, a):
            return Ann(freshen_term(q, pscope, iscope, avoid), freshen_formula(a, iscope, avoid))
    raise TypeError(f"not a proof term: {p!r}")


def parse_formula(text: str, constants=frozenset()):
    parser = Parser(text, constants)
    a = parser.formula()
    parser.at_end()
    return freshen_formula(a)


def parse_term(text: str, constants=frozenset()):
    parser = Parser(text, constants)
    p = parser.term()
    parser.at_end()
    return freshen_term(p)
