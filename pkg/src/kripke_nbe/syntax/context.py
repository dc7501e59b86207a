"""Typing contexts (the worlds of the universal model) and name supplies."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ..errors import ParseError
from .parser import Parser, freshen_formula
from .printer import print_formula
from .terms import Atom, formula_free_vars


@dataclass(frozen=True)
class Context:
    """Ordered hypotheses plus the individuals in scope.

    ``Γ <= Γ'`` holds when Γ's hypotheses are a prefix of Γ''s and its
    individual variables a subset.
    """

    hyps: tuple = ()
    ind_vars: frozenset = frozenset()
    constants: frozenset = frozenset()

    @cached_property
    def _table(self) -> dict:
        return dict(self.hyps)

    def lookup(self, name):
        return self._table.get(name)

    def __contains__(self, name) -> bool:
        return name in self._table

    @property
    def proof_names(self):
        return self._table.keys()

    @property
    def individuals(self) -> frozenset:
        return self.ind_vars | self.constants

    @cached_property
    def names(self) -> frozenset:
        return frozenset(self._table) | self.ind_vars | self.constants

    def extend(self, name: str, formula) -> "Context":
        if name in self._table:
            raise ValueError(f"hypothesis {name!r} already in context")
        return Context(self.hyps + ((name, formula),), self.ind_vars, self.constants)

    def extend_ind(self, name: str) -> "Context":
        return Context(self.hyps, self.ind_vars | {name}, self.constants)

    def __le__(self, other: "Context") -> bool:
        n = len(self.hyps)
        return (other.hyps[:n] == self.hyps and self.ind_vars <= other.ind_vars
                and self.constants <= other.constants)

    def is_closed(self) -> bool:
        return not self.hyps

    def well_scoped(self, formula) -> bool:
        return formula_free_vars(formula) <= self.individuals


@dataclass
class NameSupply:
    """Job-local deterministic source of fresh names.

    Proof variables come out as ``a0, a1, ...`` and individual variables as
    ``x0, x1, ...``; a candidate already used in the given world is skipped.
    Not thread-safe: one supply per normalization job.
    """

    proof_prefix: str = "a"
    ind_prefix: str = "x"
    counters: dict = field(default_factory=lambda: {"proof": 0, "ind": 0})

    def _next(self, kind, prefix, taken):
        while True:
            name = f"{prefix}{self.counters[kind]}"
            self.counters[kind] += 1
            if name not in taken:
                return name

    def proof_var(self, world: Context) -> str:
        return self._next("proof", self.proof_prefix, world.names)

    def ind_var(self, world: Context) -> str:
        return self._next("ind", self.ind_prefix, world.names)


def parse_context(text: str) -> Context:
    """Parse a context file.

    One declaration per line, each ending in ``.``: ``const c.``, ``var x.``
    or ``a : <formula>.``; ``#`` starts a comment.
    """
    parser = Parser(text, comments=True)
    hyps, names = [], set()
    ind_vars, constants = set(), set()
    arities = {}
    while parser.tok.kind != "eof":
        tok = parser.tok
        if parser.accept("const") or parser.accept("var"):
            name = parser.lower_ident("individual")
            if name in names:
                raise ParseError(f"{name!r} declared twice", tok.line, tok.column)
            names.add(name)
            (constants if tok.kind == "const" else ind_vars).add(name)
            parser.expect(".")
            continue
        name = parser.lower_ident("hypothesis name")
        if name in names:
            raise ParseError(f"{name!r} declared twice", tok.line, tok.column)
        parser.expect(":")
        parser.constants = frozenset(constants)
        formula = freshen_formula(parser.formula())
        parser.expect(".")
        unbound = formula_free_vars(formula) - ind_vars - constants
        if unbound:
            raise ParseError(f"undeclared individual(s) {', '.join(sorted(unbound))}",
                             tok.line, tok.column)
        check_arities(formula, arities, tok.line, tok.column)
        names.add(name)
        hyps.append((name, formula))
    return Context(tuple(hyps), frozenset(ind_vars), frozenset(constants))


def check_arities(formula, arities: dict, line=1, column=1):
    """Record atom arities in ``arities``; raise on an inconsistent use."""
    stack = [formula]
    while stack:
        a = stack.pop()
        if isinstance(a, Atom):
            seen = arities.setdefault(a.name, len(a.args))
            if seen != len(a.args):
                raise ParseError(f"atom {a.name} used with arity {len(a.args)} and {seen}",
                                 line, column)
        elif hasattr(a, "body"):
            stack.append(a.body)
        else:
            stack.extend((a.left, a.right))


def print_context(ctx: Context) -> str:
    lines = [f"const {c}." for c in sorted(ctx.constants)]
    lines += [f"var {x}." for x in sorted(ctx.ind_vars)]
    lines += [f"{a} : {print_formula(f)}." for a, f in ctx.hyps]
    return "\n".join(lines) + ("\n" if lines else "")
