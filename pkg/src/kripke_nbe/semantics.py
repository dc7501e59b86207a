"""Continuation-passing forcing domain of the universal model.

Worlds are typing contexts. A formula is *forced* at a world by a
computation that, given an answer formula, any larger world and a
continuation expecting a *strong* value, produces a normal proof of the
answer. Strong values are formula-directed:

=========  ===========================================================
atom X     ``SAtom(e)``, ``e`` a normal proof of X
A /\\ B     ``SPair(fa, fb)``
A \\/ B     ``SLeft(fa)`` or ``SRight(fb)``
A -> B     ``SFun(f)``, ``f(world, fa)`` forces B
forall     ``SAll(f)``, ``f(world, t)`` forces the instance at ``t``
exists     ``SWit(t, fa)``
=========  ===========================================================

Under call-by-name the components ``fa``/``fb`` are :class:`Forcing`
computations; the call-by-value domain in :mod:`kripke_nbe.nbe` stores
strong values there instead (functions and ``forall`` keep computations).

The answer formula is only carried along for validation: the answer itself
is a raw proof term.
"""
from __future__ import annotations

import contextvars
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Callable

from .errors import FormulaNotAtomic, KernelError
from .syntax import Context, print_formula, print_term
from .syntax.terms import Atom
from .typecheck import check, is_normal

# -- strong values ----------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SAtom:
    term: Any


@dataclass(frozen=True, slots=True)
class SPair:
    left: Any
    right: Any


@dataclass(frozen=True, slots=True)
class SLeft:
    value: Any


@dataclass(frozen=True, slots=True)
class SRight:
    value: Any


@dataclass(frozen=True, slots=True)
class SFun:
    fn: Callable


@dataclass(frozen=True, slots=True)
class SAll:
    fn: Callable


@dataclass(frozen=True, slots=True)
class SWit:
    ind: Any
    value: Any


# -- validation switch ------------------------------------------------------

_VALIDATE = contextvars.ContextVar("kripke_nbe_validate", default=False)


@contextmanager
def validating(enabled: bool = True):
    """Re-typecheck every answer delivered through a continuation."""
    token = _VALIDATE.set(enabled)
    try:
        yield
    finally:
        _VALIDATE.reset(token)


def validation_enabled() -> bool:
    return _VALIDATE.get()


class ValidationError(KernelError):
    pass


# -- forcing computations ---------------------------------------------------

Continuation = Callable[[Context, Any], Any]


@dataclass(frozen=True, slots=True)
class Forcing:
    """A computation ``(answer, world, k) -> normal proof``.

    ``world`` is the birth world (None when unknown); the computation may be
    invoked at any extension of it.
    """

    compute: Callable[[Any, Context, Continuation], Any]
    world: Context | None = field(default=None, compare=False)
    formula: Any = field(default=None, compare=False)

    def __call__(self, answer, world: Context, k: Continuation):
        if _VALIDATE.get() and self.world is not None and not self.world <= world:
            raise ValidationError("forcing value invoked at a world that does not extend its birth world")
        return self.compute(answer, world, k)


def unit(world: Context | None, sv, formula=None) -> Forcing:
    """Deliver ``sv`` immediately at whatever world the computation is run."""
    return Forcing(lambda answer, w, k: k(w, sv), world, formula)


def bind(f: Callable[[Context, Any], Forcing], v: Forcing, formula=None) -> Forcing:
    """Run ``v``, feed each strong value it delivers through ``f``."""
    def compute(answer, w, k):
        return v(answer, w, lambda w2, sv: f(w2, sv)(answer, w2, k))
    return Forcing(compute, v.world, formula)


def _project_atom(world, sv):
    if not isinstance(sv, SAtom):
        raise ValidationError(f"expected an atomic strong value, got {type(sv).__name__}")
    return sv.term


def run(v: Forcing, world: Context, formula=None):
    """Extract the normal proof of an atomic formula from ``v``."""
    formula = formula if formula is not None else v.formula
    if formula is not None and not isinstance(formula, Atom):
        raise FormulaNotAtomic(f"run is defined at atomic formulas only, not {print_formula(formula)}")
    return v(formula, world, answer_checked(world, formula, _project_atom))


def answer_checked(world: Context, formula, k: Continuation) -> Continuation:
    """Wrap ``k`` so that, when validating, its answers are re-typechecked.

    Each answer must be normal and prove ``formula`` at the world the
    continuation is invoked at.
    """
    if not _VALIDATE.get() or formula is None:
        return k

    def checked(w, sv):
        if not world <= w:
            raise ValidationError("continuation invoked at a world that does not extend its own")
        result = k(w, sv)
        if not is_normal(result):
            raise ValidationError(f"answer {print_term(result)} is not normal")
        check(w, result, formula)
        return result

    return checked
