"""Normalization by evaluation for minimal intuitionistic predicate logic,
via a continuation-passing Kripke semantics."""

__version__ = "0.1.0"
