"""Syntax: ASTs, substitution, alpha-equivalence, parsing and printing."""
from .terms import *  # noqa: F401,F403
from .parser import parse_formula, parse_term, freshen_formula, freshen_term  # noqa: F401
from .printer import print_formula, print_term  # noqa: F401
from .context import Context, NameSupply, check_arities, parse_context, print_context  # noqa: F401
