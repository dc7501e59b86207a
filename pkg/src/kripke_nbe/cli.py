"""The ``nbe`` command.

Exit codes: 0 ok, 1 type error (or "not equal"), 2 parse error,
3 call-by-value on an open term, 4 reduction fuel exhausted.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import CBVOpenTerm, FuelExhausted, GenerationFailed, ParseError, TypeCheckError
from .nbe import Strategy, normalize
from .reduction import DEFAULT_FUEL, beta_nf
from .syntax import (
    Context, check_arities, parse_context, parse_formula, parse_term,
    print_context, print_formula, print_term,
)
from .syntax.terms import alpha_eq, formula_free_vars
from .testgen import FRAGMENTS, gen_problem, inject_redexes
from .typecheck import check, infer

EXIT_OK, EXIT_TYPE, EXIT_PARSE, EXIT_STRATEGY, EXIT_FUEL = range(5)


def _load_context(arg: str | None) -> Context:
    if arg is None:
        return Context()
    path = Path(arg)
    # inline text is accepted too: "c : X \/ Y."
    text = path.read_text() if path.is_file() else arg
    return parse_context(text)


def _goal(ctx: Context, text: str):
    formula = parse_formula(text, ctx.constants)
    arities = {}
    for _, hyp in ctx.hyps:
        check_arities(hyp, arities)
    check_arities(formula, arities)
    unbound = formula_free_vars(formula) - ctx.individuals
    if unbound:
        raise TypeCheckError(f"formula mentions undeclared individual(s) {', '.join(sorted(unbound))}")
    return formula


def _typed_input(args, expr: str):
    ctx = _load_context(args.context)
    term = parse_term(expr, ctx.constants)
    if args.type is None:
        formula = infer(ctx, term)
    else:
        formula = _goal(ctx, args.type)
        check(ctx, term, formula)
    return ctx, term, formula


def cmd_check(args) -> int:
    _, _, formula = _typed_input(args, args.expr[0])
    print(f"ok : {print_formula(formula)}")
    return EXIT_OK


def cmd_normalize(args) -> int:
    ctx, term, formula = _typed_input(args, args.expr[0])
    print(print_term(normalize(ctx, term, formula, Strategy(args.strategy), typecheck=False)))
    return EXIT_OK


def cmd_reduce(args) -> int:
    ctx = _load_context(args.context)
    term = parse_term(args.expr[0], ctx.constants)
    if args.type is not None:
        check(ctx, term, _goal(ctx, args.type))
    print(print_term(beta_nf(term, args.fuel)))
    return EXIT_OK


def cmd_equal(args) -> int:
    if len(args.expr) != 2:
        print("error: equal needs exactly two -e terms", file=sys.stderr)
        return EXIT_PARSE
    ctx, p, formula = _typed_input(args, args.expr[0])
    q = parse_term(args.expr[1], ctx.constants)
    check(ctx, q, formula)
    strategy = Strategy(args.strategy)
    np = normalize(ctx, p, formula, strategy, typecheck=False)
    nq = normalize(ctx, q, formula, strategy, typecheck=False)
    if alpha_eq(np, nq):
        print("equal")
        return EXIT_OK
    print(f"not equal\n{print_term(np)}\n{print_term(nq)}")
    return EXIT_TYPE


def cmd_gen(args) -> int:
    """Print a generated problem as context, goal and term (one per line)."""
    problem = gen_problem(args.seed, args.size, args.fragment)
    term = problem.term
    if args.inject:
        term = inject_redexes(term, args.inject, args.seed, problem.ctx, problem.formula)
    print(" ".join(print_context(problem.ctx).splitlines()))
    print(print_formula(problem.formula))
    print(print_term(term))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nbe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, type_required):
        p.add_argument("-c", "--context", help="context file, or the context text itself")
        p.add_argument("-e", "--expr", action="append", required=True, help="proof term")
        p.add_argument("-t", "--type", required=type_required, help="goal formula")

    p = sub.add_parser("check", help="typecheck a term")
    common(p, type_required=False)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("normalize", help="print the normal form")
    common(p, type_required=False)
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default="cbn")
    p.set_defaults(run=cmd_normalize)

    p = sub.add_parser("reduce", help="beta-normalize by small steps")
    common(p, type_required=False)
    p.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    p.set_defaults(run=cmd_reduce)

    p = sub.add_parser("equal", help="compare two terms by normal form")
    common(p, type_required=True)
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default="cbn")
    p.set_defaults(run=cmd_equal)

    p = sub.add_parser("gen", help="generate a random problem (test harness)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=20)
    p.add_argument("--fragment", choices=sorted(FRAGMENTS), default="full")
    p.add_argument("--inject", type=int, default=0, metavar="N", help="add N redexes")
    p.set_defaults(run=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TypeCheckError as exc:
        print(f"type error: {exc}", file=sys.stderr)
        return EXIT_TYPE
    except CBVOpenTerm as exc:
        print(f"strategy error: {exc}", file=sys.stderr)
        return EXIT_STRATEGY
    except FuelExhausted as exc:
        print(f"fuel exhausted: {exc}", file=sys.stderr)
        return EXIT_FUEL
    except (GenerationFailed, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TYPE


if __name__ == "__main__":
    sys.exit(main())
