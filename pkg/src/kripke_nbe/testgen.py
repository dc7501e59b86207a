"""Seedable generators of well-typed proof terms for the property suites.

``gen_term`` searches goal-directed: introduction rules follow the shape of
the goal, eliminations are spines out of hypotheses that either end at the
goal or at a disjunction/existential to split on. ``inject_redexes`` wraps
random subterms in beta-expansions that contract back to the subterm.

Everything is a pure function of its seed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import GenerationFailed
from .syntax import Context
from .syntax.terms import (
    And, Ann, App, Atom, Case, Dest, Exists, Forall, Gen, IApp, IConst, Imp,
    Inj1, Inj2, IVar, Lam, Or, Pair, Proj1, Proj2, Var, Witness,
    formula_alpha_eq, formula_names, fresh_name, replace_at, subst_ind_formula,
    children, subterm_at, term_names, term_size,
)
from .typecheck import _INFERABLE, _head_infers, infer

# spines longer than this are not explored
_MAX_SPINE = 4
# search effort per requested node before giving up
_EFFORT = 60


def _individuals(ctx: Context):
    return [IConst(c) for c in sorted(ctx.constants)] + [IVar(x) for x in sorted(ctx.ind_vars)]


def _spines(ctx: Context, formula, depth=0):
    """All elimination spines out of a hypothesis of ``formula``.

    Yields ``(ops, result)`` where ops are ``("app", A)``, ``("fst",)``,
    ``("snd",)`` or ``("inst", t)``.
    """
    yield (), formula
    if depth >= _MAX_SPINE:
        return
    match formula:
        case Imp(a, b):
            for ops, res in _spines(ctx, b, depth + 1):
                yield (("app", a),) + ops, res
        case And(a, b):
            for ops, res in _spines(ctx, a, depth + 1):
                yield (("fst",),) + ops, res
            for ops, res in _spines(ctx, b, depth + 1):
                yield (("snd",),) + ops, res
        case Forall(x, body):
            for t in _individuals(ctx):
                for ops, res in _spines(ctx, subst_ind_formula(body, x, t), depth + 1):
                    yield (("inst", t),) + ops, res


@dataclass
class _Search:
    rng: random.Random
    effort: int
    used: int = field(default=0)

    def tick(self):
        self.used += 1
        if self.used > self.effort:
            raise GenerationFailed("search effort exhausted")

    def candidates(self, ctx: Context, goal, budget, seen=frozenset()):
        """Weighted candidate rules at ``goal``."""
        out = []
        match goal if budget >= 1 else None:
            case Imp():
                out.append((1, ("lam",)))
            case And():
                out.append((1, ("pair",)))
            case Or():
                out += [(1, ("inl",)), (1, ("inr",))]
            case Forall():
                out.append((1, ("gen",)))
            case Exists():
                out += [(1, ("wit", t)) for t in _individuals(ctx)]
        # large budgets lean towards splits so that terms grow
        grow = 1 + budget / 10
        for name, hyp in ctx.hyps:
            weight = 1 if isinstance(hyp, Atom) else 2
            for ops, res in _spines(ctx, hyp):
                cost = len(ops)
                if cost > budget:
                    continue
                if formula_alpha_eq(res, goal):
                    out.append((weight, ("use", name, ops)))
                if (name, ops) in seen:
                    continue
                if isinstance(res, Or) and cost + 1 <= budget:
                    out.append((weight * grow, ("case", name, ops)))
                if isinstance(res, Exists) and cost + 1 <= budget:
                    out.append((weight * grow, ("dest", name, ops)))
        return out

    def order(self, cands):
        """Weighted random permutation of the candidates."""
        keyed = [(self.rng.random() ** (1.0 / w), c) for w, c in cands]
        keyed.sort(key=lambda kc: kc[0], reverse=True)
        return [c for _, c in keyed]

    def gen(self, ctx: Context, goal, budget, seen=frozenset()):
        """A term with at most ``budget`` constructor nodes proving ``goal``, or None."""
        if budget < 0:
            return None
        self.tick()
        # seen: spines already split on this path; splitting again is redundant
        for cand in self.order(self.candidates(ctx, goal, budget, seen)):
            term = self.apply(ctx, goal, budget, cand, seen)
            if term is not None:
                return term
        return None

    def split(self, budget, parts):
        """Randomly split ``budget`` into ``parts`` non-negative shares."""
        if parts == 0:
            return []
        if budget < 0:
            return None
        cuts = sorted(self.rng.randint(0, budget) for _ in range(parts - 1))
        return [b - a for a, b in zip([0] + cuts, cuts + [budget])]

    def first_share(self, budget):
        # the second sibling gets whatever the first leaves over
        return self.rng.randint(budget // 2, budget) if budget >= 0 else -1

    def spine(self, ctx, name, ops, budget, seen=frozenset()):
        args = [op[1] for op in ops if op[0] == "app"]
        shares = self.split(budget, len(args))
        if shares is None:
            return None
        term, k = Var(name), 0
        for op in ops:
            match op:
                case ("app", a):
                    arg = self.gen(ctx, a, shares[k], seen)
                    if arg is None:
                        return None
                    term, k = App(term, arg), k + 1
                case ("fst",):
                    term = Proj1(term)
                case ("snd",):
                    term = Proj2(term)
                case ("inst", t):
                    term = IApp(term, t)
        return term

    def apply(self, ctx: Context, goal, budget, cand, seen=frozenset()):
        rest = budget - 1
        match cand, goal:
            case ("lam",), Imp(a, b):
                v = fresh_name("a", ctx.names)
                body = self.gen(ctx.extend(v, a), b, rest, seen)
                return None if body is None else Lam(v, body)
            case ("pair",), And(a, b):
                left = self.gen(ctx, a, self.first_share(rest), seen)
                if left is None:
                    return None
                right = self.gen(ctx, b, rest - _cost(left), seen)
                return None if right is None else Pair(left, right)
            case ("inl",), Or(a, _):
                q = self.gen(ctx, a, rest, seen)
                return None if q is None else Inj1(q)
            case ("inr",), Or(_, b):
                q = self.gen(ctx, b, rest, seen)
                return None if q is None else Inj2(q)
            case ("gen",), Forall(x, body):
                y = fresh_name(x, ctx.names | formula_names(goal))
                q = self.gen(ctx.extend_ind(y), subst_ind_formula(body, x, IVar(y)), rest, seen)
                return None if q is None else Gen(y, q)
            case ("wit", t), Exists(x, body):
                q = self.gen(ctx, subst_ind_formula(body, x, t), rest, seen)
                return None if q is None else Witness(t, q)
            case ("use", name, ops), _:
                return self.spine(ctx, name, ops, budget - len(ops), seen)
        # case split or existential opening
        name, ops = cand[1], cand[2]
        spine_budget = self.rng.randint(0, max(0, (budget - 1 - len(ops)) // 3))
        scrut = self.spine(ctx, name, ops, spine_budget, seen)
        if scrut is None:
            return None
        rest = budget - 1 - _cost(scrut)
        seen = seen | {(name, ops)}
        res = infer(ctx, scrut)
        match cand[0], res:
            case "case", Or(a, b):
                a1 = fresh_name("a", ctx.names)
                q1 = self.gen(ctx.extend(a1, a), goal, self.first_share(rest), seen)
                if q1 is None:
                    return None
                q2 = self.gen(ctx.extend(a1, b), goal, rest - _cost(q1), seen)
                return None if q2 is None else Case(scrut, a1, q1, a1, q2)
            case "dest", Exists(x, body):
                y = fresh_name(x, ctx.names | formula_names(goal))
                a = fresh_name("a", ctx.names)
                inner = ctx.extend_ind(y).extend(a, subst_ind_formula(body, x, IVar(y)))
                q = self.gen(inner, goal, rest, seen)
                return None if q is None else Dest(scrut, y, a, q)
        return None


def _cost(p) -> int:
    """Constructor nodes of ``p``; variable leaves are free."""
    return term_size(p) - _leaves(p)


def _leaves(p) -> int:
    kids = children(p)
    return sum(map(_leaves, kids)) if kids else 1


def gen_term(ctx: Context, formula, size: int, seed) -> object:
    """A random proof of ``formula`` in ``ctx`` with at most ``size`` constructor nodes.

    Variable leaves do not count towards ``size``. Raises GenerationFailed
    when nothing is found within the budget.
    """
    if size < 1:
        raise ValueError("size must be at least 1")
    search = _Search(random.Random(seed), _EFFORT * size)
    term = search.gen(ctx, formula, size)
    if term is None:
        raise GenerationFailed(f"no proof found within {size} nodes")
    return term


# -- redex injection ----------------------------------------------------------


def typed_positions(ctx: Context, p, goal, mode="check", path=()):
    """Yield ``(path, ctx, formula, mode)`` for every subterm of ``p``.

    ``mode`` is "infer" where the checker synthesizes the subterm's formula
    (so a replacement must synthesize too), "check" otherwise.
    """
    yield path, ctx, goal, mode
    match p:
        case Lam(a, body) if isinstance(goal, Imp) and a not in ctx:
            yield from typed_positions(ctx.extend(a, goal.left), body, goal.right, "check", path + (0,))
        case Pair(l, r) if isinstance(goal, And):
            yield from typed_positions(ctx, l, goal.left, "check", path + (0,))
            yield from typed_positions(ctx, r, goal.right, "check", path + (1,))
        case Inj1(q) if isinstance(goal, Or):
            yield from typed_positions(ctx, q, goal.left, "check", path + (0,))
        case Inj2(q) if isinstance(goal, Or):
            yield from typed_positions(ctx, q, goal.right, "check", path + (0,))
        case Gen(x, q) if isinstance(goal, Forall) and x not in ctx.names:
            yield from typed_positions(
                ctx.extend_ind(x), q, subst_ind_formula(goal.body, goal.var, IVar(x)),
                "check", path + (0,))
        case Witness(t, q) if isinstance(goal, Exists):
            yield from typed_positions(
                ctx, q, subst_ind_formula(goal.body, goal.var, t), "check", path + (0,))
        case Case(s, a1, q1, a2, q2) if a1 not in ctx and a2 not in ctx:
            sf = infer(ctx, s)
            yield from typed_positions(ctx, s, sf, "infer", path + (0,))
            yield from typed_positions(ctx.extend(a1, sf.left), q1, goal, mode, path + (1,))
            yield from typed_positions(ctx.extend(a2, sf.right), q2, goal, mode, path + (2,))
        case Dest(s, x, a, q) if x not in ctx.names and a not in ctx:
            sf = infer(ctx, s)
            inner = ctx.extend_ind(x).extend(a, subst_ind_formula(sf.body, sf.var, IVar(x)))
            yield from typed_positions(ctx, s, sf, "infer", path + (0,))
            yield from typed_positions(inner, q, goal, mode, path + (1,))
        case App(f, arg):
            if _head_infers(ctx, f):
                ff = infer(ctx, f)
                yield from typed_positions(ctx, f, ff, "infer", path + (0,))
                yield from typed_positions(ctx, arg, ff.left, "check", path + (1,))
            else:
                af = infer(ctx, arg)
                yield from typed_positions(ctx, f, Imp(af, goal), "check", path + (0,))
                yield from typed_positions(ctx, arg, af, "infer", path + (1,))
        case Proj1(q) | Proj2(q) | IApp(q, _):
            yield from typed_positions(ctx, q, infer(ctx, q), "infer", path + (0,))
        case Ann(q, a):
            yield from typed_positions(ctx, q, a, "check", path + (0,))


def _expansions(ctx: Context, q, b, mode, avoid):
    """Beta-expansions of ``q : b``, each contracting back to ``q`` in one step."""
    a = fresh_name("a", avoid)
    ident = Lam(a, Var(a))
    if mode == "check" and _head_infers(ctx, q):
        out = [App(ident, q)]
    else:
        out = [App(Ann(ident, Imp(b, b)), q)]
    if isinstance(b, Atom):
        return out
    a2 = fresh_name("a", avoid | {a})
    out += [
        Proj1(Ann(Pair(q, q), And(b, b))),
        Proj2(Ann(Pair(q, q), And(b, b))),
        Case(Ann(Inj1(q), Or(b, b)), a, Var(a), a2, Var(a2)),
        Case(Ann(Inj2(q), Or(b, b)), a, Var(a), a2, Var(a2)),
    ]
    inds = _individuals(ctx)
    if inds:
        x = fresh_name("x", avoid)
        t = inds[0]
        # (gen x => q) [t] contracts to q because x does not occur in q
        out.append(IApp(Ann(Gen(x, q), Forall(x, b)), t))
        out.append(Dest(Ann(Witness(t, q), Exists(x, b)), x, a, Var(a)))
    return out


def inject_redexes(p, n: int, seed, ctx: Context | None = None, formula=None):
    """Wrap ``n`` random subterms of ``p`` in type-preserving beta-expansions.

    With ``ctx`` and ``formula`` the result still checks at ``formula`` and
    is beta-equal to ``p``. Without them only the root is known to be a
    checking position, so the expansions are identity applications nested
    around it; this needs ``p`` to be inferable.
    """
    rng = random.Random(seed)
    if formula is None:
        if not isinstance(p, _INFERABLE):
            raise ValueError("a formula is needed to expand an introduction form")
        avoid = set(term_names(p)) | (ctx.names if ctx is not None else set())
        names = []
        for _ in range(n):
            names.append(fresh_name("a", avoid))
            avoid.add(names[-1])
        # App(fun a0 => App(fun a1 => a1, a0), p): every argument is a variable
        body = Var(names[-1])
        for inner, outer in zip(reversed(names[1:]), reversed(names[:-1])):
            body = App(Lam(inner, body), Var(outer))
        return App(Lam(names[0], body), p) if n else p
    ctx = ctx if ctx is not None else Context()
    for _ in range(n):
        positions = list(typed_positions(ctx, p, formula))
        path, lctx, b, mode = rng.choice(positions)
        target = subterm_at(p, path)
        avoid = set(lctx.names) | set(term_names(p)) | formula_names(b)
        choices = _expansions(lctx, target, b, mode, avoid)
        p = replace_at(p, path, rng.choice(choices))
    return p


# -- random problems ----------------------------------------------------------

FRAGMENTS = {
    "imp": ("imp",),
    "prop": ("imp", "and", "or"),
    "full": ("imp", "and", "or", "forall", "exists"),
}

_ATOMS0 = ("X", "Y", "Z")
_ATOMS1 = ("P", "Q")


def random_formula(rng: random.Random, depth: int, fragment="prop", bound=(), inds=()):
    """A random formula over X, Y, Z (and P, Q applied to individuals)."""
    conns = FRAGMENTS[fragment]
    terms = list(bound) + list(inds)
    if depth <= 0 or rng.random() < 0.25:
        if terms and rng.random() < 0.5:
            return Atom(rng.choice(_ATOMS1), (rng.choice(terms),))
        return Atom(rng.choice(_ATOMS0))
    conn = rng.choice(conns)
    sub = lambda: random_formula(rng, depth - 1, fragment, bound, inds)  # noqa: E731
    match conn:
        case "imp":
            return Imp(sub(), sub())
        case "and":
            return And(sub(), sub())
        case "or":
            return Or(sub(), sub())
    y = fresh_name("y", {t.name for t in terms})
    body = random_formula(rng, depth - 1, fragment, tuple(bound) + (IVar(y),), inds)
    return Forall(y, body) if conn == "forall" else Exists(y, body)


def _sub_formulas(a):
    yield a
    match a:
        case Imp(l, r) | And(l, r) | Or(l, r):
            yield from _sub_formulas(l)
            yield from _sub_formulas(r)


@dataclass(frozen=True)
class Problem:
    ctx: Context
    formula: object
    term: object


def gen_problem(seed, size: int = 20, fragment: str = "full", attempts: int = 200) -> Problem:
    """A random context, goal and generated proof of the goal."""
    rng = random.Random(seed)
    quantified = fragment == "full"
    for _ in range(attempts):
        consts = frozenset({"c"}) if quantified else frozenset()
        inds = (IConst("c"),) if quantified else ()
        ctx = Context(constants=consts)
        for i in range(rng.randint(0, 4)):
            ctx = ctx.extend(f"h{i}", random_formula(rng, rng.randint(0, 3), fragment, inds=inds))
        pool = [f for _, h in ctx.hyps for f in _sub_formulas(h)]
        if pool and rng.random() < 0.6:
            goal = rng.choice(pool)
            if rng.random() < 0.5:
                goal = Imp(random_formula(rng, 2, fragment, inds=inds), goal)
        else:
            goal = random_formula(rng, 3, fragment, inds=inds)
        try:
            term = gen_term(ctx, goal, size, rng.randrange(2**32))
        except GenerationFailed:
            continue
        return Problem(ctx, goal, term)
    raise GenerationFailed(f"no problem generated from seed {seed}")


def close_problem(problem: Problem) -> Problem:
    """Abstract every hypothesis, giving a closed term of an implication."""
    term, goal = problem.term, problem.formula
    for name, hyp in reversed(problem.ctx.hyps):
        term, goal = Lam(name, term), Imp(hyp, goal)
    return Problem(Context(ind_vars=problem.ctx.ind_vars, constants=problem.ctx.constants), goal, term)
