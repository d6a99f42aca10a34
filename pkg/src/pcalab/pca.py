"""Combinatory completeness: bracket abstraction, tuples, Turing's fixed point.

Abstraction uses the k/s clauses::

    [x] x     = S K K
    [x] M     = K M              if x is not free in M and M is a variable
                                 or a closed value
    [x] M N   = S ([x] M) ([x] N)

The ``K M`` shortcut is withheld from compound terms that are not values:
application is strict, so ``K M`` would force ``M`` as soon as the
abstraction is applied to its parameters and ``([x] t) a1 .. an`` could
diverge.  With the restriction every partial application of an abstraction
is a value.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .machine import Value, evaluate
from .terms import (PRIMS, App, K, Num, S, Term, Var, app, free_vars, is_closed, is_value,
                    substitute)

I = App(App(S, K), K)


@dataclass(frozen=True)
class AbstractTerm:
    term: Term
    free: tuple[int, ...] = field(default=())

    @classmethod
    def of(cls, t: Term) -> "AbstractTerm":
        return cls(t, tuple(sorted(free_vars(t))))


def _safe(t: Term) -> bool:
    return type(t) is Var or (is_closed(t) and is_value(t))


def _abstract(t: Term, x: int, optimize: bool) -> Term:
    if type(t) is Var and t.i == x:
        return I
    if type(t) is not App:
        return App(K, t)
    if x not in free_vars(t) and _safe(t):
        return App(K, t)
    if optimize and type(t.arg) is Var and t.arg.i == x and x not in free_vars(t.fun) \
            and _safe(t.fun):
        return t.fun
    return app(S, _abstract(t.fun, x, optimize), _abstract(t.arg, x, optimize))


def bracket_abstract(t: AbstractTerm | Term, x: int, *, optimize: bool = False) -> AbstractTerm:
    """``[x] t``.  ``optimize`` adds the eta clause ``[x] M x = M`` for safe M."""
    term = t.term if isinstance(t, AbstractTerm) else t
    return AbstractTerm.of(_abstract(term, x, optimize))


def lam(xs: Sequence[int] | int, body: Term, *, optimize: bool = False) -> Term:
    """Abstract ``body`` over ``xs`` (outermost first)."""
    if isinstance(xs, int):
        xs = [xs]
    t = body
    for x in reversed(xs):
        t = _abstract(t, x, optimize)
    return t


# -- lambda surface syntax --------------------------------------------------

_LTOKEN = re.compile(r"\s*(?:(\\|λ)|(\.)|(\()|(\))|(\d+)|([A-Za-z_][A-Za-z0-9_']*))")


class LambdaSyntaxError(ValueError):
    pass


def _ltokens(src: str) -> list[str]:
    toks = []
    pos = 0
    # comments run from '#' to end of line
    src = re.sub(r"#[^\n]*", "", src).rstrip()
    while pos < len(src):
        m = _LTOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise LambdaSyntaxError(f"unexpected input at {pos}: {src[pos:pos + 10]!r}")
        tok = m.group(m.lastindex)
        toks.append("\\" if tok == "λ" else tok)
        pos = m.end()
    return toks


class _LambdaParser:
    def __init__(self, src: str, env: dict[str, Term], optimize: bool):
        self.toks = _ltokens(src)
        self.pos = 0
        self.env = env
        self.optimize = optimize
        self.next_var = 1 + max([v.i for v in env.values() if type(v) is Var], default=-1)
        self.scope: list[tuple[str, int]] = []

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise LambdaSyntaxError(f"expected {expected or 'token'}, got {tok!r}")
        self.pos += 1
        return tok

    def expr(self) -> Term:
        if self.peek() == "\\":
            self.take()
            names = []
            while self.peek() not in (".", None):
                names.append(self.take())
            self.take(".")
            if not names:
                raise LambdaSyntaxError("lambda without binders")
            idx = []
            for nm in names:
                self.scope.append((nm, self.next_var))
                idx.append(self.next_var)
                self.next_var += 1
            body = self.expr()
            del self.scope[-len(names):]
            return lam(idx, body, optimize=self.optimize)
        t = None
        while self.peek() not in (None, ")"):
            if self.peek() == "\\":
                u = self.expr()
            else:
                u = self.atom()
            t = u if t is None else App(t, u)
        if t is None:
            raise LambdaSyntaxError("empty expression")
        return t

    def atom(self) -> Term:
        tok = self.take()
        if tok == "(":
            t = self.expr()
            self.take(")")
            return t
        if tok.isdigit():
            return Num(int(tok))
        for nm, i in reversed(self.scope):
            if nm == tok:
                return Var(i)
        if tok in self.env:
            return self.env[tok]
        if tok == "K":
            return K
        if tok == "S":
            return S
        if tok == "I":
            return I
        if tok in PRIMS:
            return PRIMS[tok]
        raise LambdaSyntaxError(f"unbound name {tok!r}")


def compile_lambda(src: str, env: dict[str, Term] | None = None, *, optimize: bool = False) -> Term:
    """Compile ``\\x y. body`` syntax to an S/K term.

    Names resolve to bound variables, then to ``env`` (closed terms or
    ``Var`` holes), then to ``S``, ``K``, ``I`` and primitive names.
    """
    p = _LambdaParser(src, env or {}, optimize)
    t = p.expr()
    if p.peek() is not None:
        raise LambdaSyntaxError(f"trailing input at token {p.peek()!r}")
    return t


# -- tuples and projections -------------------------------------------------

def tuple_element(*elems: Term) -> Term:
    """``<a1 .. an> = [z] z a1 .. an`` for values ``ai``."""
    if not elems:
        raise ValueError("tuples need at least one component")
    for a in elems:
        if not (is_closed(a) and is_value(a)):
            raise ValueError("tuple components must be closed values")
    return lam(0, app(Var(0), *elems))


def projector(n: int, i: int) -> Term:
    """``U^n_i = [u1 .. un] ui`` (``i`` counts from 1)."""
    if n < 1 or not 1 <= i <= n:
        raise ValueError(f"projector index {i} out of range for n={n}")
    return lam(list(range(n)), Var(i - 1))


# -- Turing's fixed point ---------------------------------------------------

def turing_fixpoint() -> Term:
    """``f = u u`` with ``u = [x y z] y (x x y) z``.

    The trailing ``z`` totalises Turing's body ``y (x x y)``: ``u a b`` is
    always a value, and when ``b (a a b)`` converges the two agree on every
    argument.  So ``f`` is total and ``f g`` behaves as ``g (f g)``.
    """
    x, y, z = Var(0), Var(1), Var(2)
    u = lam([0, 1, 2], app(y, app(x, x, y), z))
    return App(u, u)


def totally_undefined(a: Term, b: Term) -> Term:
    """``S (K a) (K b)``: undefined on every argument whenever ``a b`` is."""
    return app(S, App(K, a), App(K, b))


@dataclass
class FixpointCheck:
    g: Term
    fg_defined: bool
    agree: bool
    detail: list = field(default_factory=list)


def check_turing_fixpoint(g: Term, probes: Iterable[Term], fuel: int = 10_000) -> FixpointCheck:
    """Compare ``f g`` and ``g (f g)`` by unfolding both on probe arguments."""
    f = turing_fixpoint()
    fg = evaluate(App(f, g), fuel)
    if not isinstance(fg, Value):
        return FixpointCheck(g, False, False)
    gfg = evaluate(App(g, fg.term), fuel)
    if not isinstance(gfg, Value):
        return FixpointCheck(g, True, False)
    agree = True
    detail = []
    for p in probes:
        left = evaluate(App(fg.term, p), fuel)
        right = evaluate(App(gfg.term, p), fuel)
        same = _kleene_equal(left, right)
        detail.append((p, left, right))
        agree = agree and same
    return FixpointCheck(g, True, agree, detail)


def _kleene_equal(left, right) -> bool:
    if isinstance(left, Value) and isinstance(right, Value):
        return left.term == right.term
    return not isinstance(left, Value) and not isinstance(right, Value)


# -- partial applicative structures -------------------------------------------

class Pas:
    """Partial applicative structure over closed values of the term language."""

    name = "sk"

    def __init__(self, pure_sk: bool = False):
        self.pure_sk = pure_sk

    def apply(self, a: Term, b: Term, fuel: int) -> Term | None:
        return self.eval_term(App(a, b), fuel)

    def eval_term(self, t: Term, fuel: int) -> Term | None:
        r = evaluate(t, fuel, pure_sk=self.pure_sk)
        return r.term if isinstance(r, Value) else None


def _swap_ks(t: Term) -> Term:
    if t is K:
        return S
    if t is S:
        return K
    if type(t) is App:
        return App(_swap_ks(t.fun), _swap_ks(t.arg))
    return t


class SwappedPas(Pas):
    """Deliberately broken: the element called K behaves as S and vice versa."""

    name = "sk-swapped"

    def eval_term(self, t: Term, fuel: int) -> Term | None:
        r = evaluate(_swap_ks(t), fuel, pure_sk=self.pure_sk)
        return _swap_ks(r.term) if isinstance(r, Value) else None


@dataclass
class CompletenessReport:
    pas: str
    trials: int
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


_ELEMENTS = [K, S, I, Num(0), Num(1), Num(2), Num(5), App(K, Num(3)), App(S, K),
             PRIMS["succ"], PRIMS["pred"], App(K, K), app(S, K, K)]
_LEAVES = [K, S, PRIMS["succ"], PRIMS["pred"], Num(0), Num(1), Num(4)]


def random_term(rng: random.Random, nvars: int, leaves: int) -> Term:
    """Random applicative term over atoms and variables ``v0 .. v{nvars-1}``."""
    if leaves <= 1:
        if nvars and rng.random() < 0.55:
            return Var(rng.randrange(nvars))
        return rng.choice(_LEAVES)
    k = rng.randint(1, leaves - 1)
    return App(random_term(rng, nvars, k), random_term(rng, nvars, leaves - k))


def random_element(rng: random.Random) -> Term:
    return rng.choice(_ELEMENTS)


def check_combinatory_complete(pas: Pas, samples: int, *, seed: int = 0,
                               fuel_defined: int = 10_000, fuel_equal: int = 100_000,
                               max_vars: int = 3, max_leaves: int = 7) -> CompletenessReport:
    """Property-test both clauses of combinatory completeness on random terms.

    For ``t`` with free variables among ``x1 .. xn, x`` (``n + 1 <=
    max_vars``) let ``b = [x1 .. xn x] t``.  Checks ``b a1 .. an`` is
    defined and ``b a1 .. an a`` is Kleene-equal to ``t(a1, .., an, a)``.
    Counterexamples are collected, never raised.
    """
    rng = random.Random(seed)
    report = CompletenessReport(pas.name, samples)
    for trial in range(samples):
        nv = rng.randint(1, max_vars)
        t = random_term(rng, nv, rng.randint(1, max_leaves))
        b = lam(list(range(nv)), t)
        args = [random_element(rng) for _ in range(nv)]
        partial = app(b, *args[:-1])
        defined = pas.eval_term(partial, fuel_defined)
        if defined is None:
            report.counterexamples.append(
                {"trial": trial, "clause": "i", "term": str(t), "args": [str(a) for a in args]})
            continue
        lhs = pas.eval_term(App(partial, args[-1]), fuel_equal)
        rhs = pas.eval_term(substitute(t, dict(enumerate(args))), fuel_equal)
        if lhs != rhs:
            report.counterexamples.append(
                {"trial": trial, "clause": "ii", "term": str(t), "args": [str(a) for a in args],
                 "abstraction": None if lhs is None else str(lhs),
                 "substitution": None if rhs is None else str(rhs)})
    return report


def kleene_equal(pas: Pas, s: Term, t: Term, fuel: int) -> bool:
    """Both undefined within ``fuel`` or both defined with equal values."""
    return pas.eval_term(s, fuel) == pas.eval_term(t, fuel)


__all__ = [
    "AbstractTerm", "bracket_abstract", "lam", "compile_lambda", "LambdaSyntaxError",
    "tuple_element", "projector", "turing_fixpoint", "totally_undefined",
    "check_turing_fixpoint", "FixpointCheck", "Pas", "SwappedPas", "CompletenessReport",
    "check_combinatory_complete", "kleene_equal", "random_term", "random_element", "I",
]
