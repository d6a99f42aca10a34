"""Kleene's first model: naturals applied as programs, ``n m = phi_n(m)``.

A code ``e`` denotes the partial function ``x -> v`` where ``decode(e)``
applied to the numeral ``x`` evaluates to the numeral ``v``.  A value of
any other shape (say ``K 3``) is a defined pas element but not a numeric
output, so for ``phi`` it counts as divergence.

Besides ``phi`` this module has the code-level plumbing the fixed-point
constructions are made of: S-m-n by syntax, padding, Cantor pairing, a
quasi-quotation compiler that turns a program template into a program
computing the template's code, and a corpus of programs with known
behaviour.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .codec import cantor_pair, cantor_unpair, code_app, code_num, decode, encode
from .machine import Value, evaluate
from .pca import compile_lambda, lam
from .terms import PRIMS, App, K, Num, Term, Var, is_closed, substitute

__all__ = [
    "Defined", "DivergentWithin", "PartialValue", "phi", "phi2", "phi_term", "smn", "pad",
    "pair_codes", "unpair", "domain_enum", "quasi", "Template", "Program", "corpus", "program",
    "OMEGA", "DIVERGE", "FLIP", "even_const", "CODE_K", "CODE_DIVERGENT", "check_program",
]


@dataclass(frozen=True)
class Defined:
    value: int
    steps: int = field(default=0, compare=False)


@dataclass(frozen=True)
class DivergentWithin:
    fuel: int


PartialValue = Defined | DivergentWithin


def phi_term(t: Term, x: int, fuel: int) -> PartialValue:
    r = evaluate(App(t, Num(x)), fuel)
    if isinstance(r, Value) and type(r.term) is Num:
        return Defined(r.term.n, r.steps)
    return DivergentWithin(fuel)


def phi(e: int, x: int, fuel: int) -> PartialValue:
    """``phi_e(x)`` within ``fuel`` steps."""
    return phi_term(decode(e), x, fuel)


def phi2(e: int, a: int, x: int, fuel: int) -> PartialValue:
    """Curried two-argument application ``decode(e) a x``."""
    r = evaluate(App(App(decode(e), Num(a)), Num(x)), fuel)
    if isinstance(r, Value) and type(r.term) is Num:
        return Defined(r.term.n, r.steps)
    return DivergentWithin(fuel)


def smn(e: int, a: int) -> int:
    """Code of ``decode(e) a``; pure syntax, nothing is evaluated."""
    return code_app(e, code_num(a))


CODE_K = 0


def pad(e: int, i: int) -> int:
    """Wrap ``e`` in ``i`` layers of ``K _ K``; each layer costs one step."""
    for _ in range(i):
        e = code_app(code_app(CODE_K, e), CODE_K)
    return e


def pair_codes(e: int, n: int) -> int:
    """Cantor pairing, ``pair_codes(0, 0) = 0``."""
    return cantor_pair(e, n)


def unpair(z: int) -> tuple[int, int]:
    return cantor_unpair(z)


def domain_enum(e: int, stage: int) -> set[int]:
    """``W_{e,s}``: inputs up to ``stage`` on which ``phi_e`` halts within ``stage`` steps."""
    t = decode(e)
    return {x for x in range(stage + 1) if isinstance(phi_term(t, x, stage), Defined)}


# -- quasi-quotation --------------------------------------------------------

def quasi(template: Term, holes: dict[int, str]) -> Term:
    """Compile a template into a term that computes the template's code.

    ``template`` may contain ``Var(i)`` for each key of ``holes``.  A hole
    of kind ``"num"`` is filled with the numeral of the runtime value, a
    hole of kind ``"code"`` splices the runtime value in as a code.
    Closed subterms are folded into constant codes, so the result is a
    chain of ``qapp`` and ``qnum`` over the holes only.
    """
    qapp, qnum = PRIMS["qapp"], PRIMS["qnum"]

    def go(t: Term) -> Term:
        if is_closed(t):
            return Num(encode(t))
        if type(t) is Var:
            kind = holes.get(t.i)
            if kind == "num":
                return App(qnum, t)
            if kind == "code":
                return t
            raise ValueError(f"variable v{t.i} is not a declared hole")
        return App(App(qapp, go(t.fun)), go(t.arg))

    return go(template)


@dataclass(frozen=True)
class Template:
    """A closed program with holes, usable both on the host and in-language.

    ``fill`` computes the code of the program with holes substituted;
    ``builder`` is a term (open in the hole variables) computing the same
    code at run time.  Both go through the same substitution, so they
    always agree.
    """

    term: Term
    holes: tuple[tuple[int, str], ...]

    @classmethod
    def of(cls, term: Term, **holes: str) -> "Template":
        return cls(term, tuple(sorted((int(k[1:]), v) for k, v in holes.items())))

    def fill(self, *values: int) -> int:
        env = {}
        for (i, kind), v in zip(self.holes, values, strict=True):
            env[i] = Num(v) if kind == "num" else decode(v)
        return encode(substitute(self.term, env))

    def builder(self) -> Term:
        return quasi(self.term, dict(self.holes))


# -- corpus -----------------------------------------------------------------

W = compile_lambda(r"\x. x x")
OMEGA = App(W, W)
# everywhere divergent, yet a value itself
DIVERGE = compile_lambda(r"\d. w w", {"w": W})
CODE_DIVERGENT = encode(DIVERGE)
FLIP = compile_lambda(r"\b. ifz b 1 0", optimize=True)


def even_const(c: int) -> Term:
    """Program returning ``c`` on even inputs and diverging on odd ones."""
    return compile_lambda(r"\n. ifz (iter n flip 0) (K c) om n",
                          {"flip": FLIP, "om": DIVERGE, "c": Num(c)}, optimize=True)


@dataclass(frozen=True)
class Program:
    """A closed program with its intended extension (``None`` = diverges)."""

    name: str
    term: Term
    ref: Callable[[int], int | None] = field(compare=False)

    @property
    def code(self) -> int:
        return encode(self.term)


def _const(c: int) -> Term:
    return App(K, Num(c))


def _add(k: int) -> Term:
    return compile_lambda(r"\x. iter k succ x", {"k": Num(k)}, optimize=True)


PROJ1 = compile_lambda(r"\a x. a")
PROJ2 = compile_lambda(r"\a x. x")
ADD2 = compile_lambda(r"\a x. iter a succ x")


def program(name: str) -> Program:
    """Look up a named corpus program (``identity``, ``const-3``, ``even-const-5``, ...)."""
    for p in corpus():
        if p.name == name:
            return p
    raise KeyError(name)


def _base() -> list[Program]:
    out = [
        Program("identity", lam(0, Var(0)), lambda x: x),
        Program("succ", PRIMS["succ"], lambda x: x + 1),
        Program("pred", PRIMS["pred"], lambda x: max(x - 1, 0)),
        Program("divergent", DIVERGE, lambda x: None),
        Program("zero-only", compile_lambda(r"\x. ifz x K om x 0", {"om": DIVERGE}, optimize=True),
                lambda x: 0 if x == 0 else None),
        Program("double", compile_lambda(r"\x. iter x succ x", optimize=True), lambda x: 2 * x),
        Program("parity", compile_lambda(r"\x. iter x flip 0", {"flip": FLIP}, optimize=True),
                lambda x: x % 2),
    ]
    return out


def corpus() -> list[Program]:
    """About two hundred programs whose extensions are known in closed form."""
    if _CORPUS:
        return _CORPUS
    out = _base()
    for c in range(50):
        out.append(Program(f"const-{c}", _const(c), lambda x, c=c: c))
    for k in range(1, 49):
        out.append(Program(f"add-{k}", _add(k), lambda x, k=k: x + k))
    for c in range(20):
        out.append(Program(f"even-const-{c}", even_const(c),
                           lambda x, c=c: c if x % 2 == 0 else None))
    for a in range(15):
        out.append(Program(f"smn-proj1-{a}", App(PROJ1, Num(a)), lambda x, a=a: a))
        out.append(Program(f"smn-proj2-{a}", App(PROJ2, Num(a)), lambda x: x))
        out.append(Program(f"smn-add-{a}", App(ADD2, Num(a)), lambda x, a=a: x + a))
    for i in range(1, 11):
        for base in ("identity", "succ", "divergent"):
            b = next(p for p in out if p.name == base)
            out.append(Program(f"pad{i}-{base}", decode(pad(b.code, i)), b.ref))
    _CORPUS.extend(out)
    return _CORPUS


_CORPUS: list[Program] = []


def check_program(p: Program, inputs: Iterable[int], fuel: int) -> list[int]:
    """Inputs where ``p`` disagrees with its reference (``None`` must not converge)."""
    bad = []
    for x in inputs:
        r = phi_term(p.term, x, fuel)
        want = p.ref(x)
        got = r.value if isinstance(r, Defined) else None
        if got != want:
            bad.append(x)
    return bad
