"""Numberings, bounded equivalence checking and totalizers.

The prime example is ``n -> phi_n``, where ``a ~ b`` means the two codes
compute the same partial function.  That relation is undecidable, so the
checker samples inputs under a step budget and answers ``yes`` (no
difference seen), ``no`` (a proven difference) or ``unknown``.

A verdict of ``no`` is final.  ``yes`` is only evidence: both sides may
still differ beyond the budget, and two programs that both run out of fuel
count as agreeing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .codec import code_app, code_num, encode
from .k1 import CODE_DIVERGENT, Defined, phi, quasi
from .pca import lam
from .terms import PRIMS, App, Num, Term, Var

__all__ = [
    "Verdict", "YES", "NO", "UNKNOWN", "TotalCodeMap", "Numbering", "phi_numbering",
    "totalize", "totalize_code", "is_diagonal_on", "DiagonalReport", "code_map",
]

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bounded equivalence check.

    ``witness`` is the input that decided a ``no`` (or the first input
    that made it ``unknown``).
    """

    kind: str
    budget: int
    inputs: int = 0
    witness: int | None = None

    @property
    def yes(self) -> bool:
        return self.kind == YES

    def __str__(self) -> str:
        return f"{self.kind}@{self.budget}"


@dataclass(frozen=True)
class TotalCodeMap:
    """A total map on codes, both as a host function and as a program.

    ``host(n)`` and ``phi(code, n)`` must agree; :meth:`check` tests it.
    """

    name: str
    code: int
    host: Callable[[int], int] = field(compare=False, repr=False)

    def __call__(self, n: int) -> int:
        return self.host(n)

    def check(self, ns: Iterable[int], fuel: int) -> list[int]:
        """Inputs where the program is undefined within ``fuel`` or disagrees with ``host``."""
        bad = []
        for n in ns:
            r = phi(self.code, n, fuel)
            if not isinstance(r, Defined) or r.value != self.host(n):
                bad.append(n)
        return bad


def code_map(name: str, term: Term, host: Callable[[int], int]) -> TotalCodeMap:
    return TotalCodeMap(name, encode(term), host)


def _compare(a: int, b: int, inputs: Sequence[int], fuel: int, budget: int) -> Verdict:
    unknown_at = None
    for x in inputs:
        ra, rb = phi(a, x, fuel), phi(b, x, fuel)
        da, db = isinstance(ra, Defined), isinstance(rb, Defined)
        if da and db:
            if ra.value != rb.value:
                return Verdict(NO, budget, len(inputs), x)
        elif da != db and unknown_at is None:
            unknown_at = x
    if unknown_at is not None:
        return Verdict(UNKNOWN, budget, len(inputs), unknown_at)
    return Verdict(YES, budget, len(inputs))


@dataclass(frozen=True)
class Numbering:
    """A numbering given by its equivalence checker and totalizer witness."""

    name: str
    equiv: Callable[..., Verdict] = field(repr=False)
    totalizer: Callable[[int], TotalCodeMap] = field(repr=False)
    special_element: int | None = None

    def equiv_bounded(self, a: int, b: int, budget: int, *,
                      inputs: Iterable[int] | None = None, fuel: int | None = None) -> Verdict:
        """Compare ``a`` and ``b`` on ``inputs`` (default ``0..budget``) at ``fuel`` (default ``budget``)."""
        return self.equiv(a, b, budget, inputs=inputs, fuel=fuel)


def _phi_equiv(a: int, b: int, budget: int, *, inputs=None, fuel=None) -> Verdict:
    xs = list(range(budget + 1)) if inputs is None else list(inputs)
    if a == b:
        return Verdict(YES, budget, len(xs))
    return _compare(a, b, xs, budget if fuel is None else fuel, budget)


# pred (succ _) forces the inner result to be a numeral: a non-numeral
# value gets stuck instead of being run as a function
_GUARD = (PRIMS["pred"], PRIMS["succ"])
_CPRED, _CSUCC = encode(_GUARD[0]), encode(_GUARD[1])


def _wrapped(inner: Term) -> Term:
    return App(_GUARD[0], App(_GUARD[1], inner))


def totalize_code(p: int, n: int) -> int:
    """Code of ``pred (succ (p n))``: runs ``phi_p(n)`` and then the program it names."""
    return code_app(_CPRED, code_app(_CSUCC, code_app(code_num(p), code_num(n))))


def totalize(p: int) -> TotalCodeMap:
    """Total ``f`` with ``phi_{f(n)} = phi_{phi_p(n)}`` where ``phi_p(n)`` converges.

    Where ``phi_p(n)`` diverges, ``f(n)`` is everywhere undefined, which is
    the special element: the numbering is complete, not only precomplete.
    """
    template = _wrapped(App(Num(p), Var(0)))
    term = lam(0, quasi(template, {0: "num"}), optimize=True)
    return TotalCodeMap(f"totalize({p})", encode(term), lambda n: totalize_code(p, n))


def phi_numbering() -> Numbering:
    return Numbering("phi", _phi_equiv, totalize, CODE_DIVERGENT)


@dataclass
class DiagonalReport:
    checked: list[tuple[int, int]] = field(default_factory=list)
    violations: list[tuple[int, int, Verdict]] = field(default_factory=list)
    undefined: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def is_diagonal_on(gamma: Numbering, d: int, sample: Iterable[int], budget: int, *,
                   inputs: Iterable[int] | None = None, fuel: int | None = None) -> DiagonalReport:
    """Check ``d(x) !~ x`` for every sampled ``x`` where ``phi_d(x)`` converges."""
    rep = DiagonalReport()
    xs = None if inputs is None else list(inputs)
    f = budget if fuel is None else fuel
    for x in sample:
        r = phi(d, x, f)
        if not isinstance(r, Defined):
            rep.undefined.append(x)
            continue
        rep.checked.append((x, r.value))
        v = gamma.equiv_bounded(r.value, x, budget, inputs=xs, fuel=fuel)
        if v.yes:
            rep.violations.append((x, r.value, v))
    return rep
