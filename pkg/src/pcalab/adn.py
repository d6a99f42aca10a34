"""Totalizing a partial computable function while avoiding a diagonal.

Given a diagonal ``delta`` (``delta(x) !~ x`` wherever defined) and a p.c.
``psi``, we build a total ``f`` such that

* ``f(n) ~ psi(n)`` whenever ``psi(n)`` converges, and
* ``delta(f(n))`` diverges whenever ``psi(n)`` diverges.

The engine is a race ``eta(x, n)`` between ``delta(x)`` and ``psi(n)``,
run step by step in the language (primitive ``race``)::

    eta(x, n) = delta(x)   if delta(x) converges no later than psi(n)
              = psi(n)     if psi(n) converges strictly first
              = undefined  if neither converges

``f`` is the parametrised fixed point of a totalizer of ``eta``:
``f(n) ~ eta(f(n), n)``.  If ``delta(f(n))`` won the race we would have
``f(n) ~ delta(f(n))``, contradicting diagonality; so it never wins, which
gives both properties.

Note the orientation of the first two cases.  The opposite assignment
(``psi`` first gives ``delta(x)``) leaves ``eta`` undefined exactly when
``psi(n)`` converges and ``delta(f(n))`` does not, and then nothing ties
``f(n)`` to ``psi(n)``.  :func:`race_eta_swapped` builds that variant so
the failure can be observed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .codec import decode, encode
from .fixedpoints import MisuseError, ershov_e, ershov_param, self_application_totalizer
from .k1 import Defined, Template, corpus, pair_codes, phi
from .machine import certify_divergence
from .numberings import (DiagonalReport, Numbering, TotalCodeMap, is_diagonal_on, totalize,
                         totalize_code)
from .pca import compile_lambda, lam
from .terms import App, Num, Var

__all__ = [
    "FirstConverged", "NeitherWithin", "RaceOutcome", "race_oracle", "race_eta",
    "race_eta_swapped", "make_sample_diagonal", "AdnMap", "adn_totalize", "adn_uniform",
    "AvoidanceAudit", "audit_avoidance", "default_diagonal_sample", "UNIVERSAL_PSI",
]

LEFT, RIGHT = "left", "right"


@dataclass(frozen=True)
class FirstConverged:
    which: str
    stage: int
    value: int


@dataclass(frozen=True)
class NeitherWithin:
    budget: int


RaceOutcome = FirstConverged | NeitherWithin


def race_oracle(delta: int, x: int, psi: int, n: int, budget: int) -> RaceOutcome:
    """Decide the race on the host from the two step counts.

    A contestant's stage is the number of steps ``phi`` needs; ties go to
    the left (``delta``).  Independent of the ``race`` primitive, which
    makes it a test oracle for it.
    """
    a, b = phi(delta, x, budget), phi(psi, n, budget)
    sa = a.steps if isinstance(a, Defined) else None
    sb = b.steps if isinstance(b, Defined) else None
    if sa is not None and (sb is None or sa <= sb):
        return FirstConverged(LEFT, sa, a.value)
    if sb is not None:
        return FirstConverged(RIGHT, sb, b.value)
    return NeitherWithin(budget)


def race_eta(delta: int, psi: int) -> int:
    """Code of ``eta<x, n>``, the race of ``delta(x)`` against ``psi(n)``."""
    t = compile_lambda(r"\z. race d (fst z) p (snd z)", {"d": Num(delta), "p": Num(psi)},
                       optimize=True)
    return encode(t)


def race_eta_swapped(delta: int, psi: int) -> int:
    """The race with the two outcomes exchanged (see module notes).

    Both contestants are tagged by identical wrappers, so the winner is the
    same as in :func:`race_eta`; the loser is then run to completion.
    """
    t = compile_lambda(r"""
        \z. (\r. (ifz (fst r) p d) (ifz (fst r) (snd z) (fst z)))
            (race (\x. pair 0 (d x)) (fst z) (\n. pair 1 (p n)) (snd z))
        """, {"d": Num(delta), "p": Num(psi)}, optimize=True)
    return encode(t)


@lru_cache(maxsize=None)
def _sample_diagonal_template() -> Template:
    # holes: v0 = x (run as a program), v1 = phi_x(0) + 1
    return Template.of(compile_lambda(r"\y. ifz y (K v) x y", {"x": Var(0), "v": Var(1)},
                                      optimize=True), v0="num", v1="num")


@lru_cache(maxsize=None)
def make_sample_diagonal() -> int:
    """Code of ``delta``: defined iff ``phi_x(0)`` is, and then ``phi_x`` with output 0 bumped by one."""
    b = _sample_diagonal_template().builder()
    t = lam(0, App(lam(1, b, optimize=True), App(compile_lambda("succ"),
                                                     App(Var(0), Num(0)))), optimize=True)
    return encode(t)


def default_diagonal_sample() -> list[int]:
    """Codes used for the diagonality precondition: the first corpus programs."""
    return [p.code for p in corpus()[:24]]


@dataclass(frozen=True)
class AdnMap:
    """Output of the construction with its intermediate pieces."""

    f: TotalCodeMap
    delta: int
    psi: int
    eta: int
    h: TotalCodeMap
    diagonal: DiagonalReport = field(compare=False, repr=False)

    def __call__(self, n: int) -> int:
        return self.f.host(n)

    @property
    def code(self) -> int:
        return self.f.code


def adn_totalize(gamma: Numbering, delta: int, psi: int, *, sample: Iterable[int] | None = None,
                 budget: int = 1000, inputs: Iterable[int] = range(21),
                 swapped: bool = False) -> AdnMap:
    """Total ``f`` totalizing ``phi_psi`` while avoiding ``phi_delta``.

    ``delta`` is first audited for diagonality on ``sample`` (default: the
    head of the corpus); a visible violation raises :class:`MisuseError`.
    The output code depends only on ``(delta, psi)``.
    """
    xs = default_diagonal_sample() if sample is None else list(sample)
    rep = is_diagonal_on(gamma, delta, xs, budget, inputs=inputs)
    if not rep.ok:
        x, y, v = rep.violations[0]
        raise MisuseError(f"delta is not diagonal: delta({x}) = {y} ~ {x} ({v})")
    eta = (race_eta_swapped if swapped else race_eta)(delta, psi)
    h = totalize(eta)
    f = ershov_param(gamma, h, check=False)
    return AdnMap(f, delta, psi, eta, h, rep)


@lru_cache(maxsize=None)
def _universal_psi() -> int:
    return encode(compile_lambda(r"\z. fst z (snd z)", optimize=True))


UNIVERSAL_PSI = _universal_psi()


def adn_uniform(gamma: Numbering, delta: int, **kw) -> AdnMap:
    """The construction for ``psi<e, n> = phi_e(n)``; use ``f(pair_codes(e, n))``."""
    return adn_totalize(gamma, delta, UNIVERSAL_PSI, **kw)


@dataclass(frozen=True)
class AvoidanceAudit:
    """Evidence that ``delta(f(n))`` diverges.

    ``fuel_ok``: no convergence within ``fuel`` steps.  ``psi_cycle``: the
    run of ``psi(n)`` revisits a configuration, a proof that it diverges.
    ``shape_ok``: ``f(n)`` decodes to the totalized race instance for
    ``n``, so its only way to converge is through the race.  With
    ``psi_cycle`` this makes the avoidance argument applicable to the
    concrete term, independent of fuel.
    """

    n: int
    fuel: int
    fuel_ok: bool
    psi_cycle: bool
    shape_ok: bool

    @property
    def ok(self) -> bool:
        return self.fuel_ok and self.psi_cycle and self.shape_ok


def _expected_term(m: AdnMap, n: int):
    d = self_application_totalizer()
    return decode(d.host(pair_codes(ershov_e(m.h.code), n)))


def audit_avoidance(m: AdnMap, n: int, *, fuel: int = 100_000, cycle_steps: int = 20_000,
                    psi_arg: int | None = None) -> AvoidanceAudit:
    """Audit ``delta(f(n))`` for divergence on a ``psi``-divergent input ``n``."""
    fn = m(n)
    fuel_ok = not isinstance(phi(m.delta, fn, fuel), Defined)
    arg = n if psi_arg is None else psi_arg
    psi_cycle = certify_divergence(App(decode(m.psi), Num(arg)), cycle_steps)
    t = decode(fn)
    shape_ok = t == _expected_term(m, n) and _race_core(m, fn, n)
    return AvoidanceAudit(n, fuel, fuel_ok, psi_cycle, shape_ok)


def _race_core(m: AdnMap, fn: int, n: int) -> bool:
    # the program f(n) unfolds into is the totalized race at <f(n), n>
    z = pair_codes(fn, n)
    return m.h.host(z) == totalize_code(m.eta, z)
