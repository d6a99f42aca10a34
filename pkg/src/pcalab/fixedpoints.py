"""Ershov-style fixed points for the numbering ``n -> phi_n``.

All constructions follow one recipe.  Let ``d`` totalize the p.c. map
``<x, n> -> phi_x(<x, n>)``, so that ``phi_{d<x,n>} = phi_{phi_x<x,n>}``.
Given a total ``h`` on pairs, take ``e`` with ``phi_e<x, n> = h<d<x,n>, n>``.
Then ``f(n) = d<e, n>`` satisfies::

    phi_{f(n)} = phi_{phi_e<e,n>} = phi_{h<f(n), n>}

so each ``f(n)`` is a fixed point of ``h(., n)``.  Every map here is a
:class:`~pcalab.numberings.TotalCodeMap`: computed on the host by code
arithmetic and, identically, by a program in the language.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .codec import encode
from .k1 import Defined, Template, pair_codes, phi, unpair
from .numberings import Numbering, TotalCodeMap, Verdict, phi_numbering, totalize
from .pca import compile_lambda, lam
from .terms import Num, Var

__all__ = [
    "FixpointWitness", "MisuseError", "ershov_param", "ershov_fixpoint", "ershov_abs",
    "abs_from_param", "param_from_abs", "quine", "fixpoint_operator", "universal_totalizer",
    "unary_as_binary", "ershov_e", "spot_check", "SPOT_RANGE", "SPOT_FUEL", "self_application_totalizer",
]

SPOT_RANGE = range(21)
SPOT_FUEL = 1000


class MisuseError(ValueError):
    """A construction was handed an argument outside its hypotheses."""


@dataclass(frozen=True)
class FixpointWitness:
    point: int
    transform: int
    check_budget: int
    verdict: Verdict


def _lam(src: str, **env) -> object:
    return compile_lambda(src, env, optimize=True)


@lru_cache(maxsize=None)
def self_application_totalizer() -> TotalCodeMap:
    """``d`` with ``phi_{d<x,n>} = phi_{phi_x<x,n>}``."""
    univ2 = _lam(r"\z. fst z z")
    return totalize(encode(univ2))


@lru_cache(maxsize=None)
def _e_template() -> Template:
    d = self_application_totalizer()
    return Template.of(_lam(r"\z. h (pair (d z) (snd z))", h=Var(0), d=Num(d.code)), v0="num")


def ershov_e(hcode: int) -> int:
    """Code ``e`` with ``phi_e<x, n> = h<d<x, n>, n>``."""
    return _e_template().fill(hcode)


def spot_check(h: TotalCodeMap, what: str = "h") -> None:
    """Reject ``h`` unless it is defined and matches its host map on pairs from 0..20."""
    for x in SPOT_RANGE:
        for n in SPOT_RANGE:
            z = pair_codes(x, n)
            r = phi(h.code, z, SPOT_FUEL)
            if not isinstance(r, Defined):
                raise MisuseError(f"{what} is undefined at <{x}, {n}> within fuel {SPOT_FUEL}")
            if r.value != h.host(z):
                raise MisuseError(f"{what} program and host map disagree at <{x}, {n}>")


def ershov_param(gamma: Numbering, h: TotalCodeMap, *, check: bool = True) -> TotalCodeMap:
    """Total ``f`` with ``f(n) ~ h<f(n), n>`` for every ``n``.

    ``h`` is a total map on Cantor pairs.  Its program is spot-checked on
    pairs from 0..20 at fuel 1000 unless ``check`` is false; the check is
    cheap misuse detection, not a totality proof.
    """
    if check:
        spot_check(h)
    d = self_application_totalizer()
    e = ershov_e(h.code)
    term = _lam(r"\n. d (pair e n)", d=Num(d.code), e=Num(e))
    return TotalCodeMap(f"ershov_param({h.name})", encode(term),
                        lambda n: d.host(pair_codes(e, n)))


def unary_as_binary(f: TotalCodeMap) -> TotalCodeMap:
    """``<x, n> -> f(x)``."""
    return TotalCodeMap(f"{f.name}∘fst", encode(_lam(r"\z. f (fst z)", f=Num(f.code))),
                        lambda z: f.host(unpair(z)[0]))


def _witness(gamma: Numbering, point: int, transform: TotalCodeMap, budget: int,
             inputs) -> FixpointWitness:
    v = gamma.equiv_bounded(transform.host(point), point, budget, inputs=inputs)
    return FixpointWitness(point, transform.code, budget, v)


def ershov_fixpoint(gamma: Numbering, f: TotalCodeMap, *, budget: int = 1000,
                    inputs=SPOT_RANGE, check: bool = True) -> FixpointWitness:
    """A code ``n`` with ``f(n) ~ n``; the attached verdict compares them on ``inputs``."""
    fp = ershov_param(gamma, unary_as_binary(f), check=check)
    return _witness(gamma, fp.host(0), f, budget, inputs)


@lru_cache(maxsize=None)
def fixpoint_operator() -> TotalCodeMap:
    """The uniform map ``code of f -> fixed point of f`` (no search involved).

    Composes the three code builders of :func:`ershov_fixpoint`: the
    binary lift of ``f``, the program ``e`` for that lift, and ``d<e, 0>``.
    """
    lift = Template.of(_lam(r"\z. f (fst z)", f=Var(0)), v0="num")
    etpl = _e_template()
    d = self_application_totalizer()
    term = _lam(r"\c. d (pair (E (L c)) 0)",
                d=Num(d.code), E=lam(0, etpl.builder(), optimize=True),
                L=lam(0, lift.builder(), optimize=True))

    def host(c: int) -> int:
        return d.host(pair_codes(etpl.fill(lift.fill(c)), 0))

    return TotalCodeMap("fixpoint_operator", encode(term), host)


@lru_cache(maxsize=None)
def universal_totalizer() -> TotalCodeMap:
    """Total ``h`` on pairs with ``h<x, n> ~ phi_n(x)`` wherever the latter converges."""
    univ = _lam(r"\z. snd z (fst z)")
    t = totalize(encode(univ))
    return TotalCodeMap("universal_totalizer", t.code, t.host)


def param_from_abs(gamma: Numbering, h: TotalCodeMap | None = None) -> TotalCodeMap:
    """ABS form from the parametrised construction applied to the universal totalizer.

    The result ``f`` satisfies ``phi_n(f(n)) ~ f(n)`` whenever the left side
    converges.
    """
    h = h or universal_totalizer()
    f = ershov_param(gamma, h, check=False)
    return TotalCodeMap(f"abs({h.name})", f.code, f.host)


def ershov_abs(gamma: Numbering) -> TotalCodeMap:
    return param_from_abs(gamma)


@lru_cache(maxsize=None)
def _g_template(hcode: int) -> Template:
    return Template.of(_lam(r"\x. h (pair x n)", h=Num(hcode), n=Var(0)), v0="num")


def abs_from_param(gamma: Numbering, f_abs: TotalCodeMap, h: TotalCodeMap) -> TotalCodeMap:
    """Parametrised fixed points from an ABS map: ``n -> f_abs(g(n))``.

    ``g(n)`` is a code of ``x -> h<x, n>``, so ``f_abs(g(n)) ~ h<f_abs(g(n)), n>``.
    """
    g = _g_template(h.code)
    term = _lam(r"\n. F (G n)", F=Num(f_abs.code), G=lam(0, g.builder(), optimize=True))
    return TotalCodeMap(f"abs_from_param({f_abs.name}, {h.name})", encode(term),
                        lambda n: f_abs.host(g.fill(n)))


_QUINE_F = {
    # f(n) = code of K n: a program ignoring its input and answering n
    "output-self": Template.of(_lam(r"K n", n=Var(0)), v0="num"),
    # f(n) = code of \x. pair n x
    "apply-self": Template.of(_lam(r"pair n", n=Var(0)), v0="num"),
}


@lru_cache(maxsize=None)
def quine(style: str = "output-self") -> int:
    """A code ``q`` that prints itself.

    ``output-self``: ``phi_q(x) = q``.  ``apply-self``: ``phi_q(x) = <q, x>``.
    """
    tpl = _QUINE_F.get(style)
    if tpl is None:
        raise ValueError(f"unknown quine style {style!r}")
    f = TotalCodeMap(f"quine-{style}", encode(lam(0, tpl.builder(), optimize=True)),
                     tpl.fill)
    return ershov_fixpoint(phi_numbering(), f, check=False).point
