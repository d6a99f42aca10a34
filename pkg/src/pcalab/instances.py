"""Named transforms and programs shared by the command line and the tests.

Unary transforms act on codes (``n -> f(n)``); binary ones act on Cantor
pairs ``<x, n>``.  Each comes with its program and its host map, built from
the same template so the two cannot drift apart.
"""

from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

from .adn import make_sample_diagonal
from .codec import encode
from .k1 import ADD2, CODE_DIVERGENT, PROJ1, Template, even_const, pad, program, unpair
from .numberings import TotalCodeMap
from .pca import compile_lambda, lam
from .terms import App, Num, Term, Var

__all__ = ["unary_transform", "binary_transform", "UNARY", "BINARY", "named_code",
           "designed_transforms", "load_instances"]

_PAD1 = compile_lambda(r"\x. qapp (qapp 0 x) 0", optimize=True)


def _lam(src: str, **env: Term) -> Term:
    return compile_lambda(src, env, optimize=True)


def _from_template(name: str, tpl: Template) -> TotalCodeMap:
    return TotalCodeMap(name, encode(lam(0, tpl.builder(), optimize=True)), tpl.fill)


def _const_map(c: int, name: str) -> TotalCodeMap:
    return TotalCodeMap(name, encode(_lam("K c", c=Num(c))), lambda n: c)


def unary_transform(name: str) -> TotalCodeMap:
    """Look up a unary transform by name.

    ``identity``, ``pad-K``, ``const-builder`` (n -> code of ``K n``),
    ``compose-succ`` (n -> code of ``x -> phi_n(x + 1)``), ``smn-proj1``
    (n -> ``smn(proj1, n)``) and ``to-PROGRAM`` (constant map onto a corpus
    program's code).
    """
    if name == "identity":
        return TotalCodeMap(name, encode(_lam(r"\x. x")), lambda n: n)
    if name.startswith("pad-") and name[4:].isdigit():
        k = int(name[4:])
        return TotalCodeMap(name, encode(_lam(r"\x. iter k p x", k=Num(k), p=_PAD1)),
                            lambda n, k=k: pad(n, k))
    if name == "const-builder":
        return _from_template(name, Template.of(_lam("K n", n=Var(0)), v0="num"))
    if name == "compose-succ":
        return _from_template(name, Template.of(_lam(r"\x. n (succ x)", n=Var(0)), v0="num"))
    if name == "smn-proj1":
        return _from_template(name, Template.of(App(PROJ1, Var(0)), v0="num"))
    if name.startswith("to-"):
        return _const_map(program(name[3:]).code, name)
    raise KeyError(name)


def binary_transform(name: str) -> TotalCodeMap:
    """Binary transforms on pairs ``<x, n>``.

    ``first`` (x), ``pad1`` (pad(x, 1)), ``pad-n`` (pad(x, n)), ``const-n``
    (code of ``K n``), ``smn-add`` (code of ``y -> y + n``).
    """
    if name == "first":
        return TotalCodeMap(name, encode(_lam(r"\z. fst z")), lambda z: unpair(z)[0])
    if name == "pad1":
        return TotalCodeMap(name, encode(_lam(r"\z. p (fst z)", p=_PAD1)),
                            lambda z: pad(unpair(z)[0], 1))
    if name == "pad-n":
        return TotalCodeMap(name, encode(_lam(r"\z. iter (snd z) p (fst z)", p=_PAD1)),
                            lambda z: pad(*unpair(z)))
    if name == "const-n":
        tpl = Template.of(_lam("K n", n=Var(0)), v0="num")
        b = lam(0, tpl.builder(), optimize=True)
        return TotalCodeMap(name, encode(_lam(r"\z. b (snd z)", b=b)),
                            lambda z: tpl.fill(unpair(z)[1]))
    if name == "smn-add":
        tpl = Template.of(App(ADD2, Var(0)), v0="num")
        b = lam(0, tpl.builder(), optimize=True)
        return TotalCodeMap(name, encode(_lam(r"\z. b (snd z)", b=b)),
                            lambda z: tpl.fill(unpair(z)[1]))
    raise KeyError(name)


UNARY = (["identity", "const-builder", "compose-succ", "smn-proj1"]
         + [f"pad-{k}" for k in range(1, 9)]
         + [f"to-{p}" for p in ("identity", "succ", "const-0", "const-7", "add-3", "divergent",
                                "even-const-2", "double", "parity", "zero-only")])
BINARY = ["first", "pad1", "pad-n", "const-n", "smn-add"]


def designed_transforms() -> list[TotalCodeMap]:
    return [unary_transform(n) for n in UNARY]


@lru_cache(maxsize=None)
def load_instances() -> dict:
    return json.loads((Path(__file__).parent / "data" / "instances.json").read_text())


def named_code(kind: str, name: str) -> int:
    """Code of a named ``psi`` or ``delta`` instance from ``data/instances.json``."""
    entry = load_instances()[kind].get(name)
    if entry is None:
        raise KeyError(f"unknown {kind} instance {name!r}")
    how = entry["build"]
    if how == "corpus":
        return program(entry["program"]).code
    if how == "even-const":
        return encode(even_const(program(entry["value"]).code))
    if how == "sample-diagonal":
        return make_sample_diagonal()
    if how == "divergent":
        return CODE_DIVERGENT
    if how == "transform":
        return unary_transform(entry["transform"]).code
    raise ValueError(f"bad instance definition for {name!r}")
