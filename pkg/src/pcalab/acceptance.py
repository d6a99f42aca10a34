"""The desk-scale acceptance suite, shared by ``pcalab check`` and the tests.

Each criterion is a function ``(emit, seed) -> bool``.  ``emit`` receives
one plain dict per individual check; no timings or other run-dependent
data go into the records, so a fixed seed gives identical output.
"""

from __future__ import annotations

import random
from typing import Callable

from .adn import adn_totalize, adn_uniform, audit_avoidance, make_sample_diagonal
from .arslanov import ModulusViolation, arslanov_construct, builtin_tables
from .fixedpoints import (abs_from_param, ershov_fixpoint, ershov_param, param_from_abs, quine,
                          unary_as_binary)
from .instances import BINARY, UNARY, binary_transform, named_code, unary_transform
from .k1 import Defined, pair_codes, phi, program
from .k2 import (NonCommittal, NotFound, check_no_total_extension, committing_functionals,
                 diagonalize_total, identity_map, psi_nonextendable)
from .machine import Value, evaluate
from .numberings import phi_numbering
from .pca import (Pas, check_combinatory_complete, check_turing_fixpoint, compile_lambda,
                  projector, random_element, tuple_element)
from .terms import Num, app

Emit = Callable[[dict], None]
INPUTS = range(21)


def _rec(criterion: int, check: str, ok: bool, provenance: str, **kw) -> dict:
    return {"criterion": criterion, "check": check, "ok": ok, "provenance": provenance, **kw}


def completeness(emit: Emit, seed: int, trials: int = 1000) -> bool:
    rep = check_combinatory_complete(Pas(), trials, seed=seed, fuel_equal=100_000)
    emit(_rec(1, "combinatory-completeness", rep.ok, "pca.check_combinatory_complete",
              trials=trials, seed=seed, fuel=100_000, counterexamples=rep.counterexamples[:5]))
    return rep.ok


def projection(emit: Emit, seed: int, tuples: int = 50) -> bool:
    rng = random.Random(seed)
    fails = []
    for t in range(tuples):
        elems = [random_element(rng) for _ in range(5)]
        for n in range(1, 6):
            for i in range(1, n + 1):
                r = evaluate(app(tuple_element(*elems[:n]), projector(n, i)), 10_000)
                if not (isinstance(r, Value) and r.term == elems[i - 1]):
                    fails.append({"tuple": t, "n": n, "i": i})
    ok = not fails
    emit(_rec(2, "projection-law", ok, "pca.tuple_element/pca.projector",
              tuples=tuples, seed=seed, failures=fails[:5]))
    return ok


def ershov(emit: Emit, seed: int) -> bool:
    gamma, ok = phi_numbering(), True
    for name in UNARY:
        w = ershov_fixpoint(gamma, unary_transform(name), budget=1000, inputs=INPUTS)
        ok &= w.verdict.yes
        emit(_rec(3, "ershov-fixpoint", w.verdict.yes, "fixedpoints.ershov_fixpoint",
                  transform=name, witness=w.point, verdict=w.verdict.kind, budget=1000,
                  inputs=[0, 20]))
    return ok


def quines(emit: Emit, seed: int) -> bool:
    ok = True
    for style in ("output-self", "apply-self"):
        q = quine(style)
        bad = []
        for x in INPUTS:
            r = phi(q, x, 10_000)
            want = q if style == "output-self" else pair_codes(q, x)
            if not (isinstance(r, Defined) and r.value == want):
                bad.append(x)
        ok &= not bad
        emit(_rec(4, "quine", not bad, "fixedpoints.quine", style=style, witness=q,
                  fuel=10_000, inputs=[0, 20], failures=bad))
    return ok


# programs n for the ABS contract: phi_n(f(n)) must be cheap on huge codes
_ABS_CORPUS = (["identity", "succ", "pred", "divergent", "zero-only"]
               + [f"const-{c}" for c in (0, 1, 5, 9)] + [f"add-{k}" for k in (1, 2, 7)]
               + [f"smn-proj1-{a}" for a in (0, 3)] + [f"smn-add-{a}" for a in (0, 4)]
               + [f"pad{i}-{b}" for i in (1, 3) for b in ("identity", "succ")])


def abs_param(emit: Emit, seed: int) -> bool:
    gamma, ok = phi_numbering(), True
    f = param_from_abs(gamma)
    for name in _ABS_CORPUS:
        n = program(name).code
        fn = f(n)
        r = phi(n, fn, 1000)
        if isinstance(r, Defined):
            v = gamma.equiv_bounded(r.value, fn, 1000, inputs=INPUTS)
            good, kind = v.yes, v.kind
        else:
            good, kind = True, "vacuous"
        ok &= good
        emit(_rec(5, "abs-from-param", good, "fixedpoints.param_from_abs", program=name,
                  witness=fn, verdict=kind, budget=1000, inputs=[0, 20]))
    hs = [binary_transform(b) for b in BINARY] + [unary_as_binary(unary_transform(u))
                                                  for u in UNARY[:6]]
    for h in hs:
        g = abs_from_param(gamma, f, h)
        ref = ershov_param(gamma, h, check=False)
        for n in range(3):
            gn = g(n)
            v = gamma.equiv_bounded(h(pair_codes(gn, n)), gn, 1000, inputs=INPUTS)
            ok &= v.yes
            emit(_rec(5, "param-from-abs", v.yes, "fixedpoints.abs_from_param", h=h.name, n=n,
                      witness=gn, verdict=v.kind, budget=1000, inputs=[0, 20],
                      direct_witness=ref(n)))
    return ok


def _adn_even(emit: Emit, criterion: int, m, n: int, arg: int, want: int, label: dict) -> bool:
    fn = m(arg)
    v = phi_numbering().equiv_bounded(fn, want, 1000, inputs=INPUTS)
    emit(_rec(criterion, "adn-clause-2", v.yes, "adn.adn_totalize", n=n, witness=fn,
              verdict=v.kind, budget=1000, inputs=[0, 20], **label))
    return v.yes


def _adn_odd(emit: Emit, criterion: int, m, n: int, arg: int, label: dict) -> bool:
    a = audit_avoidance(m, arg, fuel=100_000)
    emit(_rec(criterion, "adn-clause-3", a.ok, "adn.audit_avoidance", n=n, witness=m(arg),
              fuel=100_000, fuel_ok=a.fuel_ok, psi_cycle=a.psi_cycle, shape_ok=a.shape_ok,
              **label))
    return a.ok


def adn(emit: Emit, seed: int, top: int = 30) -> bool:
    gamma = phi_numbering()
    psi, delta = named_code("psi", "even-const"), make_sample_diagonal()
    m = adn_totalize(gamma, delta, psi)
    c = program("const-7").code
    ok = True
    for n in range(top + 1):
        ok &= (_adn_even(emit, 6, m, n, n, c, {}) if n % 2 == 0
               else _adn_odd(emit, 6, m, n, n, {}))
    return ok


def adn_uniform_check(emit: Emit, seed: int, top: int = 10) -> bool:
    gamma = phi_numbering()
    m = adn_uniform(gamma, make_sample_diagonal())
    ok = True
    for ename in ("even-const-3", "const-4", "divergent"):
        e = program(ename).code
        for n in range(top + 1):
            r = phi(e, n, 1000)
            z = pair_codes(e, n)
            label = {"e": ename}
            ok &= (_adn_even(emit, 7, m, n, z, r.value, label) if isinstance(r, Defined)
                   else _adn_odd(emit, 7, m, n, z, label))
    return ok


def arslanov(emit: Emit, seed: int) -> bool:
    gamma, ok = phi_numbering(), True
    for name, approx in builtin_tables().items():
        try:
            res = arslanov_construct(gamma, approx, 1000)
        except ModulusViolation as e:
            good = name == "oscillating"
            emit(_rec(8, "arslanov-modulus", good, "arslanov.check_modulus", table=name,
                      diagnostic=str(e)))
            ok &= good
            continue
        good = name != "oscillating" and res.found and res.witness.verdict.yes
        emit(_rec(8, "arslanov-fixpoint", good, "arslanov.arslanov_construct", table=name,
                  n=res.n, stage=res.stage, witness=res.witness and res.witness.point,
                  verdict=res.witness and res.witness.verdict.kind, budget=1000,
                  equiv_budget=10_000, inputs=[0, 20]))
        ok &= good
    return ok


def theta_corpus() -> list:
    """One hundred recursion bodies ``g = \\r x. ...`` whose fixed points are total."""
    fams = [
        r"\r x. ifz x (\d. k) (\d. r (pred x)) 0",
        r"\r x. ifz x (\d. k) (\d. succ (r (pred x))) 0",
        r"\r x. ifz x (\d. k) (\d. succ (succ (r (pred x)))) 0",
        r"\r x. iter k succ x",
    ]
    return [compile_lambda(src, {"k": Num(k)}, optimize=True) for src in fams for k in range(25)]


def theta(emit: Emit, seed: int) -> bool:
    ok = True
    probes = [Num(i) for i in range(6)]
    for i, g in enumerate(theta_corpus()):
        r = check_turing_fixpoint(g, probes, 10_000)
        good = r.fg_defined and r.agree
        ok &= good
        emit(_rec(9, "turing-fixpoint", good, "pca.check_turing_fixpoint", g=i,
                  fg_defined=r.fg_defined, agree=r.agree, fuel=10_000, probes=[0, 5]))
    return ok


def k2_nonextend(emit: Emit, seed: int) -> bool:
    w = check_no_total_extension(psi_nonextendable(6), 6)
    nf = check_no_total_extension(identity_map(6), 6)
    good = (not isinstance(w, NotFound)) and {w.pair[0][1], w.pair[1][1]} == {0, 1}
    emit(_rec(10, "k2-no-total-extension", good, "k2.check_no_total_extension", depth=6,
              witness=None if isinstance(w, NotFound) else
              [[str(p), s] for p, s in w.pair]))
    idok = isinstance(nf, NotFound)
    emit(_rec(10, "k2-identity-extendable", idok, "k2.check_no_total_extension", depth=6,
              result="not-found" if idok else "witness"))
    return good and idok


def k2_diag(emit: Emit, seed: int) -> bool:
    ok = True
    for f in committing_functionals():
        try:
            d = diagonalize_total(f, 10)
            good = d.disagrees
            emit(_rec(11, "k2-diagonalize", good, "k2.diagonalize_total", functional=f.name,
                      committed=d.committed, step=d.commit_step, fg0=d.fg_first,
                      gfg0=d.g_fg_first))
        except NonCommittal as e:
            good = False
            emit(_rec(11, "k2-diagonalize", False, "k2.diagonalize_total", functional=f.name,
                      diagnostic=str(e)))
        ok &= good
    return ok


CRITERIA: dict[int, tuple[str, Callable[[Emit, int], bool]]] = {
    1: ("combinatory completeness", completeness),
    2: ("projection law", projection),
    3: ("fixed points of designed transforms", ershov),
    4: ("quines", quines),
    5: ("abs and parametrised reductions", abs_param),
    6: ("avoiding a diagonal", adn),
    7: ("uniform diagonal avoidance", adn_uniform_check),
    8: ("limit-map fixed points", arslanov),
    9: ("Turing fixed point", theta),
    10: ("K2 non-extendable map", k2_nonextend),
    11: ("K2 diagonalization", k2_diag),
}


def run(emit: Emit, seed: int = 0, only: list[int] | None = None) -> bool:
    ok = True
    for k, (title, fn) in CRITERIA.items():
        if only and k not in only:
            continue
        res = fn(emit, seed)
        emit({"criterion": k, "check": "summary", "title": title, "ok": res,
              "provenance": f"acceptance.{fn.__name__}"})
        ok &= res
    return ok


__all__ = ["CRITERIA", "run", "theta_corpus", "INPUTS"]
