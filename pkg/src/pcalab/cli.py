"""``pcalab`` command line.

Exit status: 0 when every reported contract is Yes or vacuous, 1 on a
contract violation, 2 on usage errors, 3 on misuse diagnostics (a
precondition of the construction does not hold).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, TextIO

from . import acceptance
from .adn import adn_totalize, adn_uniform, audit_avoidance
from .arslanov import arslanov_construct, builtin_tables, load_table
from .codec import decode, encode
from .fixedpoints import MisuseError, ershov_fixpoint, ershov_param, quine
from .instances import BINARY, UNARY, binary_transform, load_instances, named_code, unary_transform
from .k1 import Defined, pair_codes, phi, phi2, smn
from .k2 import (ConstFunctional, IdentityFunctional, InconsistentMap, NonCommittal, NotFound,
                 check_no_total_extension, committing_functionals, diagonalize_total,
                 psi_nonextendable)
from .machine import OutOfFuel, Value, evaluate
from .numberings import phi_numbering
from .pca import LambdaSyntaxError, compile_lambda
from .terms import ParseError, parse, to_text

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_MISUSE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Out:
    """Collects records and tracks whether any contract failed."""

    def __init__(self, fmt: str, stream: TextIO):
        self.fmt, self.stream, self.failed = fmt, stream, False

    def __call__(self, rec: dict) -> None:
        if rec.get("ok") is False:
            self.failed = True
        if self.fmt == "json-lines":
            self.stream.write(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n")
        else:
            head = rec.get("check", "")
            rest = " ".join(f"{k}={_text(v)}" for k, v in sorted(rec.items()) if k != "check")
            self.stream.write(f"{head} {rest}\n")


def _text(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


def _term(src: str, as_lambda: bool):
    return compile_lambda(src, optimize=True) if as_lambda else parse(src)


def _inputs(args) -> list[int]:
    return list(range(args.sample + 1))


def _verdict_rec(check: str, v, **kw) -> dict:
    return {"check": check, "ok": v.yes, "verdict": v.kind, "budget": v.budget, **kw}


# -- commands ---------------------------------------------------------------------

def cmd_eval(args, out: Out) -> None:
    t = _term(args.term, args.lambda_)
    r = evaluate(t, args.fuel)
    rec = {"check": "eval", "term": to_text(t), "fuel": args.fuel, "steps": r.steps,
           "provenance": "machine.evaluate"}
    if isinstance(r, Value):
        rec.update(result="value", value=to_text(r.term))
    elif isinstance(r, OutOfFuel):
        rec.update(result="out-of-fuel")
    else:
        rec.update(result="stuck", value=to_text(r.term))
    out(rec)


def cmd_encode(args, out: Out) -> None:
    t = _term(args.term, args.lambda_)
    out({"check": "encode", "term": to_text(t), "code": encode(t), "provenance": "codec.encode"})


def cmd_decode(args, out: Out) -> None:
    out({"check": "decode", "code": args.code, "term": to_text(decode(args.code)),
         "provenance": "codec.decode"})


def cmd_compile(args, out: Out) -> None:
    t = compile_lambda(args.source, optimize=args.optimize)
    out({"check": "compile-lambda", "source": args.source, "term": to_text(t), "code": encode(t),
         "provenance": "pca.compile_lambda"})


def cmd_smn(args, out: Out) -> None:
    c = smn(args.e, args.a)
    for x in _inputs(args):
        l, r = phi(c, x, args.fuel), phi2(args.e, args.a, x, args.fuel)
        dl, dr = isinstance(l, Defined), isinstance(r, Defined)
        ok = (dl and dr and l.value == r.value) or (not dl and not dr)
        out({"check": "smn", "ok": ok, "e": args.e, "a": args.a, "x": x, "witness": c,
             "lhs": l.value if dl else None, "rhs": r.value if dr else None, "fuel": args.fuel,
             "provenance": "k1.smn"})


def cmd_quine(args, out: Out) -> None:
    q = quine(args.style)
    for x in _inputs(args):
        r = phi(q, x, args.fuel)
        want = q if args.style == "output-self" else pair_codes(q, x)
        ok = isinstance(r, Defined) and r.value == want
        out({"check": "quine", "ok": ok, "style": args.style, "witness": q, "x": x,
             "steps": r.steps if isinstance(r, Defined) else None, "fuel": args.fuel,
             "provenance": "fixedpoints.quine"})


def cmd_fixpoint(args, out: Out) -> None:
    names = UNARY if args.transform == "all" else [args.transform]
    gamma = phi_numbering()
    for name in names:
        f = _lookup(unary_transform, name)
        w = ershov_fixpoint(gamma, f, budget=args.budget, inputs=_inputs(args))
        out(_verdict_rec("fixpoint", w.verdict, transform=name, witness=w.point, image=f(w.point),
                         inputs=[0, args.sample], provenance="fixedpoints.ershov_fixpoint"))


def cmd_fixpoint_param(args, out: Out) -> None:
    names = BINARY if args.transform == "all" else [args.transform]
    gamma = phi_numbering()
    for name in names:
        h = _lookup(binary_transform, name)
        f = ershov_param(gamma, h)
        for n in range(args.params):
            fn = f(n)
            v = gamma.equiv_bounded(h(pair_codes(fn, n)), fn, args.budget, inputs=_inputs(args))
            out(_verdict_rec("fixpoint-param", v, transform=name, n=n, witness=fn,
                             inputs=[0, args.sample], provenance="fixedpoints.ershov_param"))


def _lookup(fn: Callable, name: str):
    try:
        return fn(name)
    except KeyError:
        raise UsageError(f"unknown instance {name!r}") from None


def _named(kind: str, name: str) -> int:
    if name.isdigit():
        return int(name)
    try:
        return named_code(kind, name)
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None


def _clauses(out: Out, m, gamma, n: int, arg: int, psi_val, args, extra: dict) -> None:
    fn = m(arg)
    if isinstance(psi_val, Defined):
        v = gamma.equiv_bounded(fn, psi_val.value, args.budget, inputs=range(21))
        out(_verdict_rec("adn-clause-2", v, n=n, witness=fn, psi=psi_val.value,
                         inputs=[0, 20], provenance="adn.adn_totalize", **extra))
    else:
        a = audit_avoidance(m, arg, fuel=args.audit_fuel)
        out({"check": "adn-clause-3", "ok": a.ok, "n": n, "witness": fn, "fuel": a.fuel,
             "fuel_ok": a.fuel_ok, "psi_cycle": a.psi_cycle, "shape_ok": a.shape_ok,
             "provenance": "adn.audit_avoidance", **extra})


def cmd_adn(args, out: Out) -> None:
    gamma = phi_numbering()
    psi, delta = _named("psi", args.psi), _named("delta", args.delta)
    m = adn_totalize(gamma, delta, psi, budget=args.budget, swapped=args.swapped)
    out({"check": "adn-map", "ok": True, "psi": args.psi, "delta": args.delta, "code": m.code,
         "eta": m.eta, "diagonal_sample": len(m.diagonal.checked) + len(m.diagonal.undefined),
         "provenance": "adn.adn_totalize"})
    for n in range(args.sample + 1):
        _clauses(out, m, gamma, n, n, phi(psi, n, args.budget), args, {})


def cmd_adn_uniform(args, out: Out) -> None:
    gamma = phi_numbering()
    m = adn_uniform(gamma, _named("delta", args.delta), budget=args.budget)
    out({"check": "adn-map", "ok": True, "psi": "universal", "delta": args.delta, "code": m.code,
         "provenance": "adn.adn_uniform"})
    for ename in args.e:
        e = _named("psi", ename)
        for n in range(args.sample + 1):
            _clauses(out, m, gamma, n, pair_codes(e, n), phi(e, n, args.budget), args,
                     {"e": ename})


def cmd_arslanov(args, out: Out) -> None:
    tables = builtin_tables()
    if args.table == "all":
        chosen = [t for k, t in tables.items() if k != "oscillating"]
    elif args.table in tables:
        chosen = [tables[args.table]]
    elif os.path.exists(args.table):
        chosen = [load_table(args.table)]
    else:
        raise UsageError(f"unknown table {args.table!r}")
    gamma = phi_numbering()
    for approx in chosen:
        res = arslanov_construct(gamma, approx, args.budget)
        if res.found:
            out(_verdict_rec("arslanov", res.witness.verdict, table=approx.name, n=res.n,
                             stage=res.stage, witness=res.witness.point, scanned=len(res.scanned),
                             inputs=[0, 20], provenance="arslanov.arslanov_construct"))
        else:
            out({"check": "arslanov", "ok": False, "table": approx.name, "verdict": "not-found",
                 "budget": args.budget, "scanned": len(res.scanned),
                 "provenance": "arslanov.arslanov_construct"})


def cmd_k2_nonextend(args, out: Out) -> None:
    w = check_no_total_extension(psi_nonextendable(args.depth), args.depth)
    if isinstance(w, NotFound):
        out({"check": "k2-nonextend", "ok": False, "depth": args.depth, "result": "not-found",
             "reason": w.reason, "provenance": "k2.check_no_total_extension"})
        return
    out({"check": "k2-nonextend", "ok": True, "depth": args.depth,
         "witness": [[str(p), s] for p, s in w.pair],
         "per_modulus": {str(k): [[str(p), s] for p, s in v] for k, v in w.per_modulus.items()},
         "provenance": "k2.check_no_total_extension"})


def _functionals(name: str):
    if name == "all":
        return committing_functionals()
    if name == "identity":
        return [IdentityFunctional()]
    for f in committing_functionals():
        if f.name == name:
            return [f]
    if name.startswith("const-"):
        parts = name.split("-")
        try:
            return [ConstFunctional(int(parts[1]), int(parts[3]) if len(parts) == 4 else 0)]
        except (ValueError, IndexError):
            pass
    raise UsageError(f"unknown functional {name!r}")


def cmd_k2_diag(args, out: Out) -> None:
    for f in _functionals(args.functional):
        d = diagonalize_total(f, args.probe_depth)
        out({"check": "k2-diag", "ok": d.disagrees, "functional": f.name,
             "committed": d.committed, "step": d.commit_step, "fg0": d.fg_first,
             "gfg0": d.g_fg_first, "g": d.g.dumps(), "provenance": "k2.diagonalize_total"})


def cmd_check(args, out: Out) -> None:
    only = [int(c) for c in args.criteria.split(",")] if args.criteria else None
    acceptance.run(out, args.seed, only)


def cmd_instances(args, out: Out) -> None:
    data = load_instances()
    for kind in sorted(data):
        for name in sorted(data[kind]):
            out({"check": "instance", "kind": kind, "name": name, "code": named_code(kind, name)})
    for name in UNARY:
        out({"check": "instance", "kind": "transform", "name": name})
    for name in BINARY:
        out({"check": "instance", "kind": "binary-transform", "name": name})


# -- parser --------------------------------------------------------------------

def _default_fuel() -> int:
    env = os.environ.get("PCALAB_FUEL")
    if env is None:
        return 10_000
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"PCALAB_FUEL must be an integer, got {env!r}") from None


def build_parser(fuel_default: int = 10_000) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=fuel_default,
                        help="evaluation step budget (default %(default)s; env PCALAB_FUEL)")
    common.add_argument("--budget", type=int, default=1000,
                        help="budget for bounded equivalence checks (default %(default)s)")
    common.add_argument("--sample", type=int, default=20,
                        help="check inputs 0..SAMPLE (default %(default)s)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized suites (default %(default)s)")
    common.add_argument("--format", choices=["json-lines", "text"], default="json-lines",
                        help="output format (default %(default)s)")

    p = argparse.ArgumentParser(prog="pcalab", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help, description=help)
        sp.set_defaults(fn=fn)
        return sp

    for name, fn, h in (("eval", cmd_eval, "evaluate a term"),
                        ("encode", cmd_encode, "code of a term")):
        sp = add(name, fn, h)
        sp.add_argument("term")
        sp.add_argument("--lambda", dest="lambda_", action="store_true",
                        help="read TERM as a lambda expression")
    add("decode", cmd_decode, "term of a code").add_argument("code", type=int)
    sp = add("compile-lambda", cmd_compile, "bracket-abstract a lambda expression")
    sp.add_argument("source")
    sp.add_argument("--optimize", action="store_true", help="use the eta rule")
    sp = add("smn", cmd_smn, "check phi(smn(e, a), x) against e a x")
    sp.add_argument("e", type=int)
    sp.add_argument("a", type=int)
    sp = add("quine", cmd_quine, "self-reproducing program with its transcript")
    sp.add_argument("--style", choices=["output-self", "apply-self"], default="output-self")
    sp = add("fixpoint", cmd_fixpoint, "fixed point of a named transform")
    sp.add_argument("transform", nargs="?", default="all")
    sp = add("fixpoint-param", cmd_fixpoint_param, "parametrised fixed points of a named binary transform")
    sp.add_argument("transform", nargs="?", default="all")
    sp.add_argument("--params", type=int, default=5, help="check n = 0..PARAMS-1")
    for name, fn, h in (("adn", cmd_adn, "totalize psi while avoiding delta"),
                        ("adn-uniform", cmd_adn_uniform, "uniform version through the universal psi")):
        sp = add(name, fn, h)
        sp.add_argument("--delta", default="sample", help="named delta or a code")
        sp.add_argument("--audit-fuel", type=int, default=100_000,
                        help="fuel for divergence audits (default %(default)s)")
        if name == "adn":
            sp.add_argument("--psi", default="even-const", help="named psi or a code")
            sp.add_argument("--swapped", action="store_true",
                            help="use the race with the two outcomes exchanged")
        else:
            sp.add_argument("--e", nargs="+", default=["even-const", "succ", "divergent"],
                            help="named programs or codes for e")
    sp = add("arslanov", cmd_arslanov, "fixed point of a limit-computable map")
    sp.add_argument("table", nargs="?", default="all", help="built-in table name, path, or 'all'")
    sp = add("k2-nonextend", cmd_k2_nonextend, "witness that a partial map has no total extension")
    sp.add_argument("--depth", type=int, default=6)
    sp = add("k2-diag", cmd_k2_diag, "diagonalize against committing functionals")
    sp.add_argument("functional", nargs="?", default="all")
    sp.add_argument("--probe-depth", type=int, default=10)
    sp = add("check", cmd_check, "run the acceptance suite")
    sp.add_argument("--criteria", default="", help="comma-separated criterion numbers")
    add("instances", cmd_instances, "list named instances")
    return p


def main(argv: list[str] | None = None, stream: TextIO | None = None) -> int:
    stream = stream or sys.stdout
    try:
        parser = build_parser(_default_fuel())
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"pcalab: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return int(e.code or 0)
    out = Out(args.format, stream)
    try:
        args.fn(args, out)
    except UsageError as e:
        print(f"pcalab: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, LambdaSyntaxError) as e:
        print(f"pcalab: syntax error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (MisuseError, NonCommittal, InconsistentMap) as e:
        out({"check": "diagnostic", "ok": False, "error": type(e).__name__, "message": str(e)})
        return EXIT_MISUSE
    return EXIT_VIOLATION if out.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
