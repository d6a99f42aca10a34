"""Compare the compiled and pure-Python evaluators on a few workloads.

    python benchmarks/bench_machine.py [--repeat N]

Both machines must report the same result and step count; the script
aborts otherwise.
"""

from __future__ import annotations

import argparse
import time

from pcalab import machine
from pcalab.adn import adn_totalize, make_sample_diagonal
from pcalab.instances import named_code
from pcalab.k1 import decode, program
from pcalab.numberings import phi_numbering
from pcalab.pca import compile_lambda, turing_fixpoint
from pcalab.terms import App, Num


def workloads():
    loop = compile_lambda(r"\r x. ifz x (\d. 0) (\d. r (pred x)) 0", optimize=True)
    yield "countdown-2000", App(App(turing_fixpoint(), loop), Num(2000)), 10**6
    yield "iter-double-5000", App(program("double").term, Num(5000)), 10**6
    m = adn_totalize(phi_numbering(), make_sample_diagonal(), named_code("psi", "even-const"))
    yield "adn-f(30)-at-0", App(decode(m(30)), Num(0)), 10**5
    yield "omega-100k", App(program("divergent").term, Num(0)), 100_000


def bench(t, fuel, cls, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        r = machine.evaluate(t, fuel, machine=cls)
        best = min(best, time.perf_counter() - t0)
    return r, best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if machine.BACKEND != "cython":
        raise SystemExit("compiled kernel not built; run pip install -e . --no-build-isolation")
    print(f"{'workload':<20}{'steps':>9}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for name, t, fuel in workloads():
        rp, tp = bench(t, fuel, machine.PyMachine, args.repeat)
        rc, tc = bench(t, fuel, machine.Machine, args.repeat)
        if rp != rc:
            raise SystemExit(f"{name}: backends disagree: {rp} vs {rc}")
        print(f"{name:<20}{rp.steps:>9}{tp:>11.3f}{tc:>11.3f}{tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
