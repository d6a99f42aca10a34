import pytest
from hypothesis import given

from pcalab import machine
from pcalab.k1 import DIVERGE, OMEGA, corpus
from pcalab.machine import OutOfFuel, Stuck, Value, certify_divergence, evaluate
from pcalab.pca import compile_lambda, turing_fixpoint
from pcalab.terms import PRIMS, App, K, Num, S, Var, app

from strategies import closed_terms

I = app(S, K, K)


def ev(t, fuel, backend):
    return evaluate(t, fuel, machine=backend)


def test_k_selects_first(backend):
    assert ev(app(K, 3, 5), 100, backend) == Value(Num(3), 1)


def test_skk_is_identity(backend):
    r = ev(App(I, Num(7)), 100, backend)
    assert isinstance(r, Value) and r.term == Num(7) and r.steps == 2


def test_omega_runs_out(backend):
    w = app(S, I, I)
    assert isinstance(ev(App(w, w), 1000, backend), OutOfFuel)


def test_values_cost_nothing(backend):
    assert ev(App(K, Num(1)), 0, backend) == Value(App(K, Num(1)), 0)


def test_numeral_application(backend):
    # a numeral in head position runs the program it codes
    from pcalab.codec import encode
    r = ev(App(Num(encode(PRIMS["succ"])), Num(4)), 10, backend)
    assert r == Value(Num(5), 2)


def test_strict_arguments(backend):
    # K discards its argument, but only after evaluating it
    assert isinstance(ev(app(K, 1, OMEGA), 500, backend), OutOfFuel)


def test_ifz_and_arith(backend):
    ifz = PRIMS["ifz"]
    assert ev(app(ifz, 0, 4, 5), 10, backend).term == Num(4)
    assert ev(app(ifz, 2, 4, 5), 10, backend).term == Num(5)
    assert ev(app(PRIMS["pred"], 0), 10, backend).term == Num(0)
    r = ev(app(PRIMS["fst"], app(PRIMS["pair"], 3, 9)), 10, backend)
    assert r.term == Num(3)


def test_stuck(backend):
    assert isinstance(ev(App(PRIMS["succ"], K), 10, backend), Stuck)


def test_iter(backend):
    r = ev(app(PRIMS["iter"], 5, PRIMS["succ"], 10), 100, backend)
    assert r.term == Num(15)
    assert ev(app(PRIMS["iter"], 0, K, 3), 10, backend).term == Num(3)


def test_clock(backend):
    from pcalab.codec import encode
    succ = Num(encode(PRIMS["succ"]))
    # succ 4 converges in one step: clock reports value + 1
    assert ev(app(PRIMS["clock"], succ, 4, 5), 100, backend).term == Num(6)
    assert ev(app(PRIMS["clock"], succ, 4, 0), 100, backend).term == Num(0)
    d = Num(encode(DIVERGE))
    assert ev(app(PRIMS["clock"], d, 0, 50), 1000, backend).term == Num(0)


def test_race_prefers_faster_then_left(backend):
    from pcalab.codec import encode
    succ, d = Num(encode(PRIMS["succ"])), Num(encode(DIVERGE))
    race = PRIMS["race"]
    assert ev(app(race, d, 0, succ, 1), 1000, backend).term == Num(2)
    assert ev(app(race, succ, 1, d, 0), 1000, backend).term == Num(2)
    assert ev(app(race, succ, 1, succ, 7), 1000, backend).term == Num(2)
    assert isinstance(ev(app(race, d, 0, d, 0), 1000, backend), OutOfFuel)


def test_pure_sk_disables_extensions():
    assert isinstance(evaluate(App(PRIMS["succ"], Num(1)), 10, pure_sk=True), Stuck)
    assert isinstance(evaluate(App(Num(3), Num(1)), 10, pure_sk=True), Stuck)
    assert evaluate(app(K, S, K), 10, pure_sk=True).term is S


def test_fuel_must_be_nonnegative():
    with pytest.raises(ValueError):
        evaluate(K, -1)
    with pytest.raises(ValueError):
        evaluate(Var(0), 1)


def test_resumable_advance(backend):
    t = App(turing_fixpoint(), compile_lambda(r"\r x. ifz x (\d. 0) (\d. r (pred x)) 0"))
    t = App(t, Num(20))
    whole = ev(t, 100_000, backend)
    m = backend(t)
    while m.status == machine.RUNNING:
        m.advance(7)
    assert m.cur == whole.term and m.steps == whole.steps


def test_divergence_certificates():
    assert certify_divergence(OMEGA, 1000)
    assert not certify_divergence(App(I, Num(1)), 1000)


@pytest.mark.skipif(machine.BACKEND != "cython", reason="compiled kernel not built")
def test_backends_agree_on_corpus():
    for p in corpus():
        for x in (0, 3):
            t = App(p.term, Num(x))
            assert (evaluate(t, 3000, machine=machine.PyMachine)
                    == evaluate(t, 3000, machine=machine.Machine)), p.name


@pytest.mark.skipif(machine.BACKEND != "cython", reason="compiled kernel not built")
@given(closed_terms(16))
def test_backends_agree_on_random_terms(t):
    a = evaluate(t, 500, machine=machine.PyMachine)
    b = evaluate(t, 500, machine=machine.Machine)
    assert a == b


def test_fallback_is_selectable():
    import os
    import subprocess
    import sys
    env = dict(os.environ, PCALAB_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import pcalab; print(pcalab.BACKEND)"],
                         env=env, capture_output=True, text=True).stdout.strip()
    assert out == "python"
