import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pcalab.k1 import DIVERGE, OMEGA
from pcalab.machine import OutOfFuel, Value, evaluate
from pcalab.pca import (LambdaSyntaxError, Pas, SwappedPas, bracket_abstract,
                        check_combinatory_complete, check_turing_fixpoint, compile_lambda, lam,
                        projector, random_element, totally_undefined, tuple_element,
                        turing_fixpoint)
from pcalab.terms import PRIMS, App, K, Num, Var, app, substitute

from strategies import open_terms


def test_identity_abstraction():
    assert evaluate(App(lam(0, Var(0)), Num(9)), 100).term == Num(9)


def test_partial_application_is_defined_even_if_body_diverges():
    b = lam([0, 1], App(OMEGA, Var(1)))
    r = evaluate(App(b, Num(1)), 100)
    assert isinstance(r, Value)
    assert isinstance(evaluate(app(b, 1, 2), 2000), OutOfFuel)


def test_abstract_agrees_with_substitution_on_numerals():
    rng = random.Random(3)
    ifz, succ = PRIMS["ifz"], PRIMS["succ"]
    t = app(ifz, Var(0), Num(100), App(succ, Var(0)))
    b = lam(0, t)
    for _ in range(100):
        a = Num(rng.randrange(1000))
        assert evaluate(App(b, a), 1000) == evaluate(substitute(t, {0: a}), 1000).__class__(
            evaluate(substitute(t, {0: a}), 1000).term, evaluate(App(b, a), 1000).steps)


@given(open_terms(3), st.lists(st.sampled_from([K, Num(2), App(K, Num(1)), PRIMS["succ"]]),
                               min_size=3, max_size=3))
def test_clause_two_property(t, args):
    b = lam([0, 1, 2], t)
    lhs = evaluate(app(b, *args), 20_000)
    rhs = evaluate(substitute(t, dict(enumerate(args))), 20_000)
    if isinstance(lhs, Value) and isinstance(rhs, Value):
        assert lhs.term == rhs.term
    else:
        # defined on one side only would be a counterexample; both out of fuel is fine
        assert not isinstance(lhs, Value) and not isinstance(rhs, Value)


@given(open_terms(2))
def test_clause_one_property(t):
    b = lam([0, 1], t)
    assert isinstance(evaluate(App(b, Num(4)), 10_000), Value)


def test_optimized_abstraction_agrees():
    rng = random.Random(5)
    from pcalab.pca import random_term
    for _ in range(200):
        t = random_term(rng, 2, rng.randint(1, 6))
        args = [random_element(rng) for _ in range(2)]
        a = evaluate(app(lam([0, 1], t), *args), 10_000)
        b = evaluate(app(lam([0, 1], t, optimize=True), *args), 10_000)
        assert (a.term if isinstance(a, Value) else None) == (b.term if isinstance(b, Value) else None)


def test_bracket_abstract_returns_closed_over_var():
    from pcalab.terms import free_vars
    t = bracket_abstract(App(Var(0), Var(1)), 0)
    assert free_vars(t.term if hasattr(t, "term") else t) <= {1}


def test_projection_examples():
    assert evaluate(App(tuple_element(Num(1), Num(2)), projector(2, 1)), 100).term == Num(1)
    rng = random.Random(11)
    for _ in range(20):
        a = random_element(rng)
        assert evaluate(App(tuple_element(a), projector(1, 1)), 100).term == a
    with pytest.raises(ValueError):
        projector(2, 3)


def test_turing_fixpoint_examples():
    f = turing_fixpoint()
    r = check_turing_fixpoint(App(K, Num(4)), [Num(0)])
    assert r.fg_defined and r.agree
    fg = evaluate(App(f, App(K, Num(4))), 1000).term
    assert evaluate(App(App(K, Num(4)), fg), 100).term == Num(4)
    ident = lam(0, Var(0))
    assert check_turing_fixpoint(ident, [Num(1)]).fg_defined
    # g demanding the value of its argument: f g is still defined
    demanding = lam([0, 1], App(PRIMS["succ"], App(Var(0), Var(1))))
    assert isinstance(evaluate(App(f, demanding), 1000), Value)


def test_totally_undefined():
    u = totally_undefined(DIVERGE, Num(0))
    assert isinstance(evaluate(u, 10), Value)
    assert isinstance(evaluate(App(u, Num(1)), 2000), OutOfFuel)


def test_completeness_report():
    assert check_combinatory_complete(Pas(), 300, seed=1).ok
    assert not check_combinatory_complete(SwappedPas(), 300, seed=1).ok


def test_nullary_case():
    # n = 0: b = [x] t is defined and b a ~ t(a)
    rep = check_combinatory_complete(Pas(), 100, seed=2, max_vars=1)
    assert rep.ok


def test_lambda_syntax():
    assert evaluate(app(compile_lambda(r"\x y. x"), 1, 2), 100).term == Num(1)
    with pytest.raises(LambdaSyntaxError):
        compile_lambda(r"\x. (x")
    with pytest.raises(LambdaSyntaxError):
        compile_lambda(r"\x. y")
