import pytest

from pcalab.adn import (LEFT, RIGHT, UNIVERSAL_PSI, FirstConverged, NeitherWithin, adn_totalize,
                        adn_uniform, audit_avoidance, make_sample_diagonal, race_eta,
                        race_eta_swapped, race_oracle)
from pcalab.codec import encode
from pcalab.fixedpoints import MisuseError
from pcalab.instances import named_code
from pcalab.k1 import CODE_DIVERGENT, Defined, corpus, pad, pair_codes, phi, program
from pcalab.numberings import UNKNOWN, is_diagonal_on, phi_numbering
from pcalab.pca import compile_lambda

G = phi_numbering()
IN = range(21)
DELTA = make_sample_diagonal()


def slow_const(c, k):
    # converges on every input after about k steps
    return encode(compile_lambda(r"\x. iter k (\y. y) c", {"k": _n(k), "c": _n(c)}, optimize=True))


def _n(v):
    from pcalab.terms import Num
    return Num(v)


def test_race_oracle_matches_primitive():
    fast, slow = slow_const(1, 1), slow_const(2, 30)
    cases = [(fast, 0, slow, 0), (slow, 0, fast, 0), (fast, 0, CODE_DIVERGENT, 0),
             (CODE_DIVERGENT, 0, slow, 0), (fast, 3, fast, 4)]
    for d, x, p, n in cases:
        o = race_oracle(d, x, p, n, 1000)
        r = phi(race_eta(d, p), pair_codes(x, n), 5000)
        assert isinstance(o, FirstConverged) and r == Defined(o.value)


def test_race_examples_with_implemented_orientation():
    # psi converges, delta diverges: psi wins outright
    p = slow_const(5, 2)
    assert phi(race_eta(CODE_DIVERGENT, p), pair_codes(0, 0), 1000) == Defined(5)
    # delta first (stage ~3) against psi at ~9: the implemented table returns delta(x);
    # the literal reading of the case table would return psi(n)
    d, p = slow_const(11, 1), slow_const(22, 7)
    o = race_oracle(d, 0, p, 0, 1000)
    assert o.which == LEFT and o.stage < phi(p, 0, 1000).steps
    assert phi(race_eta(d, p), pair_codes(0, 0), 1000) == Defined(11)
    assert phi(race_eta_swapped(d, p), pair_codes(0, 0), 1000) == Defined(22)
    # both diverge
    for b in (10, 100, 10_000):
        assert not isinstance(phi(race_eta(CODE_DIVERGENT, CODE_DIVERGENT), 0, b), Defined)
    assert isinstance(race_oracle(CODE_DIVERGENT, 0, CODE_DIVERGENT, 0, 100), NeitherWithin)


def test_ties_go_left():
    a, b = slow_const(1, 4), slow_const(2, 4)
    o = race_oracle(a, 0, b, 0, 100)
    assert o.which == LEFT
    assert phi(race_eta(a, b), pair_codes(0, 0), 1000) == Defined(1)
    assert race_oracle(CODE_DIVERGENT, 0, b, 0, 100).which == RIGHT


def test_sample_diagonal():
    ident = program("identity").code
    dx = phi(DELTA, ident, 1000)
    assert isinstance(dx, Defined)
    assert phi(dx.value, 0, 1000) == Defined(1) and phi(ident, 0, 1000) == Defined(0)
    assert not isinstance(phi(DELTA, CODE_DIVERGENT, 10_000), Defined)
    rep = is_diagonal_on(G, DELTA, [p.code for p in corpus()], 1000, inputs=IN)
    assert rep.ok and len(rep.checked) > 100


@pytest.fixture(scope="module")
def even_map():
    return adn_totalize(G, DELTA, named_code("psi", "even-const"))


def test_clause_two_on_evens(even_map):
    c = program("const-7").code
    for n in range(0, 31, 2):
        assert G.equiv_bounded(even_map(n), c, 1000, inputs=IN).yes


def test_clause_three_on_odds(even_map):
    for n in range(1, 31, 2):
        a = audit_avoidance(even_map, n)
        assert a.ok, a


def test_output_depends_only_on_inputs(even_map):
    again = adn_totalize(G, DELTA, named_code("psi", "even-const"))
    assert again.code == even_map.code and again(4) == even_map(4)


def test_total_psi_is_totalized():
    succ = program("succ").code
    m = adn_totalize(G, DELTA, succ)
    for n in range(10):
        assert G.equiv_bounded(m(n), n + 1, 1000, inputs=IN).yes


def test_divergent_psi_avoids_delta():
    m = adn_totalize(G, DELTA, CODE_DIVERGENT)
    for n in range(31):
        assert not isinstance(phi(DELTA, m(n), 100_000 if n < 3 else 10_000), Defined)


@pytest.mark.parametrize("bad", ["identity", "pad1"])
def test_total_transform_is_not_a_diagonal(bad):
    with pytest.raises(MisuseError):
        adn_totalize(G, named_code("delta", bad), named_code("psi", "even-const"))


def test_swapped_table_breaks_clause_two():
    m = adn_totalize(G, DELTA, named_code("psi", "even-const"), swapped=True)
    c = program("const-7").code
    kinds = {G.equiv_bounded(m(n), c, 1000, inputs=IN).kind for n in range(0, 11, 2)}
    assert kinds == {UNKNOWN}


def test_uniform():
    m = adn_uniform(G, DELTA)
    assert m.psi == UNIVERSAL_PSI
    ident = program("identity").code
    for n in range(4):
        # phi_e(n) = n for the identity, so f<e, n> behaves as program n
        assert G.equiv_bounded(m(pair_codes(ident, n)), n, 1000, inputs=IN).yes
    for n in range(21):
        assert not isinstance(phi(DELTA, m(pair_codes(CODE_DIVERGENT, n)), 10_000), Defined)
    ev = program("even-const-3").code
    for n in range(6):
        z = pair_codes(ev, n)
        if n % 2 == 0:
            assert G.equiv_bounded(m(z), 3, 1000, inputs=IN).yes
        else:
            assert audit_avoidance(m, z).ok


def test_uniform_is_uniform():
    m1, m2 = adn_uniform(G, DELTA), adn_uniform(G, DELTA)
    assert m1.code == m2.code
    assert m1(pair_codes(5, 6)) == m2(pair_codes(5, 6))


def test_padded_delta_still_works():
    m = adn_totalize(G, pad(DELTA, 1), named_code("psi", "even-const"))
    assert G.equiv_bounded(m(2), program("const-7").code, 1000, inputs=IN).yes
