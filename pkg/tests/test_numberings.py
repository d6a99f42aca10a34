from pcalab.adn import make_sample_diagonal
from pcalab.codec import encode
from pcalab.k1 import CODE_DIVERGENT, Defined, corpus, pad, phi, program
from pcalab.numberings import NO, UNKNOWN, YES, is_diagonal_on, phi_numbering, totalize
from pcalab.pca import compile_lambda

G = phi_numbering()


def test_padding_is_never_refuted_on_corpus():
    # each padding layer costs a step, so a run ending right at the fuel edge
    # on one side only gives Unknown; it is never No
    for p in corpus():
        assert G.equiv_bounded(p.code, pad(p.code, 5), 50).kind != NO, p.name


def test_padding_is_equivalent_away_from_fuel_edge():
    for p in corpus():
        assert G.equiv_bounded(p.code, pad(p.code, 5), 50, inputs=range(10), fuel=500).kind == YES


def test_identity_vs_succ():
    v = G.equiv_bounded(program("identity").code, program("succ").code, 10)
    assert v.kind == NO and v.witness == 0


def test_joint_divergence_agrees():
    other = pad(CODE_DIVERGENT, 1)
    assert other != CODE_DIVERGENT
    for b in (1, 10, 100, 1000):
        assert G.equiv_bounded(CODE_DIVERGENT, other, b, inputs=range(5)).kind == YES


def test_one_sided_is_unknown():
    v = G.equiv_bounded(program("zero-only").code, program("const-0").code, 100, inputs=range(3))
    assert v.kind == UNKNOWN and v.witness == 1


def test_totalize_identity():
    f = totalize(program("identity").code)
    assert f.check(range(30), 1000) == []
    for p in corpus()[:20]:
        assert G.equiv_bounded(f(p.code), p.code, 1000, inputs=range(21)).yes


def test_totalize_divergent_is_special_element():
    f = totalize(CODE_DIVERGENT)
    for n in range(51):
        assert G.equiv_bounded(f(n), G.special_element, 200, inputs=range(5)).yes
        assert not isinstance(phi(f(n), 0, 2000), Defined)


def test_totalize_padding():
    c = program("add-3").code
    p = encode(compile_lambda(r"\n. iter n (\x. qapp (qapp 0 x) 0) c", {"c": _num(c)},
                              optimize=True))
    f = totalize(p)
    for n in range(21):
        assert G.equiv_bounded(f(n), c, 1000, inputs=range(21)).yes


def _num(c):
    from pcalab.terms import Num
    return Num(c)


def test_diagonality_reports():
    d = make_sample_diagonal()
    rep = is_diagonal_on(G, d, [p.code for p in corpus()[:40]], 1000, inputs=range(21))
    assert rep.ok and rep.checked
    ident = program("identity").code
    rep = is_diagonal_on(G, ident, [p.code for p in corpus()[:10]], 1000, inputs=range(21))
    assert len(rep.violations) == 10
    rep = is_diagonal_on(G, CODE_DIVERGENT, range(10), 1000)
    assert rep.ok and not rep.checked


from hypothesis import given, strategies as st  # noqa: E402

_SMALL = [p.code for p in corpus()[:60]]


@given(st.sampled_from(_SMALL), st.sampled_from(_SMALL), st.sampled_from([5, 30, 200]))
def test_reflexive_and_symmetric(a, b, budget):
    assert G.equiv_bounded(a, a, budget).yes
    v, w = G.equiv_bounded(a, b, budget), G.equiv_bounded(b, a, budget)
    assert v.kind == w.kind and v.witness == w.witness


def test_complete_clause_law():
    f = totalize(CODE_DIVERGENT)
    for n in range(10):
        assert G.equiv_bounded(f(n), G.special_element, 1000, inputs=range(5)).kind != NO
