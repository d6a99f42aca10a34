import pytest

from pcalab.fixedpoints import (MisuseError, abs_from_param, ershov_abs, ershov_fixpoint,
                                ershov_param, fixpoint_operator, param_from_abs, quine,
                                universal_totalizer)
from pcalab.instances import binary_transform, unary_transform
from pcalab.k1 import CODE_DIVERGENT, Defined, pad, pair_codes, phi, program
from pcalab.numberings import TotalCodeMap, phi_numbering

G = phi_numbering()
IN = range(21)


def test_param_first_projection():
    h = binary_transform("first")
    f = ershov_param(G, h)
    for n in range(5):
        assert G.equiv_bounded(h(pair_codes(f(n), n)), f(n), 1000, inputs=IN).yes


def test_param_padding():
    f = ershov_param(G, binary_transform("pad1"))
    for n in range(31):
        assert G.equiv_bounded(f(n), pad(f(n), 1), 1000, inputs=IN).yes


def test_param_constant_n():
    h = binary_transform("const-n")
    f = ershov_param(G, h)
    for n in range(6):
        for x in IN:
            assert phi(f(n), x, 1000) == Defined(n)
            assert phi(h(pair_codes(f(n), n)), x, 1000) == Defined(n)


def test_program_and_host_agree():
    f = ershov_param(G, binary_transform("pad-n"))
    assert f.check(range(5), 5000) == []


def test_misuse_is_detected():
    lying = TotalCodeMap("lying", binary_transform("first").code, lambda z: 0)
    with pytest.raises(MisuseError):
        ershov_param(G, lying)
    partial = TotalCodeMap("partial", CODE_DIVERGENT, lambda z: 0)
    with pytest.raises(MisuseError):
        ershov_param(G, partial)


@pytest.mark.parametrize("name", ["identity", "pad-7", "compose-succ", "const-builder", "to-succ"])
def test_fixpoint_examples(name):
    w = ershov_fixpoint(G, unary_transform(name))
    assert w.verdict.yes
    assert G.equiv_bounded(unary_transform(name)(w.point), w.point, w.check_budget,
                           inputs=IN) == w.verdict


def test_compose_succ_witness_is_constant_on_tested_inputs():
    w = ershov_fixpoint(G, unary_transform("compose-succ"))
    vals = {type(phi(w.point, x, 1000)).__name__ for x in IN}
    assert len(vals) == 1


def test_fixpoint_operator_is_uniform():
    op = fixpoint_operator()
    for name in ("identity", "pad-2", "to-const-3"):
        f = unary_transform(name)
        assert phi(op.code, f.code, 10_000) == Defined(op(f.code))
        assert G.equiv_bounded(f(op(f.code)), op(f.code), 1000, inputs=IN).yes


def test_abs_examples():
    f = ershov_abs(G)
    ident = program("identity").code
    assert phi(ident, f(ident), 1000) == Defined(f(ident))
    assert not isinstance(phi(CODE_DIVERGENT, f(CODE_DIVERGENT), 1000), Defined)
    pad2 = unary_transform("pad-2").code
    v = phi(pad2, f(pad2), 1000)
    assert isinstance(v, Defined)
    assert G.equiv_bounded(v.value, f(pad2), 1000, inputs=IN).yes


def test_abs_to_param_and_cross_check():
    f_abs = param_from_abs(G)
    for hname in ("first", "pad1"):
        h = binary_transform(hname)
        g = abs_from_param(G, f_abs, h)
        direct = ershov_param(G, h)
        for n in range(21 if hname == "pad1" else 3):
            assert G.equiv_bounded(h(pair_codes(g(n), n)), g(n), 1000, inputs=IN).yes
        for n in range(3):
            assert G.equiv_bounded(h(pair_codes(direct(n), n)), direct(n), 1000, inputs=IN).yes
    assert g.check(range(3), 10_000) == []


def test_universal_totalizer_contract():
    h = universal_totalizer()
    succ = program("succ").code
    for x in range(5):
        assert G.equiv_bounded(h(pair_codes(x, succ)), x + 1, 1000, inputs=IN).yes


def test_quines():
    q = quine("output-self")
    assert phi(q, 0, 10_000) == Defined(q)
    assert phi(q, 17, 10_000) == Defined(q)
    assert quine("output-self") == q
    qa = quine("apply-self")
    assert phi(qa, 5, 10_000) == Defined(pair_codes(qa, 5))
    with pytest.raises(ValueError):
        quine("nope")


def test_quine_code_is_a_program():
    assert quine() > 10**6
