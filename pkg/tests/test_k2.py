import pytest
from hypothesis import given
from hypothesis import strategies as st

from pcalab.k2 import (EMPTY, BairePoint, ConstFunctional, IdentityFunctional, InconsistentMap,
                       NonCommittal, NotFound, PrefixMap, apply_functional,
                       check_no_total_extension, committing_functionals, diagonalize_total,
                       identity_map, psi_nonextendable, refute_extension_tables)


def test_apply_examples():
    idm = identity_map(5)
    zero = BairePoint(())
    for k in range(1, 6):
        assert apply_functional(idm, zero, k) == (0,) * k
    assert all(apply_functional(EMPTY, BairePoint(p), 1) is None for p in [(), (1,), (0, 1)])
    psi = psi_nonextendable(6)
    assert apply_functional(psi, BairePoint((0, 0, 1)), 3) == (0, 0, 1)


def test_psi_shape():
    psi = psi_nonextendable(6)
    assert apply_functional(psi, BairePoint((0, 1)), 1) == (1,)
    assert apply_functional(psi, BairePoint((0, 0, 1)), 3) == (0, 0, 1)
    for d in range(2, 8):
        assert psi_nonextendable(d).lookup((0,) * d) is None


def test_convergence_forcing():
    psi = psi_nonextendable(6)
    # n = 0 is the cylinder [1] itself, so forcing starts at n = 1
    assert apply_functional(psi, BairePoint((1,)), 1) == (1,)
    for n in range(1, 6):
        first = apply_functional(psi, BairePoint((0,) * n + (1,)), 1)[0]
        assert first == (0 if n % 2 == 0 else 1)


def test_no_total_extension():
    w = check_no_total_extension(psi_nonextendable(6), 6)
    (p0, s0), (p1, s1) = w.pair
    assert (str(p0), s0, str(p1), s1) == ("0010^w", 0, "010^w", 1)
    assert isinstance(check_no_total_extension(identity_map(6), 6), NotFound)
    assert isinstance(check_no_total_extension(psi_nonextendable(6), 2), NotFound)


def test_larger_depth_keeps_witness():
    base = check_no_total_extension(psi_nonextendable(6), 6)
    for d in (7, 8):
        w = check_no_total_extension(psi_nonextendable(d), d)
        assert w.pair == base.pair
        for k, v in base.per_modulus.items():
            assert w.per_modulus[k] == v


def test_brute_force_refutation():
    out = refute_extension_tables(psi_nonextendable(4), 2)
    assert len(out) == 16


def test_inconsistent_maps_rejected():
    with pytest.raises(InconsistentMap):
        PrefixMap({(0,): (1,), (0, 1): (0,)}, 2)
    with pytest.raises(InconsistentMap):
        PrefixMap({(0, 0, 0): ()}, 2)
    with pytest.raises(InconsistentMap):
        PrefixMap.loads("depth 2\n0 -> 1\n0 1 -> 0\n")
    with pytest.raises(InconsistentMap):
        PrefixMap.loads("0 -> 1\n")


def test_text_roundtrip(tmp_path):
    psi = psi_nonextendable(5)
    assert PrefixMap.loads(psi.dumps()) == psi
    psi.save(tmp_path / "psi.map")
    assert PrefixMap.load(tmp_path / "psi.map") == psi


@given(st.lists(st.integers(0, 1), max_size=8))
def test_monotone_lookup(word):
    psi = psi_nonextendable(6)
    a, b = psi.lookup(word[:3]), psi.lookup(word)
    if a is not None:
        assert b is not None and b[:len(a)] == a


def test_diagonalization_examples():
    d = diagonalize_total(ConstFunctional(0), 10)
    assert d.committed == 0 and d.commit_step == 0 and d.g_fg_first == 1
    assert apply_functional(d.g, BairePoint(()), 1) == (1,)
    d = diagonalize_total(ConstFunctional(7, 3), 10)
    assert (d.commit_step, d.fg_first, d.g_fg_first) == (3, 7, 8)
    with pytest.raises(NonCommittal):
        diagonalize_total(IdentityFunctional(), 10)
    with pytest.raises(NonCommittal):
        diagonalize_total(ConstFunctional(1, 20), 10)


def test_diagonalization_law():
    fs = committing_functionals()
    assert len(fs) == 20
    for f in fs:
        assert diagonalize_total(f, 10).disagrees, f.name
