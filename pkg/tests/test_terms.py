import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pcalab.codec import (NATOMS, cantor_pair, cantor_unpair, code_app, code_num, decode, encode,
                          pair_len, unpair_len)
from pcalab.terms import (PRIMS, App, K, Num, ParseError, S, Var, app, is_closed, is_value, parse,
                          to_text)

from strategies import closed_terms


def test_codes_roundtrip_on_initial_segment():
    for c in range(10_001):
        assert encode(decode(c)) == c


def test_decoded_terms_are_closed():
    assert all(is_closed(decode(c)) for c in range(10_001))


def test_atoms():
    assert decode(encode(K)) is K
    assert encode(K) != encode(S)
    assert decode(encode(Num(0))) == Num(0)
    assert NATOMS == 2 + len(PRIMS)


def test_random_large_codes_roundtrip():
    rng = random.Random(7)
    for _ in range(300):
        c = rng.getrandbits(rng.randint(1, 400))
        assert encode(decode(c)) == c


@given(closed_terms())
def test_encode_decode(t):
    assert decode(encode(t)) == t


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_pairings_are_inverse(x, y):
    assert cantor_unpair(cantor_pair(x, y)) == (x, y)
    assert unpair_len(pair_len(x, y)) == (x, y)


def test_code_shapes():
    assert code_num(4) == NATOMS + 8
    assert decode(code_app(encode(K), code_num(3))) == App(K, Num(3))


def test_encode_rejects_open_terms():
    with pytest.raises(ValueError):
        encode(App(K, Var(0)))


@given(closed_terms())
def test_text_roundtrip(t):
    assert parse(to_text(t)) == t


def test_application_associates_left():
    assert parse("S K K 7") == app(S, K, K, 7)
    assert to_text(App(K, App(K, Num(1)))) == "K (K 1)"


@pytest.mark.parametrize("src", ["", "(", "K )", "()", "foo", "K $"])
def test_parse_errors(src):
    with pytest.raises(ParseError):
        parse(src)


def test_values():
    assert is_value(App(K, Num(1)))
    assert not is_value(app(K, 1, 2))
    assert is_value(app(PRIMS["race"], 1, 2, 3))
    assert not is_value(App(Num(3), Num(4)))
