"""Scalar ring Z[mu, mu^-1]: exact arithmetic, units, evaluation."""

import pytest
from hypothesis import given, strategies as st

from roseman_dga.laurent import Laurent, MU, MU_INV, ONE, ONE_PLUS_MU, parse_laurent


def lmono(c, e):
    return Laurent.mono(c, e)


def test_one_plus_mu_squared():
    assert ONE_PLUS_MU * ONE_PLUS_MU == Laurent({0: 1, 1: 2, 2: 1})


def test_units():
    m3 = lmono(-1, 3)
    assert m3.is_unit()
    assert m3.unit_inverse() == lmono(-1, -3)
    assert not (ONE + MU).is_unit()
    assert not Laurent.of(2).is_unit()
    with pytest.raises(ValueError):
        ONE_PLUS_MU.unit_inverse()


def test_eval_mod():
    assert ONE_PLUS_MU.eval_mod(3, 2) == 0
    assert MU_INV.eval_mod(5, 2) == 3  # inverse of 2 mod 5
    with pytest.raises(ValueError):
        MU.eval_mod(3, 3)


def test_parse_roundtrip():
    for val in (Laurent(), ONE, MU, ONE_PLUS_MU, Laurent({-2: -3, 0: 1, 5: 7})):
        assert parse_laurent(str(val)) == val


laurents = st.builds(
    Laurent,
    st.dictionaries(st.integers(-3, 3), st.integers(-4, 4), max_size=4))


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * ONE == a
    assert a + Laurent() == a
    assert a - a == Laurent()


@given(laurents, laurents, st.sampled_from([(2, 1), (3, 1), (3, 2), (5, 3)]))
def test_eval_is_ring_map(a, b, pm):
    p, mv = pm
    assert (a + b).eval_mod(p, mv) == (a.eval_mod(p, mv) + b.eval_mod(p, mv)) % p
    assert (a * b).eval_mod(p, mv) == (a.eval_mod(p, mv) * b.eval_mod(p, mv)) % p
