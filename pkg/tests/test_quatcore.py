import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qdunkl.errors import InvalidParam, ZeroBase, ZeroQuaternion
from qdunkl.quatcore import (
    AXIS_I, AXIS_J, AXIS_K, I, J, K, ONE, Quaternion, UnitAxis, axis_complex_pow, axis_exp,
    embed, left_matrix, qinv, qmul, qmul_arr, right_matrix,
)

finite = st.floats(-10, 10, allow_nan=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)


def test_hamilton_rules():
    assert I * I == -ONE and J * J == -ONE and K * K == -ONE
    assert I * J == K and J * K == I and K * I == J
    assert J * I == -K
    assert (I * J * K) == -ONE


@given(quats, quats, quats)
def test_associative(p, q, r):
    assert ((p * q) * r).isclose(p * (q * r), atol=1e-9 * (1 + abs(p) * abs(q) * abs(r)))


@given(quats, quats)
def test_norm_multiplicative(p, q):
    assert math.isclose(abs(p * q), abs(p) * abs(q), rel_tol=1e-12, abs_tol=1e-12)


@given(quats, quats)
def test_conj_reverses(p, q):
    assert (p * q).conj().isclose(q.conj() * p.conj(), atol=1e-9 * (1 + abs(p) * abs(q)))


@given(quats, quats)
def test_matrices_match_product(p, q):
    pq = (p * q).as_array()
    assert np.allclose(left_matrix(p) @ q.as_array(), pq, atol=1e-9)
    assert np.allclose(right_matrix(q) @ p.as_array(), pq, atol=1e-9)


@given(quats, quats)
def test_array_product_matches_scalar(p, q):
    assert np.allclose(qmul_arr(p.as_array(), q.as_array()), qmul(p, q).as_array())


def test_inverse():
    q = Quaternion(1.0, -2.0, 0.5, 3.0)
    assert (q * qinv(q)).isclose(ONE)
    with pytest.raises(ZeroQuaternion):
        qinv(Quaternion())


@given(st.floats(-20, 20), st.floats(-20, 20))
def test_axis_exp_is_homomorphism(s, t):
    for u in (AXIS_I, AXIS_J, AXIS_K, UnitAxis.from_vector([1.0, 2.0, -2.0])):
        assert (axis_exp(u, s) * axis_exp(u, t)).isclose(axis_exp(u, s + t), atol=1e-12)
        assert math.isclose(abs(axis_exp(u, s)), 1.0, rel_tol=1e-14)


def test_unit_axis_squares_to_minus_one():
    u = UnitAxis.from_vector([0.3, -0.4, 1.2])
    assert (u.u * u.u).isclose(-ONE)


def test_axis_parse():
    assert UnitAxis.parse("i") == AXIS_I
    assert UnitAxis.parse("-k").u == -K
    assert UnitAxis.parse("0,0,2") == AXIS_K
    assert UnitAxis.parse("j").label() == "j"
    for bad in ("q", "1,2", "0,0,0"):
        with pytest.raises(InvalidParam):
            UnitAxis.parse(bad)
    with pytest.raises(InvalidParam):
        UnitAxis(Quaternion(0.5, 1.0))


def test_axis_complex_pow_matches_complex():
    z = complex(0.7, -1.3) ** 1.75
    q = axis_complex_pow(0.7, -1.3, AXIS_J, 1.75)
    assert q.isclose(Quaternion(z.real, 0.0, z.imag, 0.0), atol=1e-13)
    with pytest.raises(ZeroBase):
        axis_complex_pow(0.0, 0.0, AXIS_I, 0.5)


def test_embed_is_algebra_map():
    rng = np.random.default_rng(0)
    a = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    b = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    u = UnitAxis.from_vector([1.0, 1.0, 1.0])
    assert np.allclose(qmul_arr(embed(a, u), embed(b, u)), embed(a * b, u))
