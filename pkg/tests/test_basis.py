import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import hermite_gram_schmidt, j_chi
from qdunkl.basis import (
    bessel_j_chi, dunkl_kernel_complex, dunkl_operator_apply, frac_kernel, frac_kernel_complex,
    hermite2d, hermite_h, hermite_table, kernel_in_y, recurrence_coeffs,
)
from qdunkl.errors import GridContainsZero, InvalidParam, ThetaSingular
from qdunkl.quadrature import Grid2D, build_rule, inner_product
from qdunkl.quatcore import AXIS_J, UnitAxis, qmul_arr


@pytest.mark.parametrize("chi", [0.0, 0.5, 1.0, 2.5])
def test_bessel_matches_series(chi):
    xs = [0.0, 0.3, 1.9, 2.0, 2.1, 7.5, 25.0, -4.0]
    got = bessel_j_chi(chi, np.array(xs))
    ref = [j_chi(chi, x) for x in xs]
    assert np.allclose(got, ref, rtol=1e-12, atol=1e-14)


def test_bessel_half_order_closed_form():
    x = np.linspace(0.1, 30, 50)
    assert np.allclose(bessel_j_chi(0.5, x), np.sin(x) / x, atol=1e-14)
    assert np.allclose(bessel_j_chi(-0.5, x), np.cos(x), atol=1e-14)


@given(st.floats(0.0, 5.0), st.floats(-50, 50))
def test_dunkl_kernel_bounded(chi, z):
    assert abs(dunkl_kernel_complex(chi, z)) <= 1.0 + 1e-12


def test_dunkl_kernel_chi_minus_half_is_exponential():
    # at chi = -1/2 the kernel reduces to e^(iz); used only as a consistency point
    z = np.linspace(-10, 10, 41)
    assert np.allclose(dunkl_kernel_complex(-0.5, z), np.exp(1j * z), atol=1e-13)


def test_frac_kernel_is_conjugate_symmetric():
    x, y = 1.3, -0.7
    k1 = frac_kernel_complex(0.5, 1.1, x, y)
    k2 = frac_kernel_complex(0.5, -1.1, x, y)
    assert np.isclose(k1, np.conj(k2))
    q = frac_kernel(0.5, 1.1, x, y, AXIS_J)
    assert q.x == 0.0 and q.z == 0.0 and math.isclose(q.y, k1.imag)


def test_theta_floor():
    with pytest.raises(ThetaSingular):
        frac_kernel_complex(0.5, 0.0, 1.0, 1.0)
    with pytest.raises(ThetaSingular):
        frac_kernel_complex(0.5, math.pi, 1.0, 1.0)


@pytest.mark.parametrize("chi", [0.0, 0.5, 2.0])
def test_hermite_matches_gram_schmidt(chi):
    x = np.linspace(-4, 4, 17)
    ref = hermite_gram_schmidt(8, chi, x)
    assert np.allclose(hermite_table(8, chi, x), ref, atol=1e-12)
    assert np.allclose([hermite_h(n, chi, x) for n in range(9)], ref, atol=1e-12)


@pytest.mark.parametrize("chi", [0.0, 0.7, 3.0])
def test_hermite_orthonormal(chi):
    r = build_rule(chi, 48)
    H = hermite_table(20, chi, r.nodes)
    G = (H * r.weights) @ H.T
    assert np.max(np.abs(G - np.eye(21))) < 1e-10


def test_hermite_table_stable_large_n():
    r = build_rule(0.5, 256)
    H = hermite_table(120, 0.5, r.nodes)
    G = (H * r.weights) @ H.T
    assert np.max(np.abs(G - np.eye(121))) < 1e-9


@pytest.mark.parametrize("chi", [0.0, 0.5, 1.5])
def test_recurrence_against_quadrature(chi):
    r = build_rule(chi, 64)
    H = hermite_table(12, chi, r.nodes)
    X2 = (H * r.weights * r.nodes ** 2) @ H.T
    rc = recurrence_coeffs(chi, 12)
    assert np.allclose(np.diag(X2), rc.beta, atol=1e-11)
    assert np.allclose(np.diag(X2, 2), rc.alpha[2:13], atol=1e-11)
    assert np.allclose(np.diag(X2, 1), 0.0, atol=1e-11)
    assert np.allclose(np.diag(X2, 4), 0.0, atol=1e-11)


def test_hermite2d_orthonormal():
    g = Grid2D.build(0.5, 1.0, 32)
    a, b = hermite2d(2, 3, g), hermite2d(1, 3, g)
    assert math.isclose(inner_product(a, a).w, 1.0, rel_tol=1e-12)
    assert abs(inner_product(a, b).w) < 1e-13


def test_hermite_validation():
    with pytest.raises(InvalidParam):
        hermite_h(-1, 0.5, 1.0)
    with pytest.raises(InvalidParam):
        recurrence_coeffs(0.5, -1)


@pytest.mark.parametrize("chi,theta,x", [(0.5, 1.0, 1.3), (0.0, 0.7, 2.0), (2.0, 2.5, -1.1),
                                         (1.0, math.pi / 2, 0.5)])
def test_operator_eigen_equation(chi, theta, x):
    y = np.linspace(-6, 6, 2001)
    y = y[y != 0]
    u = UnitAxis.from_vector([1.0, -1.0, 0.5])
    E = kernel_in_y(chi, theta, x, y, u)
    lhs = dunkl_operator_apply(E, y, chi, theta, u)
    rhs = qmul_arr(u.u.as_array() * (x / math.sin(theta)), E)
    assert np.max(np.abs(lhs - rhs)) <= 1e-5


def test_operator_rejects_zero_and_asymmetric():
    with pytest.raises(GridContainsZero):
        dunkl_operator_apply(np.zeros((3, 4)), np.array([-1.0, 0.0, 1.0]), 0.5, 1.0, AXIS_J)
    with pytest.raises(InvalidParam):
        dunkl_operator_apply(np.zeros((3, 4)), np.array([-1.0, 0.5, 1.0]), 0.5, 1.0, AXIS_J)
