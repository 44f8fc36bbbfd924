import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import frac_dunkl_integral
from qdunkl import frqdt2d as F
from qdunkl.errors import GridMismatch, InvalidParam, TruncationTooHigh, UnsupportedDegree
from qdunkl.quadrature import Grid2D, SampledField, inner_product, max_abs_diff, norm2
from qdunkl.quatcore import AXIS_I, AXIS_J, AXIS_K, Quaternion, UnitAxis, axis_exp, embed, qmul_arr
from qdunkl.transform1d import Side

angles = st.floats(0.25, 2.9) | st.floats(-2.9, -0.25)


def test_against_separable_integrals():
    grid = Grid2D.build(0.5, 1.0, 48)
    spec = F.TransformSpec(0.5, 1.0, 1.1, -0.8, UnitAxis.from_vector([1.0, 1.0, 0.0]), AXIS_K)
    C = Quaternion(0.5, -1.0, 0.25, 2.0)
    g1 = lambda x: (1 + x) * np.exp(-0.7 * x * x)  # noqa: E731
    g2 = lambda x: np.exp(-0.4 * x * x) * (2 - x * x)  # noqa: E731
    f = SampledField.from_function(grid, lambda a, b: (g1(a) * g2(b))[..., None] * C.as_array())
    out = F.frqdt_quadrature(f, spec)
    for i, j in [(20, 30), (24, 24), (5, 40), (33, 11)]:
        y1, y2 = grid.rule1.nodes[i], grid.rule2.nodes[j]
        z1 = frac_dunkl_integral(0.5, 1.1, lambda x: (1 + x) * mp.exp(-0.7 * x * x), y1)
        z2 = frac_dunkl_integral(1.0, -0.8, lambda x: mp.exp(-0.4 * x * x) * (2 - x * x), y2)
        ref = qmul_arr(qmul_arr(embed(z1, spec.a), C.as_array()), embed(z2, spec.b))
        assert np.allclose(out.values[i, j], ref, atol=1e-9)


def test_hermite_eigenrelation(grid, spec):
    for n, m in [(0, 0), (1, 2), (3, 0), (6, 6)]:
        out = F.frqdt_quadrature(F.hermite_field(n, m, grid), spec)
        L = axis_exp(spec.a, n * spec.theta1).as_array()
        R = axis_exp(spec.b, m * spec.theta2).as_array()
        expected = qmul_arr(qmul_arr(L, F.hermite_field(n, m, grid).values), R)
        assert np.max(np.abs(out.values - expected)) < 1e-10


def test_analyze_synthesize_roundtrip(grid, rng):
    c = rng.standard_normal((9, 7, 4))
    f = F.synthesize(F.SpectralCoeffs(8, 6, c), grid)
    back = F.analyze(f, 8, 6)
    assert np.allclose(back.c, c, atol=1e-12)
    assert math.isclose(back.energy(), norm2(f) ** 2, rel_tol=1e-12)
    with pytest.raises(TruncationTooHigh):
        F.analyze(f, 45)


def test_spectral_path_on_coefficients(grid, spec, rng):
    c = rng.standard_normal((7, 7, 4))
    f = F.synthesize(F.SpectralCoeffs(6, 6, c), grid)
    via_coeffs = F.synthesize(F.frqdt_spectral(F.SpectralCoeffs(6, 6, c), spec), grid)
    assert max_abs_diff(F.frqdt_quadrature(f, spec), via_coeffs) < 1e-10


@given(angles, angles, st.integers(0, 2 ** 31 - 1))
def test_plancherel_and_inversion(t1, t2, seed):
    grid = Grid2D.build(0.5, 1.0, 48)
    spec = F.TransformSpec(0.5, 1.0, t1, t2)
    f = F.random_bandlimited(grid, np.random.default_rng(seed))
    assert F.plancherel_check(f, spec).passed
    assert F.inversion_check(f, spec).passed
    assert F.path_agreement(f, spec).passed


def test_inner_product_preserved(grid, spec, rng):
    f = F.random_bandlimited(grid, rng)
    g = F.random_bandlimited(grid, rng)
    a = inner_product(f, g)
    b = inner_product(F.frqdt_quadrature(f, spec), F.frqdt_quadrature(g, spec))
    # two-sided transforms keep only the scalar part in general
    assert math.isclose(a.w, b.w, abs_tol=1e-12)


def test_composition(grid, spec, rng):
    spec2 = F.TransformSpec(0.5, 1.0, 0.7, -1.9)
    f = F.random_bandlimited(grid, rng)
    assert F.compose_check(f, spec, spec2).residual < 1e-10


def test_special_angles(grid, rng):
    f = F.random_bandlimited(grid, rng)
    ident = F.frqdt_quadrature(f, F.TransformSpec(0.5, 1.0, 0.0, 0.0))
    assert np.array_equal(ident.values, f.values)
    refl = F.frqdt_quadrature(f, F.TransformSpec(0.5, 1.0, math.pi, math.pi))
    assert np.array_equal(refl.values, f.values[::-1, ::-1])
    mixed = F.frqdt_quadrature(f, F.TransformSpec(0.5, 1.0, 0.0, 1.0))
    assert max_abs_diff(mixed, F.frqdt_spectral_field(f, F.TransformSpec(0.5, 1.0, 0.0, 1.0))) < 1e-10


def test_grid_mismatch(spec):
    f = SampledField.zeros(Grid2D.build(0.5, 0.5, 16))
    with pytest.raises(GridMismatch):
        F.frqdt_quadrature(f, spec)
    with pytest.raises(InvalidParam):
        F.frqdt(SampledField.zeros(Grid2D.build(0.5, 1.0, 16)), spec, "fft")


@pytest.mark.parametrize("degrees", [(0, 0), (1, 0), (0, 1), (1, 1)])
def test_bochner(grid, spec, degrees):
    assert F.bochner_check(degrees, spec, grid).residual < 1e-10
    p = Quaternion(1.0, 0.0, 0.0, 1.0)
    assert F.bochner_check(degrees, spec, grid, p=p).residual < 1e-10


def test_bochner_other_profile(grid, spec):
    psi = lambda x: np.exp(-0.8 * x * x)  # noqa: E731
    assert F.bochner_check((1, 1), spec, grid, psi, psi).residual < 1e-9
    # the order r + chi - 1/2 gives a different function away from alpha = 1/2
    assert F.bochner_check((1, 0), spec, grid, psi, psi, convention="shifted").residual > 1e-3
    with pytest.raises(UnsupportedDegree):
        F.bochner_check((2, 0), spec, grid)


@pytest.mark.parametrize("alpha", [0.5, 0.8, 1.3])
def test_gaussian_closed_form(grid, spec, alpha):
    rep = F.gaussian_check(alpha, spec, grid)
    assert rep.residual < 1e-9
    if alpha == 0.5:
        assert rep.extra["fixed_point_error"] < 1e-12


def test_order_conventions():
    assert F.hankel_order(0.5, 1) == 1.5
    assert F.hankel_order(0.5, 1, "shifted") == 1.0
    with pytest.raises(InvalidParam):
        F.hankel_order(0.5, 1, "other")


def test_sup_bound(grid, spec, rng):
    for f in [F.gaussian_field(0.5, grid), F.random_bandlimited(grid, rng)]:
        rep = F.sup_bound_check(f, spec)
        assert rep.passed and rep.extra["slack"] > 0


def test_sup_bound_constant_matches_kernel_bound():
    spec = F.TransformSpec(0.0, 0.0, math.pi / 2, math.pi / 2)
    # alpha_0^2 = 1/4 at theta = pi/2
    assert math.isclose(F.sup_bound_constant(spec), 0.25)


def test_order_and_sides(grid):
    spec = F.TransformSpec(0.5, 1.0, math.pi / 2, 0.9)
    f = F.hermite_field(1, 0, grid).left_mul(Quaternion(0.0, 0.0, 1.0, 0.0))
    d = F.order_sensitivity(f, spec)
    assert d["order"] < 1e-13
    assert d["sides"] > 0.1
    # with real-valued f and a == b sidedness is irrelevant
    same = F.TransformSpec(0.5, 1.0, 0.8, 0.9, AXIS_I, AXIS_I)
    g = F.hermite_field(2, 1, grid)
    swapped = F.sided_transform(g, same, Side.RIGHT, Side.LEFT)
    assert max_abs_diff(swapped, F.frqdt_quadrature(g, same)) < 1e-12


def test_example_eigen_field_at_chi_zero():
    grid = Grid2D.build(0.0, 0.0, 48)
    spec = F.TransformSpec(0.0, 0.0, 0.9, -1.4, AXIS_I, AXIS_J)
    f = F.example_eigen_field(grid, 0.3, -1.2, 2.0, 0.5)
    assert max_abs_diff(F.frqdt_quadrature(f, spec), f) < 1e-10
