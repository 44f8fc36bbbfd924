import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qdunkl import frqdt2d as F
from qdunkl import uncertainty as U
from qdunkl.errors import InvalidParam, TruncationSuspect, ZeroFunction
from qdunkl.quadrature import Grid2D, SampledField
from qdunkl.quatcore import Quaternion


def test_weighted_moment_gaussian():
    grid = Grid2D.build(0.5, 1.0, 48)
    f = F.gaussian_field(0.5, grid)
    # int |x|^2 e^(-|x|^2) |x1|^2 |x2|^3 dx = Gamma(chi1+2)Gamma(chi2+1) + Gamma(chi1+1)Gamma(chi2+2)
    ref = math.gamma(2.5) * math.gamma(2.0) + math.gamma(1.5) * math.gamma(3.0)
    assert math.isclose(U.weighted_moment(f, 1.0), ref, rel_tol=1e-12)
    with pytest.raises(InvalidParam):
        U.weighted_moment(f, 0.5)


def test_moment_identity_both_domains(grid, spec, rng):
    f = F.random_bandlimited(grid, rng)
    c = F.analyze(f, 16)
    q = U.moment_quadratic_form(c, grid.chi1, grid.chi2)
    assert abs(q - U.weighted_moment(f, 1.0)) < 1e-7
    g = F.frqdt_quadrature(f, spec)
    qg = U.moment_quadratic_form(F.frqdt_spectral(c, spec), grid.chi1, grid.chi2)
    assert abs(qg - U.weighted_moment(g, 1.0)) < 1e-7
    # only the diagonal part is shared by both domains
    d = U.moment_diagonal_form(c, grid.chi1, grid.chi2)
    assert abs(d - U.moment_diagonal_form(F.frqdt_spectral(c, spec), grid.chi1, grid.chi2)) < 1e-12


def test_diagonal_form_misses_couplings(grid, rng):
    # the diagonal sum alone differs once h_n and h_(n+2) are both present
    c = np.zeros((5, 5, 4))
    c[0, 0, 0] = c[2, 0, 0] = 1 / math.sqrt(2)
    coeffs = F.SpectralCoeffs(4, 4, c)
    full = U.moment_quadratic_form(coeffs, grid.chi1, grid.chi2)
    diag = U.moment_diagonal_form(coeffs, grid.chi1, grid.chi2)
    f = F.synthesize(coeffs, grid)
    assert abs(full - U.weighted_moment(f, 1.0)) < 1e-12
    assert abs(full - diag) > 0.1


@pytest.mark.parametrize("chi1,chi2", [(0.0, 0.0), (0.5, 1.0), (2.0, 0.3)])
def test_p1_table_is_beta_sum(chi1, chi2):
    dc = U.diagonal_coeffs(1.0, chi1, chi2, 8)
    assert np.max(np.abs(dc.table - dc.exact_p1_table())) < 1e-10
    assert dc.argmin == (0, 0)
    assert math.isclose(dc.amin, chi1 + chi2 + 2.0, rel_tol=1e-12)


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0])
def test_table_grows_along_n(p):
    dc = U.diagonal_coeffs(p, 0.5, 1.0, 12)
    t = dc.table
    assert np.all(t[2:, :] > t[:-2, :]) and np.all(t[:, 2:] > t[:, :-2])


def test_truncation_guard():
    # with nmax = 1 the table cannot show an interior minimum if forced to the edge
    dc = U.diagonal_coeffs(2.0, 0.5, 1.0, 1, guard=False)
    assert dc.argmin == (0, 0)
    table = U.diagonal_table(2.0, 0.5, 1.0, 3, 3)
    assert table.shape == (4, 4)


def test_guard_raises_on_boundary_minimum(monkeypatch):
    monkeypatch.setattr(U, "diagonal_table", lambda *a, **k: -np.arange(16.0).reshape(4, 4))
    with pytest.raises(TruncationSuspect):
        U.diagonal_coeffs(1.0, 0.5, 0.5, 3)


def test_ground_state_attains_its_constant(grid, spec):
    rep = U.heisenberg_check(F.gaussian_field(0.5, grid, Quaternion(0.5, 0.5, -0.5, 0.5)), spec)
    assert abs(rep.extra["ratio_ground_state_constant"] - 1.0) < 1e-10
    # against the stated constant ((2chi1+1)+(2chi2+1))^2 the ratio is (chi1+chi2+2)^2 / that
    expected = U.ground_state_constant(0.5, 1.0) / U.sharp_constant_p1(0.5, 1.0)
    assert math.isclose(rep.ratio, expected, rel_tol=1e-10)


def test_excited_state_above_one(grid, spec):
    f = F.hermite_field(1, 0, grid) + F.hermite_field(0, 1, grid)
    rep = U.heisenberg_check(f, spec)
    assert rep.extra["ratio_ground_state_constant"] > 1.0


@given(st.floats(1.0, 3.0), st.sampled_from([0.6, 1.0, math.pi / 2, 2.2]))
def test_squeezed_gaussian_ratio(s, theta):
    grid = Grid2D.build(0.0, 0.5, 96)
    spec = F.TransformSpec(0.0, 0.5, theta, theta)
    rep = U.heisenberg_check(U.squeezed_gaussian(grid, s), spec)
    assert math.isclose(rep.extra["ratio_ground_state_constant"], U.gaussian_product_ratio(s, theta),
                        rel_tol=1e-8)


def test_zero_function(grid, spec):
    with pytest.raises(ZeroFunction):
        U.heisenberg_check(SampledField.zeros(grid), spec)


def test_higher_order_report(grid, spec, rng):
    f = F.random_bandlimited(grid, rng)
    rep = U.heisenberg_check(f, spec, 2.0)
    assert rep.passed and rep.extra["argmin"] == [0, 0]
    d = rep.to_dict()
    assert d["check"] == "higher_order" and d["pass"] is True


def test_frqft_corollary():
    grid = Grid2D.build(0.0, 0.0, 48)
    rep = U.frqft_corollary_check(F.gaussian_field(0.5, grid), 0.9, 2.0)
    assert rep.sharp_constant == 4.0 and rep.extra["constant_is_4"]
    assert abs(rep.ratio - 1.0) < 1e-10
    assert "|x1||x2|" in rep.extra["measure_caveat"]
    with pytest.raises(InvalidParam):
        U.frqft_corollary_check(F.gaussian_field(0.5, Grid2D.build(0.5, 0.0, 16)), 0.9, 2.0)


def test_batch_csv(grid, spec, rng):
    reps = [U.heisenberg_check(F.random_bandlimited(grid, rng), spec, p) for p in (1.0, 2.0)]
    lines = U.batch_csv(reps).splitlines()
    assert lines[0] == "p,chi1,chi2,theta1,theta2,ratio,pass"
    assert len(lines) == 3 and lines[2].startswith("2.0,0.5,1.0,")
