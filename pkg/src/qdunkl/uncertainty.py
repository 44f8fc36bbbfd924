"""Weighted moments and Heisenberg-type product inequalities.

For ``f`` with ``||f|| > 0`` the product
``M_p(f) M_p(F f) / ||f||^4`` with ``M_p(g) = int |x|^(2p) |g|^2 dmu`` is
compared to a constant C.  For p = 1 the stated constant is
``((2chi1+1) + (2chi2+1))^2``; for other p it is ``(min A^(p)_nm)^2`` over a
truncated table of diagonal entries ``A^(p)_nm = <|x|^(2p) H_nm, H_nm>``.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .basis import hermite_table_cached, recurrence_coeffs
from .errors import InvalidParam, TruncationSuspect, ZeroFunction
from .frqdt2d import SpectralCoeffs, TransformSpec, frqdt_quadrature
from .quadrature import Grid2D, SampledField, norm2
from .quatcore import AXIS_I, AXIS_J, abs2_arr

TABLE_N = 128
MEASURE_CAVEAT = (
    "chi1 = chi2 = 0 gives dmu = |x1||x2| dx1 dx2, not Lebesgue measure; "
    "moments and norms here use |x1||x2| dx"
)


def weighted_moment(f: SampledField, p: float) -> float:
    """``sum (x1^2 + x2^2)^p |f|^2 w1 w2``."""
    if p < 1:
        raise InvalidParam(f"p must be >= 1, got {p}")
    X1, X2 = f.grid.mesh()
    r2p = (X1 * X1 + X2 * X2) ** p
    return float(np.sum(f.grid.weights() * r2p * abs2_arr(f.values)))


def sharp_constant_p1(chi1: float, chi2: float) -> float:
    """The constant stated for p = 1: ``((2chi1+1) + (2chi2+1))^2``."""
    return ((2.0 * chi1 + 1.0) + (2.0 * chi2 + 1.0)) ** 2


def ground_state_constant(chi1: float, chi2: float) -> float:
    """``<|x|^2 H_00, H_00>^2 = (chi1 + chi2 + 2)^2``, the product value attained by H_00."""
    return (chi1 + chi2 + 2.0) ** 2


@dataclass
class DiagonalCoeffs:
    p: float
    chi1: float
    chi2: float
    table: np.ndarray
    amin: float
    argmin: tuple[int, int]

    def stated_p1_table(self) -> np.ndarray:
        """``2(n+m) + 2(chi1+chi2) + 2``, the closed form stated for p = 1."""
        n = np.arange(self.table.shape[0])[:, None]
        m = np.arange(self.table.shape[1])[None, :]
        return 2.0 * (n + m) + 2.0 * (self.chi1 + self.chi2) + 2.0

    def exact_p1_table(self) -> np.ndarray:
        """``beta_n(chi1) + beta_m(chi2)`` with ``beta_n = n + chi + 1``."""
        n = np.arange(self.table.shape[0])[:, None]
        m = np.arange(self.table.shape[1])[None, :]
        return (n + m) + (self.chi1 + self.chi2) + 2.0


def diagonal_table(p: float, chi1: float, chi2: float, nmax: int, mmax: int,
                   N: int = TABLE_N) -> np.ndarray:
    if p < 1:
        raise InvalidParam(f"p must be >= 1, got {p}")
    grid = Grid2D.build(chi1, chi2, N)
    r1, r2 = grid.rule1, grid.rule2
    H1 = hermite_table_cached(nmax, chi1, r1.nodes)
    H2 = hermite_table_cached(mmax, chi2, r2.nodes)
    X1, X2 = grid.mesh()
    K = grid.weights() * (X1 * X1 + X2 * X2) ** p
    return (H1 * H1) @ K @ (H2 * H2).T


def diagonal_coeffs(p: float, chi1: float, chi2: float, nmax: int = 16, mmax: int | None = None,
                    N: int = TABLE_N, guard: bool = True) -> DiagonalCoeffs:
    """Diagonal entries by quadrature; raises if the minimum sits on the table edge."""
    mmax = nmax if mmax is None else mmax
    table = diagonal_table(p, chi1, chi2, nmax, mmax, N)
    idx = np.unravel_index(int(np.argmin(table)), table.shape)
    argmin = (int(idx[0]), int(idx[1]))
    if guard and (argmin[0] == nmax or argmin[1] == mmax) and (nmax > 0 and mmax > 0):
        raise TruncationSuspect(f"minimum of A^({p}) at {argmin}, on the truncation boundary")
    return DiagonalCoeffs(float(p), float(chi1), float(chi2), table, float(table[argmin]), argmin)


def moment_quadratic_form(coeffs: SpectralCoeffs, chi1: float, chi2: float) -> float:
    """``<|x|^2 f, f>`` from coefficients, with the off-diagonal couplings n <-> n +- 2."""
    X1 = _x2_matrix(chi1, coeffs.nmax)
    X2 = _x2_matrix(chi2, coeffs.mmax)
    c = coeffs.c
    return float(np.einsum("nk,kmc,nmc->", X1, c, c) + np.einsum("mk,nkc,nmc->", X2, c, c))


def moment_diagonal_form(coeffs: SpectralCoeffs, chi1: float, chi2: float) -> float:
    """``sum A_nm |c_nm|^2`` with the exact diagonal ``beta_n + beta_m``."""
    b1 = recurrence_coeffs(chi1, coeffs.nmax).beta
    b2 = recurrence_coeffs(chi2, coeffs.mmax).beta
    return float(np.sum((b1[:, None] + b2[None, :]) * np.sum(coeffs.c ** 2, axis=-1)))


def _x2_matrix(chi: float, nmax: int) -> np.ndarray:
    rc = recurrence_coeffs(chi, nmax)
    X = np.diag(rc.beta)
    for n in range(2, nmax + 1):
        X[n, n - 2] = X[n - 2, n] = rc.alpha[n]
    return X


@dataclass
class MomentReport:
    p: float
    spatial_moment: float
    spectral_moment: float
    norm4: float
    ratio: float
    sharp_constant: float
    passed: bool
    tolerance: float = 1e-6
    params: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        d["check"] = self.params.get("check", "heisenberg")
        return d


def heisenberg_check(f: SampledField, spec: TransformSpec, p: float = 1.0, nmax: int = 16,
                     tol: float = 1e-6, transformed: SampledField | None = None) -> MomentReport:
    """Evaluate the product inequality for ``f`` under ``spec``."""
    if p < 1:
        raise InvalidParam(f"p must be >= 1, got {p}")
    nf = norm2(f)
    if nf == 0.0:
        raise ZeroFunction("f vanishes on the grid")
    g = frqdt_quadrature(f, spec) if transformed is None else transformed
    mx = weighted_moment(f, p)
    my = weighted_moment(g, p)
    norm4 = nf ** 4
    extra = {}
    if p == 1:
        C = sharp_constant_p1(spec.chi1, spec.chi2)
        extra["ratio_ground_state_constant"] = mx * my / (ground_state_constant(spec.chi1, spec.chi2) * norm4)
    else:
        dc = diagonal_coeffs(p, spec.chi1, spec.chi2, nmax)
        C = dc.amin ** 2
        extra["argmin"] = list(dc.argmin)
    ratio = mx * my / (C * norm4)
    params = dict(spec.params(), p=p, check="heisenberg" if p == 1 else "higher_order")
    return MomentReport(float(p), mx, my, norm4, ratio, C, ratio >= 1.0 - tol, tol, params, extra)


def frqft_corollary_check(f: SampledField, theta1: float, theta2: float,
                          tol: float = 1e-6) -> MomentReport:
    """p = 1 check with chi1 = chi2 = 0, a = i, b = j and constant 4."""
    if f.grid.chi1 != 0 or f.grid.chi2 != 0:
        raise InvalidParam("the FrQFT check needs a grid with chi1 = chi2 = 0")
    spec = TransformSpec(0.0, 0.0, theta1, theta2, AXIS_I, AXIS_J)
    rep = heisenberg_check(f, spec, 1.0, tol=tol)
    rep.params["check"] = "frqft"
    rep.extra["constant_is_4"] = rep.sharp_constant == 4.0
    rep.extra["measure_caveat"] = MEASURE_CAVEAT
    return rep


BATCH_COLUMNS = ["p", "chi1", "chi2", "theta1", "theta2", "ratio", "pass"]


def batch_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BATCH_COLUMNS)
    for r in reports:
        pr = r.params
        w.writerow([r.p, pr["chi1"], pr["chi2"], pr["theta1"], pr["theta2"],
                    repr(float(r.ratio)), int(bool(r.passed))])
    return buf.getvalue()


def squeezed_gaussian(grid: Grid2D, s: float) -> SampledField:
    """``exp(-s |x|^2 / 2)``: narrower than the ground state for s > 1."""
    return SampledField.from_function(grid, lambda a, b: np.exp(-0.5 * s * (a * a + b * b)))


def gaussian_product_ratio(s: float, theta: float) -> float:
    """Product ratio of ``exp(-s|x|^2/2)`` against the ground-state constant.

    With theta1 = theta2 = theta the transform has ``|F f|^2`` proportional
    to ``exp(-k |y|^2)``, ``k = s / (s^2 sin^2 + cos^2)``, so each moment is
    (chi1 + chi2 + 2) times 1/s and 1/k respectively.  The ratio is
    ``sin^2 + cos^2 / s^2``, independent of chi, and tends to sin^2 theta
    as s grows.
    """
    c, sn = math.cos(theta), math.sin(theta)
    return sn * sn + c * c / (s * s)
