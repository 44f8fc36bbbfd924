"""Special functions of the rank-one Dunkl setting.

Conventions
-----------
* Weight ``|x|^(2chi+1)``; the Dunkl operator is
  ``T f = f' + (2chi+1)/x * (f(x) - f(-x))/2``.
* ``E_chi(x, i u) = j_chi(xu) + i xu/(2chi+2) j_(chi+1)(xu)``; the imaginary
  unit is replaced by the transform axis, so kernel values live in span{1, u}.
* Generalized Hermite functions ``h_n`` are orthonormal for the weight and
  positive as x -> +inf.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, jv

from .errors import GridContainsZero, InvalidParam, ThetaSingular
from .quadrature import Grid2D, SampledField
from .quatcore import Quaternion, UnitAxis, embed, qmul_arr

SIN_FLOOR = 1e-8
_SERIES_SWITCH = 2.0


def laguerre(n: int, a: float, z):
    """Generalized Laguerre polynomial ``L_n^(a)(z)`` by forward recurrence."""
    if n < 0 or a <= -1:
        raise InvalidParam(f"need n >= 0 and a > -1, got n={n}, a={a}")
    z = np.asarray(z, dtype=float)
    p_prev = np.ones_like(z)
    if n == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p = 1.0 + a - z
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1 + a - z) * p - (k + a) * p_prev) / (k + 1)
    return p if p.ndim else float(p)


def bessel_j_chi(chi: float, x):
    """Normalized Bessel function ``Gamma(chi+1) (2/x)^chi J_chi(x)``; even in x."""
    if chi <= -1:
        raise InvalidParam(f"chi must exceed -1, got {chi}")
    x = np.abs(np.asarray(x, dtype=float))
    out = np.empty_like(x)
    small = x <= _SERIES_SWITCH
    if small.any():
        # 30 terms: (1/2)^2k / (k! (chi+1)_k) < 1e-40 at |x| = 2
        q = -(x[small] / 2.0) ** 2
        term = np.ones_like(q)
        acc = np.ones_like(q)
        for k in range(1, 30):
            term = term * q / (k * (k + chi))
            acc = acc + term
        out[small] = acc
    big = ~small
    if big.any():
        xb = x[big]
        out[big] = np.exp(gammaln(chi + 1.0) + chi * np.log(2.0 / xb)) * jv(chi, xb)
    return out if out.ndim else float(out)


def dunkl_kernel_complex(chi: float, z):
    """``E_chi`` at imaginary spectral argument as complex numbers: ``j_chi(z) + i z/(2chi+2) j_(chi+1)(z)``."""
    z = np.asarray(z, dtype=float)
    return bessel_j_chi(chi, z) + 1j * (z / (2.0 * chi + 2.0)) * bessel_j_chi(chi + 1.0, z)


def dunkl_kernel_imag(chi: float, x: float, u: float, axis: UnitAxis) -> Quaternion:
    """Dunkl kernel ``E_chi(x, axis*u)`` as an element of span{1, axis}."""
    if chi < 0:
        raise InvalidParam(f"chi must be >= 0, got {chi}")
    return Quaternion.from_complex(complex(dunkl_kernel_complex(chi, x * u)), axis)


def check_theta(theta: float) -> float:
    s = math.sin(theta)
    if abs(s) < SIN_FLOOR:
        raise ThetaSingular(f"|sin(theta)| = {abs(s):.3e} below floor {SIN_FLOOR}")
    return s


def is_special_angle(theta: float) -> bool:
    return abs(math.sin(theta)) < SIN_FLOOR


def frac_kernel_complex(chi: float, theta: float, x, y):
    """Complex image of the fractional kernel; broadcasts over ``x`` and ``y``."""
    s = check_theta(theta)
    cot = math.cos(theta) / s
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    chirp = np.exp(-0.5j * (x * x + y * y) * cot)
    return chirp * dunkl_kernel_complex(chi, x * y / s)


def frac_kernel(chi: float, theta: float, x: float, y: float, axis: UnitAxis) -> Quaternion:
    return Quaternion.from_complex(complex(frac_kernel_complex(chi, theta, x, y)), axis)


# ---------------------------------------------------------------------------
# generalized Hermite functions


def hermite_h(n: int, chi: float, x):
    """Orthonormal generalized Hermite function via its Laguerre form."""
    if n < 0 or chi < 0:
        raise InvalidParam(f"need n >= 0 and chi >= 0, got n={n}, chi={chi}")
    x = np.asarray(x, dtype=float)
    k, odd = divmod(n, 2)
    a = chi + odd
    c = math.exp(0.5 * (gammaln(k + 1.0) - gammaln(k + a + 1.0)))
    val = (-1) ** k * c * np.exp(-0.5 * x * x) * laguerre(k, a, x * x)
    if odd:
        val = val * x
    return val if np.ndim(val) else float(val)


def hermite_table(nmax: int, chi: float, x) -> np.ndarray:
    """Rows ``h_0 .. h_nmax`` evaluated at ``x`` by the three-term recurrence.

    Accepts any ``chi > -1`` (Hankel orders can be negative).

    ``x h_n = sqrt(b_(n+1)) h_(n+1) + sqrt(b_n) h_(n-1)`` with
    ``b_n = n/2 + (chi + 1/2) [n odd]``.
    """
    if nmax < 0 or chi <= -1:
        raise InvalidParam(f"need nmax >= 0 and chi > -1, got nmax={nmax}, chi={chi}")
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = np.exp(-0.5 * x * x - 0.5 * gammaln(chi + 1.0))
    if nmax == 0:
        return out
    b = _b(np.arange(nmax + 1), chi)
    out[1] = x * out[0] / math.sqrt(b[1])
    for n in range(1, nmax):
        out[n + 1] = (x * out[n] - math.sqrt(b[n]) * out[n - 1]) / math.sqrt(b[n + 1])
    return out


def _b(n, chi):
    n = np.asarray(n, dtype=float)
    return n / 2.0 + (chi + 0.5) * (n % 2)


@lru_cache(maxsize=64)
def _cached_table(nmax: int, chi: float, key: bytes, n_nodes: int) -> np.ndarray:
    x = np.frombuffer(key, dtype=float, count=n_nodes)
    t = hermite_table(nmax, chi, x)
    t.setflags(write=False)
    return t


def hermite_table_cached(nmax: int, chi: float, x: np.ndarray) -> np.ndarray:
    x = np.ascontiguousarray(x, dtype=float)
    return _cached_table(int(nmax), float(chi), x.tobytes(), x.size)


@dataclass(frozen=True)
class HermiteParams:
    chi: float
    nmax: int

    def __post_init__(self):
        if self.nmax < 0 or self.chi < 0:
            raise InvalidParam("need nmax >= 0 and chi >= 0")


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """Coefficients of ``x^2 h_n = alpha[n+2] h_(n+2) + beta[n] h_n + alpha[n] h_(n-2)``.

    ``alpha[n] = <x^2 h_n, h_(n-2)>`` (zero for n < 2) and
    ``beta[n] = <x^2 h_n, h_n> = n + chi + 1``.
    """

    chi: float
    alpha: np.ndarray
    beta: np.ndarray


def recurrence_coeffs(chi: float, nmax: int) -> RecurrenceCoeffs:
    if nmax < 0:
        raise InvalidParam("nmax must be >= 0")
    # alpha carries two extra entries so alpha[n+2] exists for every n <= nmax
    n = np.arange(nmax + 3, dtype=float)
    k = np.floor(n / 2.0)
    odd = n % 2
    alpha = np.where(n >= 2, np.sqrt(np.maximum(k * (k + chi + odd), 0.0)), 0.0)
    beta = np.arange(nmax + 1, dtype=float) + chi + 1.0
    return RecurrenceCoeffs(float(chi), alpha, beta)


def hermite2d(n: int, m: int, grid: Grid2D) -> SampledField:
    """Tensor basis function ``h_n(x1) h_m(x2)`` sampled on the grid."""
    h1 = hermite_h(n, grid.chi1, grid.rule1.nodes)
    h2 = hermite_h(m, grid.chi2, grid.rule2.nodes)
    return SampledField.from_function(grid, lambda X1, X2: np.outer(h1, h2))


# ---------------------------------------------------------------------------
# fractional Dunkl operator on sampled data


def fornberg_weights(z: float, xs: np.ndarray, m: int) -> np.ndarray:
    """Finite-difference weights for the m-th derivative at ``z`` from nodes ``xs``."""
    n = len(xs)
    c = np.zeros((n, m + 1))
    c1 = 1.0
    c4 = xs[0] - z
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = xs[i] - z
        for j in range(i):
            c3 = xs[i] - xs[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def derivative(values: np.ndarray, y: np.ndarray, points: int = 5) -> np.ndarray:
    """Fourth-order derivative on a (possibly non-uniform) sorted grid.

    Each node uses its ``points`` nearest neighbours in index order: centred
    in the interior, one-sided at the ends.
    """
    n = len(y)
    half = points // 2
    out = np.empty_like(values, dtype=float)
    for i in range(n):
        lo = min(max(i - half, 0), n - points)
        idx = slice(lo, lo + points)
        w = fornberg_weights(y[i], y[idx], 1)
        out[i] = np.tensordot(w, values[idx], axes=(0, 0))
    return out


def dunkl_operator_apply(values: np.ndarray, y: np.ndarray, chi: float, theta: float,
                         axis: UnitAxis) -> np.ndarray:
    """Apply ``f' + (2chi+1)/y (f(y) - f(-y))/2 + axis cot(theta) y f`` to samples.

    ``values`` has shape (len(y), 4); ``y`` must be sorted, symmetric about 0
    and must not contain 0.  The chirp term multiplies from the left.
    """
    y = np.asarray(y, dtype=float)
    values = np.asarray(values, dtype=float)
    if np.any(y == 0.0):
        raise GridContainsZero("grid contains y = 0")
    if not np.allclose(y, -y[::-1], rtol=0, atol=1e-12):
        raise InvalidParam("grid must be symmetric about 0")
    s = check_theta(theta)
    cot = math.cos(theta) / s
    d = derivative(values, y)
    reflected = values[::-1]
    diff = (2.0 * chi + 1.0) / y[:, None] * (values - reflected) / 2.0
    chirp = qmul_arr(axis.u.as_array(), values) * (cot * y)[:, None]
    return d + diff + chirp


def kernel_in_y(chi: float, theta: float, x: float, y: np.ndarray, axis: UnitAxis) -> np.ndarray:
    """``y -> E_(chi,theta)(x, y)`` sampled as a quaternion array."""
    return embed(frac_kernel_complex(chi, theta, x, y), axis)
