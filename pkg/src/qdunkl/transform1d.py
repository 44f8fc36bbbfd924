"""One-dimensional fractional Dunkl and fractional Hankel transforms.

Every 1-D transform here is linear with coefficients in span{1, u}, so it is
represented by a complex matrix ``T`` (targets x nodes).  Applying it to a
quaternion-valued sample vector ``f`` from the left means

    out = Re(T) @ f + u * (Im(T) @ f)

and from the right ``out = Re(T) @ f + (Im(T) @ f) * u``.

Quadrature path
---------------
The chirp ``exp(-u cot(theta) x^2 / 2)`` oscillates faster than an N-point
Gauss rule can resolve once |cot theta| is moderate.  Samples given on the
N-node rule are therefore first carried to an oversampled rule of size M by
exact interpolation in h_0 .. h_(N-1) (the unique function of that span
through the samples), and the kernel integral is evaluated there.  M is
chosen from the largest frequency ``max|y| / |sin theta|`` that the
kernel reaches on the targets.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .basis import (
    bessel_j_chi,
    check_theta,
    frac_kernel_complex,
    hermite_table,
    hermite_table_cached,
    is_special_angle,
)
from .errors import GridMismatch, InvalidParam
from .quadrature import QuadratureRule1D, build_rule, order_rule
from .quatcore import Quaternion, UnitAxis, axis_complex_pow, axis_exp, qmul_arr

MAX_FINE = 16384


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class AxisTransformSpec:
    chi: float
    theta: float
    axis: UnitAxis
    side: Side = Side.LEFT

    def __post_init__(self):
        if self.chi < 0:
            raise InvalidParam(f"chi must be >= 0, got {self.chi}")

    def inverse(self) -> "AxisTransformSpec":
        return AxisTransformSpec(self.chi, -self.theta, self.axis, self.side)


@dataclass(frozen=True)
class NormConstant:
    value: Quaternion

    @property
    def modulus(self) -> float:
        return abs(self.value)


def alpha_chi(chi: float) -> float:
    return math.exp(-(chi + 1.0) * math.log(2.0) - gammaln(chi + 1.0))


def norm_constant_complex(chi: float, theta: float) -> complex:
    # the phase (chi+1)(... - theta) is not 2 pi periodic for fractional chi,
    # so work with the representative in [-pi, pi]
    theta = math.remainder(theta, 2.0 * math.pi)
    s = check_theta(theta)
    phase = (chi + 1.0) * (math.copysign(1.0, s) * math.pi / 2.0 - theta)
    return complex(math.cos(phase), math.sin(phase)) * alpha_chi(chi) / abs(s) ** (chi + 1.0)


def norm_constant(chi: float, theta: float, axis: UnitAxis) -> NormConstant:
    """``c = exp(axis (chi+1)(sgn(sin theta) pi/2 - theta)) alpha_chi / |sin theta|^(chi+1)``."""
    return NormConstant(Quaternion.from_complex(norm_constant_complex(chi, theta), axis))


# ---------------------------------------------------------------------------
# applying span{1,u}-valued matrices to quaternion samples


def apply_axis_matrix(T: np.ndarray, f: np.ndarray, axis: UnitAxis, side: Side) -> np.ndarray:
    """Contract complex ``T`` (targets x nodes) with ``f`` along its first axis.

    ``f`` has shape (nodes, ..., 4).  The imaginary unit of ``T`` becomes
    ``axis`` and multiplies from ``side``.
    """
    f = np.asarray(f, dtype=float)
    re = np.tensordot(T.real, f, axes=(1, 0))
    im = np.tensordot(T.imag, f, axes=(1, 0))
    u = axis.u.as_array()
    if side is Side.LEFT:
        return re + qmul_arr(u, im)
    return re + qmul_arr(im, u)


def fine_size(theta: float, y_max: float, N: int) -> int:
    """Size of the oversampled rule used by the quadrature path.

    A rule with M nodes spans |x| <= sqrt(2M); the kernel at target y
    oscillates at up to |y / sin theta| in x and the chirp adds another
    |cot theta| x.  The factor 0.6 and offset 8 were fitted by scanning M
    until h_0 .. h_16 transform to 1e-12 for 0.1 <= theta <= pi - 0.1
    (scripts/fine_rule_scan.py).
    """
    s = abs(math.sin(theta))
    c = abs(math.cos(theta))
    freq = (y_max + c * math.sqrt(2.0 * N)) / s
    L = 0.6 * freq + 8.0
    M = max(N, 2 * int(math.ceil(L * L / 4.0)))
    return min(M, MAX_FINE)


@lru_cache(maxsize=128)
def _interp_matrix(chi: float, N: int, M: int) -> np.ndarray:
    """M x N matrix carrying N-node samples to the M-node rule (exact on h_0..h_(N-1))."""
    coarse = build_rule(chi, N)
    fine = build_rule(chi, M)
    Hc = hermite_table(N - 1, chi, coarse.nodes)
    Hf = hermite_table(N - 1, chi, fine.nodes)
    P = Hf.T @ (Hc * coarse.weights)
    P.setflags(write=False)
    return P


def _targets_key(y) -> tuple:
    return tuple(float(v) for v in np.asarray(y, dtype=float).ravel())


@lru_cache(maxsize=256)
def _quadrature_matrix(chi: float, theta: float, N: int, y_key: tuple, M: int | None) -> np.ndarray:
    y = np.array(y_key)
    coarse = build_rule(chi, N)
    if M is None:
        y_max = float(np.max(np.abs(y))) if y.size else 0.0
        y_max = max(y_max, float(np.max(np.abs(coarse.nodes))))
        M = fine_size(theta, y_max, N)
    c = norm_constant_complex(chi, theta)
    if M <= N:
        K = frac_kernel_complex(chi, theta, coarse.nodes[None, :], y[:, None])
        T = c * K * coarse.weights
    else:
        fine = build_rule(chi, M)
        K = frac_kernel_complex(chi, theta, fine.nodes[None, :], y[:, None])
        T = (c * K * fine.weights) @ _interp_matrix(chi, N, M)
    T.setflags(write=False)
    return T


def quadrature_matrix(chi: float, theta: float, rule: QuadratureRule1D, y_targets=None,
                      fine: int | None = None) -> np.ndarray:
    """Complex matrix of the quadrature path for ``theta`` off the special set."""
    y = rule.nodes if y_targets is None else np.asarray(y_targets, dtype=float)
    if rule.chi != chi:
        raise GridMismatch(f"rule built for chi={rule.chi}, transform uses chi={chi}")
    check_theta(theta)
    return _quadrature_matrix(float(chi), float(theta), rule.degree, _targets_key(y), fine)


def special_matrix(theta: float, rule: QuadratureRule1D) -> np.ndarray:
    """Identity for theta in 2 pi Z, reflection for theta in pi + 2 pi Z (on-grid)."""
    if not is_special_angle(theta):
        raise InvalidParam(f"theta={theta} is not a multiple of pi")
    n = round(theta / math.pi)
    N = rule.degree
    return np.eye(N)[::-1].astype(complex) if n % 2 else np.eye(N, dtype=complex)


def frac_dunkl_special(f, theta: float) -> np.ndarray:
    """Identity or reflection of samples on a symmetric grid (first axis)."""
    if not is_special_angle(theta):
        raise InvalidParam(f"theta={theta} is not a multiple of pi")
    f = np.asarray(f, dtype=float)
    return f[::-1].copy() if round(theta / math.pi) % 2 else f.copy()


def _check_samples(f: np.ndarray, rule: QuadratureRule1D) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.shape[0] != rule.degree:
        raise GridMismatch(f"expected {rule.degree} samples along axis 0, got {f.shape[0]}")
    return f


def frac_dunkl_quadrature(f, spec: AxisTransformSpec, rule: QuadratureRule1D, y_targets=None,
                          fine: int | None = None) -> np.ndarray:
    """Fractional Dunkl transform by direct kernel quadrature.

    ``f`` holds quaternion samples on ``rule.nodes`` (shape (N, ..., 4)).
    Outputs are at ``y_targets`` (default: the nodes).  Multiples of pi are
    routed to :func:`frac_dunkl_special` when the targets are the nodes.
    """
    f = _check_samples(f, rule)
    if is_special_angle(spec.theta) and y_targets is None:
        return frac_dunkl_special(f, spec.theta)
    T = quadrature_matrix(spec.chi, spec.theta, rule, y_targets, fine)
    return apply_axis_matrix(T, f, spec.axis, spec.side)


def spectral_matrix(chi: float, theta: float, rule: QuadratureRule1D, y_targets=None,
                    nmax: int | None = None) -> np.ndarray:
    """Complex matrix of ``sum_n e^(i n theta) h_n(y) <f, h_n>``."""
    nmax = rule.degree - 1 if nmax is None else int(nmax)
    y = rule.nodes if y_targets is None else np.asarray(y_targets, dtype=float)
    Hx = hermite_table_cached(nmax, chi, rule.nodes)
    Hy = hermite_table(nmax, chi, y)
    phase = np.exp(1j * theta * np.arange(nmax + 1))
    return (Hy.T * phase) @ (Hx * rule.weights)


def frac_dunkl_spectral(f, spec: AxisTransformSpec, rule: QuadratureRule1D, y_targets=None,
                        nmax: int | None = None) -> np.ndarray:
    """Expand in h_n, multiply by ``axis_exp(axis, n theta)`` on ``spec.side``, resum."""
    f = _check_samples(f, rule)
    T = spectral_matrix(spec.chi, spec.theta, rule, y_targets, nmax)
    return apply_axis_matrix(T, f, spec.axis, spec.side)


# ---------------------------------------------------------------------------
# fractional Hankel transform


def _hankel_kernel(nu: float, theta: float, x, y) -> np.ndarray:
    s = check_theta(theta)
    cot = math.cos(theta) / s
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.exp(-0.5j * cot * (x * x + y * y)) * bessel_j_chi(nu, x * y / s)


def frac_hankel(psi, nu: float, theta: float, axis: UnitAxis, y_targets, N: int = 48,
                rule_order: float | None = None, fine: int | None = None) -> np.ndarray:
    """``2 c_nu^theta int_0^inf chirp(x, y) j_nu(x y / sin theta) psi(x) x^(2nu+1) dx``.

    ``psi`` is either a callable (evaluated on a half-line Gauss rule of
    order ``rule_order``, default ``nu``, so integrands like
    ``x^q e^(-x^2) poly`` with ``q != 2 nu + 1`` can still be integrated
    exactly) or an array of samples at the positive nodes of
    ``order_rule(nu, N)``.  Returns quaternions in span{1, axis}, shape
    ``(len(y), 4)``; a complex-valued callable is embedded in span{1, axis}.
    """
    if nu <= -1:
        raise InvalidParam(f"order must exceed -1, got {nu}")
    y = np.atleast_1d(np.asarray(y_targets, dtype=float))
    check_theta(theta)
    c = norm_constant_complex(nu, theta)
    y_max = max(float(np.max(np.abs(y))) if y.size else 0.0, math.sqrt(2.0 * N))
    M = fine if fine is not None else fine_size(theta, y_max, N)
    if callable(psi):
        mu = nu if rule_order is None else float(rule_order)
        r = order_rule(mu, max(M, N))
        x = r.nodes[r.positive]
        w = r.weights[r.positive] * x ** (2.0 * (nu - mu))
        vals = np.asarray(psi(x), dtype=complex)
    else:
        base = order_rule(nu, N)
        vals_c = np.asarray(psi, dtype=complex)
        if vals_c.shape != (N // 2,):
            raise GridMismatch(f"expected {N // 2} samples on the positive nodes, got {vals_c.shape}")
        # even extension, carried to the fine rule through even h_n of order nu
        full = np.concatenate([vals_c[::-1], vals_c])
        r = order_rule(nu, max(M, N))
        Hc = hermite_table(N - 1, nu, base.nodes)
        Hf = hermite_table(N - 1, nu, r.nodes)
        vals = (Hf.T @ (Hc * base.weights)) @ full
        x = r.nodes[r.positive]
        w = r.weights[r.positive]
        vals = vals[r.positive]
    K = _hankel_kernel(nu, theta, x[None, :], y[:, None])
    out = 2.0 * c * (K * w) @ vals
    q = np.zeros(out.shape + (4,))
    q[..., 0] = out.real
    q[..., 1:] = out.imag[..., None] * axis.vec
    return q


def hankel_gaussian_complex(alpha: float, nu: float, theta: float, y) -> np.ndarray:
    """Closed form of the transform of ``exp(-alpha x^2)`` as complex numbers."""
    if alpha <= 0:
        raise InvalidParam(f"alpha must be positive, got {alpha}")
    if nu <= -1:
        raise InvalidParam(f"order must exceed -1, got {nu}")
    t = math.remainder(theta, 2.0 * math.pi)
    if not 0.0 < t < math.pi:
        raise InvalidParam(f"closed form needs 0 < theta < pi (mod 2 pi), got {theta}")
    s = check_theta(t)
    cot = math.cos(t) / s
    A = complex(alpha, 0.5 * cot)
    y = np.asarray(y, dtype=float)
    pre = norm_constant_complex(nu, t) * math.exp(gammaln(nu + 1.0)) * A ** (-nu - 1.0)
    return pre * np.exp(-0.5j * cot * y * y - y * y / (4.0 * A * s * s))


def hankel_gaussian(alpha: float, nu: float, theta: float, axis: UnitAxis, y: float) -> Quaternion:
    """Quaternion form, assembled from span{1, axis} factors."""
    hankel_gaussian_complex(alpha, nu, theta, y)  # validates arguments
    t = math.remainder(theta, 2.0 * math.pi)
    s = math.sin(t)
    cot = math.cos(t) / s
    c = norm_constant(nu, t, axis).value
    A_pow = axis_complex_pow(alpha, 0.5 * cot, axis, -nu - 1.0)
    A_inv = axis_complex_pow(alpha, 0.5 * cot, axis, -1.0)
    # exp(-(axis/2) y^2 cot - y^2 / (4 A sin^2)) with both terms in span{1, axis}
    e = A_inv * (-y * y / (4.0 * s * s))
    e = e + Quaternion.from_complex(complex(0.0, -0.5 * y * y * cot), axis)
    expo = axis_exp(axis, _axis_coord(e, axis)) * math.exp(e.w)
    return c * math.exp(gammaln(nu + 1.0)) * A_pow * expo


def _axis_coord(q: Quaternion, axis: UnitAxis) -> float:
    return q.x * axis.u.x + q.y * axis.u.y + q.z * axis.u.z


def hermite_coeffs_1d(f, chi: float, rule: QuadratureRule1D, nmax: int) -> np.ndarray:
    """``<f, h_n>`` for n <= nmax, quaternion per row."""
    f = _check_samples(f, rule)
    H = hermite_table_cached(nmax, chi, rule.nodes)
    return np.tensordot(H * rule.weights, f, axes=(1, 0))
