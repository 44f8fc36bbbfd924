"""Gauss rules for the weights |x|^(2 chi + 1), tensor grids and sampled fields.

A :class:`QuadratureRule1D` carries two weight vectors over the same nodes:

``gauss_weights``
    classical Gauss weights for |x|^(2chi+1) e^(-x^2) dx, so
    ``sum(gauss_weights * g(nodes))`` integrates ``g(x) e^(-x^2)`` exactly
    for polynomial ``g`` of degree <= 2N-1;
``weights``
    the same rule with the Gaussian folded out (``gauss_weights * e^(x^2)``),
    so ``sum(weights * f(nodes))`` approximates the integral of ``f`` against
    |x|^(2chi+1) dx, exactly when ``f = poly * e^(-x^2)``.

Both are computed from log-weights so neither overflows for large N.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal
from scipy.special import gammaln

from .errors import GridMismatch, InvalidParam
from .quatcore import Quaternion, abs2_arr, conj_arr, qmul_arr

_LOG_RESCALE = 230.0  # rescale the recurrence once |p| exceeds e^230


def laguerre_rule_log(a: float, K: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss rule for ``t^a e^{-t}`` on (0, inf).

    Returns ``(t, log_lambda)`` where ``log_lambda`` are the logarithms of the
    Gauss weights.  Nodes come from the Jacobi matrix; weights from
    ``1 / sum_k p_k(t)^2`` with orthonormal ``p_k``, accumulated with running
    rescaling so large K does not overflow.
    """
    if a <= -1.0:
        raise InvalidParam(f"Laguerre parameter must exceed -1, got {a}")
    if K < 1:
        raise InvalidParam("need at least one node")
    k = np.arange(K, dtype=float)
    diag = 2.0 * k + a + 1.0
    off = np.sqrt(k[1:] * (k[1:] + a))
    t = eigvalsh_tridiagonal(diag, off) if K > 1 else diag.copy()

    # p_0 = 1/sqrt(Gamma(a+1)); track log of the common scale separately
    log_scale = np.full(K, -0.5 * gammaln(a + 1.0))
    p_prev = np.zeros(K)
    p = np.ones(K)
    acc = np.ones(K)
    for n in range(K - 1):
        b_next = math.sqrt((n + 1.0) * (n + 1.0 + a))
        b_cur = math.sqrt(n * (n + a)) if n > 0 else 0.0
        p_next = ((t - diag[n]) * p - b_cur * p_prev) / b_next
        p_prev, p = p, p_next
        acc += p * p
        big = np.abs(p) > math.exp(_LOG_RESCALE)
        if big.any():
            s = np.where(big, math.exp(-_LOG_RESCALE), 1.0)
            p *= s
            p_prev *= s
            acc *= s * s
            log_scale += np.where(big, _LOG_RESCALE, 0.0)
    log_lam = -np.log(acc) - 2.0 * log_scale
    return t, log_lam


@dataclass(frozen=True, eq=False)
class QuadratureRule1D:
    chi: float
    nodes: np.ndarray
    weights: np.ndarray
    gauss_weights: np.ndarray
    degree: int

    def __len__(self) -> int:
        return self.degree

    @property
    def positive(self) -> slice:
        """Slice selecting the strictly positive half of the nodes."""
        return slice(self.degree // 2, None)

    def integrate(self, values) -> np.ndarray:
        """Sum ``weights * values`` over the leading axis."""
        v = np.asarray(values)
        return np.tensordot(self.weights, v, axes=(0, 0))


def _generalized_rule(chi: float, N: int) -> QuadratureRule1D:
    t, log_lam = laguerre_rule_log(chi, N // 2)
    x_pos = np.sqrt(t)
    # each Laguerre weight splits evenly over +-sqrt(t)
    log_w = log_lam - math.log(2.0)
    nodes = np.concatenate([-x_pos[::-1], x_pos])
    log_w_full = np.concatenate([log_w[::-1], log_w])
    weights = np.exp(log_w_full + nodes * nodes)
    gauss = np.exp(log_w_full)
    for arr in (nodes, weights, gauss):
        arr.setflags(write=False)
    return QuadratureRule1D(float(chi), nodes, weights, gauss, N)


@lru_cache(maxsize=256)
def _cached_rule(chi: float, N: int) -> QuadratureRule1D:
    return _generalized_rule(chi, N)


def build_rule(chi: float, N: int) -> QuadratureRule1D:
    """Symmetric N-point rule for |x|^(2chi+1) dx (see module docstring)."""
    if chi < 0:
        raise InvalidParam(f"chi must be >= 0, got {chi}")
    if N < 2 or N % 2:
        raise InvalidParam(f"N must be an even integer >= 2, got {N}")
    return _cached_rule(float(chi), int(N))


def order_rule(nu: float, N: int) -> QuadratureRule1D:
    """Like :func:`build_rule` but for any order ``nu > -1`` (Hankel orders)."""
    if nu <= -1:
        raise InvalidParam(f"order must exceed -1, got {nu}")
    if N < 2 or N % 2:
        raise InvalidParam(f"N must be an even integer >= 2, got {N}")
    return _cached_rule(float(nu), int(N))


@dataclass(frozen=True, eq=False)
class Grid2D:
    rule1: QuadratureRule1D
    rule2: QuadratureRule1D

    @classmethod
    def build(cls, chi1: float, chi2: float, N: int = 48, N2: int | None = None) -> "Grid2D":
        return cls(build_rule(chi1, N), build_rule(chi2, N if N2 is None else N2))

    @property
    def chi1(self) -> float:
        return self.rule1.chi

    @property
    def chi2(self) -> float:
        return self.rule2.chi

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rule1.nodes), len(self.rule2.nodes))

    @property
    def size(self) -> int:
        return self.shape[0] * self.shape[1]

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.rule1.nodes, self.rule2.nodes, indexing="ij")

    def weights(self) -> np.ndarray:
        return np.outer(self.rule1.weights, self.rule2.weights)

    def same_as(self, other: "Grid2D") -> bool:
        if self is other:
            return True
        return (
            self.shape == other.shape
            and self.chi1 == other.chi1
            and self.chi2 == other.chi2
        )


@dataclass(frozen=True, eq=False)
class SampledField:
    """Quaternion-valued function tabulated on a :class:`Grid2D`.

    ``values[i, j]`` is the sample at ``(rule1.nodes[i], rule2.nodes[j])``.
    """

    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != self.grid.shape + (4,):
            raise GridMismatch(f"values shape {v.shape} does not match grid {self.grid.shape}")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, grid: Grid2D, fn) -> "SampledField":
        """Sample ``fn(x1, x2)``; it may return real or (..., 4) quaternion arrays."""
        X1, X2 = grid.mesh()
        v = np.asarray(fn(X1, X2), dtype=float)
        if v.shape == grid.shape:
            v = np.stack([v, np.zeros_like(v), np.zeros_like(v), np.zeros_like(v)], axis=-1)
        return cls(grid, v)

    @classmethod
    def zeros(cls, grid: Grid2D) -> "SampledField":
        return cls(grid, np.zeros(grid.shape + (4,)))

    def __add__(self, other: "SampledField") -> "SampledField":
        _check_same(self, other)
        return SampledField(self.grid, self.values + other.values)

    def __sub__(self, other: "SampledField") -> "SampledField":
        _check_same(self, other)
        return SampledField(self.grid, self.values - other.values)

    def __mul__(self, s: float) -> "SampledField":
        return SampledField(self.grid, self.values * float(s))

    __rmul__ = __mul__

    def left_mul(self, q: Quaternion) -> "SampledField":
        return SampledField(self.grid, qmul_arr(q.as_array(), self.values))

    def right_mul(self, q: Quaternion) -> "SampledField":
        return SampledField(self.grid, qmul_arr(self.values, q.as_array()))

    def component(self, ell: int) -> np.ndarray:
        return self.values[..., ell]


def _check_same(f: SampledField, g: SampledField) -> None:
    if not f.grid.same_as(g.grid):
        raise GridMismatch("fields live on different grids")


def inner_product(f: SampledField, g: SampledField) -> Quaternion:
    """``sum f * conj(g) * w1_i * w2_j`` with ``f`` on the left."""
    _check_same(f, g)
    prod = qmul_arr(f.values, conj_arr(g.values))
    W = f.grid.weights()
    return Quaternion.from_array(np.einsum("ij,ijc->c", W, prod))


def norm2(f: SampledField) -> float:
    ip = inner_product(f, f)
    n2 = ip.w
    resid = abs(ip.imag)
    if resid > 1e-12 * max(abs(n2), 1e-300) and resid > 1e-300:
        raise GridMismatch(f"<f,f> has imaginary residue {resid:.3e} against {n2:.3e}")
    return math.sqrt(max(n2, 0.0))


def norm1(f: SampledField) -> float:
    """Weighted L^1 norm of |f|_H (quadrature of a non-smooth integrand)."""
    return float(np.sum(f.grid.weights() * np.sqrt(abs2_arr(f.values))))


def sup_norm(f: SampledField) -> float:
    return float(np.max(np.sqrt(abs2_arr(f.values))))


def max_abs_diff(f: SampledField, g: SampledField) -> float:
    _check_same(f, g)
    return float(np.max(np.sqrt(abs2_arr(f.values - g.values))))


# ---------------------------------------------------------------------------
# serialization; grids are regenerated from (chi1, chi2, N)

CSV_HEADER = ["x1", "x2", "w", "x", "y", "z"]


def field_rows(f: SampledField):
    x1 = f.grid.rule1.nodes
    x2 = f.grid.rule2.nodes
    for i in range(len(x1)):
        for j in range(len(x2)):
            yield (x1[i], x2[j], *f.values[i, j])


def write_csv(f: SampledField, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for row in field_rows(f):
            w.writerow([repr(float(v)) for v in row])


def _match_nodes(grid: Grid2D, x1: np.ndarray, x2: np.ndarray) -> None:
    n1, n2 = grid.shape
    if x1.size != n1 * n2:
        raise GridMismatch(f"expected {n1 * n2} rows, got {x1.size}")
    X1, X2 = grid.mesh()
    if not (np.allclose(x1.reshape(n1, n2), X1, rtol=1e-10, atol=1e-12)
            and np.allclose(x2.reshape(n1, n2), X2, rtol=1e-10, atol=1e-12)):
        raise GridMismatch("node columns do not match the regenerated grid")


def read_csv(path, grid: Grid2D) -> SampledField:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != CSV_HEADER:
            raise GridMismatch(f"bad CSV header {header!r}; expected {CSV_HEADER}")
        try:
            data = np.array([[float(v) for v in row] for row in reader if row])
        except ValueError as exc:
            raise GridMismatch(f"malformed CSV row: {exc}") from None
    if data.ndim != 2 or data.shape[1] != 6:
        raise GridMismatch("CSV rows must have 6 columns")
    _match_nodes(grid, data[:, 0], data[:, 1])
    return SampledField(grid, data[:, 2:].reshape(grid.shape + (4,)))


def field_to_json(f: SampledField) -> dict:
    return {
        "chi1": f.grid.chi1,
        "chi2": f.grid.chi2,
        "n1": f.grid.shape[0],
        "n2": f.grid.shape[1],
        "columns": CSV_HEADER,
        "rows": [[float(v) for v in row] for row in field_rows(f)],
    }


def write_json(f: SampledField, path) -> None:
    Path(path).write_text(json.dumps(field_to_json(f)))


def read_json(path, grid: Grid2D | None = None) -> SampledField:
    try:
        doc = json.loads(Path(path).read_text())
        rows = np.asarray(doc["rows"], dtype=float)
    except (KeyError, ValueError, TypeError) as exc:
        raise GridMismatch(f"malformed field JSON: {exc}") from None
    if grid is None:
        if doc.get("n1") != doc.get("n2"):
            grid = Grid2D(build_rule(doc["chi1"], doc["n1"]), build_rule(doc["chi2"], doc["n2"]))
        else:
            grid = Grid2D.build(doc["chi1"], doc["chi2"], doc["n1"])
    elif (doc.get("chi1"), doc.get("chi2")) != (grid.chi1, grid.chi2):
        raise GridMismatch("chi parameters in file differ from the requested grid")
    if rows.ndim != 2 or rows.shape[1] != 6:
        raise GridMismatch("field rows must have 6 columns")
    _match_nodes(grid, rows[:, 0], rows[:, 1])
    return SampledField(grid, rows[:, 2:].reshape(grid.shape + (4,)))
