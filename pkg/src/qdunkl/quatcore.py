"""Quaternion arithmetic and the commutative axis subalgebras span{1, u}.

Scalars are :class:`Quaternion` instances.  Sampled fields use plain numpy
arrays whose trailing axis has length 4 and holds the (w, x, y, z)
components; the ``*_arr`` helpers operate on those.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParam, ZeroBase, ZeroQuaternion


@dataclass(frozen=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        a = np.asarray(a, dtype=float)
        if a.shape != (4,):
            raise InvalidParam(f"expected 4 components, got shape {a.shape}")
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    @classmethod
    def from_complex(cls, z: complex, axis: "UnitAxis") -> "Quaternion":
        """Image of ``z = p + iq`` under the isomorphism C -> span{1, axis}."""
        u = axis.u
        return cls(z.real, z.imag * u.x, z.imag * u.y, z.imag * u.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @property
    def real(self) -> float:
        return self.w

    @property
    def imag(self) -> "Quaternion":
        return Quaternion(0.0, self.x, self.y, self.z)

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __abs__(self) -> float:
        return math.sqrt(self.norm2())

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, other)
        if isinstance(other, (int, float, np.floating, np.integer)):
            s = float(other)
            return Quaternion(self.w * s, self.x * s, self.y * s, self.z * s)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self * (1.0 / float(other))
        if isinstance(other, Quaternion):
            return self * qinv(other)
        return NotImplemented

    def isclose(self, other: "Quaternion", atol: float = 1e-12) -> bool:
        return abs(self - _coerce(other)) <= atol

    def __repr__(self) -> str:
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


def _coerce(q):
    if isinstance(q, Quaternion):
        return q
    if isinstance(q, (int, float, np.floating, np.integer)):
        return Quaternion(float(q))
    return NotImplemented


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def qmul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q``."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def qinv(q: Quaternion) -> Quaternion:
    n2 = q.norm2()
    if n2 == 0.0:
        raise ZeroQuaternion("cannot invert the zero quaternion")
    return q.conj() * (1.0 / n2)


@dataclass(frozen=True)
class UnitAxis:
    """A pure unit quaternion ``u`` (so ``u*u == -1``)."""

    u: Quaternion

    def __post_init__(self):
        if abs(self.u.w) > 1e-12 or abs(abs(self.u) - 1.0) > 1e-12:
            raise InvalidParam(f"axis must be a pure unit quaternion, got {self.u!r}")

    @classmethod
    def from_vector(cls, v) -> "UnitAxis":
        v = np.asarray(v, dtype=float)
        n = np.linalg.norm(v)
        if v.shape != (3,) or n == 0.0:
            raise InvalidParam(f"axis vector must be a nonzero 3-vector, got {v!r}")
        v = v / n
        return cls(Quaternion(0.0, float(v[0]), float(v[1]), float(v[2])))

    @classmethod
    def parse(cls, text: str) -> "UnitAxis":
        """Parse ``"i"``, ``"-j"``, ``"k"`` or a comma separated triple."""
        t = text.strip().lower()
        named = {"i": I, "j": J, "k": K}
        sign = 1.0
        if t.startswith("-") and t[1:] in named:
            sign, t = -1.0, t[1:]
        if t in named:
            return cls(named[t] * sign)
        try:
            parts = [float(s) for s in t.split(",")]
        except ValueError:
            raise InvalidParam(f"cannot parse axis {text!r}") from None
        if len(parts) != 3:
            raise InvalidParam(f"axis triple needs 3 components, got {text!r}")
        return cls.from_vector(parts)

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.u.x, self.u.y, self.u.z])

    def label(self) -> str:
        for name, q in (("i", I), ("j", J), ("k", K)):
            if self.u == q:
                return name
            if self.u == -q:
                return "-" + name
        return ",".join(repr(float(c)) for c in self.vec)


AXIS_I = UnitAxis(I)
AXIS_J = UnitAxis(J)
AXIS_K = UnitAxis(K)


def axis_exp(u: UnitAxis, t: float) -> Quaternion:
    """``exp(u t) = cos t + u sin t``."""
    return Quaternion.from_complex(complex(math.cos(t), math.sin(t)), u)


def axis_complex_pow(s: float, t: float, u: UnitAxis, gamma: float) -> Quaternion:
    """Principal power ``(s + u t)**gamma`` inside span{1, u}."""
    if s == 0.0 and t == 0.0:
        raise ZeroBase("base s + u t vanishes")
    r = math.hypot(s, t)
    return axis_exp(u, gamma * math.atan2(t, s)) * (r**gamma)


# ---------------------------------------------------------------------------
# array helpers, trailing axis = (w, x, y, z)


def qmul_arr(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pw, px, py, pz = np.moveaxis(p, -1, 0)
    qw, qx, qy, qz = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            pw * qw - px * qx - py * qy - pz * qz,
            pw * qx + px * qw + py * qz - pz * qy,
            pw * qy - px * qz + py * qw + pz * qx,
            pw * qz + px * qy - py * qx + pz * qw,
        ],
        axis=-1,
    )


def conj_arr(q: np.ndarray) -> np.ndarray:
    return np.asarray(q, dtype=float) * np.array([1.0, -1.0, -1.0, -1.0])


def abs2_arr(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    return np.sum(q * q, axis=-1)


def left_matrix(q: Quaternion) -> np.ndarray:
    """4x4 real matrix ``L`` with ``L @ p == (q p)`` in components."""
    w, x, y, z = q.w, q.x, q.y, q.z
    return np.array(
        [
            [w, -x, -y, -z],
            [x, w, -z, y],
            [y, z, w, -x],
            [z, -y, x, w],
        ]
    )


def right_matrix(q: Quaternion) -> np.ndarray:
    """4x4 real matrix ``R`` with ``R @ p == (p q)`` in components."""
    w, x, y, z = q.w, q.x, q.y, q.z
    return np.array(
        [
            [w, -x, -y, -z],
            [x, w, z, -y],
            [y, -z, w, x],
            [z, y, -x, w],
        ]
    )


def embed(zc, axis: UnitAxis) -> np.ndarray:
    """Map complex array(s) into span{1, axis}; output has a trailing axis of 4."""
    zc = np.asarray(zc, dtype=complex)
    out = np.empty(zc.shape + (4,))
    out[..., 0] = zc.real
    out[..., 1:] = zc.imag[..., None] * axis.vec
    return out


def scalar_field(values) -> np.ndarray:
    """Real array -> quaternion array with zero imaginary part."""
    v = np.asarray(values, dtype=float)
    out = np.zeros(v.shape + (4,))
    out[..., 0] = v
    return out
