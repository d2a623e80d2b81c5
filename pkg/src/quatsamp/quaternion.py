"""Quaternion scalars and vectorised quaternion arithmetic.

Two representations live side by side:

* :class:`Quaternion`, an immutable scalar ``w + x i + y j + z k`` with the
  usual operators, used wherever a single value is handled;
* plain ``float64`` arrays whose last axis has length 4 (``w, x, y, z``),
  used by every quadrature and transform routine.  The ``q*`` functions below
  operate on those arrays and broadcast like any other numpy ufunc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# below this modulus a quaternion is treated as zero by the inverse
ZERO_MODULUS = 1e-300
# below this vector modulus qexp switches to its power series
_SERIES_CUTOFF = 1e-8


class QuaternionDomainError(ValueError):
    """Raised for arguments outside an operation's domain."""


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
            raise ValueError(f"expected shape (4,), got {a.shape}")
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other,
                              self.y * other, self.z * other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return mul(other, self)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other,
                              self.y / other, self.z / other)
        return NotImplemented

    def __abs__(self):
        return norm(self)

    def conjugate(self) -> "Quaternion":
        return conj(self)

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


def _coerce(value):
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float)):
        return Quaternion(float(value))
    if isinstance(value, complex):
        return Quaternion(value.real, value.imag)
    return NotImplemented


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class PureUnit:
    """A pure imaginary unit quaternion ``u`` (so ``u*u == -1``)."""

    direction: Quaternion

    def __post_init__(self):
        d = self.direction
        if abs(d.w) > 1e-12 or abs(norm(d) - 1.0) > 1e-12:
            raise QuaternionDomainError(
                f"{d!r} is not a pure unit quaternion")

    @classmethod
    def from_vector(cls, x: float, y: float, z: float) -> "PureUnit":
        n = math.sqrt(x * x + y * y + z * z)
        if n == 0.0:
            raise QuaternionDomainError("zero vector has no direction")
        return cls(Quaternion(0.0, x / n, y / n, z / n))


# -- scalar API -------------------------------------------------------------

def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q``."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def norm(q: Quaternion) -> float:
    return math.sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z)


def inv(q: Quaternion) -> Quaternion:
    n2 = q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z
    if math.sqrt(n2) < ZERO_MODULUS:
        raise QuaternionDomainError("zero has no inverse")
    return Quaternion(q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2)


def sc(q: Quaternion) -> float:
    return q.w


def vec(q: Quaternion) -> Quaternion:
    return Quaternion(0.0, q.x, q.y, q.z)


def qexp(q: Quaternion) -> Quaternion:
    """Quaternion exponential ``e^q``."""
    return Quaternion.from_array(qexp_array(q.as_array()))


def inv_sqrt_scale(u: PureUnit, b: float) -> Quaternion:
    """The scalar written ``1/sqrt(u 2 pi b)`` in the QLCT kernels.

    It is defined as ``|2 pi b|^(-1/2) exp(u (sgn(b) - 2) pi / 4)``.  For
    ``b < 0`` this differs by a factor ``-1`` from the principal square root;
    the convention is kept because the inverse-kernel pairs rely on it.
    """
    if b == 0:
        raise QuaternionDomainError("b must be nonzero")
    theta = (math.copysign(1.0, b) - 2.0) * math.pi / 4.0
    scale = abs(2.0 * math.pi * b) ** -0.5
    d = u.direction
    s = scale * math.sin(theta)
    return Quaternion(scale * math.cos(theta), s * d.x, s * d.y, s * d.z)


# -- array API --------------------------------------------------------------

def as_quat_array(values) -> np.ndarray:
    """Coerce a Quaternion, a sequence of them, or an (..., 4) array."""
    if isinstance(values, Quaternion):
        return values.as_array()
    if isinstance(values, (list, tuple)) and values and isinstance(values[0], Quaternion):
        return np.array([v.as_array() for v in values])
    a = np.asarray(values, dtype=float)
    if a.shape[-1:] != (4,):
        raise ValueError(f"last axis must have length 4, got shape {a.shape}")
    return a


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Broadcasting Hamilton product of two quaternion arrays."""
    a0, a1, a2, a3 = np.moveaxis(np.asarray(a, dtype=float), -1, 0)
    b0, b1, b2, b3 = np.moveaxis(np.asarray(b, dtype=float), -1, 0)
    return np.stack([
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ], axis=-1)


def qconj(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out[..., 1:] *= -1.0
    return out


def qnorm(a: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.square(a), axis=-1))


def qinv(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    n2 = np.sum(a * a, axis=-1)
    if np.any(np.sqrt(n2) < ZERO_MODULUS):
        raise QuaternionDomainError("zero has no inverse")
    return qconj(a) / n2[..., None]


def qexp_array(a: np.ndarray) -> np.ndarray:
    """Elementwise exponential of a quaternion array.

    Uses ``e^w (cos|v| + v/|v| sin|v|)``; for ``|v| < 1e-8`` the factor
    ``sin|v|/|v|`` is replaced by its series ``1 - |v|^2/6``.
    """
    a = np.asarray(a, dtype=float)
    w = a[..., 0]
    v = a[..., 1:]
    r = np.sqrt(np.sum(v * v, axis=-1))
    small = r < _SERIES_CUTOFF
    safe_r = np.where(small, 1.0, r)
    sinc = np.where(small, 1.0 - r * r / 6.0, np.sin(safe_r) / safe_r)
    ew = np.exp(w)
    out = np.empty(a.shape)
    out[..., 0] = ew * np.cos(r)
    out[..., 1:] = (ew * sinc)[..., None] * v
    return out


def from_complex(z, plane: str = "i") -> np.ndarray:
    """Embed complex numbers into the ``1, i`` or ``1, j`` plane."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros(z.shape + (4,))
    out[..., 0] = z.real
    out[..., {"i": 1, "j": 2, "k": 3}[plane]] = z.imag
    return out
