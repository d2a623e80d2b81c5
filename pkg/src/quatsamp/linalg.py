"""Dense quaternion matrices through their complex adjoint.

A quaternion matrix is stored as a float array of shape ``(..., n, p, 4)``.
Writing ``M = A1 + A2 j`` with ``A1 = W + X i`` and ``A2 = Y + Z i``, the
complex adjoint is the ``2n x 2n`` complex matrix::

    C(M) = [[ A1,        A2       ],
            [ -conj(A2), conj(A1) ]]

``C`` is an injective ring homomorphism, so ``M`` is invertible exactly when
``C(M)`` is, and ``C(M^-1) = C(M)^-1``.  Inversion runs Gauss-Jordan
elimination with partial pivoting on the (batched) adjoint.
"""

from __future__ import annotations

import numpy as np

from .quaternion import qmul

# smallest admissible pivot relative to the largest |entry| of C(M)
PIVOT_RTOL = 1e-12


class DimensionError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    """Raised when elimination meets a pivot below the threshold."""

    def __init__(self, message, pivot=0.0, index=None):
        super().__init__(message)
        self.pivot = pivot
        self.index = index


def _check_square(m: np.ndarray) -> int:
    if m.ndim < 3 or m.shape[-1] != 4 or m.shape[-2] != m.shape[-3]:
        raise DimensionError(
            f"expected a square quaternion matrix (..., n, n, 4), got {m.shape}")
    return m.shape[-2]


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n, 4))
    out[np.arange(n), np.arange(n), 0] = 1.0
    return out


def qmatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of conforming quaternion matrices (batched)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape[-2] != b.shape[-3]:
        raise DimensionError(
            f"cannot multiply {a.shape[-3:-1]} by {b.shape[-3:-1]}")
    prod = qmul(a[..., :, :, None, :], b[..., None, :, :, :])
    return prod.sum(axis=-3)


def complex_adjoint(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    n = _check_square(m)
    a1 = m[..., 0] + 1j * m[..., 1]
    a2 = m[..., 2] + 1j * m[..., 3]
    out = np.empty(m.shape[:-3] + (2 * n, 2 * n), dtype=complex)
    out[..., :n, :n] = a1
    out[..., :n, n:] = a2
    out[..., n:, :n] = -np.conj(a2)
    out[..., n:, n:] = np.conj(a1)
    return out


def from_complex_adjoint(c: np.ndarray) -> np.ndarray:
    """Recover ``M`` from the top block row of ``C(M)``."""
    c = np.asarray(c)
    n = c.shape[-1] // 2
    a1 = c[..., :n, :n]
    a2 = c[..., :n, n:]
    return np.stack([a1.real, a1.imag, a2.real, a2.imag], axis=-1)


def _gauss_jordan(c: np.ndarray):
    """Batched inverse of complex square matrices with partial pivoting.

    Returns ``(inverse, min_pivot, scale)`` where ``min_pivot`` is the smallest
    pivot modulus met per matrix and ``scale`` the largest entry modulus.
    """
    c = np.array(c, dtype=complex, copy=True)
    batch = c.shape[:-2]
    n = c.shape[-1]
    a = c.reshape((-1, n, n))
    inv = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()
    rows = np.arange(a.shape[0])
    scale = np.abs(a).max(axis=(1, 2))
    min_pivot = np.full(a.shape[0], np.inf)
    for col in range(n):
        piv = col + np.argmax(np.abs(a[:, col:, col]), axis=1)
        # swap rows col <-> piv in both matrices
        a_col = a[rows, col].copy()
        a[rows, col] = a[rows, piv]
        a[rows, piv] = a_col
        i_col = inv[rows, col].copy()
        inv[rows, col] = inv[rows, piv]
        inv[rows, piv] = i_col
        p = a[:, col, col]
        min_pivot = np.minimum(min_pivot, np.abs(p))
        p = np.where(p == 0, 1.0, p)
        a[:, col, :] /= p[:, None]
        inv[:, col, :] /= p[:, None]
        factors = a[:, :, col].copy()
        factors[:, col] = 0.0
        a -= factors[:, :, None] * a[:, col, None, :]
        inv -= factors[:, :, None] * inv[:, col, None, :]
    return (inv.reshape(batch + (n, n)), min_pivot.reshape(batch),
            scale.reshape(batch))


def invert(m: np.ndarray) -> np.ndarray:
    """Inverse of a (batch of) square quaternion matrices.

    Raises
    ------
    SingularMatrixError
        If any pivot of the complex adjoint falls below
        ``1e-12 * max|C(M)|``.  The error carries the offending pivot and,
        for batched input, the index of the first failing matrix.
    """
    m = np.asarray(m, dtype=float)
    _check_square(m)
    c = complex_adjoint(m)
    c_inv, min_pivot, scale = _gauss_jordan(c)
    bad = ~(min_pivot >= PIVOT_RTOL * scale) | (scale == 0)
    if np.any(bad):
        idx = tuple(int(i) for i in np.argwhere(bad)[0]) if bad.ndim else None
        piv = float(min_pivot[idx] if idx is not None else min_pivot)
        raise SingularMatrixError(
            f"quaternion matrix is singular (pivot {piv:.3e})", pivot=piv,
            index=idx)
    return from_complex_adjoint(c_inv)


def det_complex_adjoint(m: np.ndarray) -> complex:
    """Determinant of ``C(M)``; real and non-negative in exact arithmetic."""
    c = complex_adjoint(np.asarray(m, dtype=float))
    d = np.linalg.det(c)
    return complex(d) if np.ndim(d) == 0 else d


def is_invertible(m: np.ndarray) -> bool:
    try:
        invert(m)
    except SingularMatrixError:
        return False
    return True
