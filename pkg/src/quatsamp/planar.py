"""Separable sums with plane-valued kernels on either side of a quaternion.

Every integral in the package has the shape

    sum_{a,b}  L_i[a,p] L_j[b,q] V[a,b] R_j[b,q] R_i[a,p]

where ``L_i, R_i`` live in the complex plane spanned by ``1, i`` and depend on
the first frequency axis only, and ``L_j, R_j`` live in the ``1, j`` plane and
depend on the second.  Splitting ``V = c1 + c2 i`` with ``c1, c2`` in the
``1, j`` plane turns the inner sum into two complex matrix products, because
``i z = conj(z) i`` for any ``z`` in that plane; splitting the intermediate
result as ``d1 + j d2`` with ``d1, d2`` in the ``1, i`` plane does the same for
the outer sum.  Kernels are passed as ordinary complex arrays; ``None`` stands
for the constant 1.
"""

from __future__ import annotations

import numpy as np

from .parallel import map_chunks, single_threaded_blas


def _j_split(v):
    # v = c1 + c2 i with c1 = v0 + v2 j, c2 = v1 - v3 j
    return v[..., 0] + 1j * v[..., 2], v[..., 1] - 1j * v[..., 3]


def _i_split(v):
    # v = d1 + j d2 with d1 = v0 + v1 i, d2 = v2 - v3 i
    return v[..., 0] + 1j * v[..., 1], v[..., 2] - 1j * v[..., 3]


def _from_j_split(s1, s2):
    return np.stack([s1.real, s2.real, s1.imag, -s2.imag], axis=-1)


def _from_i_split(d1, d2):
    return np.stack([d1.real, d1.imag, d2.real, -d2.imag], axis=-1)


def _ones(n, m):
    return np.ones((n, m), dtype=complex)


def sandwich_sum(values, li=None, lj=None, rj=None, ri=None, *, p=None, q=None):
    """Evaluate the two-sided separable sum for every output pair ``(p, q)``.

    Parameters
    ----------
    values : (Na, Nb, 4) array
        Quaternion samples, quadrature weights already applied.
    li, ri : (Na, P) complex arrays or None
        Left / right kernels in the ``1, i`` plane.
    lj, rj : (Nb, Q) complex arrays or None
        Left / right kernels in the ``1, j`` plane.
    p, q : int, optional
        Output sizes; only needed when all kernels of an axis are None.

    Returns
    -------
    (P, Q, 4) array
    """
    values = np.asarray(values, dtype=float)
    na, nb = values.shape[:2]
    if q is None:
        q = next(k.shape[1] for k in (lj, rj) if k is not None)
    if p is None:
        p = next(k.shape[1] for k in (li, ri) if k is not None)
    lj = _ones(nb, q) if lj is None else lj
    rj = _ones(nb, q) if rj is None else rj
    li = _ones(na, p) if li is None else li
    ri = _ones(na, p) if ri is None else ri

    c1, c2 = _j_split(values)
    kj_even = lj * rj
    kj_odd = lj * np.conj(rj)

    def inner(sl):
        return c1 @ kj_even[:, sl], c2 @ kj_odd[:, sl]

    with single_threaded_blas():
        parts = map_chunks(inner, q)
        s1 = np.concatenate([a for a, _ in parts], axis=1)
        s2 = np.concatenate([b for _, b in parts], axis=1)
        mid = _from_j_split(s1, s2)          # (Na, Q, 4)

        d1, d2 = _i_split(mid)
        ki_even = (li * ri).T                # (P, Na)
        ki_odd = (np.conj(li) * ri).T

        def outer(sl):
            return ki_even[sl] @ d1, ki_odd[sl] @ d2

        parts = map_chunks(outer, p)
    e1 = np.concatenate([a for a, _ in parts], axis=0)
    e2 = np.concatenate([b for _, b in parts], axis=0)
    return _from_i_split(e1, e2)


def forward_sum(values, ri, rj):
    """``sum_{a,b} V[a,b] R_i[a,p] R_j[b,q]`` -- i-kernel first, then j-kernel."""
    values = np.asarray(values, dtype=float)
    d1, d2 = _i_split(values)
    with single_threaded_blas():
        mid = _from_i_split(ri.T @ d1, ri.T @ d2)       # (P, Nb, 4)
        # mid = c1 + i c2 with c1 = m0 + m2 j, c2 = m1 + m3 j
        c1 = mid[..., 0] + 1j * mid[..., 2]
        c2 = mid[..., 1] + 1j * mid[..., 3]
        e1 = c1 @ rj
        e2 = c2 @ rj
    return np.stack([e1.real, e2.real, e1.imag, e2.imag], axis=-1)
