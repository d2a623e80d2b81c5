"""Slow reference implementations, written straight from the definitions.

They multiply quaternions node by node with :func:`qmul` and never use the
plane-splitting shortcuts of the fast paths, so agreement between the two is
meaningful.
"""

from __future__ import annotations

import math

import numpy as np

from .quaternion import from_complex, qmul


def qexp_series(q: np.ndarray, terms: int = 50) -> np.ndarray:
    """``sum_{n < terms} q^n / n!`` by repeated multiplication."""
    q = np.asarray(q, float)
    term = np.zeros_like(q)
    term[..., 0] = 1.0
    total = term.copy()
    for n in range(1, terms):
        term = qmul(term, q) / n
        total = total + term
    return total


def dqft_brute(f: np.ndarray) -> np.ndarray:
    """``(n1 n2)^-1/2 sum_x f[x] e^{-2 pi i k1 x1/n1} e^{-2 pi j k2 x2/n2}``."""
    f = np.asarray(f, float)
    n1, n2 = f.shape[:2]
    a = np.arange(n1)
    b = np.arange(n2)
    ei = from_complex(np.exp(-2j * math.pi * np.outer(a, a) / n1), "i")   # (x1, k1, 4)
    ej = from_complex(np.exp(-2j * math.pi * np.outer(b, b) / n2), "j")   # (x2, k2, 4)
    out = np.zeros_like(f)
    for k1 in range(n1):
        for k2 in range(n2):
            t = qmul(qmul(f, ei[:, k1][:, None, :]), ej[:, k2][None, :, :])
            out[k1, k2] = t.sum(axis=(0, 1))
    return out / math.sqrt(n1 * n2)


def sandwich_brute(values, li, lj, rj, ri):
    """``sum_{a,b} L_i L_j V R_j R_i`` for one output pair, kernels as complex vectors."""
    left = qmul(from_complex(li, "i")[:, None, :], from_complex(lj, "j")[None, :, :])
    right = qmul(from_complex(rj, "j")[None, :, :], from_complex(ri, "i")[:, None, :])
    return qmul(qmul(left, values), right).sum(axis=(0, 1))
