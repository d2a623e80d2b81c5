"""Seeded test spectra.

All randomness comes from ``numpy.random.Generator(PCG64(seed))``.
"""

from __future__ import annotations

import math

import numpy as np

from .qft import SpectrumFn

KINDS = ("gauss", "poly", "random-smooth", "zero")


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def unit_quaternion(rng: np.random.Generator) -> np.ndarray:
    q = rng.standard_normal(4)
    return q / np.linalg.norm(q)


def gauss_spectrum(sigma: float, coeff, width: float | None = None) -> SpectrumFn:
    """``q exp(-(w1^2 + w2^2)/(2 s^2))`` on ``[-sigma, sigma]^2``; ``s = sigma/3`` by default."""
    q = np.asarray(coeff, float).reshape(4)
    s = sigma / 3.0 if width is None else float(width)

    def func(w1, w2):
        g = np.exp(-(np.asarray(w1) ** 2 + np.asarray(w2) ** 2) / (2 * s * s))
        return g[..., None] * q

    return SpectrumFn(sigma, func)


def poly_spectrum(sigma: float, coeffs) -> SpectrumFn:
    """``sum_{a,b} c[a, b] (w1/sigma)^a (w2/sigma)^b`` with quaternion ``c`` of shape ``(A, B, 4)``."""
    c = np.asarray(coeffs, float)
    if c.ndim != 3 or c.shape[2] != 4:
        raise ValueError("polynomial coefficients must have shape (A, B, 4)")

    def func(w1, w2):
        t1 = np.asarray(w1, float) / sigma
        t2 = np.asarray(w2, float) / sigma
        p1 = np.stack([t1 ** a for a in range(c.shape[0])], axis=-1)
        p2 = np.stack([t2 ** b for b in range(c.shape[1])], axis=-1)
        return np.einsum("...a,...b,abq->...q", p1, p2, c)

    return SpectrumFn(sigma, func)


def _trig_basis(t, degree):
    cols = [np.ones_like(t)]
    for a in range(1, degree + 1):
        cols += [np.cos(0.5 * math.pi * a * t), np.sin(0.5 * math.pi * a * t)]
    return np.stack(cols, axis=-1)


def trig_spectrum(sigma: float, coeffs, degree: int) -> SpectrumFn:
    """Finite double Fourier series in ``w/sigma`` (period 4, so the terms are
    not Shannon atoms on the sampling grid); ``coeffs`` has shape ``(2d+1, 2d+1, 4)``."""
    c = np.asarray(coeffs, float)

    def func(w1, w2):
        b1 = _trig_basis(np.asarray(w1, float) / sigma, degree)
        b2 = _trig_basis(np.asarray(w2, float) / sigma, degree)
        return np.einsum("...a,...b,abq->...q", b1, b2, c)

    return SpectrumFn(sigma, func)


def gen_spectrum(kind: str, seed: int, sigma: float, *, degree: int | None = None,
                 coeff=None) -> SpectrumFn:
    """Seeded test spectrum of the given kind on ``[-sigma, sigma]^2``.

    ``gauss`` draws a unit quaternion coefficient (unless ``coeff`` is given);
    ``poly`` draws Gaussian coefficients up to total ``degree`` (default 3);
    ``random-smooth`` draws a trigonometric series of ``degree`` (default 6,
    at most 6) whose coefficients decay like ``1/(1 + a + b)^2``; ``zero`` is
    the zero spectrum.
    """
    rng = _rng(seed)
    if kind == "gauss":
        q = unit_quaternion(rng) if coeff is None else coeff
        return gauss_spectrum(sigma, q)
    if kind == "poly":
        d = 3 if degree is None else int(degree)
        c = rng.standard_normal((d + 1, d + 1, 4))
        a, b = np.indices((d + 1, d + 1))
        c[a + b > d] = 0.0
        return poly_spectrum(sigma, c)
    if kind == "random-smooth":
        d = 6 if degree is None else int(degree)
        if not 0 <= d <= 6:
            raise ValueError("random-smooth degree must be in [0, 6]")
        c = rng.standard_normal((2 * d + 1, 2 * d + 1, 4))
        order = (np.arange(2 * d + 1) + 1) // 2
        c /= ((1.0 + order[:, None] + order[None, :]) ** 2)[..., None]
        return trig_spectrum(sigma, c, d)
    if kind == "zero":
        return SpectrumFn(sigma, lambda w1, w2: np.zeros(np.broadcast(w1, w2).shape + (4,)))
    raise ValueError(f"unknown spectrum kind {kind!r}; choose from {KINDS}")
