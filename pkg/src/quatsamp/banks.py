"""Built-in filter banks with their closed-form interpolants.

Every closed form here returns real (scalar) quaternions; ``u = x - nT`` and
``v = x + nT`` are the per-axis offsets produced by the generalized
translation.
"""

from __future__ import annotations

import math

import numpy as np

from .gse import FilterBank, build_partition


# -- stable one-dimensional pieces ----------------------------------------------

def sin_over(u, s):
    """``sin(s u)/u`` (limit ``s`` at 0)."""
    return s * np.sinc(s * np.asarray(u, float) / math.pi)


def sin_minus_cos(u, s):
    """``(sin(s u) - s u cos(s u))/u^2`` (odd, ~ ``s^3 u/3`` near 0)."""
    u = np.asarray(u, float)
    z = s * u
    small = np.abs(z) < 1e-3
    zs = np.where(small, 1.0, z)
    big = (np.sin(zs) - zs * np.cos(zs)) / (zs * zs) * (s * s)
    series = s * s * z * (1.0 / 3.0 - z * z / 30.0 + z ** 4 / 840.0)
    return np.where(small, series, big)


def half_sin_sq_over(u, s):
    """``sin^2(s u/2)/u`` (odd, ~ ``s^2 u/4`` near 0)."""
    u = np.asarray(u, float)
    return 0.5 * s * np.sin(0.5 * s * u) * np.sinc(0.5 * s * u / math.pi)


def half_sin_sq_over_sq(u, s):
    """``sin^2(s u/2)/u^2`` (limit ``s^2/4`` at 0)."""
    return (0.5 * s * np.sinc(0.5 * s * np.asarray(u, float) / math.pi)) ** 2


def _offsets(n1s, x1s, n2s, x2s, T):
    n1s, x1s, n2s, x2s = (np.atleast_1d(np.asarray(v, float)) for v in (n1s, x1s, n2s, x2s))
    u1 = x1s[None, :] - T * n1s[:, None]
    u2 = x2s[None, :] - T * n2s[:, None]
    v2 = x2s[None, :] + T * n2s[:, None]
    return u1, u2, v2


def _outer_real(*pairs):
    """Sum of separable terms ``a[n1, p] * b[n2, q]`` as scalar quaternions."""
    total = 0.0
    for a, b in pairs:
        total = total + a[:, :, None, None] * b[None, None, :, :]
    out = np.zeros(total.shape + (4,))
    out[..., 0] = total
    return out


# -- banks ------------------------------------------------------------------------

def _const(q):
    q = np.asarray(q, float)

    def response(w1, w2):
        return np.broadcast_to(q, np.broadcast(np.asarray(w1), np.asarray(w2)).shape + (4,))
    return response


def shannon_bank(sigma: float = math.pi) -> FilterBank:
    """Single identity channel: plain Shannon sampling at ``T = pi/sigma``."""
    def closed(k, n1s, x1s, n2s, x2s, T):
        u1, u2, _ = _offsets(n1s, x1s, n2s, x2s, T)
        return _outer_real((sin_over(u1, sigma) / sigma, sin_over(u2, sigma) / sigma))

    return FilterBank("shannon", (_const([1.0, 0, 0, 0]),), m=1, sigma=sigma,
                      closed_form=closed, params=(("sigma", sigma),))


def trapezoid(w, sigma, rho):
    """1 on ``|w| <= sigma``, linear down to 0 at ``rho sigma``."""
    a = np.abs(np.asarray(w, float))
    return np.clip((rho * sigma - a) / ((rho - 1.0) * sigma), 0.0, 1.0)


def oversample_bank(sigma: float = math.pi, rho: float = 2.0) -> FilterBank:
    """Signals bandlimited to ``sigma`` sampled at the faster period ``pi/(rho sigma)``.

    The response is the product of two trapezoids; since the signal spectrum
    vanishes outside ``[-sigma, sigma]^2`` the samples are those of ``f``
    itself.  The inverse of the response is not square integrable on the
    wider band, so the interpolation spectrum is the (square integrable)
    ``T^2/(2 pi)`` times the trapezoid product instead, which equals
    ``T^2/(2 pi) H^-1`` on the signal band.
    """
    if not rho > 1:
        raise ValueError(f"oversampling factor must exceed 1, got {rho}")
    wide = rho * sigma
    T = math.pi / wide

    def h(w1, w2):
        v = trapezoid(w1, sigma, rho) * trapezoid(w2, sigma, rho)
        out = np.zeros(v.shape + (4,))
        out[..., 0] = v
        return out

    def y_spec(w1, w2):
        return T * T / (2 * math.pi) * h(w1, w2)

    def phi(u):
        # (1/pi) int_0^{wide} trap(w) cos(w u) dw, scaled by T
        return 2.0 * (half_sin_sq_over_sq(u, wide) - half_sin_sq_over_sq(u, sigma)) \
            / (rho * (rho - 1.0) * sigma * sigma)

    def closed(k, n1s, x1s, n2s, x2s, Tp):
        u1, u2, _ = _offsets(n1s, x1s, n2s, x2s, Tp)
        return _outer_real((phi(u1), phi(u2)))

    breaks = (-sigma, sigma)
    return FilterBank("oversample", (h,), m=1, sigma=wide, signal_sigma=sigma,
                      breaks=breaks, interp_override=(y_spec,), closed_form=closed,
                      params=(("sigma", sigma), ("rho", rho)))


def rational_response(w1, w2, alpha, beta):
    """``alpha beta (beta + j w2)^-1 (alpha + i w1)^-1`` expanded into components."""
    w1 = np.asarray(w1, float)
    w2 = np.asarray(w2, float)
    d = (alpha * alpha + w1 * w1) * (beta * beta + w2 * w2)
    s = alpha * beta / d
    return np.stack(np.broadcast_arrays(s * alpha * beta, -s * beta * w1,
                                        -s * alpha * w2, -s * w1 * w2), axis=-1)


def rational_interpolant(n1s, x1s, n2s, x2s, T, sigma, alpha, beta, *, printed=False):
    """Closed form of ``y(x (-) nT)`` for the single rational channel.

    ``printed=True`` uses the variant prefactor ``4 pi / T^2`` in place of
    the correct ``4 pi^2 / T^2``; it is off by a factor ``pi``.
    """
    u1, u2, v2 = _offsets(n1s, x1s, n2s, x2s, T)
    s = lambda u: sin_over(u, sigma)
    d = lambda u: sin_minus_cos(u, sigma)
    pre = T * T / (4 * math.pi if printed else 4 * math.pi ** 2)
    return pre * _outer_real(
        (4 * s(u1), s(u2)),
        (-4.0 / alpha * d(u1), s(v2)),
        (-4.0 / beta * s(u1), d(u2)),
        (4.0 / (alpha * beta) * d(u1), d(v2)),
    )


def rational_bank(sigma: float = math.pi, alpha: float = 1.0, beta: float = 1.0) -> FilterBank:
    """One channel with response ``alpha beta (beta + j w2)^-1 (alpha + i w1)^-1``."""
    if alpha == 0 or beta == 0:
        raise ValueError("alpha and beta must be non-zero")

    def h(w1, w2):
        return rational_response(w1, w2, alpha, beta)

    def closed(k, n1s, x1s, n2s, x2s, T):
        return rational_interpolant(n1s, x1s, n2s, x2s, T, sigma, alpha, beta)

    return FilterBank("rational", (h,), m=1, sigma=sigma, closed_form=closed,
                      params=(("sigma", sigma), ("alpha", alpha), ("beta", beta)))


def derivative_bank(sigma: float = math.pi) -> FilterBank:
    """Four channels: identity, ``i w1``, ``j w2`` and ``i w1 j w2`` (m = 2).

    The samples are those of ``f`` and of its (generalized) partial
    derivatives; the period is ``T = 2 pi / sigma``.
    """
    def h1(w1, w2):
        return _const([1.0, 0, 0, 0])(w1, w2)

    def h2(w1, w2):
        w1, w2 = np.broadcast_arrays(np.asarray(w1, float), np.asarray(w2, float))
        z = np.zeros_like(w1)
        return np.stack([z, w1, z, z], axis=-1)

    def h3(w1, w2):
        w1, w2 = np.broadcast_arrays(np.asarray(w1, float), np.asarray(w2, float))
        z = np.zeros_like(w1)
        return np.stack([z, z, w2, z], axis=-1)

    def h4(w1, w2):
        w1, w2 = np.broadcast_arrays(np.asarray(w1, float), np.asarray(w2, float))
        z = np.zeros_like(w1)
        return np.stack([z, z, z, w1 * w2], axis=-1)

    s4 = 16.0 / sigma ** 4
    P = lambda u: half_sin_sq_over(u, sigma)
    S = lambda u: half_sin_sq_over_sq(u, sigma)

    def closed(k, n1s, x1s, n2s, x2s, T):
        u1, u2, v2 = _offsets(n1s, x1s, n2s, x2s, T)
        if k == 0:
            return _outer_real((s4 * S(u1), S(u2)))
        if k == 1:
            return _outer_real((s4 * P(u1), S(v2)))
        if k == 2:
            return _outer_real((s4 * S(u1), P(u2)))
        return _outer_real((-s4 * P(u1), P(v2)))

    return FilterBank("derivative", (h1, h2, h3, h4), m=2, sigma=sigma,
                      breaks=(0.0,), closed_form=closed, params=(("sigma", sigma),))


def derivative_inverse(w1, w2, sigma):
    """Closed form of ``H(w)^-1`` for the derivative bank on ``I_11``,
    rows as channels and columns as cells ``(1,1), (1,2), (2,1), (2,2)``."""
    w1 = float(w1)
    w2 = float(w2)
    a, b = w1 + sigma, w2 + sigma
    q = np.zeros((4, 4, 4))
    q[0, 0, 0] = a * b
    q[0, 1, 0] = -a * w2
    q[0, 2, 0] = -w1 * b
    q[0, 3, 0] = w1 * w2
    q[1, :, 1] = [b, -w2, -b, w2]
    q[2, :, 2] = [a, -a, -w1, w1]
    q[3, :, 3] = [-1.0, 1.0, 1.0, -1.0]
    return q / sigma ** 2


BANKS = {
    "shannon": shannon_bank,
    "oversample": oversample_bank,
    "rational": rational_bank,
    "derivative": derivative_bank,
}


def example_bank(which: str, **params) -> FilterBank:
    """Built-in bank by name: ``shannon``, ``oversample(sigma, rho)``,
    ``rational(sigma, alpha, beta)`` or ``derivative(sigma)``."""
    try:
        factory = BANKS[which]
    except KeyError:
        raise ValueError(f"unknown bank {which!r}; choose from {sorted(BANKS)}") from None
    return factory(**params)


def default_partition(bank: FilterBank):
    return build_partition(bank.sigma, bank.m)
