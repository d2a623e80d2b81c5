"""Right-sided quaternion linear canonical transform and its sampling theorem.

For ``A = (a, b; c, d)`` with ``det A = 1`` and ``b != 0`` the kernels are

    K^i_A(x, w) = (1/sqrt(i 2 pi b)) exp(i (a x^2/(2b) - x w/b + d w^2/(2b)))

and likewise with ``j``; ``1/sqrt(u 2 pi b)`` means
``|2 pi b|^{-1/2} exp(u (sgn b - 2) pi/4)``.  Every kernel value lies in the
complex plane of its unit, so kernels are handled as ordinary complex arrays
and applied through :mod:`quatsamp.planar`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erf

from .planar import forward_sum, sandwich_sum
from .qft import SpectrumFn
from .quadrature import DEFAULT_RULE, QuadratureRule
from .quaternion import Quaternion, QuaternionDomainError, qinv, qmul


class UnsupportedParameterError(ValueError):
    pass


class InadmissibleFilterError(ValueError):
    pass


@dataclass(frozen=True)
class LCTMatrix:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if self.b == 0:
            raise UnsupportedParameterError("b = 0 is not supported")
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > 1e-12:
            raise ValueError(f"det A must be 1, got {det!r}")

    def inverse(self) -> "LCTMatrix":
        return LCTMatrix(self.d, -self.b, -self.c, self.a)

    @classmethod
    def chirped(cls, a: float, b: float, d: float) -> "LCTMatrix":
        """Complete ``(a, b; ., d)`` with ``c = (a d - 1)/b``."""
        return cls(a, b, (a * d - 1.0) / b, d)


@dataclass(frozen=True)
class LCTParams:
    A1: LCTMatrix
    A2: LCTMatrix

    @classmethod
    def from_entries(cls, a1, b1, c1, d1, a2, b2, c2, d2) -> "LCTParams":
        return cls(LCTMatrix(a1, b1, c1, d1), LCTMatrix(a2, b2, c2, d2))

    @classmethod
    def fourier(cls) -> "LCTParams":
        return cls(LCTMatrix(0.0, 1.0, -1.0, 0.0), LCTMatrix(0.0, 1.0, -1.0, 0.0))

    def inverse(self) -> "LCTParams":
        return LCTParams(self.A1.inverse(), self.A2.inverse())


# -- kernels ----------------------------------------------------------------------

def kernel_complex(A: LCTMatrix, x, w) -> np.ndarray:
    """Kernel value in the complex plane of its unit (``1j`` stands for that unit)."""
    x = np.asarray(x, float)
    w = np.asarray(w, float)
    b = A.b
    scale = abs(2 * math.pi * b) ** -0.5 * np.exp(1j * (math.copysign(1.0, b) - 2) * math.pi / 4)
    phase = (A.a * x * x - 2.0 * x * w + A.d * w * w) / (2.0 * b)
    return scale * np.exp(1j * phase)


def kernel_i(params: LCTParams, x1: float, w1: float) -> Quaternion:
    z = complex(kernel_complex(params.A1, x1, w1))
    return Quaternion(z.real, z.imag, 0.0, 0.0)


def kernel_j(params: LCTParams, x2: float, w2: float) -> Quaternion:
    z = complex(kernel_complex(params.A2, x2, w2))
    return Quaternion(z.real, 0.0, z.imag, 0.0)


# -- quadrature helpers -------------------------------------------------------------

def _rate(A: LCTMatrix, xmax: float, sigma: float, both_sides: bool) -> float:
    # |d phase/d w| of K_{A^-1}(w, x) is |d w - x|/|b|
    sides = 2.0 if both_sides else 1.0
    return (sides * xmax + sides * abs(A.d) * sigma) / abs(A.b)


def _nodes(F: SpectrumFn, rule: QuadratureRule, rate1: float, rate2: float):
    s = F.sigma
    brk = tuple(F.breaks)
    w1, a1 = rule.axis_nodes(-s, s, rate=rate1, breaks=brk, cell_width=2 * s)
    w2, a2 = rule.axis_nodes(-s, s, rate=rate2, breaks=brk, cell_width=2 * s)
    vals = F(w1[:, None], w2[None, :]) * (a1[:, None] * a2[None, :])[..., None]
    return w1, w2, vals


def qlct_synthesize_grid(F: SpectrumFn, params: LCTParams, x1s, x2s,
                         rule: QuadratureRule = DEFAULT_RULE) -> np.ndarray:
    """``int_I F(w) K^j_{A2^-1}(w2, x2) K^i_{A1^-1}(w1, x1) dw`` on a tensor grid."""
    x1s = np.atleast_1d(np.asarray(x1s, float))
    x2s = np.atleast_1d(np.asarray(x2s, float))
    inv = params.inverse()
    w1, w2, vals = _nodes(F, rule, _rate(params.A1, np.abs(x1s).max(), F.sigma, False),
                          _rate(params.A2, np.abs(x2s).max(), F.sigma, False))
    rj = kernel_complex(inv.A2, w2[:, None], x2s[None, :])
    ri = kernel_complex(inv.A1, w1[:, None], x1s[None, :])
    return sandwich_sum(vals, rj=rj, ri=ri)


def qlct_synthesize(F: SpectrumFn, params: LCTParams, x, rule: QuadratureRule = DEFAULT_RULE) -> Quaternion:
    return Quaternion.from_array(qlct_synthesize_grid(F, params, [x[0]], [x[1]], rule)[0, 0])


def qlct_translate_pairs(F: SpectrumFn, params: LCTParams, y1s, x1s, y2s, x2s,
                         rule: QuadratureRule = DEFAULT_RULE) -> np.ndarray:
    """``f(x1 [-] y1, x2 [-] y2)`` for paired coordinates per axis -> ``(P, Q, 4)``.

    The integrand is ``conj(K^j(w2, y2) K^i(w1, y1)) F K^j(w2, x2) K^i(w1, x1)``
    with inverse-parameter kernels, i.e. ``conj(K^i) conj(K^j)`` on the left.
    """
    y1s, x1s, y2s, x2s = (np.atleast_1d(np.asarray(v, float)) for v in (y1s, x1s, y2s, x2s))
    inv = params.inverse()
    r1 = _rate(params.A1, max(np.abs(x1s).max(), np.abs(y1s).max()), F.sigma, True)
    r2 = _rate(params.A2, max(np.abs(x2s).max(), np.abs(y2s).max()), F.sigma, True)
    w1, w2, vals = _nodes(F, rule, r1, r2)
    li = np.conj(kernel_complex(inv.A1, w1[:, None], y1s[None, :]))
    lj = np.conj(kernel_complex(inv.A2, w2[:, None], y2s[None, :]))
    rj = kernel_complex(inv.A2, w2[:, None], x2s[None, :])
    ri = kernel_complex(inv.A1, w1[:, None], x1s[None, :])
    return sandwich_sum(vals, li, lj, rj, ri)


def qlct_gen_translate(F: SpectrumFn, params: LCTParams, x, y,
                       rule: QuadratureRule = DEFAULT_RULE) -> Quaternion:
    out = qlct_translate_pairs(F, params, [y[0]], [x[0]], [y[1]], [x[1]], rule)
    return Quaternion.from_array(out[0, 0])


def qlct_forward_grid(f, params: LCTParams, box: float, w1s, w2s,
                      rule: QuadratureRule = DEFAULT_RULE) -> np.ndarray:
    """``int f(x) K^i_{A1}(x1, w1) K^j_{A2}(x2, w2) dx`` over ``[-box, box]^2``.

    ``f(x1, x2)`` returns ``(..., 4)``; only meant for smooth functions that
    are negligible outside the box.
    """
    w1s = np.atleast_1d(np.asarray(w1s, float))
    w2s = np.atleast_1d(np.asarray(w2s, float))
    A1, A2 = params.A1, params.A2
    r1 = (abs(A1.a) * box + np.abs(w1s).max()) / abs(A1.b)
    r2 = (abs(A2.a) * box + np.abs(w2s).max()) / abs(A2.b)
    x1, a1 = rule.axis_nodes(-box, box, rate=r1, cell_width=2 * box)
    x2, a2 = rule.axis_nodes(-box, box, rate=r2, cell_width=2 * box)
    vals = np.asarray(f(x1[:, None], x2[None, :]), float) * (a1[:, None] * a2[None, :])[..., None]
    ri = kernel_complex(A1, x1[:, None], w1s[None, :])
    rj = kernel_complex(A2, x2[:, None], w2s[None, :])
    return forward_sum(vals, ri, rj)


# -- sampling theorem -------------------------------------------------------------

def _const_response(q):
    q = np.asarray(q, float)

    def h(w1, w2):
        return np.broadcast_to(q, np.broadcast(np.asarray(w1), np.asarray(w2)).shape + (4,))
    return h


IDENTITY_RESPONSE = _const_response([1.0, 0.0, 0.0, 0.0])


class QLCTInterpolant:
    """``Y_A = T^2 |b1 b2| H^-1`` on the band and the translates ``y(x [-] n b T)``."""

    def __init__(self, params: LCTParams, H, sigma: float,
                 rule: QuadratureRule = DEFAULT_RULE, lattice: int = 16):
        self.params = params
        self.H = H
        self.sigma = float(sigma)
        self.rule = rule
        self.T = math.pi / self.sigma
        self.scale = self.T ** 2 * abs(params.A1.b * params.A2.b)
        g = np.linspace(-self.sigma, self.sigma, lattice)
        vals = np.asarray(H(g[:, None], g[None, :]), float)
        if np.any(np.linalg.norm(vals, axis=-1) < 1e-300):
            raise InadmissibleFilterError("filter response vanishes on the verification lattice")
        self.spectrum = SpectrumFn(self.sigma, self._y_spec)

    def _y_spec(self, w1, w2):
        h = np.asarray(self.H(w1, w2), float)
        try:
            return self.scale * qinv(h)
        except QuaternionDomainError as err:
            raise InadmissibleFilterError(str(err)) from err

    def translates(self, n1s, x1s, n2s, x2s) -> np.ndarray:
        """``(len n1, len x1, len n2, len x2, 4)`` array of ``y(x [-] n b T)``."""
        n1s, x1s, n2s, x2s = (np.atleast_1d(np.asarray(v, float)) for v in (n1s, x1s, n2s, x2s))
        b1, b2 = self.params.A1.b, self.params.A2.b
        out = qlct_translate_pairs(self.spectrum, self.params,
                                   np.repeat(n1s * b1 * self.T, x1s.size), np.tile(x1s, n1s.size),
                                   np.repeat(n2s * b2 * self.T, x2s.size), np.tile(x2s, n2s.size),
                                   self.rule)
        return out.reshape(n1s.size, x1s.size, n2s.size, x2s.size, 4)


def qlct_interpolant(params: LCTParams, H, sigma: float,
                     rule: QuadratureRule = DEFAULT_RULE) -> QLCTInterpolant:
    return QLCTInterpolant(params, H, sigma, rule)


def qlct_samples(F: SpectrumFn, params: LCTParams, H, N: int,
                 rule: QuadratureRule = DEFAULT_RULE) -> np.ndarray:
    """``g(n1 b1 T, n2 b2 T)`` for ``|n| <= N`` as ``(2N+1, 2N+1, 4)``."""
    T = math.pi / F.sigma
    n = np.arange(-N, N + 1)
    G = SpectrumFn(F.sigma, lambda w1, w2: qmul(F(w1, w2), H(w1, w2)), breaks=F.breaks)
    return qlct_synthesize_grid(G, params, n * params.A1.b * T, n * params.A2.b * T, rule)


def qlct_reconstruct_grid(F: SpectrumFn, params: LCTParams, H, N: int, x1s, x2s,
                          rule: QuadratureRule = DEFAULT_RULE, chunk: int = 16) -> np.ndarray:
    """Truncated single-channel expansion, sample value on the left."""
    x1s = np.atleast_1d(np.asarray(x1s, float))
    x2s = np.atleast_1d(np.asarray(x2s, float))
    interp = qlct_interpolant(params, H, F.sigma, rule)
    g = qlct_samples(F, params, H, N, rule)[:, None, :, None, :]
    n = np.arange(-N, N + 1)
    out = np.zeros((x1s.size, x2s.size, 4))
    for start in range(0, x2s.size, chunk):
        sl = slice(start, min(start + chunk, x2s.size))
        y = interp.translates(n, x1s, n, x2s[sl])
        out[:, sl] = qmul(g, y).sum(axis=(0, 2))
    return out


def qlct_reconstruct(F: SpectrumFn, params: LCTParams, H, N: int, x,
                     rule: QuadratureRule = DEFAULT_RULE) -> Quaternion:
    return Quaternion.from_array(qlct_reconstruct_grid(F, params, H, N, [x[0]], [x[1]], rule)[0, 0])


def basis_gram(params: LCTParams, sigma: float, n_max: int,
               rule: QuadratureRule = DEFAULT_RULE) -> np.ndarray:
    """Quaternion Gram matrix ``<phi_m, phi_n> = int_I phi_m conj(phi_n)``.

    ``phi_n = T |b1 b2|^{1/2} conj(K^j(w2, n2 b2 T) K^i(w1, n1 b1 T))`` with
    inverse-parameter kernels.  Rows and columns run over ``(n1, n2)``
    row-major, ``|n| <= n_max``; the result has shape ``(K, K, 4)``.
    """
    T = math.pi / sigma
    inv = params.inverse()
    n = np.arange(-n_max, n_max + 1)
    size = n.size
    m_idx = np.repeat(n, size)
    n_idx = np.tile(n, size)
    b1, b2 = params.A1.b, params.A2.b
    rate1 = 2 * n_max * T + 2 * abs(params.A1.d) * sigma / abs(b1)
    rate2 = 2 * n_max * T + 2 * abs(params.A2.d) * sigma / abs(b2)
    w1, a1 = rule.axis_nodes(-sigma, sigma, rate=rate1, cell_width=2 * sigma)
    w2, a2 = rule.axis_nodes(-sigma, sigma, rate=rate2, cell_width=2 * sigma)
    vals = np.zeros((w1.size, w2.size, 4))
    vals[..., 0] = a1[:, None] * a2[None, :]
    # phi_m conj(phi_n) = c^2 conj(K^i_m) conj(K^j_m) K^j_n K^i_n
    li = np.conj(kernel_complex(inv.A1, w1[:, None], (m_idx * b1 * T)[None, :]))
    ri = kernel_complex(inv.A1, w1[:, None], (n_idx * b1 * T)[None, :])
    lj = np.conj(kernel_complex(inv.A2, w2[:, None], (m_idx * b2 * T)[None, :]))
    rj = kernel_complex(inv.A2, w2[:, None], (n_idx * b2 * T)[None, :])
    g = sandwich_sum(vals, li, lj, rj, ri) * (T * T * abs(b1 * b2))
    # g[(m1, n1), (m2, n2)] -> G[(m1, m2), (n1, n2)]
    g = g.reshape(size, size, size, size, 4).transpose(0, 2, 1, 3, 4)
    return g.reshape(size * size, size * size, 4)


# -- erf closed form ---------------------------------------------------------------

def erf_formula_interpolant(params: LCTParams, sigma: float, n, x) -> Quaternion:
    """Candidate closed form ``rho1 + rho2 rho3`` for ``y(x [-] n b T)`` with ``H = 1``.

    Kept only for comparison against quadrature; it is not used for
    reconstruction.  Requires ``d1 != 0``.
    """
    A1, A2 = params.A1, params.A2
    a1, b1, d1 = A1.a, A1.b, A1.d
    a2, b2 = A2.a, A2.b
    if d1 == 0:
        raise UnsupportedParameterError("the erf closed form needs d1 != 0")
    T = math.pi / sigma
    n1, n2 = float(n[0]), float(n[1])
    x1, x2 = float(x[0]), float(x[1])
    chirp2 = a2 * b2 * n2 * n2 * T * T / 2 - a2 * x2 * x2 / (2 * b2)
    s2 = math.sin(n2 * math.pi - math.pi * x2 * x2 / (b2 * T)) / (n2 * b2 * T - x2)
    s1 = math.sin(n1 * math.pi - math.pi * x1 * x1 / (b1 * T)) / (n1 * b1 * T - x1)
    amp1 = T * T * b1 * abs(b2) / math.pi ** 2 * math.cos(chirp2) * s1 * s2
    ph1 = a1 * b1 * n1 * n1 * T * T / 2 - a1 * x1 * x1 / (2 * b1)
    rho1 = np.array([amp1 * math.cos(ph1), amp1 * math.sin(ph1), 0.0, 0.0])
    k = abs(b1 * b2) ** -0.5 / (2 * T)
    rho2 = (erf(k * (2 * d1 * math.pi - b1 * n1 * T * T - x1 * T))
            + erf(k * (2 * d1 * math.pi + b1 * n1 * T * T + x1 * T)))
    amp3 = (abs(b1) / math.pi) ** 1.5 * T * T * abs(d1) ** -0.5 / 4 * math.sin(chirp2) * s2
    ph3 = (a1 * b1 * n1 * n1 * T * T / 2 + a1 * x1 * x1 / (2 * b1)
           - (b1 * n1 * T + x1) ** 2 / (4 * b1 * d1))
    # amp3 e^{i ph3} j
    rho3 = qmul(np.array([math.cos(ph3), math.sin(ph3), 0.0, 0.0]), np.array([0.0, 0.0, 1.0, 0.0])) * amp3
    return Quaternion.from_array(rho1 + rho2 * rho3)
