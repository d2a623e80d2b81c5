"""Right-sided quaternion Fourier transform, generalized translation and
convolution.

The continuous transform pair is

    F(w) = 1/(2 pi) * int f(x) e^{-i w1 x1} e^{-j w2 x2} dx
    f(x) = 1/(2 pi) * int F(w) e^{ j w2 x2} e^{ i w1 x1} dw

and the generalized translation of a signal with spectrum ``F`` is

    f(x1 (-) y1, x2 (-) y2) =
        1/(2 pi) * int e^{-i w1 y1} e^{-j w2 y2} F(w) e^{j w2 x2} e^{i w1 x1} dw.

Bandlimited signals are handled through their spectrum (:class:`SpectrumFn`)
and every continuous operation is a composite Gauss-Legendre quadrature over
the band ``[-sigma, sigma]^2``.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .planar import sandwich_sum
from .quadrature import DEFAULT_RULE, QuadratureRule
from .quaternion import Quaternion, as_quat_array, from_complex, qmul

INV_2PI = 1.0 / (2.0 * math.pi)


# -- discrete transform ------------------------------------------------------

_MAGIC = b"QG2D"
_HEADER = struct.Struct("<4sIIdddd")


@dataclass
class QuatGrid2D:
    """Quaternion samples on a uniform rectangular grid.

    ``values[i1, i2]`` is the sample at ``origin + (i1*dx1, i2*dx2)``.
    """

    values: np.ndarray
    spacing: tuple = (1.0, 1.0)
    origin: tuple = (0.0, 0.0)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 3 or self.values.shape[-1] != 4:
            raise ValueError(f"values must be (n1, n2, 4), got {self.values.shape}")
        if min(self.spacing) <= 0:
            raise ValueError("grid spacing must be positive")
        self.spacing = tuple(float(s) for s in self.spacing)
        self.origin = tuple(float(o) for o in self.origin)

    @property
    def n1(self) -> int:
        return self.values.shape[0]

    @property
    def n2(self) -> int:
        return self.values.shape[1]

    def coords(self):
        x1 = self.origin[0] + self.spacing[0] * np.arange(self.n1)
        x2 = self.origin[1] + self.spacing[1] * np.arange(self.n2)
        return x1, x2

    def to_bytes(self) -> bytes:
        head = _HEADER.pack(_MAGIC, self.n1, self.n2, *self.spacing, *self.origin)
        return head + self.values.astype("<f8").tobytes(order="C")

    @classmethod
    def from_bytes(cls, data: bytes) -> "QuatGrid2D":
        if len(data) < _HEADER.size:
            raise ValueError("truncated QG2D header")
        magic, n1, n2, d1, d2, o1, o2 = _HEADER.unpack_from(data)
        if magic != _MAGIC:
            raise ValueError(f"bad magic {magic!r}")
        body = data[_HEADER.size:]
        if len(body) != n1 * n2 * 4 * 8:
            raise ValueError(
                f"expected {n1 * n2 * 32} payload bytes, got {len(body)}")
        values = np.frombuffer(body, dtype="<f8").reshape(n1, n2, 4).astype(float)
        return cls(values, (d1, d2), (o1, o2))

    def save(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_bytes())

    @classmethod
    def load(cls, path) -> "QuatGrid2D":
        with open(path, "rb") as fh:
            return cls.from_bytes(fh.read())


def _i_pass(v, inverse):
    # right multiplication by e^{-+ i theta}: v = d1 + j d2, d in span{1, i}
    fft = np.fft.ifft if inverse else np.fft.fft
    d1 = fft(v[..., 0] + 1j * v[..., 1], axis=0, norm="ortho")
    d2 = fft(v[..., 2] - 1j * v[..., 3], axis=0, norm="ortho")
    return np.stack([d1.real, d1.imag, d2.real, -d2.imag], axis=-1)


def _j_pass(v, inverse):
    # right multiplication by e^{-+ j theta}: v = c1 + i c2, c in span{1, j}
    fft = np.fft.ifft if inverse else np.fft.fft
    c1 = fft(v[..., 0] + 1j * v[..., 2], axis=1, norm="ortho")
    c2 = fft(v[..., 1] + 1j * v[..., 3], axis=1, norm="ortho")
    return np.stack([c1.real, c2.real, c1.imag, c2.imag], axis=-1)


def dqft_array(values: np.ndarray) -> np.ndarray:
    """Unitary discrete right-sided QFT of an ``(n1, n2, 4)`` array.

    ``F[k] = (n1 n2)^-1/2 sum_x f[x] e^{-2 pi i k1 x1/n1} e^{-2 pi j k2 x2/n2}``
    """
    return _j_pass(_i_pass(np.asarray(values, dtype=float), False), False)


def idqft_array(values: np.ndarray) -> np.ndarray:
    return _i_pass(_j_pass(np.asarray(values, dtype=float), True), True)


def dqft(f: QuatGrid2D) -> QuatGrid2D:
    spacing = (2 * math.pi / (f.n1 * f.spacing[0]),
               2 * math.pi / (f.n2 * f.spacing[1]))
    return QuatGrid2D(dqft_array(f.values), spacing)


def idqft(F: QuatGrid2D) -> QuatGrid2D:
    spacing = (2 * math.pi / (F.n1 * F.spacing[0]),
               2 * math.pi / (F.n2 * F.spacing[1]))
    return QuatGrid2D(idqft_array(F.values), spacing)


# -- bandlimited spectra -------------------------------------------------------

@dataclass(frozen=True)
class SpectrumFn:
    """A quaternion spectrum supported on ``[-sigma, sigma]^2``.

    ``func(w1, w2)`` must accept broadcastable float arrays and return an
    array of shape ``broadcast(w1, w2).shape + (4,)``.  Values outside the
    band are forced to zero.  ``breaks`` lists frequencies (either axis) where
    ``func`` is not smooth; quadrature panels are aligned with them.
    """

    sigma: float
    func: Callable = field(repr=False)
    breaks: tuple = ()

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    def __call__(self, w1, w2) -> np.ndarray:
        w1 = np.asarray(w1, dtype=float)
        w2 = np.asarray(w2, dtype=float)
        out = np.asarray(self.func(w1, w2), dtype=float)
        shape = np.broadcast(w1, w2).shape + (4,)
        out = np.broadcast_to(out, shape).copy()
        inside = (np.abs(w1) <= self.sigma) & (np.abs(w2) <= self.sigma)
        out[~np.broadcast_to(inside, shape[:-1])] = 0.0
        return out

    def at(self, w1: float, w2: float) -> Quaternion:
        return Quaternion.from_array(self(w1, w2))

    @classmethod
    def constant(cls, q, sigma: float) -> "SpectrumFn":
        qa = as_quat_array(q)
        return cls(sigma, lambda w1, w2: np.broadcast_to(
            qa, np.broadcast(w1, w2).shape + (4,)))


def spectrum_nodes(F: SpectrumFn, rule: QuadratureRule, rate1=0.0, rate2=0.0,
                   extra_breaks=()):
    """Tensor quadrature over ``[-sigma, sigma]^2``: ``(w1, a1, w2, a2)``."""
    s = F.sigma
    breaks = tuple(F.breaks) + tuple(extra_breaks)
    w1, a1 = rule.axis_nodes(-s, s, rate=rate1, breaks=breaks)
    w2, a2 = rule.axis_nodes(-s, s, rate=rate2, breaks=breaks)
    return w1, a1, w2, a2


def weighted_values(F, w1, a1, w2, a2):
    vals = F(w1[:, None], w2[None, :])
    return vals * (a1[:, None] * a2[None, :])[..., None]


def synthesize_grid(F: SpectrumFn, x1s, x2s, rule: QuadratureRule = DEFAULT_RULE):
    """Inverse QFT of ``F`` on the tensor grid ``x1s x x2s``."""
    x1s = np.atleast_1d(np.asarray(x1s, dtype=float))
    x2s = np.atleast_1d(np.asarray(x2s, dtype=float))
    w1, a1, w2, a2 = spectrum_nodes(F, rule, np.abs(x1s).max(), np.abs(x2s).max())
    vals = weighted_values(F, w1, a1, w2, a2)
    out = sandwich_sum(vals, rj=np.exp(1j * np.outer(w2, x2s)),
                       ri=np.exp(1j * np.outer(w1, x1s)))
    return INV_2PI * out


def synthesize(F: SpectrumFn, x, rule: QuadratureRule = DEFAULT_RULE) -> Quaternion:
    """``f(x) = 1/(2 pi) int_I F(w) e^{j w2 x2} e^{i w1 x1} dw`` at one point."""
    return Quaternion.from_array(synthesize_grid(F, [x[0]], [x[1]], rule)[0, 0])


def translate_pairs(F: SpectrumFn, y1s, x1s, y2s, x2s,
                    rule: QuadratureRule = DEFAULT_RULE):
    """Generalized translates ``f(x1 (-) y1, x2 (-) y2)`` for paired axes.

    ``(y1s[p], x1s[p])`` and ``(y2s[q], x2s[q])`` are paired elementwise; the
    result has shape ``(P, Q, 4)``.
    """
    y1s, x1s = np.broadcast_arrays(np.atleast_1d(y1s).astype(float),
                                   np.atleast_1d(x1s).astype(float))
    y2s, x2s = np.broadcast_arrays(np.atleast_1d(y2s).astype(float),
                                   np.atleast_1d(x2s).astype(float))
    rate1 = float(np.max(np.abs(x1s) + np.abs(y1s)))
    rate2 = float(np.max(np.abs(x2s) + np.abs(y2s)))
    w1, a1, w2, a2 = spectrum_nodes(F, rule, rate1, rate2)
    vals = weighted_values(F, w1, a1, w2, a2)
    out = sandwich_sum(vals,
                       li=np.exp(-1j * np.outer(w1, y1s)),
                       lj=np.exp(-1j * np.outer(w2, y2s)),
                       rj=np.exp(1j * np.outer(w2, x2s)),
                       ri=np.exp(1j * np.outer(w1, x1s)))
    return INV_2PI * out


def gen_translate(F: SpectrumFn, x, y, rule: QuadratureRule = DEFAULT_RULE) -> Quaternion:
    """Generalized translation at one point, multiplying the four factors of
    the integrand node by node in the order written."""
    rate1 = abs(x[0]) + abs(y[0])
    rate2 = abs(x[1]) + abs(y[1])
    w1, a1, w2, a2 = spectrum_nodes(F, rule, rate1, rate2)
    W1, W2 = np.meshgrid(w1, w2, indexing="ij")
    left = qmul(from_complex(np.exp(-1j * W1 * y[0]), "i"),
                from_complex(np.exp(-1j * W2 * y[1]), "j"))
    right = qmul(from_complex(np.exp(1j * W2 * x[1]), "j"),
                 from_complex(np.exp(1j * W1 * x[0]), "i"))
    integrand = qmul(qmul(left, F(W1, W2)), right)
    wts = a1[:, None] * a2[None, :]
    total = np.einsum("ab,abc->c", wts, integrand)
    return Quaternion.from_array(INV_2PI * total)


def gen_convolve(F: SpectrumFn, H: SpectrumFn) -> SpectrumFn:
    """Spectrum ``G = F H`` of the generalized convolution (F on the left)."""
    sigma = min(F.sigma, H.sigma)
    breaks = tuple(sorted(set(F.breaks) | set(H.breaks)))
    return SpectrumFn(sigma, lambda w1, w2: qmul(F(w1, w2), H(w1, w2)), breaks)


@dataclass(frozen=True)
class ConvolutionResult:
    value: Quaternion
    half_width: float
    tail_estimate: float
    warning: bool


def convolve_spatial(F: SpectrumFn, H: SpectrumFn, x,
                     rule: QuadratureRule = DEFAULT_RULE, *,
                     half_width: float = 16.0, tol: float = 1e-6) -> ConvolutionResult:
    """``1/(2 pi) int f(y) h(x1 (-) y1, x2 (-) y2) dy`` over ``[-L, L]^2``.

    ``f`` and the translates of ``h`` are synthesized from their spectra.
    The neglected tail is bounded by an O(1/|y|^2) envelope fitted to the
    integrand on the outermost panels; ``warning`` is set when that estimate
    exceeds ``0.1 * tol``.
    """
    L = float(half_width)
    rate = F.sigma + H.sigma
    y, wy = rule.axis_nodes(-L, L, rate=rate, breaks=(-L / 2, L / 2),
                            cell_width=L)
    f = synthesize_grid(F, y, y, rule)
    h = translate_pairs(H, y, np.full_like(y, x[0]), y, np.full_like(y, x[1]), rule)
    integrand = qmul(f, h) * (wy[:, None] * wy[None, :])[..., None]
    value = INV_2PI * integrand.sum(axis=(0, 1))

    edge = rule.order
    ring = np.zeros(y.shape, dtype=bool)
    ring[:edge] = True
    ring[-edge:] = True
    outer = ring[:, None] | ring[None, :]
    envelope = float(np.max(np.linalg.norm(qmul(f, h)[outer], axis=-1)))
    tail = INV_2PI * envelope * 4.0 * (2.0 * L) * L
    return ConvolutionResult(Quaternion.from_array(value), L, tail, tail > 0.1 * tol)
