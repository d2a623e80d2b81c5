"""Multichannel generalized sampling expansion for QFT-bandlimited signals.

With ``M = m^2`` channels, sampling period ``T = m pi / sigma`` and cell
width ``c = 2 sigma / m = 2 pi / T``, the band ``I = [-sigma, sigma]^2`` is cut
into the cells ``I_{n1 n2}``.  For ``w`` in the base cell ``I_11`` the system
matrix ``H(w)`` has rows indexed by the cell ``(n1, n2)`` (row-major) and
columns by the channel ``k``::

    H(w)[(n1, n2), k] = H_k(w1 + (n1-1) c, w2 + (n2-1) c)

Row ``k`` of ``H(w)^-1``, reshaped to ``m x m``, gives the blocks
``q^k_{n1 n2}(w)``; translated into their cells and scaled by ``T^2/(2 pi)``
they form the interpolation spectrum ``Y_k``.  A signal is recovered as

    f(x) = sum_k sum_n g_k(n1 T, n2 T) y_k(x1 (-) n1 T, x2 (-) n2 T)

with the sample on the left of the interpolant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import linalg
from .planar import sandwich_sum
from .qft import INV_2PI, SpectrumFn, synthesize_grid
from .quadrature import DEFAULT_RULE, QuadratureRule
from .quaternion import Quaternion, qmul


class FilterBankError(ValueError):
    """The system matrix is singular somewhere on the base cell."""


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class SpectralPartition:
    sigma: float
    m: int

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if int(self.m) != self.m or self.m < 1:
            raise ValueError("m must be a positive integer")

    @property
    def M(self) -> int:
        return self.m * self.m

    @property
    def T(self) -> float:
        return self.m * math.pi / self.sigma

    @property
    def c(self) -> float:
        return 2.0 * self.sigma / self.m

    def cell(self, n1: int, n2: int):
        """Bounds ``((lo1, hi1), (lo2, hi2))`` of ``I_{n1 n2}`` (1-based)."""
        s, c = self.sigma, self.c
        return ((-s + (n1 - 1) * c, -s + n1 * c), (-s + (n2 - 1) * c, -s + n2 * c))

    def cells(self):
        return {(n1, n2): self.cell(n1, n2)
                for n1 in range(1, self.m + 1) for n2 in range(1, self.m + 1)}

    def in_base_cell(self, w1, w2, tol=1e-12) -> bool:
        (a1, b1), (a2, b2) = self.cell(1, 1)
        return (a1 - tol <= w1 <= b1 + tol) and (a2 - tol <= w2 <= b2 + tol)


def build_partition(sigma: float, m: int) -> SpectralPartition:
    return SpectralPartition(float(sigma), int(m))


@dataclass(frozen=True)
class FilterBank:
    """Channel responses ``H_k`` on the band, plus optional extras.

    ``interp_override`` replaces the spectra ``T^2/(2 pi) q~^k`` by given
    evaluators (needed when ``H^-1`` is not square integrable but a different
    interpolation spectrum works on the signal band).  ``closed_form`` maps
    ``(k, n1s, x1s, n2s, x2s, T)`` to the array of ``y_k(x (-) nT)``.
    """

    name: str
    responses: tuple
    m: int
    sigma: float
    signal_sigma: Optional[float] = None
    breaks: tuple = ()
    interp_override: Optional[tuple] = None
    closed_form: Optional[Callable] = field(default=None, repr=False)
    params: tuple = ()

    def __post_init__(self):
        if len(self.responses) != self.m * self.m:
            raise ValueError(f"need {self.m * self.m} responses, got {len(self.responses)}")

    @property
    def M(self) -> int:
        return self.m * self.m

    def partition(self) -> SpectralPartition:
        return build_partition(self.sigma, self.m)

    def response(self, k: int, w1, w2) -> np.ndarray:
        w1 = np.asarray(w1, dtype=float)
        w2 = np.asarray(w2, dtype=float)
        out = np.asarray(self.responses[k](w1, w2), dtype=float)
        return np.broadcast_to(out, np.broadcast(w1, w2).shape + (4,))


def _check(bank: FilterBank, part: SpectralPartition):
    if bank.m != part.m:
        raise ConfigurationError(f"bank has m={bank.m}, partition m={part.m}")


def system_matrices(bank: FilterBank, part: SpectralPartition, w1, w2) -> np.ndarray:
    """Batched system matrix at base-cell points; shape ``(..., M, M, 4)``."""
    _check(bank, part)
    w1 = np.asarray(w1, dtype=float)
    w2 = np.asarray(w2, dtype=float)
    shape = np.broadcast(w1, w2).shape
    m, c = part.m, part.c
    out = np.empty(shape + (part.M, part.M, 4))
    for n1 in range(m):
        for n2 in range(m):
            r = n1 * m + n2
            for k in range(part.M):
                out[..., r, k, :] = bank.response(k, w1 + n1 * c, w2 + n2 * c)
    return out


def system_matrix(bank: FilterBank, part: SpectralPartition, w) -> np.ndarray:
    if not part.in_base_cell(w[0], w[1]):
        raise ValueError(f"{w} lies outside the base cell {part.cell(1, 1)}")
    return system_matrices(bank, part, w[0], w[1])


def _pattern_breaks(part: SpectralPartition, breaks):
    """Map absolute breakpoints into the base cell (same pattern per cell)."""
    lo, c = -part.sigma, part.c
    out = set()
    for b in breaks:
        r = (b - lo) % c
        if 1e-12 < r < c - 1e-12:
            out.add(lo + r)
    return tuple(sorted(out))


def base_cell_nodes(part: SpectralPartition, rule: QuadratureRule,
                    rate1: float, rate2: float, breaks=()):
    """Quadrature nodes on ``I_11``; every other cell reuses them shifted."""
    (lo1, hi1), (lo2, hi2) = part.cell(1, 1)
    pb = _pattern_breaks(part, breaks)
    w1, a1 = rule.axis_nodes(lo1, hi1, rate=rate1, breaks=pb)
    w2, a2 = rule.axis_nodes(lo2, hi2, rate=rate2, breaks=pb)
    return w1, a1, w2, a2


def band_nodes(part, rule, rate1, rate2, breaks=()):
    """Cell-aligned nodes over the whole band."""
    w1, a1, w2, a2 = base_cell_nodes(part, rule, rate1, rate2, breaks)
    shifts = part.c * np.arange(part.m)
    return ((w1[None, :] + shifts[:, None]).ravel(), np.tile(a1, part.m),
            (w2[None, :] + shifts[:, None]).ravel(), np.tile(a2, part.m))


def check_admissible(bank: FilterBank, part: SpectralPartition, lattice: int = 16):
    """Invert ``H`` on a ``lattice x lattice`` grid spanning the closed base cell."""
    (lo1, hi1), (lo2, hi2) = part.cell(1, 1)
    g1 = np.linspace(lo1, hi1, lattice)
    g2 = np.linspace(lo2, hi2, lattice)
    mats = system_matrices(bank, part, g1[:, None], g2[None, :])
    try:
        linalg.invert(mats)
    except linalg.SingularMatrixError as err:
        a, b = err.index[:2]
        raise FilterBankError(
            f"filter bank not admissible: H singular at w=({g1[a]:.6g}, {g2[b]:.6g})"
        ) from err


# -- channel samples ----------------------------------------------------------

@dataclass
class ChannelSamples:
    """``values[k, n1 + N, n2 + N]`` holds ``g_k(n1 T, n2 T)``."""

    values: np.ndarray
    N: int
    partition: SpectralPartition

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    def at(self, k: int, n1: int, n2: int) -> Quaternion:
        return Quaternion.from_array(self.values[k, n1 + self.N, n2 + self.N])


def _signal_breaks(F: SpectrumFn, bank: FilterBank):
    return tuple(bank.breaks) + tuple(F.breaks) + (-F.sigma, F.sigma)


def channel_samples(F: SpectrumFn, bank: FilterBank, part: SpectralPartition,
                    N: int, rule: QuadratureRule = DEFAULT_RULE, *,
                    folded: bool = False) -> ChannelSamples:
    """Samples ``g_k(nT)`` for ``|n1|, |n2| <= N``.

    By default each sample is the full-band integral
    ``1/(2 pi) int_I F H_k e^{j w2 n2 T} e^{i w1 n1 T} dw``.  With
    ``folded=True`` the band is first folded onto ``I_11``,
    ``G~_k = sum_l F(w + (l-1)c) H_k(w + (l-1)c)``, and integrated there.
    """
    _check(bank, part)
    if F.sigma > part.sigma * (1 + 1e-12):
        raise ConfigurationError("signal band exceeds the partition band")
    n = np.arange(-N, N + 1)
    t = n * part.T
    rate = N * part.T
    breaks = _signal_breaks(F, bank)
    out = np.empty((part.M, n.size, n.size, 4))
    if not folded:
        w1, a1, w2, a2 = band_nodes(part, rule, rate, rate, breaks)
        fv = F(w1[:, None], w2[None, :])
        wts = (a1[:, None] * a2[None, :])[..., None]
        rj = np.exp(1j * np.outer(w2, t))
        ri = np.exp(1j * np.outer(w1, t))
        for k in range(part.M):
            g = qmul(fv, bank.response(k, w1[:, None], w2[None, :])) * wts
            out[k] = INV_2PI * sandwich_sum(g, rj=rj, ri=ri)
        return ChannelSamples(out, N, part)

    w1, a1, w2, a2 = base_cell_nodes(part, rule, rate, rate, breaks)
    wts = (a1[:, None] * a2[None, :])[..., None]
    rj = np.exp(1j * np.outer(w2, t))
    ri = np.exp(1j * np.outer(w1, t))
    c = part.c
    for k in range(part.M):
        folded_g = np.zeros((w1.size, w2.size, 4))
        for l1 in range(part.m):
            for l2 in range(part.m):
                s1 = w1[:, None] + l1 * c
                s2 = w2[None, :] + l2 * c
                folded_g += qmul(F(s1, s2), bank.response(k, s1, s2))
        out[k] = INV_2PI * sandwich_sum(folded_g * wts, rj=rj, ri=ri)
    return ChannelSamples(out, N, part)


# -- interpolants ---------------------------------------------------------------

class InterpolantSet:
    """Interpolation spectra ``Y_k`` and the translates ``y_k(x (-) nT)``.

    ``source`` is ``"closed-form"`` when the bank registers one (and it is
    used for :meth:`translates`) or ``"quadrature"`` otherwise.
    """

    def __init__(self, bank: FilterBank, part: SpectralPartition,
                 rule: QuadratureRule = DEFAULT_RULE, prefer_closed_form: bool = True):
        _check(bank, part)
        self.bank = bank
        self.partition = part
        self.rule = rule
        use_closed = prefer_closed_form and bank.closed_form is not None
        self.source = "closed-form" if use_closed else "quadrature"

    # q^k_{l1 l2}(w) for w in I_11, shape (m, m, ..., 4)
    def blocks(self, k: int, w1, w2) -> np.ndarray:
        part, bank = self.partition, self.bank
        w1 = np.asarray(w1, dtype=float)
        w2 = np.asarray(w2, dtype=float)
        shape = np.broadcast(w1, w2).shape
        m, c = part.m, part.c
        out = np.empty((m, m) + shape + (4,))
        if bank.interp_override is not None:
            scale = 2.0 * math.pi / part.T ** 2
            for l1 in range(m):
                for l2 in range(m):
                    out[l1, l2] = scale * np.broadcast_to(
                        bank.interp_override[k](w1 + l1 * c, w2 + l2 * c), shape + (4,))
            return out
        q = linalg.invert(system_matrices(bank, part, w1, w2))
        for l1 in range(m):
            for l2 in range(m):
                out[l1, l2] = q[..., k, l1 * m + l2, :]
        return out

    def spectrum(self, k: int) -> SpectrumFn:
        """``Y_k`` as an evaluator on the band (one inversion per point)."""
        part = self.partition
        s, c, m = part.sigma, part.c, part.m

        def func(w1, w2):
            w1, w2 = np.broadcast_arrays(np.asarray(w1, float), np.asarray(w2, float))
            n1 = np.clip(np.floor((w1 + s) / c), 0, m - 1).astype(int)
            n2 = np.clip(np.floor((w2 + s) / c), 0, m - 1).astype(int)
            b = self.blocks(k, w1 - n1 * c, w2 - n2 * c)
            out = np.zeros(w1.shape + (4,))
            for l1 in range(m):
                for l2 in range(m):
                    sel = (n1 == l1) & (n2 == l2)
                    out[sel] = b[l1, l2][sel]
            return part.T ** 2 * INV_2PI * out

        return SpectrumFn(s, func, breaks=tuple(self.bank.breaks)
                          + tuple(-s + c * np.arange(1, m)))

    def translates(self, k: int, n1s, x1s, n2s, x2s) -> np.ndarray:
        """``y_k(x1 (-) n1 T, x2 (-) n2 T)`` as ``(len n1, len x1, len n2, len x2, 4)``."""
        if self.source == "closed-form":
            return self.translates_closed(k, n1s, x1s, n2s, x2s)
        return self.translates_quadrature(k, n1s, x1s, n2s, x2s)

    def translates_closed(self, k, n1s, x1s, n2s, x2s):
        if self.bank.closed_form is None:
            raise ConfigurationError(f"bank {self.bank.name!r} has no closed form")
        return self.bank.closed_form(k, np.asarray(n1s, float), np.asarray(x1s, float),
                                     np.asarray(n2s, float), np.asarray(x2s, float),
                                     self.partition.T)

    def translates_quadrature(self, k, n1s, x1s, n2s, x2s):
        """Base-cell form: ``T^2/(4 pi^2) int_{I_11} e^{-i w1 n1 T} e^{-j w2 n2 T}
        sum_l q^k_l(w) e^{j (w2 + (l2-1)c) x2} e^{i (w1 + (l1-1)c) x1} dw``."""
        part = self.partition
        T, c, m = part.T, part.c, part.m
        n1s, x1s, n2s, x2s = (np.atleast_1d(np.asarray(a, float))
                              for a in (n1s, x1s, n2s, x2s))
        rate1 = np.abs(x1s).max() + np.abs(n1s).max() * T
        rate2 = np.abs(x2s).max() + np.abs(n2s).max() * T
        w1, a1, w2, a2 = base_cell_nodes(part, self.rule, rate1, rate2, self.bank.breaks)
        q = self.blocks(k, w1[:, None], w2[None, :]) * (a1[:, None] * a2[None, :])[..., None]
        y1 = np.repeat(n1s * T, x1s.size)
        px1 = np.tile(x1s, n1s.size)
        y2 = np.repeat(n2s * T, x2s.size)
        px2 = np.tile(x2s, n2s.size)
        li = np.exp(-1j * np.outer(w1, y1))
        lj = np.exp(-1j * np.outer(w2, y2))
        total = 0.0
        for l1 in range(m):
            ri = np.exp(1j * np.outer(w1 + l1 * c, px1))
            for l2 in range(m):
                rj = np.exp(1j * np.outer(w2 + l2 * c, px2))
                total = total + sandwich_sum(q[l1, l2], li, lj, rj, ri)
        total = total * (T * T / (4.0 * math.pi ** 2))
        return total.reshape(n1s.size, x1s.size, n2s.size, x2s.size, 4)


def interpolation_spectra(bank: FilterBank, part: SpectralPartition,
                          rule: QuadratureRule = DEFAULT_RULE,
                          prefer_closed_form: bool = True) -> InterpolantSet:
    """Validate the bank on a 16x16 lattice of ``I_11`` and build its interpolants."""
    _check(bank, part)
    if bank.interp_override is None:
        check_admissible(bank, part)
    return InterpolantSet(bank, part, rule, prefer_closed_form)


# -- reconstruction -------------------------------------------------------------

def reconstruct_grid(samples: ChannelSamples, interp: InterpolantSet, x1s, x2s, *,
                     sample_on_left: bool = True, chunk: int = 16) -> np.ndarray:
    """Truncated expansion on the tensor grid ``x1s x x2s`` -> ``(P, Q, 4)``."""
    if samples.partition != interp.partition:
        raise ConfigurationError("samples and interpolants use different partitions")
    x1s = np.atleast_1d(np.asarray(x1s, float))
    x2s = np.atleast_1d(np.asarray(x2s, float))
    n = samples.indices
    out = np.zeros((x1s.size, x2s.size, 4))
    for start in range(0, x2s.size, chunk):
        sl = slice(start, min(start + chunk, x2s.size))
        acc = np.zeros((x1s.size, sl.stop - sl.start, 4))
        for k in range(samples.partition.M):
            y = interp.translates(k, n, x1s, n, x2s[sl])       # (n1, p, n2, q, 4)
            g = samples.values[k][:, None, :, None, :]          # (n1, 1, n2, 1, 4)
            terms = qmul(g, y) if sample_on_left else qmul(y, g)
            acc += terms.sum(axis=(0, 2))
        out[:, sl] = acc
    return out


def reconstruct(samples: ChannelSamples, interp: InterpolantSet, x) -> Quaternion:
    return Quaternion.from_array(reconstruct_grid(samples, interp, [x[0]], [x[1]])[0, 0])


@dataclass
class ErrorMetrics:
    rel_l2: float
    rel_linf: float
    abs_err: np.ndarray
    x1s: np.ndarray
    x2s: np.ndarray


def relative_errors(ref: np.ndarray, approx: np.ndarray):
    err = np.linalg.norm(approx - ref, axis=-1)
    mag = np.linalg.norm(ref, axis=-1)
    def ratio(num, den):
        if den == 0.0:
            return 0.0 if num == 0.0 else math.inf
        return float(num / den)
    return (ratio(np.sqrt(np.sum(err ** 2)), np.sqrt(np.sum(mag ** 2))),
            ratio(err.max(), mag.max()), err)


def error_report(F: SpectrumFn, reconstruction, region, grid_n: int,
                 rule: QuadratureRule = DEFAULT_RULE) -> ErrorMetrics:
    """Relative L2 / Linf error of ``reconstruction(x1s, x2s)`` against direct
    synthesis of ``F`` on a ``grid_n x grid_n`` lattice over
    ``region = ((x1_lo, x1_hi), (x2_lo, x2_hi))``."""
    (a1, b1), (a2, b2) = region
    x1s = np.linspace(a1, b1, grid_n)
    x2s = np.linspace(a2, b2, grid_n)
    ref = synthesize_grid(F, x1s, x2s, rule)
    approx = np.asarray(reconstruction(x1s, x2s), dtype=float)
    l2, linf, err = relative_errors(ref, approx)
    return ErrorMetrics(l2, linf, err, x1s, x2s)


def central_quarter(part: SpectralPartition, N: int):
    """``[-NT/2, NT/2]^2``: the middle quarter (by area) of ``[-NT, NT]^2``."""
    h = 0.5 * N * part.T
    return ((-h, h), (-h, h))
