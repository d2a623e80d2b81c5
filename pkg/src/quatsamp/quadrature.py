"""Composite Gauss-Legendre rules on intervals with prescribed breakpoints."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def _gauss_legendre(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class QuadratureRule:
    """Composite Gauss-Legendre rule.

    ``panels`` is the minimum number of panels per cell and axis, ``order``
    the number of nodes per panel.  When an integrand oscillates at angular
    rate ``rate`` (for kernels ``e^{i w x}`` that is ``|x|``), panels are
    refined so that the phase swept by one panel stays below ``max_phase``.
    """

    panels: int = 8
    order: int = 12
    max_phase: float = 5.0

    def __post_init__(self):
        if self.panels < 1 or self.order < 1 or self.max_phase <= 0:
            raise ValueError("panels, order and max_phase must be positive")

    def panel_count(self, length: float, rate: float, cell_width: float) -> int:
        n = max(1, math.ceil(self.panels * length / cell_width - 1e-9))
        if rate > 0:
            n = max(n, math.ceil(rate * length / self.max_phase))
        return n

    def axis_nodes(self, lo: float, hi: float, *, rate: float = 0.0,
                   breaks=(), cell_width: float | None = None):
        """Nodes and weights on ``[lo, hi]``; ``breaks`` become panel edges."""
        if not hi > lo:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        cell_width = (hi - lo) if cell_width is None else cell_width
        edges = sorted({lo, hi, *(b for b in breaks if lo < b < hi)})
        gx, gw = _gauss_legendre(self.order)
        nodes, weights = [], []
        for a, b in zip(edges[:-1], edges[1:]):
            n = self.panel_count(b - a, rate, cell_width)
            e = np.linspace(a, b, n + 1)
            half = 0.5 * np.diff(e)
            mid = 0.5 * (e[:-1] + e[1:])
            nodes.append((mid[:, None] + half[:, None] * gx).ravel())
            weights.append((half[:, None] * gw).ravel())
        return np.concatenate(nodes), np.concatenate(weights)


DEFAULT_RULE = QuadratureRule()
