"""Configuration-driven experiments: convergence tables and error surfaces.

A config is a flat JSON object.  Recognised keys (defaults in brackets):

    mode        "qft-gse" | "qlct"                      ["qft-gse"]
    bank        shannon | oversample | rational | derivative   ["shannon"]
    rho, alpha, beta                                    [2.0, 1.0, 1.0]
    sigma       signal bandwidth                        [pi]
    m           channels per axis, must match the bank  [bank's own]
    N           list of truncation radii                [[4, 8, 16, 32]]
    spectrum    gauss | poly | random-smooth | zero     ["gauss"]
    seed        integer                                 [0]
    grid        evaluation lattice size per axis        [21]
    region      [x1_lo, x1_hi, x2_lo, x2_hi]; default: central quarter per N
    panels, order, max_phase                            quadrature overrides
    A1, A2      [a, b, c, d] for the qlct mode          [Fourier-like]
    timing      write wall-clock seconds                [true]
    output      output directory                        ["quatsamp-out"]
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .banks import BANKS, example_bank
from .gse import (build_partition, central_quarter, channel_samples, error_report,
                  interpolation_spectra, reconstruct_grid, relative_errors)
from .qlct import (IDENTITY_RESPONSE, LCTMatrix, LCTParams, qlct_reconstruct_grid,
                   qlct_synthesize_grid)
from .quadrature import QuadratureRule
from .spectra import KINDS, gen_spectrum


class ConfigError(ValueError):
    """Invalid configuration; ``str()`` carries the field and line."""


@dataclass
class ExperimentConfig:
    mode: str = "qft-gse"
    bank: str = "shannon"
    rho: float = 2.0
    alpha: float = 1.0
    beta: float = 1.0
    sigma: float = math.pi
    m: int | None = None
    N: list = field(default_factory=lambda: [4, 8, 16, 32])
    spectrum: str = "gauss"
    seed: int = 0
    grid: int = 21
    region: list | None = None
    panels: int = 8
    order: int = 12
    max_phase: float = 5.0
    A1: list = field(default_factory=lambda: [0.0, 1.0, -1.0, 0.0])
    A2: list = field(default_factory=lambda: [0.0, 1.0, -1.0, 0.0])
    timing: bool = True
    output: str = "quatsamp-out"

    @property
    def rule(self) -> QuadratureRule:
        return QuadratureRule(self.panels, self.order, self.max_phase)


_FIELDS = ExperimentConfig.__dataclass_fields__


def _line_of(text: str, key: str) -> int:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else 1


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as err:
        raise ConfigError(f"{path}: cannot read config: {err.strerror}") from err
    return parse_config(text, str(path))


def parse_config(text: str, source: str = "<config>") -> ExperimentConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"{source}:{err.lineno}: invalid JSON: {err.msg}") from err
    if not isinstance(raw, dict):
        raise ConfigError(f"{source}:1: config must be a JSON object")

    def fail(key, msg):
        raise ConfigError(f"{source}:{_line_of(text, key)}: field '{key}': {msg}")

    cfg = ExperimentConfig()
    for key, value in raw.items():
        if key not in _FIELDS:
            fail(key, "unknown field")
        if isinstance(value, dict):
            fail(key, "nested objects are not allowed")
        setattr(cfg, key, value)

    def number(key, *, positive=False, integer=False, minimum=None):
        v = getattr(cfg, key)
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            fail(key, "must be a finite number")
        if integer and int(v) != v:
            fail(key, "must be an integer")
        if positive and not v > 0:
            fail(key, "must be positive")
        if minimum is not None and v < minimum:
            fail(key, f"must be >= {minimum}")
        setattr(cfg, key, int(v) if integer else float(v))

    if cfg.mode not in ("qft-gse", "qlct"):
        fail("mode", "must be 'qft-gse' or 'qlct'")
    if cfg.bank not in BANKS:
        fail("bank", f"must be one of {sorted(BANKS)}")
    if cfg.spectrum not in KINDS:
        fail("spectrum", f"must be one of {list(KINDS)}")
    number("sigma", positive=True)
    number("rho")
    if not cfg.rho > 1:
        fail("rho", "must exceed 1")
    number("alpha", positive=True)
    number("beta", positive=True)
    number("seed", integer=True, minimum=0)
    number("grid", integer=True, minimum=2)
    number("panels", integer=True, minimum=1)
    number("order", integer=True, minimum=1)
    number("max_phase", positive=True)
    if not isinstance(cfg.timing, bool):
        fail("timing", "must be true or false")
    if not isinstance(cfg.output, str) or not cfg.output:
        fail("output", "must be a non-empty string")
    if not isinstance(cfg.N, list) or not cfg.N:
        fail("N", "must be a non-empty list of positive integers")
    for n in cfg.N:
        if isinstance(n, bool) or not isinstance(n, (int, float)) or int(n) != n or n <= 0:
            fail("N", "must be a non-empty list of positive integers")
    cfg.N = [int(n) for n in cfg.N]
    bank_m = 2 if cfg.bank == "derivative" else 1
    if cfg.m is not None:
        number("m", integer=True, minimum=1)
        if cfg.mode == "qft-gse" and cfg.m != bank_m:
            fail("m", f"bank '{cfg.bank}' has m={bank_m}")
    else:
        cfg.m = bank_m
    if cfg.region is not None:
        r = cfg.region
        if (not isinstance(r, list) or len(r) != 4
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in r)
                or not (r[0] < r[1] and r[2] < r[3])):
            fail("region", "must be [x1_lo, x1_hi, x2_lo, x2_hi] with lo < hi")
        cfg.region = [float(v) for v in r]
    for key in ("A1", "A2"):
        v = getattr(cfg, key)
        if not isinstance(v, list) or len(v) != 4 or not all(
                isinstance(t, (int, float)) and not isinstance(t, bool) for t in v):
            fail(key, "must be [a, b, c, d]")
        try:
            LCTMatrix(*map(float, v))
        except ValueError as err:
            fail(key, str(err))
    return cfg


def build_bank(cfg: ExperimentConfig):
    kw = {"sigma": cfg.sigma}
    if cfg.bank == "oversample":
        kw["rho"] = cfg.rho
    elif cfg.bank == "rational":
        kw.update(alpha=cfg.alpha, beta=cfg.beta)
    return example_bank(cfg.bank, **kw)


@dataclass
class RunResult:
    rows: list
    surface: tuple
    checks: dict
    seconds: float

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _region(cfg, half_width):
    if cfg.region is not None:
        a, b, c, d = cfg.region
        return ((a, b), (c, d))
    return ((-half_width[0], half_width[0]), (-half_width[1], half_width[1]))


def _run_gse(cfg, F, N):
    bank = build_bank(cfg)
    part = bank.partition()
    interp = interpolation_spectra(bank, part, cfg.rule)
    samples = channel_samples(F, bank, part, N, cfg.rule)
    h = central_quarter(part, N)[0][1]
    metrics = error_report(F, lambda a, c: reconstruct_grid(samples, interp, a, c),
                           _region(cfg, (h, h)), cfg.grid, cfg.rule)
    return metrics.rel_l2, metrics.rel_linf, (metrics.x1s, metrics.x2s, metrics.abs_err)


def _run_qlct(cfg, F, N):
    params = LCTParams(LCTMatrix(*cfg.A1), LCTMatrix(*cfg.A2))
    T = math.pi / cfg.sigma
    half = (0.5 * N * abs(params.A1.b) * T, 0.5 * N * abs(params.A2.b) * T)
    (a, b), (c, d) = _region(cfg, half)
    x1s = np.linspace(a, b, cfg.grid)
    x2s = np.linspace(c, d, cfg.grid)
    ref = qlct_synthesize_grid(F, params, x1s, x2s, cfg.rule)
    rec = qlct_reconstruct_grid(F, params, IDENTITY_RESPONSE, N, x1s, x2s, cfg.rule)
    l2, linf, err = relative_errors(ref, rec)
    return l2, linf, (x1s, x2s, err)


def run(cfg: ExperimentConfig) -> RunResult:
    start = time.perf_counter()
    F = gen_spectrum(cfg.spectrum, cfg.seed, cfg.sigma)
    rows = []
    surface = None
    for N in sorted(cfg.N):
        t0 = time.perf_counter()
        runner = _run_gse if cfg.mode == "qft-gse" else _run_qlct
        l2, linf, surface = runner(cfg, F, N)
        rows.append({"N": N, "rel_l2": l2, "rel_linf": linf,
                     "seconds": time.perf_counter() - t0 if cfg.timing else 0.0})
    linf = [r["rel_linf"] for r in rows]
    checks = {
        "finite_errors": all(math.isfinite(r["rel_l2"]) and math.isfinite(r["rel_linf"])
                             for r in rows),
        "linf_non_increasing": all(b <= a * (1 + 1e-9) + 1e-14 for a, b in zip(linf, linf[1:])),
    }
    seconds = time.perf_counter() - start if cfg.timing else 0.0
    return RunResult(rows, surface, checks, seconds)


def convergence_csv(result: RunResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N", "rel_l2", "rel_linf", "seconds"])
    for r in result.rows:
        w.writerow([r["N"], repr(r["rel_l2"]), repr(r["rel_linf"]), f"{r['seconds']:.6f}"])
    return buf.getvalue()


def surface_csv(result: RunResult) -> str:
    x1s, x2s, err = result.surface
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x1", "x2", "abs_err"])
    for a, x1 in enumerate(x1s):
        for b, x2 in enumerate(x2s):
            w.writerow([repr(float(x1)), repr(float(x2)), repr(float(err[a, b]))])
    return buf.getvalue()


def write_outputs(cfg: ExperimentConfig, result: RunResult) -> Path:
    out = Path(cfg.output)
    out.mkdir(parents=True, exist_ok=True)
    (out / "convergence.csv").write_text(convergence_csv(result))
    (out / "error_surface.csv").write_text(surface_csv(result))
    report = {
        "version": __version__,
        "config": {k: getattr(cfg, k) for k in _FIELDS},
        "convergence": result.rows,
        "checks": result.checks,
        "passed": result.passed,
        "runtime_seconds": result.seconds,
    }
    (out / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return out
