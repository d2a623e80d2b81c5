"""Verification suite behind ``quatsamp verify``.

Every check returns a :class:`CheckResult`.  Gating checks decide the exit
status; informative ones only report residuals.  Nothing time-dependent is
recorded, so the JSON report is byte-identical across runs and thread counts.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__, linalg
from .banks import derivative_inverse, example_bank, rational_interpolant
from .gse import FilterBank, channel_samples, interpolation_spectra, system_matrix
from .oracles import dqft_brute, qexp_series
from .qft import (SpectrumFn, convolve_spatial, dqft_array, gen_convolve, idqft_array,
                  synthesize_grid, translate_pairs)
from .qlct import (IDENTITY_RESPONSE, LCTMatrix, LCTParams, basis_gram,
                   erf_formula_interpolant, qlct_interpolant)
from .quadrature import QuadratureRule
from .quaternion import qconj, qexp_array, qmul, qnorm
from .spectra import gauss_spectrum, gen_spectrum


@dataclass
class CheckResult:
    name: str
    gating: bool
    passed: bool
    residual: float
    tolerance: float
    detail: str = ""


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def _result(name, residual, tol, gating=True, detail=""):
    residual = float(residual)
    return CheckResult(name, gating, bool(residual < tol), residual, tol, detail)


# -- algebra and linear algebra -----------------------------------------------------

def check_algebra(n=10_000, seed=11):
    rng = _rng(seed)
    p, q, r = (rng.standard_normal((n, 4)) for _ in range(3))
    pq = qmul(p, q)
    res = max(
        np.max(np.abs(qnorm(pq) - qnorm(p) * qnorm(q)) / (qnorm(p) * qnorm(q))),
        np.max(np.abs(qconj(pq) - qmul(qconj(q), qconj(p)))),
        np.max(np.abs(qmul(pq, r) - qmul(p, qmul(q, r)))),
    )
    z = rng.standard_normal((200, 4))
    exp_res = np.max(np.abs(qexp_array(z) - qexp_series(z)))
    return [_result("algebra", res, 1e-12, detail=f"{n} random pairs"),
            _result("qexp_series", exp_res, 1e-10)]


def check_dqft(seed=12):
    rng = _rng(seed)
    oracle = trip = pars = 0.0
    for n1, n2 in [(4, 4), (5, 7), (8, 3), (16, 16)]:
        f = rng.standard_normal((n1, n2, 4))
        F = dqft_array(f)
        oracle = max(oracle, np.max(np.abs(F - dqft_brute(f))))
        trip = max(trip, np.max(np.abs(idqft_array(F) - f)))
        pars = max(pars, abs(np.linalg.norm(F) / np.linalg.norm(f) - 1.0))
    return [_result("dqft_oracle", oracle, 1e-10),
            _result("dqft_round_trip", trip, 1e-10),
            _result("parseval", pars, 1e-12)]


def check_inversion(seed=13):
    rng = _rng(seed)
    res = 0.0
    for M in (1, 2, 3, 4, 7, 12, 16):
        H = rng.standard_normal((M, M, 4)) / math.sqrt(M)
        H[np.arange(M), np.arange(M), 0] += 3.0
        prod = linalg.qmatmul(H, linalg.invert(H))
        res = max(res, np.max(np.abs(prod - linalg.identity(M))))
    bank = example_bank("derivative")
    part = bank.partition()
    closed = det = 0.0
    for w in rng.uniform(-part.sigma, 0.0, (10, 2)):
        Hm = system_matrix(bank, part, w)
        closed = max(closed, np.max(np.abs(linalg.invert(Hm) - derivative_inverse(*w, part.sigma))))
        det = max(det, abs(linalg.det_complex_adjoint(Hm) / part.c ** 8 - 1.0))
    return [_result("matrix_inverse", res, 1e-10, detail="M <= 16"),
            _result("derivative_bank_inverse", closed, 1e-12),
            _result("derivative_bank_det", det, 1e-9)]


# -- transforms ----------------------------------------------------------------------

def rational_filter(alpha=1.0, beta=1.0, sigma=math.pi) -> SpectrumFn:
    bank = example_bank("rational", sigma=sigma, alpha=alpha, beta=beta)
    return SpectrumFn(sigma, bank.responses[0])


def check_convolution(seed=14):
    rng = _rng(seed)
    F = gauss_spectrum(math.pi, [0.3, -1.0, 0.5, 0.8], width=0.45)
    H = rational_filter()
    G = gen_convolve(F, H)
    res = 0.0
    warn = False
    for x in rng.uniform(-2.0, 2.0, (5, 2)):
        spatial = convolve_spatial(F, H, x, half_width=20.0)
        spectral = synthesize_grid(G, [x[0]], [x[1]])[0, 0]
        res = max(res, np.max(np.abs(spatial.value.as_array() - spectral)))
        warn |= spatial.warning
    return [_result("convolution_theorem", res, 1e-6,
                    detail="tail warning" if warn else "tail below tolerance")]


BANK_NAMES = ("shannon", "oversample", "rational", "derivative")


def check_samples(seed=15):
    res = 0.0
    for name in BANK_NAMES:
        bank = example_bank(name)
        part = bank.partition()
        F = gen_spectrum("random-smooth", seed, bank.signal_sigma or bank.sigma)
        full = channel_samples(F, bank, part, 2)
        folded = channel_samples(F, bank, part, 2, QuadratureRule(order=15), folded=True)
        res = max(res, np.max(np.abs(full.values - folded.values)))
    return [_result("samples_folded_vs_full", res, 1e-8, detail="all banks, |n| <= 2")]


def _closed_vs_quadrature(bank: FilterBank, rng, printed=False):
    part = bank.partition()
    interp = interpolation_spectra(bank, part)
    res = 0.0
    for _ in range(10):
        x = rng.uniform(-4.0, 4.0, 2)
        n = rng.integers(-4, 5, 2)
        for k in range(bank.M):
            if printed:
                p = dict(bank.params)
                cf = rational_interpolant([n[0]], [x[0]], [n[1]], [x[1]], part.T, bank.sigma,
                                          p["alpha"], p["beta"], printed=True)
            else:
                cf = interp.translates_closed(k, [n[0]], [x[0]], [n[1]], [x[1]])
            Y = interp.spectrum(k)
            qd = translate_pairs(Y, [n[0] * part.T], [x[0]], [n[1] * part.T], [x[1]])
            res = max(res, np.max(np.abs(cf.reshape(4) - qd.reshape(4))))
    return res


def check_closed_forms(seed=16):
    rng = _rng(seed)
    out = []
    for label, name, kw in [("oversample", "oversample", {"rho": 2.0}),
                            ("rational", "rational", {"alpha": 1.0, "beta": 2.0}),
                            ("derivative", "derivative", {})]:
        res = _closed_vs_quadrature(example_bank(name, **kw), rng)
        out.append(_result(f"closed_form_{label}", res, 1e-6))
    res = _closed_vs_quadrature(example_bank("rational", alpha=1.0, beta=2.0), rng, printed=True)
    out.append(_result("closed_form_rational_printed", res, 1e-6, gating=False,
                       detail="variant prefactor 4 pi / T^2"))
    return out


def check_derivative_identities(seed=17, h=1e-2):
    """``g2 = df/dx1(x1, -x2)``, ``g3 = df/dx2``, ``g4 = -d2f/dx1dx2(x1, -x2)``."""
    rng = _rng(seed)
    bank = example_bank("derivative")
    F = gen_spectrum("random-smooth", seed, bank.sigma)
    st = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / (12.0 * h)
    off = h * np.arange(-2, 3)
    res = {"g2": 0.0, "g3": 0.0, "g4": 0.0}
    scale = 0.0
    for x in rng.uniform(-2.0, 2.0, (4, 2)):
        g = [synthesize_grid(gen_convolve(F, SpectrumFn(bank.sigma, r)), [x[0]], [x[1]])[0, 0]
             for r in bank.responses]
        fa = synthesize_grid(F, x[0] + off, [-x[1]])[:, 0]
        fb = synthesize_grid(F, [x[0]], x[1] + off)[0]
        fc = synthesize_grid(F, x[0] + off, -x[1] + off)
        d1 = np.einsum("a,aq->q", st, fa)
        d2 = np.einsum("b,bq->q", st, fb)
        d12 = np.einsum("a,b,abq->q", st, st, fc)
        res["g2"] = max(res["g2"], np.max(np.abs(g[1] - d1)))
        res["g3"] = max(res["g3"], np.max(np.abs(g[2] - d2)))
        res["g4"] = max(res["g4"], np.max(np.abs(g[3] + d12)))
        scale = max(scale, np.max(np.abs(g[3])))
    return [_result(f"derivative_identity_{k}", v / max(scale, 1.0), 1e-6, gating=False,
                    detail="finite differences of synthesis")
            for k, v in sorted(res.items())]


# -- QLCT ----------------------------------------------------------------------------

def qlct_parameter_sets():
    return {
        "fourier": LCTParams.fourier(),
        "chirped": LCTParams(LCTMatrix.chirped(1.0, 2.0, 1.0), LCTMatrix.chirped(1.0, -1.0, 1.0)),
    }


def check_qlct_gram():
    out = []
    for label, params in qlct_parameter_sets().items():
        G = basis_gram(params, math.pi, 3)
        G[..., 0] -= np.eye(G.shape[0])
        out.append(_result(f"qlct_gram_{label}", np.max(np.abs(G)), 1e-8, detail="|n| <= 3"))
    return out


def check_qlct_erf(seed=18):
    rng = _rng(seed)
    params = qlct_parameter_sets()["chirped"]
    interp = qlct_interpolant(params, IDENTITY_RESPONSE, math.pi)
    res = 0.0
    for _ in range(5):
        x = rng.uniform(-2.0, 2.0, 2)
        n = rng.integers(-2, 3, 2)
        q = interp.translates([n[0]], [x[0]], [n[1]], [x[1]]).reshape(4)
        e = erf_formula_interpolant(params, math.pi, n, x).as_array()
        res = max(res, np.max(np.abs(q - e)))
    return [_result("qlct_erf_formula", res, 1e-6, gating=False,
                    detail="erf closed form vs quadrature, chirped parameters")]


SUITE = (check_algebra, check_dqft, check_inversion, check_convolution, check_samples,
         check_closed_forms, check_qlct_gram, check_derivative_identities, check_qlct_erf)


def run_checks():
    results = []
    for check in SUITE:
        results.extend(check())
    return results


def verify() -> dict:
    results = run_checks()
    gating = [r for r in results if r.gating]
    return {
        "version": __version__,
        "checks": [asdict(r) for r in results],
        "summary": {
            "gating_total": len(gating),
            "gating_failed": sum(not r.passed for r in gating),
            "informative_total": len(results) - len(gating),
            "passed": all(r.passed for r in gating),
        },
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
