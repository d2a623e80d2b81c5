import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatsamp.qft import SpectrumFn, gen_translate
from quatsamp.qlct import (IDENTITY_RESPONSE, InadmissibleFilterError, LCTMatrix, LCTParams,
                           UnsupportedParameterError, basis_gram, erf_formula_interpolant,
                           kernel_complex, kernel_i, kernel_j, qlct_forward_grid,
                           qlct_gen_translate, qlct_interpolant, qlct_reconstruct_grid,
                           qlct_synthesize, qlct_synthesize_grid)
from quatsamp.quaternion import Quaternion, qconj, qmul
from quatsamp.spectra import gen_spectrum

PI = math.pi
FOURIER = LCTParams.fourier()
CHIRPED = LCTParams(LCTMatrix.chirped(1.0, 2.0, 1.0), LCTMatrix.chirped(1.0, -1.0, 1.0))


def brute_translate(F, params, x, y=None, order=160):
    """Gauss-Legendre node loop with quaternion kernel values, product in written order.

    ``y=None`` drops the left kernels, giving plain synthesis.
    """
    s = F.sigma
    t, a = np.polynomial.legendre.leggauss(order)
    w, a = s * t, s * a
    inv = params.inverse()
    total = np.zeros(4)
    for w1, a1 in zip(w, a):
        ki_y = None if y is None else kernel_i(inv, w1, y[0]).as_array()
        ki_x = kernel_i(inv, w1, x[0]).as_array()
        for w2, a2 in zip(w, a):
            kj_y = None if y is None else kernel_j(inv, w2, y[1]).as_array()
            kj_x = kernel_j(inv, w2, x[1]).as_array()
            left = np.array([1.0, 0, 0, 0]) if y is None else qconj(qmul(kj_y, ki_y))
            val = qmul(qmul(qmul(left, F(w1, w2)), kj_x), ki_x)
            total += a1 * a2 * val
    return total


# -- parameters and kernels -----------------------------------------------------------

def test_parameter_validation():
    with pytest.raises(UnsupportedParameterError):
        LCTMatrix(1.0, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        LCTMatrix(1.0, 1.0, 1.0, 1.0)
    A = LCTMatrix.chirped(1.0, 2.0, 1.0)
    Ai = A.inverse()
    prod = np.array([[A.a, A.b], [A.c, A.d]]) @ np.array([[Ai.a, Ai.b], [Ai.c, Ai.d]])
    np.testing.assert_allclose(prod, np.eye(2), atol=1e-14)


def test_kernel_examples():
    e = np.exp(-1j * PI / 4) / math.sqrt(2 * PI)
    np.testing.assert_allclose(kernel_i(FOURIER, 0.0, 0.0).as_array(), [e.real, e.imag, 0, 0], atol=1e-15)
    p = LCTParams(LCTMatrix(1.0, 1.0, 0.0, 1.0), LCTMatrix(1.0, 1.0, 0.0, 1.0))
    z = e * np.exp(0.5j)
    np.testing.assert_allclose(kernel_i(p, 1.0, 0.0).as_array(), [z.real, z.imag, 0, 0], atol=1e-15)
    np.testing.assert_allclose(kernel_j(p, 1.0, 0.0).as_array(), [z.real, 0, z.imag, 0], atol=1e-15)


@given(st.floats(-5, 5), st.floats(0.1, 4) | st.floats(-4, -0.1), st.floats(-5, 5),
       st.floats(-20, 20), st.floats(-20, 20))
def test_kernel_modulus(a, b, d, x, w):
    A = LCTMatrix.chirped(a, b, d)
    assert abs(kernel_complex(A, x, w)) == pytest.approx(abs(2 * PI * b) ** -0.5, rel=1e-12)
    p = LCTParams(A, A)
    assert abs(kernel_j(p, x, w)) == pytest.approx(abs(2 * PI * b) ** -0.5, rel=1e-12)


# -- synthesis and translation -------------------------------------------------------

def test_zero_spectrum():
    Z = gen_spectrum("zero", 0, PI)
    assert qlct_synthesize(Z, CHIRPED, (0.3, 0.1)) == Quaternion(0.0, 0.0, 0.0, 0.0)
    assert not np.any(qlct_gen_translate(Z, FOURIER, (1.0, 2.0), (0.5, -1.0)).as_array())
    assert not np.any(qlct_reconstruct_grid(Z, FOURIER, IDENTITY_RESPONSE, 2, [0.2], [0.4]))


def test_constant_spectrum_matches_brute_force():
    F = SpectrumFn.constant([1.0, 0.0, 0.0, 0.0], PI)
    for x in [(0.0, 0.0), (0.7, -1.3), (2.5, 0.4)]:
        ref = brute_translate(F, FOURIER, x)
        np.testing.assert_allclose(qlct_synthesize(F, FOURIER, x).as_array(), ref, atol=1e-8)


@pytest.mark.parametrize("params", [FOURIER, CHIRPED], ids=["fourier", "chirped"])
def test_translate_matches_brute_force(params):
    F = gen_spectrum("random-smooth", 4, 1.5, degree=3)
    rng = np.random.default_rng(11)
    for x, y in rng.uniform(-2, 2, (5, 2, 2)):
        got = qlct_gen_translate(F, params, x, y).as_array()
        np.testing.assert_allclose(got, brute_translate(F, params, x, y), atol=1e-8)


def test_fourier_case_relates_to_qft_translation():
    # inverse kernels at A^-1 = (0,-1;1,0) carry e^{u 3pi/4}/sqrt(2 pi); the constant units
    # conjugate the spectrum in the j-plane and the result in the i-plane
    F = gen_spectrum("random-smooth", 6, PI)
    ej = np.array([math.cos(3 * PI / 4), 0.0, math.sin(3 * PI / 4), 0.0])
    ei = np.array([math.cos(3 * PI / 4), math.sin(3 * PI / 4), 0.0, 0.0])
    G = SpectrumFn(PI, lambda w1, w2: qmul(qmul(ej, F(w1, w2)), qconj(ej)))
    for x, y in [((0.4, -0.2), (1.0, 0.6)), ((-1.5, 2.0), (0.3, -0.8))]:
        got = qlct_gen_translate(F, FOURIER, x, y).as_array()
        ref = qmul(qmul(ei, gen_translate(G, x, y).as_array()), qconj(ei)) / (2 * PI)
        np.testing.assert_allclose(got, ref, atol=1e-12)


@pytest.mark.parametrize("params,wbox", [(FOURIER, 9.0), (CHIRPED, 14.0)], ids=["fourier", "chirped"])
def test_forward_then_synthesize_round_trip(params, wbox):
    q = np.array([0.5, -1.0, 0.25, 0.75])

    def f(x1, x2):
        return np.exp(-(x1 ** 2 + x2 ** 2) / 2)[..., None] * q

    spec = SpectrumFn(wbox, lambda w1, w2: qlct_forward_grid(
        f, params, 9.0, np.ravel(w1), np.ravel(w2)).reshape(np.broadcast(w1, w2).shape + (4,)))
    x = np.array([-1.0, 0.0, 0.8])
    got = qlct_synthesize_grid(spec, params, x, x)
    np.testing.assert_allclose(got, f(x[:, None], x[None, :]), atol=1e-6)


# -- interpolant, Gram and reconstruction --------------------------------------------

def test_interpolant_spectrum_examples():
    T = PI / 1.0
    scale = T * T * abs(CHIRPED.A1.b * CHIRPED.A2.b)
    it = qlct_interpolant(CHIRPED, IDENTITY_RESPONSE, 1.0)
    np.testing.assert_allclose(it.spectrum(0.2, -0.7), [scale, 0, 0, 0])

    def two(w1, w2):
        return np.broadcast_to([2.0, 0, 0, 0], np.broadcast(np.asarray(w1), np.asarray(w2)).shape + (4,))
    np.testing.assert_allclose(qlct_interpolant(CHIRPED, two, 1.0).spectrum(0.0, 0.0), [scale / 2, 0, 0, 0])

    def one_plus_i(w1, w2):
        w1, w2 = np.broadcast_arrays(np.asarray(w1, float), np.asarray(w2, float))
        return np.stack([np.ones_like(w1), w1, 0 * w1, 0 * w1], axis=-1)
    y = qlct_interpolant(CHIRPED, one_plus_i, 1.0).spectrum(1.0, 0.3)
    np.testing.assert_allclose(y, [scale / 2, -scale / 2, 0, 0])


def test_inadmissible_filter():
    def vanish(w1, w2):
        w1, w2 = np.broadcast_arrays(np.asarray(w1, float), np.asarray(w2, float))
        return np.stack([w1 + 1.0, 0 * w1, 0 * w1, 0 * w1], axis=-1)
    with pytest.raises(InadmissibleFilterError):
        qlct_interpolant(FOURIER, vanish, 1.0)


@pytest.mark.parametrize("params", [FOURIER, CHIRPED], ids=["fourier", "chirped"])
def test_gram_is_identity(params):
    G = basis_gram(params, PI, 3)
    eye = np.zeros_like(G)
    eye[np.arange(G.shape[0]), np.arange(G.shape[0]), 0] = 1.0
    assert G.shape == (49, 49, 4)
    assert np.max(np.abs(G - eye)) < 1e-8


def test_gram_single_entry():
    G = basis_gram(CHIRPED, 2.0, 0)
    np.testing.assert_allclose(G, [[[1.0, 0, 0, 0]]], atol=1e-12)


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 500))
def test_reconstruction_interpolates_samples(seed):
    # y(n b T [-] m b T) is the Kronecker delta, so the expansion reproduces its samples
    F = gen_spectrum("random-smooth", seed, PI, degree=3)
    T = 1.0
    n = np.arange(-2, 3)
    nodes1 = n * CHIRPED.A1.b * T
    nodes2 = n * CHIRPED.A2.b * T
    rec = qlct_reconstruct_grid(F, CHIRPED, IDENTITY_RESPONSE, 2, nodes1, nodes2)
    np.testing.assert_allclose(rec, qlct_synthesize_grid(F, CHIRPED, nodes1, nodes2), atol=1e-10)


def test_reconstruction_converges_fourier_case():
    F = gen_spectrum("gauss", 2, PI)
    x = np.linspace(-4.0, 4.0, 9)
    ref = qlct_synthesize_grid(F, FOURIER, x, x)
    errs = []
    for N in (8, 16):
        rec = qlct_reconstruct_grid(F, FOURIER, IDENTITY_RESPONSE, N, x, x)
        errs.append(np.max(np.linalg.norm(rec - ref, axis=-1)) / np.max(np.linalg.norm(ref, axis=-1)))
    assert errs[1] < errs[0]
    assert errs[1] < 5e-2


def test_erf_formula_runs_and_needs_nonzero_d1():
    value = erf_formula_interpolant(CHIRPED, PI, (1, 2), (0.3, -0.4))
    assert np.all(np.isfinite(value.as_array()))
    with pytest.raises(UnsupportedParameterError):
        erf_formula_interpolant(FOURIER, PI, (1, 2), (0.3, -0.4))
