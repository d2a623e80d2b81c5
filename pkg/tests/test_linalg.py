import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatsamp import linalg
from quatsamp.banks import derivative_bank, derivative_inverse
from quatsamp.gse import system_matrix
from quatsamp.quaternion import qmul


def brute_matmul(a, b):
    n, p, m = a.shape[0], a.shape[1], b.shape[1]
    out = np.zeros((n, m, 4))
    for r in range(n):
        for c in range(m):
            for t in range(p):
                out[r, c] += qmul(a[r, t], b[t, c])
    return out


def well_conditioned(rng, M):
    H = rng.standard_normal((M, M, 4)) / np.sqrt(M)
    H[np.arange(M), np.arange(M), 0] += 3.0
    return H


def test_qmatmul_matches_loop():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((3, 4, 4))
    b = rng.standard_normal((4, 2, 4))
    np.testing.assert_allclose(linalg.qmatmul(a, b), brute_matmul(a, b), atol=1e-13)


def test_qmatmul_dimension_mismatch():
    with pytest.raises(linalg.DimensionError):
        linalg.qmatmul(np.zeros((2, 3, 4)), np.zeros((2, 2, 4)))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 16), st.integers(0, 2**32 - 1))
def test_inverse_both_sides(M, seed):
    H = well_conditioned(np.random.default_rng(seed), M)
    Hi = linalg.invert(H)
    eye = linalg.identity(M)
    assert np.max(np.abs(linalg.qmatmul(H, Hi) - eye)) < 1e-10
    assert np.max(np.abs(linalg.qmatmul(Hi, H) - eye)) < 1e-10


def test_complex_adjoint_is_multiplicative():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((3, 3, 4))
    b = rng.standard_normal((3, 3, 4))
    lhs = linalg.complex_adjoint(linalg.qmatmul(a, b))
    rhs = linalg.complex_adjoint(a) @ linalg.complex_adjoint(b)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)
    np.testing.assert_array_equal(linalg.from_complex_adjoint(linalg.complex_adjoint(a)), a)


def test_singular_matrix_raises():
    H = np.zeros((2, 2, 4))
    H[0, 0] = [1, 2, 0, 1]
    H[0, 1] = [0, 1, 1, 0]
    # second row = q * first row, q on the left
    q = np.array([0.5, -1.0, 2.0, 0.3])
    H[1, 0] = qmul(q, H[0, 0])
    H[1, 1] = qmul(q, H[0, 1])
    with pytest.raises(linalg.SingularMatrixError) as info:
        linalg.invert(H)
    assert info.value.pivot < 1e-10
    assert not linalg.is_invertible(H)


def test_batched_singular_reports_index():
    rng = np.random.default_rng(2)
    H = np.stack([well_conditioned(rng, 3) for _ in range(4)])
    H[2] = 0.0
    H[2, 0, 0, 0] = 1.0
    with pytest.raises(linalg.SingularMatrixError) as info:
        linalg.invert(H)
    assert info.value.index == (2,)


def test_scalar_matrix_inverse():
    H = np.zeros((1, 1, 4))
    H[0, 0] = [1.0, 1.0, 0.0, 0.0]
    np.testing.assert_allclose(linalg.invert(H)[0, 0], [0.5, -0.5, 0.0, 0.0])


def test_non_square_rejected():
    with pytest.raises(linalg.DimensionError):
        linalg.invert(np.zeros((2, 3, 4)))


def test_derivative_bank_inverse_closed_form():
    bank = derivative_bank()
    part = bank.partition()
    rng = np.random.default_rng(3)
    for w in rng.uniform(-part.sigma, 0.0, (10, 2)):
        H = system_matrix(bank, part, w)
        np.testing.assert_allclose(linalg.invert(H), derivative_inverse(*w, part.sigma), atol=1e-12)
        det = linalg.det_complex_adjoint(H)
        assert det.real == pytest.approx(part.c ** 8, rel=1e-9)
        assert abs(det.imag) < 1e-9 * part.c ** 8


def test_det_of_identity():
    assert linalg.det_complex_adjoint(linalg.identity(4)) == pytest.approx(1.0)
