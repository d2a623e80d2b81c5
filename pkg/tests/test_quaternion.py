import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from quatsamp.oracles import qexp_series
from quatsamp.quaternion import (I, J, K, ONE, PureUnit, Quaternion, QuaternionDomainError,
                                 conj, from_complex, inv, inv_sqrt_scale, mul, norm, qconj,
                                 qexp, qexp_array, qinv, qmul, qnorm, sc, vec)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
quat = arrays(np.float64, 4, elements=finite)


def hamilton(p, q):
    """Textbook Hamilton product written out component by component."""
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ])


def test_unit_table():
    assert mul(I, J) == K
    assert mul(J, K) == I
    assert mul(K, I) == J
    assert mul(J, I) == -K
    for u in (I, J, K):
        assert mul(u, u) == -ONE
    assert mul(mul(I, J), K) == -ONE


@given(quat, quat)
def test_qmul_matches_hamilton(p, q):
    np.testing.assert_allclose(qmul(p, q), hamilton(p, q), rtol=1e-12, atol=1e-9)


@given(quat, quat)
def test_norm_is_multiplicative(p, q):
    assert qnorm(qmul(p, q)) == pytest.approx(qnorm(p) * qnorm(q), rel=1e-12, abs=1e-12)


@given(quat, quat)
def test_conjugate_reverses_products(p, q):
    np.testing.assert_allclose(qconj(qmul(p, q)), qmul(qconj(q), qconj(p)), atol=1e-9)


@given(quat, quat, quat)
def test_associative(p, q, r):
    lhs = qmul(qmul(p, q), r)
    rhs = qmul(p, qmul(q, r))
    scale = max(1.0, qnorm(p) * qnorm(q) * qnorm(r))
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale


@given(quat)
def test_inverse(q):
    if qnorm(q) < 1e-6:
        return
    np.testing.assert_allclose(qmul(q, qinv(q)), [1, 0, 0, 0], atol=1e-12)
    np.testing.assert_allclose(qmul(qinv(q), q), [1, 0, 0, 0], atol=1e-12)


def test_inverse_of_zero_raises():
    with pytest.raises(QuaternionDomainError):
        inv(Quaternion(0.0, 0.0, 0.0, 0.0))
    with pytest.raises(QuaternionDomainError):
        qinv(np.zeros((3, 4)))


def test_scalar_and_vector_parts():
    q = Quaternion(1.0, 2.0, -3.0, 4.0)
    assert sc(q) == 1.0
    assert vec(q) == Quaternion(0.0, 2.0, -3.0, 4.0)
    assert conj(q) == Quaternion(1.0, -2.0, 3.0, -4.0)
    assert norm(q) == pytest.approx(math.sqrt(30.0))
    assert q + 1 == Quaternion(2.0, 2.0, -3.0, 4.0)
    assert 2 * q == Quaternion(2.0, 4.0, -6.0, 8.0)


@settings(max_examples=200)
@given(arrays(np.float64, 4, elements=st.floats(-4, 4)))
def test_qexp_matches_series(q):
    np.testing.assert_allclose(qexp_array(q), qexp_series(q), atol=1e-10)


def test_qexp_near_real_axis():
    q = np.array([0.5, 1e-10, -2e-10, 3e-11])
    np.testing.assert_allclose(qexp_array(q), qexp_series(q), atol=1e-15)
    assert qexp(Quaternion(0.0, math.pi, 0.0, 0.0)).w == pytest.approx(-1.0)


def test_qexp_unit_direction():
    e = qexp(Quaternion(0.0, 0.0, 0.3, 0.0))
    np.testing.assert_allclose(e.as_array(), [math.cos(0.3), 0, math.sin(0.3), 0], atol=1e-15)


def test_from_complex_planes():
    z = np.array([1 + 2j])
    np.testing.assert_array_equal(from_complex(z, "i")[0], [1, 2, 0, 0])
    np.testing.assert_array_equal(from_complex(z, "j")[0], [1, 0, 2, 0])
    np.testing.assert_array_equal(from_complex(z, "k")[0], [1, 0, 0, 2])


def test_pure_unit_validation():
    with pytest.raises(ValueError):
        PureUnit(Quaternion(0.0, 2.0, 0.0, 0.0))
    with pytest.raises(ValueError):
        PureUnit(Quaternion(1.0, 0.0, 0.0, 0.0))
    u = PureUnit.from_vector(1.0, 1.0, 0.0)
    assert norm(u.direction) == pytest.approx(1.0)


def test_inv_sqrt_scale():
    i = PureUnit(I)
    s = inv_sqrt_scale(i, 1.0)
    expect = np.exp(-1j * math.pi / 4) / math.sqrt(2 * math.pi)
    np.testing.assert_allclose(s.as_array(), [expect.real, expect.imag, 0, 0], atol=1e-15)
    # negative b: |2 pi b|^-1/2 e^{-3 i pi/4}
    s = inv_sqrt_scale(PureUnit(J), -2.0)
    expect = np.exp(-3j * math.pi / 4) / math.sqrt(4 * math.pi)
    np.testing.assert_allclose(s.as_array(), [expect.real, 0, expect.imag, 0], atol=1e-15)
    with pytest.raises(QuaternionDomainError):
        inv_sqrt_scale(i, 0.0)
