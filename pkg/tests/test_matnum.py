import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from schatten.errors import InputError
from schatten.matnum import check_p, in_ball, schatten_norm, singular_values


def test_singular_values_match_lapack():
    rng = np.random.default_rng(1)
    for n in (1, 2, 5, 17, 64):
        A = rng.standard_normal((n, n))
        ref = np.linalg.svd(A, compute_uv=False)
        assert np.allclose(singular_values(A), ref, rtol=1e-13, atol=1e-13 * ref[0])


def test_complex_singular_values_match_lapack():
    rng = np.random.default_rng(2)
    A = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    ref = np.linalg.svd(A, compute_uv=False)
    assert np.allclose(singular_values(A), ref, rtol=1e-13)


def test_batched_shape_and_order():
    rng = np.random.default_rng(3)
    A = rng.standard_normal((4, 3, 3, 3))
    s = singular_values(A)
    assert s.shape == (4, 3, 3)
    assert np.all(np.diff(s, axis=-1) <= 0)


def test_known_norms():
    A = np.diag([3.0, 4.0])
    assert schatten_norm(A, 1) == pytest.approx(7.0, abs=1e-14)
    assert schatten_norm(A, 2) == pytest.approx(5.0, abs=1e-14)
    assert schatten_norm(A, math.inf) == pytest.approx(4.0, abs=1e-14)
    assert schatten_norm(A, 0.5) == pytest.approx((math.sqrt(3) + 2) ** 2, rel=1e-14)


def test_unitary_has_unit_singular_values():
    Q, _ = np.linalg.qr(np.random.default_rng(4).standard_normal((7, 7)))
    assert np.allclose(singular_values(Q), 1.0, atol=1e-14)


def test_zero_and_rank_one():
    assert schatten_norm(np.zeros((3, 3)), 1.5) == 0.0
    u = np.arange(1.0, 4.0)
    A = np.outer(u, u)
    for p in (0.5, 1, 3, math.inf):
        assert schatten_norm(A, p) == pytest.approx(u @ u, rel=1e-13)


@pytest.mark.parametrize("bad", [0, -1, float("nan"), "x"])
def test_bad_p(bad):
    with pytest.raises(InputError):
        check_p(bad)


def test_non_square_rejected():
    with pytest.raises(InputError):
        singular_values(np.ones((2, 3)))


def test_in_ball():
    assert in_ball(np.eye(2) / 2, 1)
    assert not in_ball(np.eye(2), 1)


@settings(max_examples=40, deadline=None)
@given(arrays(np.float64, (4, 4), elements=st.floats(-10, 10)), st.floats(0.3, 8))
def test_frobenius_and_monotone_in_p(A, p):
    assert schatten_norm(A, 2) == pytest.approx(np.linalg.norm(A), rel=1e-12, abs=1e-12)
    # norms decrease in p
    assert schatten_norm(A, p) >= schatten_norm(A, p + 1) * (1 - 1e-12) - 1e-12


@settings(max_examples=30, deadline=None)
@given(arrays(np.float64, (3, 3), elements=st.floats(-5, 5)), st.floats(1, 6), st.floats(-3, 3))
def test_homogeneity_and_transpose(A, p, c):
    assert schatten_norm(c * A, p) == pytest.approx(abs(c) * schatten_norm(A, p), rel=1e-12, abs=1e-12)
    assert schatten_norm(A.T, p) == pytest.approx(schatten_norm(A, p), rel=1e-12, abs=1e-12)
