from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bosonscramble.symplectic import (
    UnphysicalStateError,
    is_classical,
    is_symplectic,
    is_valid_covariance,
    symplectic_eigenvalues,
    symplectic_eigenvalues_from_factor,
    symplectic_form,
    williamson,
)

from conftest import random_covariance, random_symplectic, two_mode_squeezed_cov


def test_form_small_cases():
    np.testing.assert_array_equal(symplectic_form(1), [[0, 1], [-1, 0]])
    j = symplectic_form(2)
    assert j[0, 2] == j[1, 3] == 1 and j[2, 0] == j[3, 1] == -1
    for n in (1, 3, 7):
        j = symplectic_form(n)
        np.testing.assert_array_equal(j @ j, -np.eye(2 * n))
        np.testing.assert_array_equal(j.T, -j)


def test_form_rejects_zero():
    with pytest.raises(ValueError):
        symplectic_form(0)


@pytest.mark.parametrize("sigma, expected", [
    (np.eye(2), [1.0]),
    (np.diag([np.exp(-2), np.exp(2)]), [1.0]),
    (np.diag([3.0, 3.0]), [3.0]),
])
def test_eigenvalues_simple(sigma, expected):
    np.testing.assert_allclose(symplectic_eigenvalues(sigma), expected, atol=1e-12)


def test_eigenvalues_two_mode_squeezed_reduction():
    lam = 0.7
    sigma = two_mode_squeezed_cov(lam)
    one = sigma[np.ix_([0, 2], [0, 2])]
    np.testing.assert_allclose(symplectic_eigenvalues(one), [np.cosh(2 * lam)], rtol=1e-12)
    np.testing.assert_allclose(symplectic_eigenvalues(sigma), [1.0, 1.0], atol=1e-9)


def test_eigenvalues_reject_malformed():
    with pytest.raises(ValueError):
        symplectic_eigenvalues(np.array([[1.0, 5.0], [-5.0, 1.0]]))


def test_factor_route_matches_assembled(rng):
    for _ in range(10):
        f = random_symplectic(3, rng) @ np.diag(np.sqrt(np.repeat(rng.uniform(1, 4, 3), 2)))
        np.testing.assert_allclose(symplectic_eigenvalues_from_factor(f),
                                   symplectic_eigenvalues(f @ f.T), rtol=1e-9)


def test_williamson_thermal_is_trivial():
    res = williamson(np.diag([2.0, 5.0, 2.0, 5.0]))
    np.testing.assert_allclose(res.nu, [2.0, 5.0])
    # S is fixed up to a rotation inside each mode's (q, p) plane
    assert is_symplectic(res.S)
    np.testing.assert_allclose(res.S @ res.S.T, np.eye(4), atol=1e-12)


def test_williamson_known_factors(rng):
    s0 = random_symplectic(2, rng)
    sigma = s0 @ np.diag([2.0, 3.0, 2.0, 3.0]) @ s0.T
    res = williamson(sigma)
    np.testing.assert_allclose(res.nu, [2.0, 3.0], rtol=1e-9)
    assert is_symplectic(res.S)
    np.testing.assert_allclose(res.reconstruct(), sigma, rtol=1e-9, atol=1e-9)


def test_williamson_vacuum_degenerate():
    res = williamson(np.eye(6))
    np.testing.assert_allclose(res.nu, np.ones(3))
    np.testing.assert_allclose(res.reconstruct(), np.eye(6), atol=1e-12)


def test_williamson_rejects_indefinite():
    with pytest.raises(UnphysicalStateError):
        williamson(np.diag([1.0, -1.0]))


def test_validity_and_classicality():
    assert is_valid_covariance(np.eye(2))
    assert not is_valid_covariance(np.diag([0.5, 0.5]))
    assert not is_valid_covariance(np.array([[1.0, 0.1], [0.0, 1.0]]))
    for lam in (0.1, 1.0, 5.0, 10.0):
        assert is_valid_covariance(np.diag([np.exp(-2 * lam), np.exp(2 * lam)]))
    assert is_classical(np.eye(2))
    assert not is_classical(np.diag([np.exp(-2), np.exp(2)]))
    assert is_classical(np.diag([np.exp(-2) + 1, np.exp(2) + 1]))


def test_clamp_only_within_tolerance():
    np.testing.assert_array_equal(symplectic_eigenvalues(np.diag([1 - 1e-11, 1 - 1e-11])), [1.0])
    nu = symplectic_eigenvalues(np.diag([0.9, 0.9]))
    assert nu[0] == pytest.approx(0.9)


@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6), pure=st.booleans())
def test_williamson_properties(seed, n, pure):
    rng = np.random.default_rng(seed)
    sigma = random_covariance(n, rng, "pure" if pure else "mixed")
    res = williamson(sigma)
    rel = np.max(np.abs(res.reconstruct() - sigma)) / np.max(np.abs(sigma))
    assert rel < 1e-8
    assert is_symplectic(res.S, 1e-10 * max(1.0, np.max(np.abs(res.S)) ** 2))
    if pure:
        np.testing.assert_allclose(res.nu, 1.0, atol=1e-8)


@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 5))
def test_symplectic_invariance(seed, n):
    rng = np.random.default_rng(seed)
    sigma = random_covariance(n, rng)
    s = random_symplectic(n, rng)
    np.testing.assert_allclose(symplectic_eigenvalues(s @ sigma @ s.T),
                               symplectic_eigenvalues(sigma), rtol=1e-8)
