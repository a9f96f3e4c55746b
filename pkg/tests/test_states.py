from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bosonscramble.entropy import von_neumann_entropy
from bosonscramble.models import hl_hamiltonian
from bosonscramble.states import (
    GaussianState,
    add_vacuum_noise,
    ground_state,
    reduce,
    squeezed_vacuum,
    thermal,
    vacuum,
)
from bosonscramble.symplectic import is_classical, is_valid_covariance, symplectic_eigenvalues


def test_vacuum_is_identity():
    np.testing.assert_array_equal(vacuum(3).cov, np.eye(6))
    with pytest.raises(ValueError):
        vacuum(0)


def test_squeezed_layout():
    cov = squeezed_vacuum([1.0, -1.0]).cov
    np.testing.assert_allclose(np.diag(cov), [np.exp(-2), np.exp(2), np.exp(2), np.exp(-2)])
    assert np.count_nonzero(cov - np.diag(np.diag(cov))) == 0


def test_thermal_entropy():
    st_ = thermal([3.0])
    np.testing.assert_allclose(st_.cov, 3 * np.eye(2))
    assert von_neumann_entropy(st_) == pytest.approx(2 * np.log(2), rel=1e-12)
    with pytest.raises(ValueError):
        thermal([0.5])


def test_noise_makes_classical():
    st_ = add_vacuum_noise(squeezed_vacuum([1.0]), 1.0)
    np.testing.assert_allclose(st_.cov, np.diag([np.exp(-2) + 1, np.exp(2) + 1]), rtol=1e-12)
    assert is_classical(st_.cov)
    assert add_vacuum_noise(vacuum(1), 0.0).cov is not None
    with pytest.raises(ValueError):
        add_vacuum_noise(vacuum(1), -1.0)


def test_noise_factor_compression_matches_sum(rng):
    f = rng.normal(size=(8, 8))
    st_ = add_vacuum_noise(GaussianState.from_factor(f), 0.7)
    assert st_.factor.shape == (8, 8)
    np.testing.assert_allclose(st_.cov, f @ f.T + 0.7 * np.eye(8), rtol=1e-12, atol=1e-12)


def test_reduce_selects_and_permutes():
    st_ = squeezed_vacuum([0.1, 0.2, 0.3])
    r = reduce(st_, [2, 0])
    np.testing.assert_allclose(np.diag(r.cov), np.exp([-0.6, -0.2, 0.6, 0.2]))
    for bad in ([], [0, 0], [3], [-1]):
        with pytest.raises(ValueError):
            reduce(st_, bad)


def test_ground_state_single_mode():
    # N = 2 chain with m = 2 has Mq = [[6, -2], [-2, 6]]; check against the matrix root
    h = hl_hamiltonian(2, 2.0)
    w, v = np.linalg.eigh(h.mq)
    expect = np.block([[v @ np.diag(w ** -0.5) @ v.T, np.zeros((2, 2))],
                       [np.zeros((2, 2)), v @ np.diag(w ** 0.5) @ v.T]])
    np.testing.assert_allclose(ground_state(h).cov, expect, rtol=1e-12)


def test_ground_state_pure_and_minimal(rng):
    h = hl_hamiltonian(4, 1.3)
    g = ground_state(h)
    np.testing.assert_allclose(symplectic_eigenvalues(g.cov), 1.0, atol=1e-10)
    energy = np.trace(h.matrix @ g.cov)
    for _ in range(20):
        # any other pure state: symplectic image of the ground state
        from conftest import random_symplectic
        s = random_symplectic(4, rng, 0.3)
        assert np.trace(h.matrix @ s @ g.cov @ s.T) >= energy - 1e-10


def test_state_validation():
    with pytest.raises(ValueError):
        GaussianState(cov=np.eye(3))
    with pytest.raises(ValueError):
        GaussianState()


@given(lam=st.lists(st.floats(-10, 10), min_size=1, max_size=6), noise=st.floats(0, 3))
def test_builders_physical(lam, noise):
    st_ = add_vacuum_noise(squeezed_vacuum(lam), noise)
    assert is_valid_covariance(st_.cov, 1e-6)
