"""Zero-mean Gaussian states described by their covariance matrix."""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from .models import QuadraticHamiltonian, normal_modes


class GaussianState:
    """Covariance matrix of an N-mode state, quadratures ordered (q.., p..).

    A state may be given by ``cov`` directly or by a factor ``F`` with
    ``cov = F F^T`` (``cov`` is then assembled lazily).  Builders and
    transformations keep the factor whenever one is available; entropy
    routines prefer it because it survives squeezing levels where the
    assembled covariance matrix has already lost its small eigen-directions.
    """

    def __init__(self, cov: np.ndarray | None = None, factor: np.ndarray | None = None):
        if cov is None and factor is None:
            raise ValueError("need a covariance matrix or a factor")
        arr = factor if cov is None else cov
        if arr.ndim != 2 or arr.shape[0] % 2 or (cov is not None and arr.shape[0] != arr.shape[1]):
            raise ValueError(f"covariance must be square with even size, got {arr.shape}")
        if cov is not None:
            self.__dict__["cov"] = np.asarray(cov, dtype=float)
        self.factor = None if factor is None else np.asarray(factor, dtype=float)
        self.n_modes = arr.shape[0] // 2

    @cached_property
    def cov(self) -> np.ndarray:
        return self.factor @ self.factor.T

    @classmethod
    def from_factor(cls, factor: np.ndarray) -> "GaussianState":
        return cls(factor=factor)

    def transform(self, s: np.ndarray) -> "GaussianState":
        """Apply a linear phase-space map, ``sigma -> S sigma S^T``."""
        if self.factor is not None:
            return GaussianState(factor=s @ self.factor)
        return GaussianState(cov=s @ self.cov @ s.T)

    def __repr__(self) -> str:
        return f"GaussianState(n_modes={self.n_modes}, factor={self.factor is not None})"


def _quad_index(n: int, modes: Sequence[int]) -> np.ndarray:
    modes = np.asarray(modes, dtype=int)
    return np.concatenate([modes, modes + n])


def vacuum(n: int) -> GaussianState:
    if n < 1:
        raise ValueError("need at least one mode")
    return GaussianState.from_factor(np.eye(n * 2))


def squeezed_vacuum(lambdas: Sequence[float]) -> GaussianState:
    """Product of squeezed vacua, ``diag(e^{-2 lambda}, e^{2 lambda})`` per mode."""
    lam = np.asarray(lambdas, dtype=float)
    if lam.ndim != 1 or not np.all(np.isfinite(lam)):
        raise ValueError("squeezing parameters must be a finite 1-d sequence")
    return GaussianState.from_factor(np.diag(np.concatenate([np.exp(-lam), np.exp(lam)])))


def thermal(nus: Sequence[float]) -> GaussianState:
    nu = np.asarray(nus, dtype=float)
    if np.any(nu < 1.0):
        raise ValueError("thermal symplectic eigenvalues must be >= 1")
    return GaussianState.from_factor(np.diag(np.sqrt(np.concatenate([nu, nu]))))


def add_vacuum_noise(state: GaussianState, units: float) -> GaussianState:
    """``sigma -> sigma + units * I`` (``units = 1`` adds one vacuum unit)."""
    if units < 0:
        raise ValueError("noise units must be nonnegative")
    if units == 0:
        return state
    dim = state.cov.shape[0]
    if state.factor is None:
        return GaussianState(cov=state.cov + units * np.eye(dim))
    # QR compresses [F, sqrt(u) I] back to a square triangular factor
    wide = np.hstack([state.factor, np.sqrt(units) * np.eye(dim)])
    return GaussianState.from_factor(np.linalg.qr(wide.T, mode="r").T)


def reduce(state: GaussianState, modes: Sequence[int]) -> GaussianState:
    """Reduced state on ``modes`` (0-based, in the given order)."""
    modes = list(modes)
    n = state.n_modes
    if not modes:
        raise ValueError("cannot reduce to an empty set of modes")
    if len(set(modes)) != len(modes):
        raise ValueError("duplicate mode indices")
    if min(modes) < 0 or max(modes) >= n:
        raise ValueError(f"mode index out of range for {n} modes")
    idx = _quad_index(n, modes)
    if state.factor is not None:
        return GaussianState(factor=state.factor[idx])
    return GaussianState(cov=state.cov[np.ix_(idx, idx)])


def ground_state(h: QuadraticHamiltonian) -> GaussianState:
    """Ground state ``sigma = S S^T`` from the normal-mode symplectic ``S``.

    For ``M = diag(Mq, I)`` this is ``diag(Mq^{-1/2}, Mq^{1/2})``.
    """
    nm = normal_modes(h)
    return GaussianState.from_factor(nm.S)
