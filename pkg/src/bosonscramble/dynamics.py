"""Time evolution: continuous quadratic dynamics, beam-splitter circuits, V(t)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .models import (
    PassiveRandomModel,
    QuadraticHamiltonian,
    beam_splitter,
    haar_unitaries,
    normal_modes,
    passive_to_symplectic,
)
from .states import GaussianState


class EvolutionOperator:
    """``S(t) = exp(J M t)`` for ``M = diag(Mq, I)``, evaluated spectrally.

    With ``Omega = V diag(omega) V^T``::

        S(t) = [[cos(Omega t),         Omega^-1 sin(Omega t)],
                [-Omega sin(Omega t),  cos(Omega t)         ]]
    """

    def __init__(self, h: QuadraticHamiltonian):
        self.modes = normal_modes(h)
        self.n_modes = h.n_modes

    def _blocks(self, t: float, rows: np.ndarray):
        w = self.modes.omegas
        v = self.modes.V
        c = np.cos(w * t)
        s = np.sin(w * t)
        vr = v[rows]
        cos_b = (vr * c) @ v.T
        sin_over = (vr * (s / w)) @ v.T
        sin_times = (vr * (w * s)) @ v.T
        return cos_b, sin_over, sin_times

    def __call__(self, t: float) -> np.ndarray:
        return self.rows(t, range(self.n_modes))

    def rows(self, t: float, modes: Sequence[int]) -> np.ndarray:
        """Rows of ``S(t)`` for the q and p quadratures of ``modes``."""
        rows = np.asarray(list(modes), dtype=int)
        cos_b, sin_over, sin_times = self._blocks(t, rows)
        return np.block([[cos_b, sin_over], [-sin_times, cos_b]])

    def cos_block(self, t: float) -> np.ndarray:
        """``cos(Omega t)``, the q-q block of ``S(t)``."""
        w = self.modes.omegas
        return (self.modes.V * np.cos(w * t)) @ self.modes.V.T


def evolve(h: QuadraticHamiltonian | EvolutionOperator, state: GaussianState, t: float) -> GaussianState:
    op = h if isinstance(h, EvolutionOperator) else EvolutionOperator(h)
    return state.transform(op(t))


# --- circuits ---------------------------------------------------------------

POLICIES = ("balanced", "fixed-random", "resampled", "identity")


@dataclass
class CircuitSpec:
    """Brick-wall beam-splitter circuit with periodic boundary.

    Layer 1 couples modes (0,1), (2,3), ...; layer 2 couples (1,2), ...,
    (N-1, 0).  One time step applies layer 1 then layer 2.  ``fixed-random``
    draws one Haar ``U_BS`` at construction and uses it everywhere;
    ``resampled`` draws a fresh Haar ``U_BS`` per beam splitter per step.
    """

    n_modes: int
    policy: str = "balanced"
    fixed_bs: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.n_modes < 2 or self.n_modes % 2:
            raise ValueError(f"brick-wall circuit needs an even number of modes, got {self.n_modes}")
        if self.policy not in POLICIES:
            raise ValueError(f"unknown circuit policy {self.policy!r}")

    @classmethod
    def create(cls, n_modes: int, policy: str, rng: np.random.Generator | None = None) -> "CircuitSpec":
        fixed = None
        if policy == "balanced":
            fixed = beam_splitter("balanced")
        elif policy == "identity":
            fixed = beam_splitter("identity")
        elif policy == "fixed-random":
            fixed = beam_splitter("haar", rng)
        return cls(n_modes=n_modes, policy=policy, fixed_bs=fixed)

    def layer_pairs(self, layer: int) -> tuple[np.ndarray, np.ndarray]:
        first = np.arange(layer, self.n_modes, 2)
        return first, (first + 1) % self.n_modes


def _pair_blocks(us: np.ndarray) -> np.ndarray:
    """Per-pair 4x4 orthogonal blocks acting on (q_a, q_b, p_a, p_b)."""
    re, im = us.real, us.imag
    top = np.concatenate([re, -im], axis=2)
    bottom = np.concatenate([im, re], axis=2)
    return np.concatenate([top, bottom], axis=1)


def _apply_rows(mat: np.ndarray, n: int, a: np.ndarray, b: np.ndarray, blocks: np.ndarray) -> np.ndarray:
    idx = np.stack([a, b, a + n, b + n], axis=1)
    rows = mat[idx]
    out = mat.copy()
    out[idx] = np.einsum("pij,pjk->pik", blocks, rows)
    return out


def _layer_unitaries(spec: CircuitSpec, count: int, rng: np.random.Generator | None) -> np.ndarray:
    if spec.policy == "resampled":
        if rng is None:
            raise ValueError("the resampled policy needs an rng")
        return haar_unitaries(count, 2, rng)
    return np.broadcast_to(spec.fixed_bs, (count, 2, 2))


def circuit_step(state: GaussianState, spec: CircuitSpec, rng: np.random.Generator | None = None) -> GaussianState:
    """One time step (two beam-splitter layers) of the brick-wall circuit."""
    n = spec.n_modes
    if state.n_modes != n:
        raise ValueError("state and circuit sizes differ")
    factor = state.factor
    cov = None if factor is not None else state.cov
    for layer in (0, 1):
        a, b = spec.layer_pairs(layer)
        blocks = _pair_blocks(_layer_unitaries(spec, len(a), rng))
        if factor is not None:
            factor = _apply_rows(factor, n, a, b, blocks)
        else:
            cov = _apply_rows(cov, n, a, b, blocks)
            cov = _apply_rows(cov.T, n, a, b, blocks).T
    if factor is not None:
        return GaussianState(factor=factor)
    return GaussianState(cov=0.5 * (cov + cov.T))


# --- passive non-local model -------------------------------------------------

def transfer_matrix(model: PassiveRandomModel, t: float) -> np.ndarray:
    """``V(t) = U diag(exp(-i omega t)) U^dag``."""
    return (model.U * np.exp(-1j * model.omegas * t)) @ model.U.conj().T


class TransferMatrixSeries:
    def __init__(self, model: PassiveRandomModel):
        self.model = model

    def __call__(self, t: float) -> np.ndarray:
        return transfer_matrix(self.model, t)


def evolve_passive(state: GaussianState, v: np.ndarray) -> GaussianState:
    if v.shape != (state.n_modes, state.n_modes):
        raise ValueError("transfer matrix size does not match the state")
    return state.transform(passive_to_symplectic(v))
