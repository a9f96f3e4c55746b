"""Von Neumann and Renyi-2 entropies, mutual information and TMI (all in nats)."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .states import GaussianState, reduce
from .symplectic import (
    CLAMP_TOL,
    UnphysicalStateError,
    symplectic_eigenvalues,
    symplectic_eigenvalues_from_factor,
)


class EntropyKind(str, enum.Enum):
    VON_NEUMANN = "vonNeumann"
    RENYI2 = "renyi2"


def _as_state(state) -> GaussianState:
    return state if isinstance(state, GaussianState) else GaussianState(cov=np.asarray(state, dtype=float))


def entropy_from_symplectic(nu: np.ndarray) -> float:
    """``sum_k x ln x - y ln y`` with ``x = (nu+1)/2``, ``y = (nu-1)/2``.

    Written as ``ln x + y log1p(1/y)`` so large ``nu`` does not cancel.
    """
    nu = np.asarray(nu, dtype=float)
    if np.any(nu < 1.0 - CLAMP_TOL):
        raise UnphysicalStateError(f"symplectic eigenvalue {nu.min():.3g} < 1")
    y = np.maximum(nu - 1.0, 0.0) / 2.0
    x = y + 1.0
    out = np.log(x)
    mixed = y >= 1e-12 / 2.0
    out[mixed] += y[mixed] * np.log1p(1.0 / y[mixed])
    out[~mixed] = 0.0
    return float(np.sum(out))


def von_neumann_entropy(state) -> float:
    state = _as_state(state)
    if state.factor is not None:
        nu = symplectic_eigenvalues_from_factor(state.factor)
    else:
        nu = symplectic_eigenvalues(state.cov)
    return entropy_from_symplectic(nu)


def _log_det(state: GaussianState) -> float:
    if state.factor is not None:
        r = np.linalg.qr(state.factor.T, mode="r")
        d = np.abs(np.diag(r))
        if np.any(d == 0):
            raise UnphysicalStateError("covariance matrix is singular")
        return 2.0 * float(np.sum(np.log(d)))
    try:
        low = np.linalg.cholesky(state.cov)
    except np.linalg.LinAlgError:
        sign, logdet = np.linalg.slogdet(state.cov)
        if sign <= 0:
            raise UnphysicalStateError("covariance matrix is not positive definite") from None
        return float(logdet)
    return 2.0 * float(np.sum(np.log(np.diag(low))))


def renyi2_entropy(state) -> float:
    """``S2 = 1/2 ln det sigma`` from a triangular factor (no determinant overflow)."""
    return 0.5 * _log_det(_as_state(state))


def entropy(state, kind: EntropyKind | str = EntropyKind.VON_NEUMANN) -> float:
    kind = EntropyKind(kind)
    if kind is EntropyKind.VON_NEUMANN:
        return von_neumann_entropy(state)
    return renyi2_entropy(state)


def block_entropy(state: GaussianState, modes: Sequence[int],
                  kind: EntropyKind | str = EntropyKind.VON_NEUMANN) -> float:
    return entropy(reduce(state, modes), kind)


def _disjoint(*blocks: Sequence[int]) -> None:
    seen: set[int] = set()
    for block in blocks:
        block = set(block)
        if seen & block:
            raise ValueError("subsystems overlap")
        seen |= block


def mutual_information(state: GaussianState, a: Sequence[int], b: Sequence[int],
                       kind: EntropyKind | str = EntropyKind.VON_NEUMANN) -> float:
    """``I2(A:B) = S_A + S_B - S_AB``."""
    _disjoint(a, b)
    a, b = list(a), list(b)
    return (block_entropy(state, a, kind) + block_entropy(state, b, kind)
            - block_entropy(state, a + b, kind))


def tripartite_mi(state: GaussianState, a: Sequence[int], b: Sequence[int], c: Sequence[int],
                  kind: EntropyKind | str = EntropyKind.VON_NEUMANN) -> float:
    """``I3 = I2(A:B) + I2(A:C) - I2(A:BC)``; seven block entropies."""
    return tmi_terms(state, a, b, c, kind)["I3"]


def tmi_terms(state: GaussianState, a: Sequence[int], b: Sequence[int], c: Sequence[int],
              kind: EntropyKind | str = EntropyKind.VON_NEUMANN) -> dict[str, float]:
    """All pieces of the TMI, each block entropy computed once."""
    _disjoint(a, b, c)
    a, b, c = list(a), list(b), list(c)
    s = {name: block_entropy(state, modes, kind) for name, modes in
         (("A", a), ("B", b), ("C", c), ("AB", a + b), ("AC", a + c),
          ("BC", b + c), ("ABC", a + b + c))}
    i_ab = s["A"] + s["B"] - s["AB"]
    i_ac = s["A"] + s["C"] - s["AC"]
    i_abc = s["A"] + s["BC"] - s["ABC"]
    return {"I2_AB": i_ab, "I2_AC": i_ac, "I2_A_BC": i_abc, "I3": i_ab + i_ac - i_abc}


@dataclass(frozen=True)
class Partition:
    """Named disjoint blocks of a chain of ``n_modes`` modes (0-based)."""

    n_modes: int
    blocks: dict

    def __post_init__(self):
        _disjoint(*self.blocks.values())
        for name, modes in self.blocks.items():
            if not modes or min(modes) < 0 or max(modes) >= self.n_modes:
                raise ValueError(f"block {name!r} does not fit in {self.n_modes} modes")

    def __getitem__(self, name: str) -> list[int]:
        return list(self.blocks[name])

    @classmethod
    def contiguous(cls, n_modes: int, sizes: dict, gaps: dict | None = None,
                   start: int = 0) -> "Partition":
        """Consecutive blocks in insertion order; ``gaps[name]`` modes are skipped before ``name``."""
        gaps = gaps or {}
        blocks = {}
        pos = start
        for name, size in sizes.items():
            pos += gaps.get(name, 0)
            blocks[name] = list(range(pos, pos + size))
            pos += size
        if pos > n_modes:
            raise ValueError(f"partition needs {pos} modes but the system has {n_modes}")
        return cls(n_modes=n_modes, blocks=blocks)
