"""Classical sampling of Gaussian Wigner functions.

With the vacuum normalized to ``sigma = I`` the Wigner function is
proportional to ``exp(-a^T sigma^-1 a)``, i.e. a Gaussian density with
covariance ``sigma / 2`` (not ``sigma``).  Its differential entropy is
``S2 + N (1 + ln pi)`` where ``S2 = 1/2 ln det sigma``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .entropy import renyi2_entropy
from .states import GaussianState
from .symplectic import UnphysicalStateError


@dataclass
class WignerSampleSet:
    samples: np.ndarray
    metadata: dict = field(default_factory=dict)

    @property
    def n_samples(self) -> int:
        return self.samples.shape[0]

    @property
    def dim(self) -> int:
        return self.samples.shape[1]


def _wigner_factor(state: GaussianState) -> np.ndarray:
    if state.factor is not None:
        return state.factor / np.sqrt(2.0)
    try:
        return np.linalg.cholesky(0.5 * state.cov)
    except np.linalg.LinAlgError:
        raise UnphysicalStateError("covariance matrix is not positive definite") from None


def sample_wigner(state: GaussianState, n: int, rng: np.random.Generator) -> WignerSampleSet:
    """``n`` phase-space points drawn from the Wigner density of ``state``."""
    if n < 1:
        raise ValueError("need at least one sample")
    f = _wigner_factor(state)
    z = rng.standard_normal((n, f.shape[1]))
    return WignerSampleSet(samples=z @ f.T, metadata={"n_modes": state.n_modes})


def _gaussian_entropy(cov: np.ndarray) -> float:
    dim = cov.shape[0]
    sign, logdet = np.linalg.slogdet(cov)
    if sign <= 0:
        raise np.linalg.LinAlgError("sample covariance is singular")
    return 0.5 * (dim * np.log(2.0 * np.pi * np.e) + logdet)


def plugin_shannon_entropy(ws: WignerSampleSet, blocks: int = 20) -> tuple[float, float]:
    """Gaussian plug-in differential entropy (nats) with a jackknife error.

    The jackknife is taken over ``blocks`` contiguous groups of samples.
    """
    x = ws.samples
    n, dim = x.shape
    if n < dim + 1:
        raise ValueError(f"need at least {dim + 1} samples for a {dim}-dimensional estimate")
    est = _gaussian_entropy(np.cov(x, rowvar=False).reshape(dim, dim))
    blocks = min(blocks, n)
    edges = np.linspace(0, n, blocks + 1).astype(int)
    # sufficient statistics per block make leave-one-block-out cheap
    sums = np.stack([x[a:b].sum(axis=0) for a, b in zip(edges[:-1], edges[1:])])
    outer = np.stack([x[a:b].T @ x[a:b] for a, b in zip(edges[:-1], edges[1:])])
    counts = np.diff(edges)
    tot_s, tot_o, tot_n = sums.sum(axis=0), outer.sum(axis=0), n
    loo = np.empty(blocks)
    for i in range(blocks):
        m = tot_n - counts[i]
        mean = (tot_s - sums[i]) / m
        cov = ((tot_o - outer[i]) - m * np.outer(mean, mean)) / (m - 1)
        loo[i] = _gaussian_entropy(cov)
    se = np.sqrt((blocks - 1) / blocks * np.sum((loo - loo.mean()) ** 2))
    return float(est), float(se)


@dataclass(frozen=True)
class CorrespondenceReport:
    estimate: float
    std_error: float
    predicted: float
    n_samples: int

    @property
    def z_score(self) -> float:
        return (self.estimate - self.predicted) / self.std_error


def renyi2_correspondence_check(state: GaussianState, n: int, rng: np.random.Generator) -> CorrespondenceReport:
    """Compare the sampled Wigner entropy with ``S2 + N (1 + ln pi)``."""
    est, se = plugin_shannon_entropy(sample_wigner(state, n, rng))
    predicted = float(renyi2_entropy(state) + state.n_modes * (1.0 + np.log(np.pi)))
    return CorrespondenceReport(estimate=est, std_error=se, predicted=predicted, n_samples=n)
