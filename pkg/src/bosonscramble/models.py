"""Hamiltonian families, random ensembles and passive transfer matrices.

Every Hamiltonian here has the form ``H = 1/2 r^T M r`` with
``M = [[Mq, Mqp], [Mqp^T, Mp]]``.  All constructed models use ``Mqp = 0`` and
``Mp = I``.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np


# --- seeded randomness -----------------------------------------------------

def derive_rng(master_seed: int, label: str = "", index: int = 0) -> np.random.Generator:
    """Independent generator for ``(master_seed, label, index)``.

    The stream depends only on these three values, so ensembles are
    reproducible regardless of the order in which samples are evaluated.
    """
    seq = np.random.SeedSequence(
        entropy=int(master_seed) & (2**64 - 1),
        spawn_key=(zlib.crc32(label.encode("utf-8")), int(index)),
    )
    return np.random.Generator(np.random.PCG64(seq))


def sample_distribution(spec: Mapping[str, Any], size: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``size`` values from a distribution spec.

    Supported specs::

        {"kind": "uniform", "low": a, "high": b}
        {"kind": "exponential", "rate": r, "offset": c}
        {"kind": "constant", "value": v}
    """
    kind = spec["kind"]
    if kind == "uniform":
        return rng.uniform(spec["low"], spec["high"], size=size)
    if kind == "exponential":
        return rng.exponential(1.0 / spec["rate"], size=size) + spec.get("offset", 0.0)
    if kind == "constant":
        return np.full(size, float(spec["value"]))
    raise ValueError(f"unknown distribution kind {kind!r}")


# --- Hamiltonians ----------------------------------------------------------

@dataclass(frozen=True)
class QuadraticHamiltonian:
    mq: np.ndarray
    mp: np.ndarray
    mqp: np.ndarray
    metadata: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_mq(cls, mq: np.ndarray, **metadata) -> "QuadraticHamiltonian":
        n = mq.shape[0]
        return cls(mq=mq, mp=np.eye(n), mqp=np.zeros((n, n)), metadata=dict(metadata))

    @property
    def n_modes(self) -> int:
        return self.mq.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return np.block([[self.mq, self.mqp], [self.mqp.T, self.mp]])

    @property
    def is_standard_form(self) -> bool:
        """True for the ``M = diag(Mq, I)`` family used by all models."""
        n = self.n_modes
        return bool(np.all(self.mqp == 0) and np.array_equal(self.mp, np.eye(n)))


def _chain_mq(mass: float, couplings: np.ndarray) -> np.ndarray:
    """Periodic chain ``m^2 q_n^2 + J_n (q_{n+1} - q_n)^2`` as a matrix."""
    n = len(couplings)
    mq = np.diag(np.full(n, mass**2))
    for site, coupling in enumerate(couplings):
        nxt = (site + 1) % n
        mq[site, site] += coupling
        mq[nxt, nxt] += coupling
        mq[site, nxt] -= coupling
        mq[nxt, site] -= coupling
    return mq


def hl_hamiltonian(n: int, m: float) -> QuadraticHamiltonian:
    """Harmonic lattice: ``Mq = circ(m^2 + 2, -1, 0, ..., 0, -1)``, unit spacing."""
    if n < 2:
        raise ValueError("the harmonic lattice needs at least two sites")
    if m <= 0:
        raise ValueError("mass must be positive")
    return QuadraticHamiltonian.from_mq(_chain_mq(m, np.ones(n)), model="HL", m=m)


def dhl_hamiltonian(n: int, m: float, j_low: float, j_high: float,
                    rng: np.random.Generator) -> QuadraticHamiltonian:
    """Disordered harmonic lattice with bond couplings ``J_n ~ U(j_low, j_high)``.

    The couplings are drawn once and fixed; ``j_low == j_high`` gives the
    uniform chain without consuming randomness.
    """
    if not 0 <= j_low <= j_high:
        raise ValueError("need 0 <= j_low <= j_high")
    if j_low == j_high:
        couplings = np.full(n, float(j_low))
    else:
        couplings = rng.uniform(j_low, j_high, size=n)
    return QuadraticHamiltonian.from_mq(_chain_mq(m, couplings), model="DHL", m=m,
                                        couplings=couplings)


def goe_sample(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """GOE matrix ``(G + G^T)/2``; off-diagonal variance ``scale^2/2``, diagonal ``scale^2``."""
    g = rng.standard_normal((n, n))
    return scale * 0.5 * (g + g.T)


def gue_sample(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """GUE matrix ``(G + G^dag)/2`` with complex standard normal ``G``.

    ``G`` has ``E|G_ij|^2 = 1``, so both the diagonal variance and
    ``E|H_ij|^2`` off the diagonal equal ``scale^2/2``.
    """
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    return scale * 0.5 * (g + g.conj().T)


def random_mq_hamiltonian(n: int, ensemble: str, rng: np.random.Generator,
                          scale: float = 1.0, shift_margin: float = 0.1) -> QuadraticHamiltonian:
    """Non-local random model with ``Mq`` drawn from GOE or GUE.

    The sample is shifted by ``|lambda_min| + shift_margin`` to make ``M``
    positive definite.  For GUE only the real part enters: the imaginary
    antisymmetric part drops out of ``q^T Mq q``.
    """
    if n < 2:
        raise ValueError("need at least two modes")
    ensemble = ensemble.upper()
    if ensemble == "GOE":
        a = goe_sample(n, rng, scale)
    elif ensemble == "GUE":
        a = gue_sample(n, rng, scale).real
    else:
        raise ValueError(f"unknown ensemble {ensemble!r}")
    shift = abs(np.linalg.eigvalsh(a)[0]) + shift_margin
    mq = a + shift * np.eye(n)
    return QuadraticHamiltonian.from_mq(mq, model=ensemble, scale=scale, shift=shift)


# --- normal modes ----------------------------------------------------------

@dataclass(frozen=True)
class NormalModes:
    omegas: np.ndarray
    V: np.ndarray

    @property
    def S(self) -> np.ndarray:
        """Symplectic ``S`` with ``S^T M S = diag(omega, omega)``."""
        sq = self.V / np.sqrt(self.omegas)
        sp = self.V * np.sqrt(self.omegas)
        n = len(self.omegas)
        zero = np.zeros((n, n))
        return np.block([[sq, zero], [zero, sp]])


def normal_modes(h: QuadraticHamiltonian) -> NormalModes:
    """Diagonalize ``Mq = V diag(omega^2) V^T``; frequencies ascending."""
    if not h.is_standard_form:
        raise NotImplementedError("normal modes are only implemented for M = diag(Mq, I)")
    w2, v = np.linalg.eigh(h.mq)
    if w2[0] <= 0:
        raise ValueError("Mq is not positive definite")
    return NormalModes(omegas=np.sqrt(w2), V=v)


# --- passive transformations ----------------------------------------------

def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random ``U(n)`` via QR of a complex Ginibre matrix."""
    return haar_unitaries(1, n, rng)[0]


def haar_unitaries(count: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` independent Haar ``U(n)`` matrices, shape ``(count, n, n)``.

    The phases of ``diag(R)`` are moved into ``Q`` so the result is Haar
    distributed rather than biased by the QR sign convention.
    """
    shape = (count, n, n)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=1, axis2=2)
    return q * (d / np.abs(d))[:, None, :]


BALANCED_BS = np.array([[1.0, 1.0j], [1.0j, 1.0]]) / np.sqrt(2.0)


def beam_splitter(policy: str = "balanced", rng: np.random.Generator | None = None) -> np.ndarray:
    """2x2 beam-splitter transfer matrix: ``(I + iX)/sqrt 2`` or Haar on U(2)."""
    if policy == "balanced":
        return BALANCED_BS.copy()
    if policy in ("haar", "haar_random"):
        if rng is None:
            raise ValueError("a Haar beam splitter needs an rng")
        return haar_unitary(2, rng)
    if policy == "identity":
        return np.eye(2, dtype=complex)
    raise ValueError(f"unknown beam-splitter policy {policy!r}")


def passive_to_symplectic(u: np.ndarray, atol: float = 1e-10) -> np.ndarray:
    """Orthogonal symplectic ``[[Re U, -Im U], [Im U, Re U]]`` for ``a -> U a``."""
    u = np.asarray(u, dtype=complex)
    if np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) > atol:
        raise ValueError("transfer matrix is not unitary")
    return np.block([[u.real, -u.imag], [u.imag, u.real]])


@dataclass(frozen=True)
class PassiveRandomModel:
    """``H = U_p H_D U_p^dag`` with Haar ``U`` and frequencies ``omegas``."""

    U: np.ndarray
    omegas: np.ndarray

    @property
    def n_modes(self) -> int:
        return len(self.omegas)


DEFAULT_OMEGA_DIST = {"kind": "uniform", "low": 0.5, "high": 1.5}


def passive_random_model(n: int, rng: np.random.Generator,
                         omega_dist: Mapping[str, Any] = DEFAULT_OMEGA_DIST) -> PassiveRandomModel:
    u = haar_unitary(n, rng)
    omegas = sample_distribution(omega_dist, n, rng)
    if np.any(omegas <= 0):
        raise ValueError("frequency distribution produced non-positive values")
    return PassiveRandomModel(U=u, omegas=omegas)
