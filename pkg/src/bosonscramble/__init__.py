"""Information scrambling in N-mode bosonic Gaussian dynamics."""

from __future__ import annotations

__version__ = "0.1.0"

from .entropy import (
    EntropyKind,
    Partition,
    block_entropy,
    mutual_information,
    renyi2_entropy,
    tmi_terms,
    tripartite_mi,
    von_neumann_entropy,
)
from .models import (
    QuadraticHamiltonian,
    derive_rng,
    dhl_hamiltonian,
    haar_unitary,
    hl_hamiltonian,
    normal_modes,
    passive_random_model,
    random_mq_hamiltonian,
)
from .states import GaussianState, ground_state, squeezed_vacuum, thermal, vacuum
from .symplectic import UnphysicalStateError, symplectic_eigenvalues, williamson

__all__ = [
    "EntropyKind", "GaussianState", "Partition", "QuadraticHamiltonian", "UnphysicalStateError",
    "block_entropy", "derive_rng", "dhl_hamiltonian", "ground_state", "haar_unitary",
    "hl_hamiltonian", "mutual_information", "normal_modes", "passive_random_model",
    "random_mq_hamiltonian", "renyi2_entropy", "squeezed_vacuum", "symplectic_eigenvalues",
    "thermal", "tmi_terms", "tripartite_mi", "vacuum", "von_neumann_entropy", "williamson",
]
