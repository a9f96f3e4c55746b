"""Library tour: states, Williamson form, entropies, a beam-splitter circuit and an OTOC."""

from __future__ import annotations

import numpy as np

from bosonscramble.dynamics import CircuitSpec, circuit_step
from bosonscramble.entropy import mutual_information, tripartite_mi, von_neumann_entropy
from bosonscramble.models import derive_rng, hl_hamiltonian
from bosonscramble.scrambling import otoc_quadrature_ground
from bosonscramble.states import squeezed_vacuum, thermal
from bosonscramble.symplectic import williamson


def main() -> None:
    print("S(thermal nu=3) =", von_neumann_entropy(thermal([3.0])), "= 2 ln 2")

    rng = derive_rng(0, "quickstart")
    state = squeezed_vacuum(np.full(8, 1.0))
    spec = CircuitSpec.create(8, "resampled")
    for _ in range(4):
        state = circuit_step(state, spec, rng)
    print("nu after 4 steps:", williamson(state.cov).nu.round(6))
    print("I2(0,1 : 2,3) =", mutual_information(state, [0, 1], [2, 3]))
    print("I3(0 : 1,2 : 3,4) =", tripartite_mi(state, [0], [1, 2], [3, 4]))

    h = hl_hamiltonian(20, 1.0)
    for t in (1e-3, 1e-2):
        print(f"C_01({t}) =", otoc_quadrature_ground(h, 0, 1, t), " t^4/4 =", t**4 / 4)


if __name__ == "__main__":
    main()
