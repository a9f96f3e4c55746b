"""Joint entropy of two distant blocks after a mass quench: clean versus disordered chain.

Run:  python demos/memory_effect.py  (writes demos/out/memory_effect.png)
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from bosonscramble.experiments import load_preset, run_experiment

OUT = Path(__file__).parent / "out"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    hl = run_experiment(load_preset("fig1_hl"))[0]
    dhl = run_experiment(load_preset("fig1_dhl2").with_overrides(samples=5, params={"qp_samples": 20}))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(hl.x, hl.value, label="HL")
    ax.plot(dhl[0].x, dhl[0].value, label="DHL, J in (0, 2), 5 samples")
    qp = dhl[2]
    ax.plot(qp.x, qp.value * hl.value.max() / qp.value.max(), "--", label="quasi-particles (rescaled)")
    ax.set_xlabel("t")
    ax.set_ylabel("S(A1 u A2)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(OUT / "memory_effect.png", dpi=120)
    for table in (hl, dhl[0]):
        dip = table.metadata["dip"]
        print(f"{table.metadata['model']}: plateau {dip['plateau_mean']:.2f}, dip depth {dip['depth']:.2f}")


if __name__ == "__main__":
    main()
