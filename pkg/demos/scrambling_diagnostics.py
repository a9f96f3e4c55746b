"""TMI saturation under Haar-like passive dynamics and the spectral form factor of GOE versus HL.

Run:  python demos/scrambling_diagnostics.py  (writes demos/out/scrambling.png)
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from bosonscramble.experiments import load_preset, run_experiment

OUT = Path(__file__).parent / "out"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    tmi = run_experiment(load_preset("fig3_left"))[0]
    goe = run_experiment(load_preset("fig5_goe").with_overrides(samples=30))
    hl = run_experiment(load_preset("fig5_hl"))[0]
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    left.plot(tmi.x, tmi.value, label="I3(t)")
    left.axhline(tmi.metadata["summary"]["I3_haar"], color="k", ls=":", label="one-shot Haar")
    left.set_xlabel("t")
    left.legend()
    for table, label in ((goe[0], "GOE, quenched"), (hl, "HL")):
        right.plot(table.x[1:], table.value[1:] / np.log(10), label=label)
    right.plot(goe[1].x[1:], goe[1].value[1:] / np.log(10), label="GOE levels, |Z|^2")
    right.set_xscale("log")
    right.set_xlabel("t")
    right.set_ylabel("log10 g")
    right.legend()
    fig.tight_layout()
    fig.savefig(OUT / "scrambling.png", dpi=120)
    print("I3 summary:", tmi.metadata["summary"])
    print("GOE ramp:", goe[0].metadata["ramp"])
    print("GOE level-set ramp:", goe[1].metadata["ramp"])


if __name__ == "__main__":
    main()
