"""Curve features used by the experiment reports: memory dips and revivals."""

from __future__ import annotations

import numpy as np


def memory_dip(t: np.ndarray, s: np.ndarray, l1: float, l2: float, gap: float,
               velocity: float = 1.0) -> dict:
    """Post-saturation dip of the joint entropy of two blocks.

    With light-cone velocity ``v`` the joint entropy saturates once
    ``2 v t`` exceeds the block size, and correlations between the blocks
    can only arrive after ``gap / (2 v)``.  The plateau is taken over
    ``[1.5 max(l1, l2) / (2v), gap / (2v)]`` and the dip window over
    ``[gap / (2v), (gap + l1 + l2) / (2v)]``.  ``depth`` is the plateau mean
    minus the window minimum.
    """
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    plateau = (1.5 * max(l1, l2) / (2 * velocity), gap / (2 * velocity))
    window = (gap / (2 * velocity), (gap + l1 + l2) / (2 * velocity))
    in_plateau = (t >= plateau[0]) & (t <= plateau[1])
    in_window = (t >= window[0]) & (t <= window[1])
    if in_plateau.sum() < 2 or not in_window.any():
        raise ValueError("time grid does not cover the plateau and dip windows")
    mean = float(s[in_plateau].mean())
    std = float(s[in_plateau].std(ddof=1))
    low = float(s[in_window].min())
    return {"plateau_window": list(plateau), "dip_window": list(window),
            "plateau_mean": mean, "plateau_std": std, "window_min": low,
            "depth": mean - low, "t_min": float(t[in_window][np.argmin(s[in_window])])}


def revival_dips(steps: np.ndarray, s: np.ndarray, period: float, n_periods: float = 3.0,
                 fraction: float = 0.9) -> dict:
    """Revival dips of a circuit entropy curve.

    The initial value is subtracted first, so that a constant offset (such
    as the entropy of noise-added inputs) does not count as plateau.  A
    dip is a maximal run of steps where the curve lies below ``fraction``
    times its running maximum and which contains a local minimum; only the
    first ``n_periods * period`` steps are examined.
    """
    steps = np.asarray(steps, dtype=float)
    ds = np.asarray(s, dtype=float) - float(s[0])
    keep = steps <= n_periods * period
    steps, ds = steps[keep], ds[keep]
    running = np.maximum.accumulate(ds)
    below = (ds < fraction * running) & (running > 0)
    dips = []
    i = 0
    while i < len(ds):
        if not below[i]:
            i += 1
            continue
        j = i
        while j + 1 < len(ds) and below[j + 1]:
            j += 1
        k = i + int(np.argmin(ds[i:j + 1]))
        interior = 0 < k < len(ds) - 1
        if interior and ds[k] <= ds[k - 1] and ds[k] <= ds[k + 1]:
            dips.append({"step": float(steps[k]), "depth": float(running[k] - ds[k]),
                         "relative": float(ds[k] / running[k])})
        i = j + 1
    amplitude = max((d["depth"] for d in dips), default=0.0)
    return {"period": float(period), "n_dips": len(dips), "dips": dips, "max_depth": amplitude,
            "baseline": float(s[0]), "plateau_max": float(running[-1]) if len(running) else 0.0}
