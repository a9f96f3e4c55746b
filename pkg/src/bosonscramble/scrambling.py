"""OTOCs and spectral form factors.

Quadrature OTOCs carry no temperature argument: the commutator of two
quadratures evolved by a quadratic Hamiltonian is a c-number, so the
thermal average does not depend on beta.

All form factors are handled as logarithms.  Products over hundreds of
modes reach ``~10^-1300``, far below the smallest double.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import stats
from scipy.ndimage import median_filter
from scipy.special import logsumexp

from .dynamics import EvolutionOperator, transfer_matrix
from .models import PassiveRandomModel, QuadraticHamiltonian


@dataclass
class OtocSeries:
    t: np.ndarray
    values: np.ndarray
    j: int
    k: int
    kind: str
    metadata: dict = field(default_factory=dict)


@dataclass
class SffSeries:
    t: np.ndarray
    log_g: np.ndarray
    beta: float
    metadata: dict = field(default_factory=dict)

    @property
    def log10_g(self) -> np.ndarray:
        return self.log_g / np.log(10.0)


def _check_index(n: int, *idx: int) -> None:
    for i in idx:
        if not 0 <= i < n:
            raise IndexError(f"mode index {i} out of range for {n} modes")


# --- OTOCs ------------------------------------------------------------------

def _cos_element(op: EvolutionOperator, j: int, k: int, ts: np.ndarray) -> np.ndarray:
    """``(cos(Omega t))_jk`` as ``delta_jk - 2 sum_n V_jn V_kn sin^2(omega_n t / 2)``.

    The half-angle form avoids the O(1) cancellation of ``sum V_jn V_kn cos``
    at small ``t``, so the leading ``t^2`` behaviour keeps full relative
    precision.
    """
    w = op.modes.omegas
    v = op.modes.V
    half = np.sin(0.5 * np.outer(ts, w)) ** 2
    return float(j == k) - 2.0 * (half @ (v[j] * v[k]))


def otoc_quadrature_ground(h: QuadraticHamiltonian | EvolutionOperator, j: int, k: int, t):
    """Ground-state OTOC of ``q_j(t)`` and ``p_k``: ``((V cos(omega t) V^T)_jk)^2``.

    Indices are 0-based.  Accepts a scalar or an array of times.
    """
    op = h if isinstance(h, EvolutionOperator) else EvolutionOperator(h)
    _check_index(op.n_modes, j, k)
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    out = _cos_element(op, j, k, ts) ** 2
    return out if np.ndim(t) else float(out[0])


def otoc_diagonal_deficit(h: QuadraticHamiltonian | EvolutionOperator, j: int, t):
    """``1 - sqrt(C_jj)`` for small ``t``, i.e. ``1 - (cos(Omega t))_jj`` (grows as ``t^2``)."""
    op = h if isinstance(h, EvolutionOperator) else EvolutionOperator(h)
    _check_index(op.n_modes, j)
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    out = 1.0 - _cos_element(op, j, j, ts)
    return out if np.ndim(t) else float(out[0])


def v_matrix(model: PassiveRandomModel, t: float) -> np.ndarray:
    """``V_jk(t) = sum_n U_jn exp(+i omega_n t) U*_kn``.

    This is the transfer matrix at ``-t``; the sign convention only
    conjugates the phases and leaves every |.|-based quantity unchanged.
    """
    return transfer_matrix(model, -t)


def v_element(model: PassiveRandomModel, j: int, k: int, t) -> np.ndarray:
    """``V_jk`` on an array of times without forming the full matrix."""
    _check_index(model.n_modes, j, k)
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    phases = np.exp(1j * np.outer(ts, model.omegas))
    return phases @ (model.U[j] * model.U[k].conj())


def _scalar_or_array(out: np.ndarray, t):
    return out if np.ndim(t) else out[0].item()


def otoc_displacement(model: PassiveRandomModel, mu: complex, nu: complex, j: int, k: int, t):
    """Displacement-operator OTOC ``4 sin^2(Im[mu nu* V_jk(t)])``, in [0, 4]."""
    vjk = v_element(model, j, k, t)
    out = 4.0 * np.sin(np.imag(mu * np.conj(nu) * vjk)) ** 2
    return _scalar_or_array(out, t)


def otoc_quadrature_passive(model: PassiveRandomModel, j: int, k: int, t):
    """``C = (Re V_jk)^2`` for the passive model at zero temperature."""
    vjk = v_element(model, j, k, t)
    return _scalar_or_array(vjk.real**2, t)


def f_otoc_quadrature(model: PassiveRandomModel, j: int, k: int, t):
    """``F = (1 + |V_jk|^2 - conj(V_jk)^2) / 4``."""
    vjk = v_element(model, j, k, t)
    out = 0.25 * (1.0 + np.abs(vjk) ** 2 - np.conj(vjk) ** 2)
    return _scalar_or_array(out, t)


def powerlaw_exponent(t: np.ndarray, c: np.ndarray) -> float:
    """Least-squares slope of ``ln c`` against ``ln t``."""
    t = np.asarray(t, dtype=float)
    c = np.asarray(c, dtype=float)
    if np.any(t <= 0) or np.any(c <= 0):
        raise ValueError("power-law fit needs positive t and c")
    return float(np.polyfit(np.log(t), np.log(c), 1)[0])


# --- spectral form factors ----------------------------------------------------

def _log_g_modes(omegas: np.ndarray, beta: float, t: np.ndarray) -> np.ndarray:
    """``ln g_k`` with ``cosh(x) - 1 = 2 sinh^2(x/2)`` and ``1 - cos(y) = 2 sin^2(y/2)``.

    Both terms of the denominator are nonnegative, so ``ln g_k <= 0`` holds
    exactly and ``t = 0`` gives exactly 0.
    """
    sh2 = np.sinh(0.5 * beta * omegas) ** 2
    sn2 = np.sin(0.5 * np.multiply.outer(t, omegas)) ** 2
    return np.log(sh2) - np.log(sh2 + sn2)


def sff_single_mode(omega: float, beta: float, t):
    """``g_k = (cosh(beta w) - 1)/(cosh(beta w) - cos(w t))`` in (0, 1]."""
    if omega <= 0 or beta <= 0:
        raise ValueError("need omega > 0 and beta > 0")
    out = np.exp(_log_g_modes(np.array([omega]), beta, np.atleast_1d(np.asarray(t, float)))[..., 0])
    return out if np.ndim(t) else float(out[0])


def sff_log_total(omegas: Sequence[float], beta: float, t, chunk: int = 512):
    """``ln g = sum_k ln g_k``, evaluated in chunks of time points."""
    omegas = np.asarray(omegas, dtype=float)
    if np.any(omegas <= 0) or beta <= 0:
        raise ValueError("need positive frequencies and beta")
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(len(ts))
    for start in range(0, len(ts), chunk):
        sl = slice(start, start + chunk)
        out[sl] = _log_g_modes(omegas, beta, ts[sl]).sum(axis=1)
    return out if np.ndim(t) else float(out[0])


def sff_discrete_spectrum(levels: Sequence[float], beta: float, t, chunk: int = 512):
    """``ln(|Z(beta + i t)|^2 / Z(beta)^2)`` for the level set ``levels``."""
    e = np.asarray(levels, dtype=float)
    if e.size == 0:
        raise ValueError("need at least one level")
    w = np.exp(-beta * e - np.max(-beta * e))
    norm = 2.0 * np.log(np.sum(w))
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(len(ts))
    for start in range(0, len(ts), chunk):
        sl = slice(start, start + chunk)
        z = np.exp(-1j * np.multiply.outer(ts[sl], e)) @ w
        out[sl] = np.log(np.abs(z) ** 2) - norm
    out[ts == 0] = 0.0
    out = np.minimum(out, 0.0)
    return out if np.ndim(t) else float(out[0])


def quenched_average(log_series: Sequence[np.ndarray], annealed: bool = False):
    """Mean of ``ln g`` over samples and its standard error.

    ``annealed=True`` returns ``ln <g>`` instead (standard error from the
    delta method).  A single sample has standard error 0.
    """
    arr = [np.asarray(s, dtype=float) for s in log_series]
    if not arr:
        raise ValueError("need at least one sample")
    if any(a.shape != arr[0].shape for a in arr):
        raise ValueError("samples are on different time grids")
    data = np.stack(arr)
    n = data.shape[0]
    if not annealed:
        mean = data.mean(axis=0)
        se = data.std(axis=0, ddof=1) / np.sqrt(n) if n > 1 else np.zeros_like(mean)
        return mean, se
    mean = logsumexp(data, axis=0) - np.log(n)
    if n == 1:
        return mean, np.zeros_like(mean)
    rel = np.exp(data - mean)
    se = rel.std(axis=0, ddof=1) / np.sqrt(n)
    return mean, se


@dataclass(frozen=True)
class RampReport:
    t_dip: float
    t_onset: float
    plateau: float
    band: float
    slope: float
    t_stat: float
    n_points: int

    @property
    def present(self) -> bool:
        return self.slope > 0 and self.t_stat > 5.0

    def as_dict(self) -> dict:
        return {"t_dip": self.t_dip, "t_onset": self.t_onset, "plateau": self.plateau,
                "band": self.band, "slope": self.slope, "t_stat": self.t_stat,
                "n_points": self.n_points, "present": self.present}


def detect_ramp(t: np.ndarray, log_g: np.ndarray, window: int = 51,
                late_fraction: float = 0.2, band_sigmas: float = 2.0) -> RampReport:
    """Locate a dip-ramp-plateau structure in ``ln g`` on a log-spaced grid.

    The series (``t > 0`` only) is smoothed with a moving median of
    ``window`` points.  The plateau is the mean of the last
    ``late_fraction`` of the raw series, with a band of ``band_sigmas``
    standard deviations.  The ramp window runs from the smoothed global
    minimum to the first later point inside the band; the slope is an OLS
    fit of the smoothed curve against ``ln t`` there.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(log_g, dtype=float)
    keep = t > 0
    t, y = t[keep], y[keep]
    if len(t) < window:
        raise ValueError("series shorter than the smoothing window")
    smooth = median_filter(y, size=window, mode="nearest")
    late = y[int(len(y) * (1.0 - late_fraction)):]
    plateau = float(late.mean())
    band = float(band_sigmas * late.std())
    i0 = int(np.argmin(smooth))
    inside = np.nonzero(smooth[i0:] >= plateau - band)[0]
    i1 = i0 + int(inside[0]) if len(inside) else len(y) - 1
    npts = i1 - i0 + 1
    if npts < 3:
        return RampReport(float(t[i0]), float(t[i1]), plateau, band, 0.0, 0.0, npts)
    fit = stats.linregress(np.log(t[i0:i1 + 1]), smooth[i0:i1 + 1])
    tstat = float(fit.slope / fit.stderr) if fit.stderr > 0 else float(np.sign(fit.slope) * np.inf)
    return RampReport(float(t[i0]), float(t[i1]), plateau, band, float(fit.slope), tstat, npts)
