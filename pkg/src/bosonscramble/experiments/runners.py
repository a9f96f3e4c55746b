"""Experiment runners.

Every runner is a pure function of its :class:`ExperimentConfig`.  Ensemble
members get their own generator ``derive_rng(master_seed, label, index)``
and are reduced in index order, so the output does not depend on the
number of worker processes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable

import numpy as np

from .. import dynamics, entropy, models, quasiparticle, scrambling, states, wigner
from .analysis import memory_dip, revival_dips
from .config import ExperimentConfig, parse_config
from .output import ResultTable


# --- plumbing ---------------------------------------------------------------

def _map(fn: Callable, cfg: ExperimentConfig, tasks: list) -> list:
    """``[fn(cfg_dict, task) for task in tasks]``, possibly on a process pool."""
    d = cfg.to_dict()
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.workers, len(tasks))) as ex:
            return list(ex.map(fn, [d] * len(tasks), tasks))
    return [fn(d, task) for task in tasks]


def _mean_se(samples) -> tuple[np.ndarray, np.ndarray]:
    data = np.stack([np.asarray(s, dtype=float) for s in samples])
    mean = data.mean(axis=0)
    if data.shape[0] == 1:
        return mean, np.zeros_like(mean)
    return mean, data.std(axis=0, ddof=1) / np.sqrt(data.shape[0])


def _grid(p: dict) -> np.ndarray:
    if p["t_points"] < 1:
        raise ValueError("time grid is empty")
    return np.linspace(p["t_start"], p["t_stop"], p["t_points"])


def _input_state(n: int, squeeze: float, noise: float) -> states.GaussianState:
    return states.add_vacuum_noise(states.squeezed_vacuum(np.full(n, float(squeeze))), noise)


def _passive_rows(u_rows: np.ndarray) -> np.ndarray:
    """Rows of the orthogonal symplectic map of a passive unitary for selected modes."""
    return np.block([[u_rows.real, -u_rows.imag], [u_rows.imag, u_rows.real]])


def _local_blocks(sizes: list[int]) -> list[list[int]]:
    out, pos = [], 0
    for size in sizes:
        out.append(list(range(pos, pos + size)))
        pos += size
    return out


# --- memory effect ----------------------------------------------------------

def _memory_blocks(p: dict) -> tuple[list[int], list[int]]:
    n, l1, l2, gap = p["n_modes"], p["n_a1"], p["n_a2"], p["gap"]
    if min(l1, l2, gap) < 1 or l1 + gap + l2 > n:
        raise ValueError(f"blocks {l1} + gap {gap} + {l2} do not fit in {n} modes")
    return list(range(l1)), list(range(l1 + gap, l1 + gap + l2))


def _memory_sample(cfg_d: dict, index: int) -> np.ndarray:
    cfg = parse_config(cfg_d)
    p = cfg.params
    n = p["n_modes"]
    a1, a2 = _memory_blocks(p)
    if p["model"] == "HL":
        h = models.hl_hamiltonian(n, p["m1"])
    else:
        rng = models.derive_rng(cfg.master_seed, "memory_effect/dhl", index)
        h = models.dhl_hamiltonian(n, p["m1"], p["j_low"], p["j_high"], rng)
    g0 = states.ground_state(models.hl_hamiltonian(n, p["m0"]))
    op = dynamics.EvolutionOperator(h)
    joint = list(range(len(a1) + len(a2)))
    sub1, sub2 = joint[:len(a1)], joint[len(a1):]
    out = np.empty((3, p["t_points"]))
    for i, t in enumerate(_grid(p)):
        st = states.GaussianState(factor=op.rows(t, a1 + a2) @ g0.factor)
        s12 = entropy.entropy(st, cfg.entropy)
        s1 = entropy.block_entropy(st, sub1, cfg.entropy)
        s2 = entropy.block_entropy(st, sub2, cfg.entropy)
        out[:, i] = (s12, s1 + s2 - s12, s1)
    return out


def _qp_sample(cfg_d: dict, index: int) -> np.ndarray:
    cfg = parse_config(cfg_d)
    p = cfg.params
    n_qp = p["qp_modes"] or p["n_modes"]
    rng = models.derive_rng(cfg.master_seed, "memory_effect/qp", index)
    modes = quasiparticle.sample_qp_modes(n_qp, rng, p["qp_speed"], p["qp_density"])
    norm = n_qp if p["qp_normalization"] == "mean" else 1
    return np.array([quasiparticle.qp_entropy_disjoint(modes, p["n_a1"], p["n_a2"], p["gap"], t)
                     for t in _grid(p)]) / norm


def run_memory_effect(cfg: ExperimentConfig) -> list[ResultTable]:
    """Joint entropy of two separated blocks after a mass quench.

    The initial state is the ground state of the harmonic lattice at mass
    ``m0``; it evolves under HL or DHL at mass ``m1``.
    """
    p = cfg.params
    if p["model"] not in ("HL", "DHL"):
        raise ValueError(f"memory_effect supports HL and DHL, got {p['model']!r}")
    if p["qp_normalization"] not in ("mean", "sum"):
        raise ValueError("qp_normalization must be 'mean' or 'sum'")
    _memory_blocks(p)
    t = _grid(p)
    deterministic = p["model"] == "HL" or p["j_low"] == p["j_high"]
    n_samples = 1 if deterministic else cfg.samples
    runs = _map(_memory_sample, cfg, list(range(n_samples)))
    mean, se = _mean_se(runs)
    dip = memory_dip(t, mean[0], p["n_a1"], p["n_a2"], p["gap"], p["light_cone_velocity"])
    meta = {"model": p["model"], "entropy": cfg.entropy, "deterministic": deterministic}
    tables = [
        ResultTable("S_A1A2", "t", t, mean[0], se[0], n_samples, {**meta, "dip": dip},
                    y_label="S(A1 u A2)"),
        ResultTable("I2_A1A2", "t", t, mean[1], se[1], n_samples, dict(meta), y_label="I2(A1:A2)"),
    ]
    if p["qp_overlay"]:
        qp = _map(_qp_sample, cfg, list(range(p["qp_samples"])))
        qmean, qse = _mean_se(qp)
        qdip = memory_dip(t, qmean, p["n_a1"], p["n_a2"], p["gap"], p["light_cone_velocity"])
        tables.append(ResultTable("S_A1A2_quasiparticle", "t", t, qmean, qse, p["qp_samples"],
                                  {"normalization": p["qp_normalization"], "dip": qdip},
                                  y_label="S(A1 u A2)"))
    return tables


# --- circuit memory ---------------------------------------------------------

def _circuit_sample(cfg_d: dict, index: int) -> np.ndarray:
    cfg = parse_config(cfg_d)
    p = cfg.params
    n = p["n_modes"]
    a1, a2 = _memory_blocks(p)
    rng = models.derive_rng(cfg.master_seed, "circuit_memory", index)
    spec = dynamics.CircuitSpec.create(n, p["policy"], rng)
    st = _input_state(n, p["squeeze"], p["noise_units"])
    out = np.empty(p["steps"] + 1)
    out[0] = entropy.block_entropy(st, a1 + a2, cfg.entropy)
    for step in range(1, p["steps"] + 1):
        st = dynamics.circuit_step(st, spec, rng)
        out[step] = entropy.block_entropy(st, a1 + a2, cfg.entropy)
    return out


def run_circuit_memory(cfg: ExperimentConfig) -> list[ResultTable]:
    """Joint block entropy along a brick-wall beam-splitter circuit."""
    p = cfg.params
    if p["n_modes"] % 2:
        raise ValueError("the brick-wall circuit needs an even number of modes")
    _memory_blocks(p)
    deterministic = p["policy"] in ("balanced", "identity")
    n_samples = 1 if deterministic else cfg.samples
    runs = _map(_circuit_sample, cfg, list(range(n_samples)))
    mean, se = _mean_se(runs)
    steps = np.arange(p["steps"] + 1)
    period = p["n_modes"] / (2.0 * p["v_max"])
    rev = revival_dips(steps, mean, period, 3.0, p["revival_fraction"])
    meta = {"policy": p["policy"], "entropy": cfg.entropy, "noise_units": p["noise_units"],
            "revivals": rev}
    return [ResultTable("S_A1A2_circuit", "step", steps, mean, se, n_samples, meta,
                        y_label="S(A1 u A2)")]


# --- TMI --------------------------------------------------------------------

def _tmi_partition(p: dict) -> entropy.Partition:
    return entropy.Partition.contiguous(p["n_modes"], {"A": p["n_a"], "B": p["n_b"], "C": p["n_c"]},
                                        {"B": p["gap_ab"], "C": p["gap_bc"]})


def _tmi_of_rows(factor_rows: np.ndarray, sizes: list[int], kind: str) -> list[float]:
    st = states.GaussianState(factor=factor_rows)
    a, b, c = _local_blocks(sizes)
    r = entropy.tmi_terms(st, a, b, c, kind)
    return [r["I3"], r["I2_AB"], r["I2_AC"], r["I2_A_BC"]]


def _haar_tmi(n: int, squeeze: float, noise: float, abc: list[int], sizes: list[int],
              kind: str, u: np.ndarray) -> list[float]:
    f0 = _input_state(n, squeeze, noise).factor
    return _tmi_of_rows(_passive_rows(u[abc]) @ f0, sizes, kind)


def _tmi_sample(cfg_d: dict, index: int) -> np.ndarray:
    cfg = parse_config(cfg_d)
    p = cfg.params
    n = p["n_modes"]
    part = _tmi_partition(p)
    abc = part["A"] + part["B"] + part["C"]
    sizes = [p["n_a"], p["n_b"], p["n_c"]]
    rng = models.derive_rng(cfg.master_seed, f"tmi/{p['dynamics']}", index)
    st = _input_state(n, p["squeeze"], p["noise_units"])
    rows = []
    if p["dynamics"] == "passive":
        model = models.passive_random_model(n, rng, p["omega_dist"])
        for t in _grid(p):
            v = dynamics.transfer_matrix(model, t)
            rows.append(_tmi_of_rows(_passive_rows(v[abc]) @ st.factor, sizes, cfg.entropy))
    elif p["dynamics"] == "active":
        if p["model"] == "DHL":
            h = models.dhl_hamiltonian(n, p["m"], p["j_low"], p["j_high"], rng)
        else:
            h = models.random_mq_hamiltonian(n, p["model"], rng, p["scale"], p["shift_margin"])
        op = dynamics.EvolutionOperator(h)
        for t in _grid(p):
            rows.append(_tmi_of_rows(op.rows(t, abc) @ st.factor, sizes, cfg.entropy))
    else:
        spec = dynamics.CircuitSpec.create(n, p["policy"], rng)
        idx = np.concatenate([abc, np.asarray(abc) + n])
        rows.append(_tmi_of_rows(st.factor[idx], sizes, cfg.entropy))
        for step in range(1, p["steps"] + 1):
            st = dynamics.circuit_step(st, spec, rng)
            if step % p["every"] == 0:
                rows.append(_tmi_of_rows(st.factor[idx], sizes, cfg.entropy))
    out = np.array(rows).T
    if p["oracle"]:
        u = models.haar_unitary(n, models.derive_rng(cfg.master_seed, "tmi/oracle", index))
        oracle = _haar_tmi(n, p["squeeze"], p["noise_units"], abc, sizes, cfg.entropy, u)
        out = np.vstack([out, np.repeat(np.array([[oracle[0]], [oracle[3]]]), out.shape[1], axis=1)])
    return out


def _tmi_sweep_sample(cfg_d: dict, index: int) -> np.ndarray:
    cfg = parse_config(cfg_d)
    p = cfg.params
    part = _tmi_partition(p)
    abc = part["A"] + part["B"] + part["C"]
    sizes = [p["n_a"], p["n_b"], p["n_c"]]
    u = models.haar_unitary(p["n_modes"], models.derive_rng(cfg.master_seed, "tmi/oracle", index))
    res = [_haar_tmi(p["n_modes"], lam, p["noise_units"], abc, sizes, cfg.entropy, u)
           for lam in p["lambda_sweep"]]
    return np.array([[r[0] for r in res], [r[3] for r in res], [r[0] / -r[3] for r in res]])


def run_tmi(cfg: ExperimentConfig) -> list[ResultTable]:
    """TMI ``I3(A:B:C)`` under passive, circuit or active dynamics, or a squeezing sweep.

    With a non-empty ``lambda_sweep`` only the one-shot Haar values are
    computed, one row per squeezing parameter.
    """
    p = cfg.params
    part = _tmi_partition(p)
    meta = {"dynamics": p["dynamics"], "entropy": cfg.entropy,
            "blocks": {k: [part[k][0], part[k][-1]] for k in "ABC"}}
    if p["lambda_sweep"]:
        runs = _map(_tmi_sweep_sample, cfg, list(range(cfg.samples)))
        mean, se = _mean_se(runs)
        lam = np.asarray(p["lambda_sweep"], dtype=float)
        return [
            ResultTable("I3_haar_ratio", "lambda", lam, mean[2], se[2], cfg.samples, meta,
                        y_label="I3 / (-I2)"),
            ResultTable("I3_haar", "lambda", lam, mean[0], se[0], cfg.samples, dict(meta), y_label="I3"),
            ResultTable("I2_A_BC_haar", "lambda", lam, mean[1], se[1], cfg.samples, dict(meta),
                        y_label="I2(A:BC)"),
        ]
    if p["dynamics"] not in ("passive", "circuit", "active"):
        raise ValueError(f"unknown TMI dynamics {p['dynamics']!r}")
    if p["dynamics"] == "active" and p["model"] not in ("DHL", "GOE", "GUE"):
        raise ValueError(f"unknown active model {p['model']!r}")
    deterministic = p["dynamics"] == "circuit" and p["policy"] in ("balanced", "identity")
    n_samples = 1 if deterministic else cfg.samples
    runs = _map(_tmi_sample, cfg, list(range(n_samples)))
    mean, se = _mean_se(runs)
    if p["dynamics"] == "circuit":
        x_name = "step"
        x = np.concatenate([[0], np.arange(p["every"], p["steps"] + 1, p["every"])]).astype(float)
    else:
        x_name, x = "t", _grid(p)
    i3 = mean[0]
    imin = int(np.argmin(i3))
    summary = {"min": float(i3[imin]), "argmin": float(x[imin]), "final": float(i3[-1]),
               "rise_after_min": float(i3[-1] - i3[imin])}
    if p["oracle"]:
        oracle3, oracle2 = float(mean[4, 0]), float(mean[5, 0])
        skip = int(np.ceil(0.05 * len(x)))
        rel = np.abs(i3[skip:] - oracle3) / abs(oracle3) if skip < len(x) else np.array([np.nan])
        summary.update({"I3_haar": oracle3, "I2_A_BC_haar": oracle2,
                        "max_rel_dev_after_5pct": float(np.max(rel))})
    extra = {"I2_AB": mean[1], "I2_AC": mean[2], "I2_A_BC": mean[3]}
    return [ResultTable("I3", x_name, x, i3, se[0], n_samples, {**meta, "summary": summary},
                        extra=extra, y_label="I3")]


def _static_sample(cfg_d: dict, index: int) -> np.ndarray:
    cfg = parse_config(cfg_d)
    p = cfg.params
    n = p["n_modes"]
    u = models.haar_unitary(n, models.derive_rng(cfg.master_seed, "tmi_static", index))
    out = np.empty((len(p["noise_units"]), len(p["kinds"]), len(p["ratios"])))
    for a, noise in enumerate(p["noise_units"]):
        for b, kind in enumerate(p["kinds"]):
            for c, ratio in enumerate(p["ratios"]):
                n_a = int(round(ratio * p["n_b"]))
                sizes = [n_a, p["n_b"], p["n_c"]]
                abc = list(range(sum(sizes)))
                out[a, b, c] = _haar_tmi(n, p["squeeze"], noise, abc, sizes, kind, u)[0]
    return out


def run_tmi_static(cfg: ExperimentConfig) -> list[ResultTable]:
    """One-shot Haar TMI as a function of ``N_A / N_B``."""
    p = cfg.params
    for ratio in p["ratios"]:
        n_a = int(round(ratio * p["n_b"]))
        if n_a < 1 or n_a + p["n_b"] + p["n_c"] > p["n_modes"]:
            raise ValueError(f"ratio {ratio} gives a partition that does not fit")
    for kind in p["kinds"]:
        entropy.EntropyKind(kind)
    runs = _map(_static_sample, cfg, list(range(cfg.samples)))
    mean, se = _mean_se(runs)
    ratios = np.asarray(p["ratios"], dtype=float)
    tables = []
    for a, noise in enumerate(p["noise_units"]):
        for b, kind in enumerate(p["kinds"]):
            tables.append(ResultTable(f"I3_static_{kind}_noise{noise:g}", "ratio", ratios,
                                      mean[a, b], se[a, b], cfg.samples,
                                      {"entropy": kind, "noise_units": noise}, y_label="I3"))
    return tables


# --- OTOC -------------------------------------------------------------------

def _otoc_hamiltonian(p: dict, rng: np.random.Generator) -> models.QuadraticHamiltonian:
    if p["model"] == "HL":
        return models.hl_hamiltonian(p["n_modes"], p["m"])
    if p["model"] == "DHL":
        return models.dhl_hamiltonian(p["n_modes"], p["m"], p["j_low"], p["j_high"], rng)
    return models.random_mq_hamiltonian(p["n_modes"], p["model"], rng, p["scale"], p["shift_margin"])


def _otoc_grid(p: dict) -> np.ndarray:
    return np.concatenate([[0.0], np.logspace(np.log10(p["t_min"]), np.log10(p["t_max"]), p["t_points"])])


def _otoc_sample(cfg_d: dict, index: int) -> np.ndarray:
    cfg = parse_config(cfg_d)
    p = cfg.params
    h = _otoc_hamiltonian(p, models.derive_rng(cfg.master_seed, "otoc", index))
    op = dynamics.EvolutionOperator(h)
    t = _otoc_grid(p)
    return np.vstack([scrambling.otoc_quadrature_ground(op, p["j"], p["k"], t),
                      scrambling.otoc_diagonal_deficit(op, p["j"], t)])


def _fit(t: np.ndarray, c: np.ndarray, lo: float, hi: float) -> float:
    sel = (t >= lo * (1 - 1e-12)) & (t <= hi * (1 + 1e-12))
    if sel.sum() < 2 or np.any(c[sel] <= 0):
        return float("nan")
    return scrambling.powerlaw_exponent(t[sel], c[sel])


def _passive_sample(cfg_d: dict, task: tuple[int, int]) -> np.ndarray:
    cfg = parse_config(cfg_d)
    p = cfg.params
    size, index = task
    model = models.passive_random_model(size, models.derive_rng(cfg.master_seed, f"otoc/passive{size}", index),
                                        p["omega_dist"])
    t = np.linspace(0.0, p["passive_t_max"], p["passive_points"])
    vsq = np.abs(scrambling.v_element(model, 0, 1, t)) ** 2
    disp = scrambling.otoc_displacement(model, 1.0 / size, 1.0 / size, 0, 1, t)
    quad = scrambling.otoc_quadrature_passive(model, 0, 1, t)
    return np.vstack([vsq, disp, quad])


def run_otoc(cfg: ExperimentConfig) -> list[ResultTable]:
    """Ground-state quadrature OTOC on a log grid, plus optional passive-model series."""
    p = cfg.params
    if p["model"] not in ("HL", "DHL", "GOE", "GUE"):
        raise ValueError(f"unknown OTOC model {p['model']!r}")
    for idx in (p["j"], p["k"]):
        if not 0 <= idx < p["n_modes"]:
            raise ValueError(f"mode index {idx} out of range for {p['n_modes']} modes")
    n_samples = 1 if p["model"] == "HL" else cfg.samples
    runs = _map(_otoc_sample, cfg, list(range(n_samples)))
    mean, se = _mean_se(runs)
    t = _otoc_grid(p)
    fit = {"window": [p["fit_t_min"], p["fit_t_max"]],
           "offdiagonal_exponent": _fit(t, mean[0], p["fit_t_min"], p["fit_t_max"]),
           "diagonal_deficit_exponent": _fit(t, mean[1], p["fit_t_min"], p["fit_t_max"])}
    meta = {"model": p["model"], "j": p["j"], "k": p["k"], "fit": fit}
    tables = [
        ResultTable("otoc_quadrature", "t", t, mean[0], se[0], n_samples, meta,
                    xscale="log", yscale="log", y_label="C_jk(t)"),
        ResultTable("otoc_diagonal_deficit", "t", t, mean[1], se[1], n_samples, dict(meta),
                    xscale="log", yscale="log", y_label="1 - sqrt(C_jj)"),
    ]
    tp = np.linspace(0.0, p["passive_t_max"], p["passive_points"])
    for size in p["passive_sizes"]:
        runs = _map(_passive_sample, cfg, [(size, i) for i in range(cfg.samples)])
        pm, pse = _mean_se(runs)
        late = pm[0][len(tp) // 2:].mean()
        t_star = float(tp[np.argmax(pm[0] >= 0.9 * late)])
        tables.append(ResultTable(f"vjk_sq_N{size}", "t", tp, pm[0], pse[0], cfg.samples,
                                  {"n_modes": size, "saturation": float(late), "t_star": t_star},
                                  y_label="|V_01|^2"))
        if p["displacement"]:
            tables.append(ResultTable(f"otoc_displacement_N{size}", "t", tp, pm[1], pse[1], cfg.samples,
                                      {"n_modes": size, "mu_nu_conj": 1.0 / size**2},
                                      y_label="C_disp"))
            tables.append(ResultTable(f"otoc_passive_quadrature_N{size}", "t", tp, pm[2], pse[2],
                                      cfg.samples, {"n_modes": size}, y_label="(Re V_01)^2"))
    return tables


# --- SFF --------------------------------------------------------------------

def _sff_grid(p: dict) -> np.ndarray:
    return np.concatenate([[0.0], np.logspace(np.log10(p["t_min"]), np.log10(p["t_max"]), p["t_points"])])


def _sff_omegas(cfg: ExperimentConfig, index: int) -> np.ndarray:
    p = cfg.params
    if p["model"] == "HL":
        h = models.hl_hamiltonian(p["n_modes"], p["m"])
    else:
        rng = models.derive_rng(cfg.master_seed, "sff", index)
        h = models.random_mq_hamiltonian(p["n_modes"], p["model"], rng, p["scale"], p["shift_margin"])
    return models.normal_modes(h).omegas


def _sff_sample(cfg_d: dict, index: int) -> np.ndarray:
    cfg = parse_config(cfg_d)
    p = cfg.params
    t = _sff_grid(p)
    w = _sff_omegas(cfg, index)
    rows = [scrambling.sff_log_total(w, p["beta"], t)]
    if p["discrete"]:
        rows.append(scrambling.sff_discrete_spectrum(w, p["beta"], t))
    return np.vstack(rows)


def run_sff(cfg: ExperimentConfig) -> list[ResultTable]:
    """Quenched ``<ln g(beta, t)>`` with a ramp-detection report."""
    p = cfg.params
    if p["model"] not in ("HL", "GOE", "GUE"):
        raise ValueError(f"unknown SFF model {p['model']!r}")
    n_samples = 1 if p["model"] == "HL" else cfg.samples
    runs = _map(_sff_sample, cfg, list(range(n_samples)))
    t = _sff_grid(p)
    mean, se = scrambling.quenched_average([r[0] for r in runs], annealed=p["annealed"])
    ramp = scrambling.detect_ramp(t, mean, p["smooth_window"], p["late_fraction"], p["band_sigmas"])
    meta = {"model": p["model"], "beta": p["beta"], "average": "annealed" if p["annealed"] else "quenched",
            "ramp": ramp.as_dict()}
    kw = dict(xscale="log", y_factor=1.0 / np.log(10.0), y_label="log10 g")
    tables = [ResultTable(f"sff_{p['model']}", "t", t, mean, se, n_samples, meta, **kw)]
    if p["discrete"]:
        dmean, dse = scrambling.quenched_average([r[1] for r in runs], annealed=True)
        dramp = scrambling.detect_ramp(t, dmean, p["smooth_window"], p["late_fraction"], p["band_sigmas"])
        tables.append(ResultTable(f"sff_discrete_{p['model']}", "t", t, dmean, dse, n_samples,
                                  {"model": p["model"], "beta": p["beta"], "average": "annealed",
                                   "ramp": dramp.as_dict()}, **kw))
    return tables


# --- Wigner correspondence --------------------------------------------------

WIGNER_STATES = ("vacuum", "thermal", "squeezed", "classical", "circuit")


def _wigner_state(cfg: ExperimentConfig, name: str) -> states.GaussianState:
    p = cfg.params
    if name == "vacuum":
        return states.vacuum(1)
    if name == "thermal":
        return states.thermal(np.full(p["thermal_modes"], p["thermal_nu"]))
    if name == "squeezed":
        return states.squeezed_vacuum([p["squeeze"]])
    if name == "classical":
        return _input_state(1, p["squeeze"], 1.0)
    if name == "circuit":
        n = p["circuit_modes"]
        rng = models.derive_rng(cfg.master_seed, "wigner_check/circuit", 0)
        spec = dynamics.CircuitSpec.create(n, p["circuit_policy"], rng)
        st = _input_state(n, p["circuit_squeeze"], 0.0)
        for _ in range(p["circuit_steps"]):
            st = dynamics.circuit_step(st, spec, rng)
        return st
    raise ValueError(f"unknown state {name!r}; choose from {', '.join(WIGNER_STATES)}")


def _wigner_sample(cfg_d: dict, task: tuple[str, int]) -> np.ndarray:
    cfg = parse_config(cfg_d)
    name, index = task
    st = _wigner_state(cfg, name)
    rng = models.derive_rng(cfg.master_seed, f"wigner_check/{name}", index)
    rep = wigner.renyi2_correspondence_check(st, cfg.params["n_draws"], rng)
    return np.array([rep.estimate, rep.std_error, rep.predicted, rep.z_score])


def run_wigner_check(cfg: ExperimentConfig) -> list[ResultTable]:
    """Sampled Wigner entropy against ``S2 + N (1 + ln pi)``, one row per state and repeat."""
    p = cfg.params
    tasks = [(name, i) for name in p["states"] for i in range(cfg.samples)]
    for name, _ in tasks:
        if name not in WIGNER_STATES:
            raise ValueError(f"unknown state {name!r}")
    res = np.array(_map(_wigner_sample, cfg, tasks)).reshape(len(tasks), 4)
    labels = [f"{name}#{i}" for name, i in tasks]
    return [ResultTable("wigner_check", "row", np.arange(len(tasks)), res[:, 0], res[:, 1], p["n_draws"],
                        {"rows": labels, "max_abs_z": float(np.max(np.abs(res[:, 3])))},
                        extra={"predicted": res[:, 2], "z_score": res[:, 3]}, y_label="entropy (nats)")]


RUNNERS: dict[str, Callable[[ExperimentConfig], list[ResultTable]]] = {
    "memory_effect": run_memory_effect,
    "circuit_memory": run_circuit_memory,
    "tmi": run_tmi,
    "tmi_static": run_tmi_static,
    "otoc": run_otoc,
    "sff": run_sff,
    "wigner_check": run_wigner_check,
}


def run_experiment(cfg: ExperimentConfig) -> list[ResultTable]:
    return RUNNERS[cfg.experiment](cfg)
