"""Acceptance criteria 1-10.

Each test records one PASS/FAIL line (shown in the terminal summary) and
then asserts the same verdict.  Tolerances are the ones fixed for each
criterion; runtimes are measured and gated where a limit is set.
"""

from __future__ import annotations

import functools
import os
import time

import numpy as np
from scipy.linalg import expm

from bosonscramble.experiments import load_preset, paper_scale, parse_config, run_experiment, write_outputs
from bosonscramble.models import dhl_hamiltonian, hl_hamiltonian, random_mq_hamiltonian
from bosonscramble.dynamics import EvolutionOperator
from bosonscramble.scrambling import otoc_quadrature_ground, sff_log_total
from bosonscramble.symplectic import is_symplectic, symplectic_eigenvalues, symplectic_form, williamson

from conftest import random_symplectic, record_criterion

MAX_WORKERS = max(2, os.cpu_count() or 1)


def _verdict(label: str, ok: bool, detail: str) -> None:
    record_criterion(label, ok, detail)
    assert ok, detail


@functools.lru_cache(maxsize=None)
def _run(preset: str, entropy: str = "vonNeumann", full: bool = False):
    cfg = load_preset(preset).with_overrides(entropy=entropy, workers=os.cpu_count() or 1)
    if full:
        cfg = paper_scale(cfg)
    start = time.perf_counter()
    tables = run_experiment(cfg)
    return {t.name: t for t in tables}, time.perf_counter() - start


# --- 1 ------------------------------------------------------------------------

def test_criterion_1_williamson_suite():
    rng = np.random.default_rng(1001)
    start = time.perf_counter()
    worst_rec = worst_sym = worst_inv = 0.0
    for i in range(200):
        n = int(rng.integers(1, 9))
        kind = ("pure", "thermal", "conjugated")[i % 3]
        s0 = random_symplectic(n, rng)
        nu = 1.0 + rng.exponential(2.0, size=n)
        if kind == "pure":
            sigma = s0 @ s0.T
        elif kind == "thermal":
            sigma = np.diag(np.concatenate([nu, nu]))
        else:
            sigma = (s0 * np.concatenate([nu, nu])) @ s0.T
        res = williamson(sigma)
        worst_rec = max(worst_rec, np.max(np.abs(res.reconstruct() - sigma)) / np.max(np.abs(sigma)))
        j = symplectic_form(n)
        worst_sym = max(worst_sym, np.max(np.abs(res.S @ j @ res.S.T - j)))
        s1 = random_symplectic(n, rng)
        moved = symplectic_eigenvalues(s1 @ sigma @ s1.T)
        worst_inv = max(worst_inv, np.max(np.abs(moved - res.nu) / res.nu))
        assert is_symplectic(res.S, 1e-10)
    elapsed = time.perf_counter() - start
    ok = worst_rec < 1e-8 and worst_sym < 1e-10 and worst_inv < 1e-8 and elapsed < 10
    _verdict("1", ok, f"200 matrices, max rel reconstruction {worst_rec:.2e} (<1e-8), "
                      f"max |SJS^T-J| {worst_sym:.2e} (<1e-10), max rel nu drift {worst_inv:.2e} (<1e-8), "
                      f"{elapsed:.1f}s (<10s)")


# --- 2 ------------------------------------------------------------------------

def test_criterion_2_otoc_oracle():
    rng = np.random.default_rng(1002)
    ts = np.linspace(0.0, 10.0, 50)
    start = time.perf_counter()
    worst = 0.0
    for n in (4, 8, 16):
        for h in (hl_hamiltonian(n, 1.0), dhl_hamiltonian(n, 1.0, 0.0, 2.0, rng),
                  random_mq_hamiltonian(n, "GOE", rng)):
            op = EvolutionOperator(h)
            jm = symplectic_form(n) @ h.matrix
            oracle = np.stack([expm(jm * t)[:n, :n] ** 2 for t in ts])
            for j in range(n):
                for k in range(n):
                    worst = max(worst, np.max(np.abs(otoc_quadrature_ground(op, j, k, ts) - oracle[:, j, k])))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-8 and elapsed < 30
    _verdict("2", ok, f"max |C - expm A-block^2| = {worst:.2e} (<1e-8) over 50 t x 3 models x N in "
                      f"{{4,8,16}}, all (j,k), {elapsed:.1f}s (<30s)")


# --- 3 ------------------------------------------------------------------------

def test_criterion_3_otoc_exponents():
    parts, ok = [], True
    start = time.perf_counter()
    for preset, tol in (("fig4_hl", 0.2), ("fig4_dhl", 0.3), ("fig4_goe", 0.3)):
        tables, _ = _run(preset)
        fit = tables["otoc_quadrature"].metadata["fit"]
        t = tables["otoc_quadrature"].x
        window = (t >= 1e-3) & (t <= 1e-2)
        cmax = float(np.max(tables["otoc_quadrature"].value[window]))
        off, diag = fit["offdiagonal_exponent"], fit["diagonal_deficit_exponent"]
        good = abs(off - 4.0) <= tol and abs(diag - 2.0) <= tol
        ok &= good
        parts.append(f"{preset}: off-diagonal slope {off:.3f}, diagonal slope {diag:.3f} "
                     f"(+-{tol}), max C in window {cmax:.1e}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    _verdict("3", ok, "; ".join(parts) + f"; {elapsed:.1f}s (<60s)")


# --- 4 ------------------------------------------------------------------------

def _memory_verdicts(entropy: str):
    hl, t_hl = _run("fig1_hl", entropy)
    dhl, t_dhl = _run("fig1_dhl2", entropy)
    hl_dip = hl["S_A1A2"].metadata["dip"]
    threshold = 5.0 * hl_dip["plateau_std"]
    dhl_depth = dhl["S_A1A2"].metadata["dip"]["depth"]
    qp_depth = dhl["S_A1A2_quasiparticle"].metadata["dip"]["depth"]
    verdicts = (hl_dip["depth"] > threshold, dhl_depth < threshold, qp_depth < threshold)
    detail = (f"HL depth {hl_dip['depth']:.3f} vs 5*std {threshold:.3f}; DHL(0,2) x20 depth {dhl_depth:.3f}; "
              f"quasi-particle x50 depth {qp_depth:.3f}; {t_hl + t_dhl:.0f}s")
    return verdicts, detail, t_hl + t_dhl


def test_criterion_4_memory_effect():
    verdicts, detail, elapsed = _memory_verdicts("vonNeumann")
    _verdict("4", all(verdicts) and elapsed < 300, detail + " (<300s)")


# --- 5 ------------------------------------------------------------------------

def _revivals(preset: str, entropy: str):
    tables, elapsed = _run(preset, entropy)
    return tables["S_A1A2_circuit"].metadata["revivals"], elapsed


def _circuit_verdicts(entropy: str):
    bal, t1 = _revivals("fig2_balanced", entropy)
    res, t2 = _revivals("fig2_resampled", entropy)
    verdicts = (bal["n_dips"] >= 2, res["n_dips"] == 0)
    return verdicts, bal, res, t1 + t2


def test_criterion_5_circuit_revivals():
    verdicts, bal, res, elapsed = _circuit_verdicts("vonNeumann")
    cbal, t3 = _revivals("fig2_balanced_classical", "vonNeumann")
    cres, t4 = _revivals("fig2_resampled_classical", "vonNeumann")
    classical = cbal["n_dips"] >= 2 and cres["n_dips"] == 0 and cbal["max_depth"] < bal["max_depth"]
    elapsed += t3 + t4
    ok = all(verdicts) and classical and elapsed < 300
    _verdict("5", ok, f"balanced {bal['n_dips']} dips (max depth {bal['max_depth']:.2f}), resampled x50 "
                      f"{res['n_dips']} dips; classical inputs: balanced {cbal['n_dips']} dips "
                      f"(max depth {cbal['max_depth']:.2f}), resampled {cres['n_dips']} dips; "
                      f"{elapsed:.0f}s (<300s)")


# --- 6 ------------------------------------------------------------------------

def _tmi_verdicts(entropy: str):
    left, t1 = _run("fig3_left", entropy)
    summ = left["I3"].metadata["summary"]
    sweep, t2 = _run("fig3_lambda_sweep", entropy)
    ratio = sweep["I3_haar_ratio"].value
    bal, t3 = _run("fig3_middle_balanced", entropy)
    bsum = bal["I3"].metadata["summary"]
    verdicts = (summ["max_rel_dev_after_5pct"] < 0.05,
                bool(np.all(np.diff(ratio) > 0) and ratio[-1] > 0.9),
                bsum["min"] < 0 and bsum["rise_after_min"] >= 0.1 * abs(bsum["min"]))
    detail = (f"(a) max |I3-I3~|/|I3~| after 5% = {summ['max_rel_dev_after_5pct']:.4f} (<0.05), "
              f"I3~ = {summ['I3_haar']:.2f}; (b) I3~/(-I2~) at lambda 1,2,5,10 = "
              f"{', '.join(f'{r:.3f}' for r in ratio)}; (c) balanced circuit min {bsum['min']:.2f} at step "
              f"{bsum['argmin']:.0f}, rise {bsum['rise_after_min']:.2f}")
    return verdicts, detail, t1 + t2 + t3


def test_criterion_6_tmi_saturation():
    verdicts, detail, elapsed = _tmi_verdicts("vonNeumann")
    _verdict("6", all(verdicts) and elapsed < 300, detail + f"; {elapsed:.0f}s (<300s)")


# --- 7 ------------------------------------------------------------------------

def test_criterion_7_sff():
    goe, t1 = _run("fig5_goe")
    hl, t2 = _run("fig5_hl")
    rg = goe["sff_GOE"].metadata["ramp"]
    rh = hl["sff_HL"].metadata["ramp"]
    sanity = True
    for table in (goe["sff_GOE"], hl["sff_HL"]):
        sanity &= table.x[0] == 0.0 and table.value[0] == 0.0 and bool(np.all(table.value <= 0.0))
    w = np.linspace(0.3, 3.0, 100)
    sanity &= sff_log_total(w, 0.01, 0.0) == 0.0
    sanity &= bool(np.all(sff_log_total(w, 0.01, np.logspace(-2, 4, 2000)) <= 0.0))
    # full-size preset (N = 500, 300 samples): reported, not gated
    big, t3 = _run("fig5_goe", full=True)
    series = big["sff_GOE"]
    y = series.value / np.log(10.0)
    n = 500
    near = (series.x >= n / 10) & (series.x <= 10 * n)
    full_note = (f"full size: global min log10 g {y.min():.0f} at t={series.x[np.argmin(y)]:.2g}, "
                  f"plateau {series.metadata['ramp']['plateau'] / np.log(10):.0f}, "
                  f"range of log10 g over t in [N/10, 10N] {np.ptp(y[near]):.1f} decades ({t3:.0f}s)")
    elapsed = t1 + t2
    ok = (rg["slope"] > 0 and rg["t_stat"] > 5 and abs(rh["t_stat"]) < 2 and sanity and elapsed < 600)
    _verdict("7", ok, f"GOE x100 ramp slope {rg['slope']:.3f}, t-stat {rg['t_stat']:.2f} (>5); "
                      f"HL t-stat {rh['t_stat']:.2f} (|t|<2); ln g(0)=0 and ln g<=0: {sanity}; "
                      f"{elapsed:.0f}s (<600s); {full_note}")


# --- 8 ------------------------------------------------------------------------

def test_criterion_8_renyi2_parity():
    m_vn, _, _ = _memory_verdicts("vonNeumann")
    m_r2, m_detail, _ = _memory_verdicts("renyi2")
    c_vn = _circuit_verdicts("vonNeumann")
    c_r2 = _circuit_verdicts("renyi2")
    t_vn, _, _ = _tmi_verdicts("vonNeumann")
    t_r2, t_detail, _ = _tmi_verdicts("renyi2")
    same = m_vn == m_r2 and c_vn[0] == c_r2[0] and t_vn == t_r2
    _verdict("8", same, f"renyi2 verdicts memory {m_r2} vs {m_vn}, circuit {c_r2[0]} vs {c_vn[0]} "
                        f"({c_r2[1]['n_dips']}/{c_r2[2]['n_dips']} dips), TMI {t_r2} vs {t_vn}; "
                        f"renyi2 memory: {m_detail}; renyi2 TMI: {t_detail}")


# --- 9 ------------------------------------------------------------------------

def test_criterion_9_wigner_correspondence():
    tables, elapsed = _run("wigner_check")
    table = tables["wigner_check"]
    rows = table.metadata["rows"]
    z = table.extra["z_score"]
    ok = bool(np.all(np.abs(z) < 3)) and elapsed < 30 and table.sample_count[0] == 100_000
    _verdict("9", ok, ", ".join(f"{r.split('#')[0]} z={v:+.2f}" for r, v in zip(rows, z))
             + f" at n=1e5 (|z|<3); {elapsed:.1f}s (<30s)")


# --- 10 -----------------------------------------------------------------------

DETERMINISM_CONFIGS = {
    "memory_effect": dict(model="DHL", n_modes=40, n_a1=5, n_a2=5, gap=12, t_stop=15.0, t_points=16,
                          qp_overlay=True, qp_samples=4),
    "circuit_memory": dict(n_modes=24, n_a1=4, n_a2=4, gap=8, steps=12, policy="resampled"),
    "tmi": dict(n_modes=30, n_a=3, n_b=8, n_c=4, t_stop=10.0, t_points=11),
    "tmi_static": dict(n_modes=30, n_b=5, n_c=5, ratios=[0.4, 1.0]),
    "otoc": dict(model="DHL", n_modes=12, j=0, k=5, t_points=21, passive_sizes=[6], passive_points=11,
                 displacement=True),
    "sff": dict(model="GOE", n_modes=12, t_points=120, smooth_window=7, discrete=True),
    "wigner_check": dict(states=["thermal", "circuit"], n_draws=5000),
}


def test_criterion_10_determinism(tmp_path):
    mismatched, files = [], 0
    for experiment, params in DETERMINISM_CONFIGS.items():
        cfg = parse_config({"experiment": experiment, "master_seed": 99, "samples": 3, "params": params})
        outs = []
        for tag, workers in (("a", 1), ("b", 1), ("c", MAX_WORKERS)):
            run = cfg.with_overrides(workers=workers)
            write_outputs(run_experiment(run), run, tmp_path / experiment / tag, svg=False)
            outs.append(tmp_path / experiment / tag)
        for f in sorted(outs[0].glob("*.csv")):
            files += 1
            blobs = [(o / f.name).read_bytes() for o in outs]
            if not blobs[0] == blobs[1] == blobs[2]:
                mismatched.append(f"{experiment}/{f.name}")
    ok = not mismatched and files > 0
    _verdict("10", ok, f"{files} CSV files over {len(DETERMINISM_CONFIGS)} experiments byte-identical across "
                       f"two runs and workers 1 vs {MAX_WORKERS}" + (f"; mismatched: {mismatched}" if mismatched else ""))
