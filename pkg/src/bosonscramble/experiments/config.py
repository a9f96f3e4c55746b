"""Versioned JSON experiment configuration.

A config file looks like::

    {
      "schema_version": 1,
      "experiment": "memory_effect",
      "master_seed": 7,
      "samples": 20,
      "entropy": "vonNeumann",
      "workers": 1,
      "params": {"model": "DHL", "n_modes": 200}
    }

Missing ``params`` entries take the desk-scale defaults below; unknown keys
at either level are rejected.
"""

from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from ..entropy import EntropyKind
from ..models import DEFAULT_OMEGA_DIST
from ..quasiparticle import DEFAULT_DENSITY, DEFAULT_SPEED

SCHEMA_VERSION = 1
TOP_LEVEL_KEYS = {"schema_version", "experiment", "master_seed", "samples", "entropy", "workers", "params"}


class ConfigError(ValueError):
    pass


DEFAULTS: dict[str, dict[str, Any]] = {
    "memory_effect": {
        "model": "HL", "n_modes": 200, "m0": 2.0, "m1": 1e-7, "j_low": 0.0, "j_high": 2.0,
        "n_a1": 20, "n_a2": 20, "gap": 60,
        "t_start": 0.0, "t_stop": 100.0, "t_points": 201,
        "light_cone_velocity": 1.0,
        "qp_overlay": False, "qp_samples": 50, "qp_modes": None,
        "qp_speed": DEFAULT_SPEED, "qp_density": DEFAULT_DENSITY, "qp_normalization": "mean",
    },
    "circuit_memory": {
        "n_modes": 240, "n_a1": 40, "n_a2": 40, "gap": 100, "squeeze": 2.0,
        "policy": "balanced", "steps": 180, "noise_units": 0.0, "v_max": 2.0,
        "revival_fraction": 0.9,
    },
    "tmi": {
        "dynamics": "passive", "model": "GOE", "n_modes": 200, "squeeze": 10.0, "noise_units": 0.0,
        "n_a": 20, "n_b": 80, "n_c": 30, "gap_ab": 0, "gap_bc": 0,
        "t_start": 0.0, "t_stop": 50.0, "t_points": 101,
        "steps": 200, "every": 5, "policy": "resampled",
        "omega_dist": DEFAULT_OMEGA_DIST, "scale": 1.0, "shift_margin": 0.1,
        "m": 1.0, "j_low": 0.0, "j_high": 2.0,
        "oracle": True, "lambda_sweep": [],
    },
    "tmi_static": {
        "n_modes": 200, "n_b": 30, "n_c": 30, "ratios": [0.25, 0.5, 1.0, 2.0, 4.0],
        "squeeze": 2.0, "noise_units": [0.0, 1.0], "kinds": ["vonNeumann", "renyi2"],
    },
    "otoc": {
        "model": "HL", "n_modes": 100, "m": 1.0, "j_low": 0.0, "j_high": 2.0,
        "scale": 1.0, "shift_margin": 0.1, "j": 0, "k": 49,
        "t_min": 1e-3, "t_max": 10.0, "t_points": 121, "fit_t_min": 1e-3, "fit_t_max": 1e-2,
        "passive_sizes": [], "passive_t_max": 5.0, "passive_points": 101,
        "omega_dist": DEFAULT_OMEGA_DIST, "displacement": False,
    },
    "sff": {
        "model": "GOE", "n_modes": 100, "beta": 0.01, "m": 1.0, "scale": 1.0, "shift_margin": 0.1,
        "t_min": 1e-2, "t_max": 1000.0, "t_points": 1500,
        "annealed": False, "smooth_window": 51, "late_fraction": 0.2, "band_sigmas": 2.0,
        "discrete": False,
    },
    "wigner_check": {
        "states": ["vacuum", "thermal", "squeezed", "circuit"], "n_draws": 100000,
        "thermal_nu": 3.0, "thermal_modes": 2, "squeeze": 1.0,
        "circuit_modes": 4, "circuit_steps": 3, "circuit_squeeze": 0.5, "circuit_policy": "resampled",
    },
}

# full-size runs; applied by --paper-scale before explicit CLI overrides
PAPER_SCALE: dict[str, dict[str, Any]] = {
    "memory_effect": {"params": {"n_modes": 500}},
    "circuit_memory": {"samples": 300, "params": {"n_modes": 480, "gap": 200, "steps": 360}},
    "tmi": {"samples": 500},
    "tmi_static": {},
    "otoc": {"samples": 100},
    "sff": {"samples": 300, "params": {"n_modes": 500, "t_max": 10000.0, "t_points": 3000}},
    "wigner_check": {},
}

EXPERIMENTS = tuple(DEFAULTS)


@dataclass
class ExperimentConfig:
    experiment: str
    params: dict = field(default_factory=dict)
    master_seed: int = 0
    samples: int = 1
    entropy: str = EntropyKind.VON_NEUMANN.value
    workers: int = 1
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        if self.experiment not in DEFAULTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}; choose from {', '.join(EXPERIMENTS)}")
        if self.schema_version != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema_version {self.schema_version}")
        unknown = set(self.params) - set(DEFAULTS[self.experiment])
        if unknown:
            raise ConfigError(f"unknown parameter(s) for {self.experiment}: {', '.join(sorted(unknown))}")
        merged = copy.deepcopy(DEFAULTS[self.experiment])
        merged.update(copy.deepcopy(self.params))
        self.params = merged
        if not isinstance(self.samples, int) or self.samples < 1:
            raise ConfigError("samples must be a positive integer")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ConfigError("workers must be a positive integer")
        if not isinstance(self.master_seed, int) or not 0 <= self.master_seed < 2**64:
            raise ConfigError("master_seed must be an unsigned 64-bit integer")
        try:
            EntropyKind(self.entropy)
        except ValueError:
            raise ConfigError(f"unknown entropy kind {self.entropy!r}") from None

    @property
    def p(self) -> dict:
        return self.params

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "experiment": self.experiment,
            "master_seed": self.master_seed,
            "samples": self.samples,
            "entropy": self.entropy,
            "workers": self.workers,
            "params": copy.deepcopy(self.params),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def hash(self) -> str:
        """Digest of everything that determines the results (``workers`` excluded)."""
        d = self.to_dict()
        d.pop("workers")
        blob = json.dumps(d, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()

    def with_overrides(self, **top) -> "ExperimentConfig":
        d = self.to_dict()
        params = top.pop("params", None)
        d.update({k: v for k, v in top.items() if v is not None})
        if params:
            d["params"].update(params)
        return parse_config(d)


def parse_config(data: Mapping[str, Any]) -> ExperimentConfig:
    if not isinstance(data, Mapping):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - TOP_LEVEL_KEYS
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    if "experiment" not in data:
        raise ConfigError("config is missing 'experiment'")
    params = data.get("params", {})
    if not isinstance(params, Mapping):
        raise ConfigError("'params' must be an object")
    kwargs = {k: data[k] for k in TOP_LEVEL_KEYS - {"params"} if k in data}
    return ExperimentConfig(params=dict(params), **kwargs)


def loads_config(text: str) -> ExperimentConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None
    return parse_config(data)


def load_config(path: str | Path) -> ExperimentConfig:
    return loads_config(Path(path).read_text(encoding="utf-8"))


def paper_scale(config: ExperimentConfig) -> ExperimentConfig:
    over = copy.deepcopy(PAPER_SCALE[config.experiment])
    return config.with_overrides(**over)


PRESET_DIR = Path(__file__).parent / "presets"


def list_presets() -> list[str]:
    return sorted(p.stem for p in PRESET_DIR.glob("*.json"))


def load_preset(name: str) -> ExperimentConfig:
    path = PRESET_DIR / f"{name}.json"
    if not path.exists():
        raise ConfigError(f"no preset named {name!r}")
    return load_config(path)
