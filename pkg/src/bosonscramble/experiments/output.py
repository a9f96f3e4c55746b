"""Result tables and their CSV / SVG / manifest output."""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .. import __version__


@dataclass
class ResultTable:
    """One series: ``x, value, std_error, sample_count`` plus optional extra columns."""

    name: str
    x_name: str
    x: np.ndarray
    value: np.ndarray
    std_error: np.ndarray
    sample_count: np.ndarray
    metadata: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)
    xscale: str = "linear"
    yscale: str = "linear"
    y_factor: float = 1.0
    y_label: str = "value"

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        n = len(self.x)
        self.value = np.asarray(self.value, dtype=float)
        self.std_error = np.broadcast_to(np.asarray(self.std_error, dtype=float), (n,)).copy()
        self.sample_count = np.broadcast_to(np.asarray(self.sample_count, dtype=int), (n,)).copy()
        self.extra = {k: np.asarray(v) for k, v in self.extra.items()}
        for col in (self.value, *self.extra.values()):
            if len(col) != n:
                raise ValueError(f"column length mismatch in table {self.name!r}")
        if np.any(self.sample_count == 1):
            self.metadata.setdefault("single_sample_std_error", "zero by convention")

    def __len__(self) -> int:
        return len(self.x)

    @property
    def columns(self) -> list[str]:
        return [self.x_name, "value", "std_error", "sample_count", *self.extra]


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=_json_default, separators=(",", ":"))


def table_to_csv(table: ResultTable, header: dict | None = None) -> str:
    if len(table) == 0:
        raise ValueError(f"table {table.name!r} is empty")
    buf = io.StringIO()
    meta = {"series": table.name, **(header or {}), **table.metadata}
    for key in sorted(meta):
        buf.write(f"# {key}: {_json(meta[key])}\n")
    buf.write(",".join(table.columns) + "\n")
    cols = [table.x, table.value, table.std_error, table.sample_count, *table.extra.values()]
    for i in range(len(table)):
        buf.write(",".join(_fmt(c[i]) for c in cols) + "\n")
    return buf.getvalue()


def read_csv(path: str | Path) -> tuple[dict, dict[str, np.ndarray]]:
    """Parse a table written by :func:`table_to_csv`."""
    meta, lines = {}, []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.startswith("# "):
            key, _, val = line[2:].partition(": ")
            meta[key] = json.loads(val)
        elif line:
            lines.append(line)
    names = lines[0].split(",")
    data = np.array([[float(v) for v in row.split(",")] for row in lines[1:]]).reshape(-1, len(names))
    return meta, {name: data[:, i] for i, name in enumerate(names)}


def write_svg(table: ResultTable, path: Path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "bosonscramble"
    x, y = table.x, table.value * table.y_factor
    mask = np.isfinite(y)
    if table.xscale == "log":
        mask &= x > 0
    if table.yscale == "log":
        mask &= y > 0
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(x[mask], y[mask], lw=1.2)
    ax.set_xscale(table.xscale)
    ax.set_yscale(table.yscale)
    ax.set_xlabel(table.x_name)
    ax.set_ylabel(table.y_label)
    ax.set_title(table.name)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)


def emit(table: ResultTable, out_dir: str | Path, fmt: str = "csv", header: dict | None = None) -> Path:
    if len(table) == 0:
        raise ValueError(f"table {table.name!r} is empty")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{table.name}.{fmt}"
    if fmt == "csv":
        path.write_text(table_to_csv(table, header), encoding="utf-8")
    elif fmt == "svg":
        write_svg(table, path)
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    return path


def write_outputs(tables: list[ResultTable], config, out_dir: str | Path, svg: bool = True) -> Path:
    """Write every table as CSV (and SVG), then ``manifest.json``; returns the manifest path."""
    out_dir = Path(out_dir)
    header = {"experiment": config.experiment, "config_hash": config.hash(),
              "code_version": __version__, "schema_version": config.schema_version}
    files = []
    for table in tables:
        files.append(emit(table, out_dir, "csv", header).name)
        if svg:
            files.append(emit(table, out_dir, "svg").name)
    manifest = {**header, "files": files, "config": config.to_dict()}
    manifest["config"].pop("workers")
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True, default=_json_default) + "\n", encoding="utf-8")
    return path
