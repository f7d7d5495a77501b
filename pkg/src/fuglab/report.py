"""Plot-ready CSV files and the per-run manifest.

CSV columns are fixed per report type and floats are written with 17
significant digits, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import platform
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .config import CONFIG_VERSION, snapshot
from .euclid import StripScan, triangle_ft, triangle_zero_predicate

ZERO_GRID_COLUMNS = ("m", "n", "inZ", "absFT")
STRIP_COLUMNS = ("xi", "eta", "absFT")
GAP_COLUMNS = ("kind", "lo", "hi")
SUMMARY_COLUMNS = ("criterion", "title", "passed", "seconds")


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def csv_text(columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def write_csv(path, columns: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(csv_text(columns, rows), encoding="utf-8")
    return path


def zero_grid_rows(radius: int):
    """Rows (m, n, inZ, |F|) on the integer grid |m|, |n| <= radius."""
    for m in range(-radius, radius + 1):
        for n in range(-radius, radius + 1):
            yield m, n, triangle_zero_predicate(m, n), abs(triangle_ft(m, n))


def strip_rows(scan: StripScan):
    if scan.grid is None:
        raise ValueError("strip scan was run without keep_grid=True")
    X, Y, M = scan.grid
    return zip(X.tolist(), Y.tolist(), M.tolist())


def gap_rows(report):
    for lo, hi in report.intervals:
        yield "realized", lo, hi
    for lo, hi in report.gaps:
        yield "gap", lo, hi


def digest(data) -> str:
    if isinstance(data, (dict, list)):
        data = json.dumps(data, sort_keys=True)
    if isinstance(data, str):
        data = data.encode("utf-8")
    return "sha256:" + hashlib.sha256(data).hexdigest()


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False, default=_json_default) + "\n"
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text, encoding="utf-8")
    return text


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    return str(o)


@dataclass
class RunManifest:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    tolerances: dict = field(default_factory=snapshot)
    versions: dict = field(default_factory=dict)
    wall_time: float = 0.0
    verdicts: dict = field(default_factory=dict)
    artifacts: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.versions:
            self.versions = {
                "fuglab": __version__,
                "tolerances": CONFIG_VERSION,
                "numpy": np.__version__,
                "python": platform.python_version(),
            }
        self._t0 = time.perf_counter()

    def add_input(self, name: str, content) -> None:
        self.inputs[name] = digest(content)

    def finish(self, **verdicts) -> None:
        self.verdicts.update(verdicts)
        self.wall_time = round(time.perf_counter() - self._t0, 6)

    def to_json(self) -> dict:
        d = asdict(self)
        return {
            "command": d["command"],
            "inputs": d["inputs"],
            "tolerances": d["tolerances"],
            "versions": d["versions"],
            "wallTime": d["wall_time"],
            "verdicts": d["verdicts"],
            "artifacts": d["artifacts"],
        }

    def write(self, directory) -> Path:
        path = Path(directory) / "manifest.json"
        dump_json(self.to_json(), path)
        return path
