"""Experiment reports and their JSON/CSV writers."""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

VERDICTS = ("pass", "fail", "inconclusive")


def _plain(x):
    """Make numpy scalars/arrays JSON friendly (non-finite floats become strings)."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if np.isfinite(x) else str(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


@dataclass
class Curve:
    name: str
    x: list
    y: list
    parameters: dict = field(default_factory=dict)


@dataclass
class ExperimentReport:
    experiment_id: str
    parameters: dict
    series: list[Curve]
    verdict: str
    thresholds: dict
    headline: float = float("nan")
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"verdict must be one of {VERDICTS}")

    def to_dict(self) -> dict:
        return _plain(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def write(self, out_dir) -> list[Path]:
        """One JSON report plus one CSV per curve."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = [out / f"{self.experiment_id}.json"]
        paths[0].write_text(self.to_json(), encoding="utf-8")
        for c in self.series:
            p = out / f"{self.experiment_id}__{c.name}.csv"
            with open(p, "w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh)
                w.writerow(["x", "y"])
                for x, y in zip(c.x, c.y):
                    w.writerow([_plain(x), _plain(y)])
            paths.append(p)
        return paths


def inconclusive(experiment_id: str, parameters: dict, reason: str, thresholds=None) -> ExperimentReport:
    return ExperimentReport(
        experiment_id=experiment_id,
        parameters=parameters,
        series=[],
        verdict="inconclusive",
        thresholds=thresholds or {},
        notes=[reason],
    )


def summary_table(reports) -> str:
    rows = ["experiment_id,verdict,headline"]
    for r in reports:
        rows.append(f"{r.experiment_id},{r.verdict},{_plain(r.headline)}")
    return "\n".join(rows) + "\n"
