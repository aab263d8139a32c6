"""Experiment reports: ratio statistics, refinement trends and verdicts."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class TrialRecord:
    level: str
    seed: int
    ratio: float
    excluded: int = 0
    extra: dict = field(default_factory=dict)


@dataclass
class BoundReport:
    """Outcome of one verification run.

    ``trend`` maps a refinement level (usually the grid size) to the sup of
    the trial ratios at that level.  ``passed`` is decided from the recorded
    numbers only, so two runs with equal seeds give equal reports apart from
    ``runtime``.
    """

    experiment: str
    params: dict = field(default_factory=dict)
    trials: list[TrialRecord] = field(default_factory=list)
    trend: dict = field(default_factory=dict)
    passed: bool = False
    threshold: float | None = None
    criterion: str = ""
    runtime: float = 0.0
    notes: list[str] = field(default_factory=list)
    reference: str = ""

    @property
    def sup_ratio(self) -> float:
        vals = [t.ratio for t in self.trials if math.isfinite(t.ratio)]
        return max(vals) if vals else math.nan

    def add(self, level, seed: int, ratio: float, excluded: int = 0, **extra) -> None:
        self.trials.append(TrialRecord(str(level), int(seed), float(ratio), int(excluded), extra))

    def level_sups(self) -> dict:
        out: dict = {}
        for t in self.trials:
            out[t.level] = max(out.get(t.level, -math.inf), t.ratio)
        return out

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["sup_ratio"] = self.sup_ratio
        return _jsonable(d)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["experiment", "level", "seed", "ratio", "excluded"])
        for t in self.trials:
            w.writerow([self.experiment, t.level, t.seed, repr(float(t.ratio)), t.excluded])
        return buf.getvalue()

    def trend_table(self) -> str:
        """Two-column ``level sup_ratio`` text, readable by gnuplot."""
        lines = ["# level sup_ratio"]
        for k, v in self.trend.items():
            lines.append(f"{k} {v!r}")
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.experiment}: sup ratio {self.sup_ratio:.4g} ({self.criterion})"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return obj
    if hasattr(obj, "item"):
        return _jsonable(obj.item())
    return obj


def stability_verdict(level_sups: dict, factor: float = 2.0) -> tuple[bool, str]:
    """Refinement stability: sup ratios across levels within ``factor`` of each other."""
    vals = [float(v) for v in level_sups.values()]
    if not vals or not all(math.isfinite(v) for v in vals):
        return False, "non-finite ratio"
    hi, lo = max(vals), min(vals)
    if hi == 0.0:
        return True, "all ratios zero"
    if lo <= 0.0:
        return False, "ratio vanishes on some level only"
    spread = hi / lo
    return spread <= factor, f"max/min across ladder {spread:.3f} <= {factor}"
