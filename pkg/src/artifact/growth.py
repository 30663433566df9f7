"""Core growth measurements for powers of a synchronizing transducer."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import BudgetExceeded, PreconditionUnmet
from .transducer import Transducer, inverse, min_core, product, sync_analysis, sync_level

DEFAULT_CAP = 250_000


@dataclass(frozen=True)
class GrowthRecord:
    m: int
    states: int
    sync_level: int | None
    bisync_level: int | None
    coredist_raw: int


@dataclass
class GrowthSeries:
    machine: str
    records: list = field(default_factory=list)
    truncated: bool = False
    classification: dict = field(default_factory=dict)

    @property
    def states(self):
        return [r.states for r in self.records]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "states", "sync_level", "bisync_level", "coredist_raw"])
        for r in self.records:
            w.writerow([r.m, r.states, "" if r.sync_level is None else r.sync_level,
                        "" if r.bisync_level is None else r.bisync_level, r.coredist_raw])
        return buf.getvalue()


def _safe_level(B):
    try:
        return sync_level(B)
    except BudgetExceeded:
        return None


def growth_series(A: Transducer, M: int, cap: int = DEFAULT_CAP, name: str = "A",
                  bisync: bool = True) -> GrowthSeries:
    sync_analysis(A)
    series = GrowthSeries(name)
    B = None
    for m in range(1, M + 1):
        raw = A if B is None else product(B, A)
        if raw.size > cap:
            series.truncated = True
            break
        coredist = len(kernels.image_chain(raw.delta, np.arange(raw.size))) - 1
        B = min_core(raw, check=False)
        k = _safe_level(B)
        bk = _safe_level(inverse(B)) if bisync and B.is_invertible() else None
        series.records.append(GrowthRecord(m, B.size, k, bk, coredist))
    series.classification = classify(series.states)
    return series


def classify(states) -> dict:
    """Heuristic label from log-linear and log-log fits; not a proof of anything."""
    s = np.asarray(states, dtype=float)
    if len(s) < 3 or s.max() == s.min():
        return {"label": "bounded" if len(s) and s.max() == s.min() else "too-short",
                "method": "constant series" if len(s) >= 1 else "n/a"}
    half = len(s) // 2
    if len(s) >= 4 and s[half:].max() <= s[:half].max():
        return {"label": "bounded", "method": "no new maximum in the second half of the series (heuristic)"}
    m = np.arange(1, len(s) + 1, dtype=float)
    y = np.log(s)
    a_exp, b_exp = np.polyfit(m, y, 1)
    a_pol, b_pol = np.polyfit(np.log(m), y, 1)
    r_exp = float(np.sum((y - (a_exp * m + b_exp)) ** 2))
    r_pol = float(np.sum((y - (a_pol * np.log(m) + b_pol)) ** 2))
    if r_exp <= r_pol:
        return {"label": "at_least_exponential", "base_estimate": round(math.exp(a_exp), 4),
                "method": "least squares on log(states) against m (heuristic)"}
    return {"label": "polynomial_fit", "degree_estimate": round(float(a_pol), 4),
            "method": "least squares on log(states) against log(m) (heuristic)"}


def lower_bound_check(series: GrowthSeries, f) -> bool:
    if not series.records:
        raise ValueError("empty series")
    return all(r.states >= f(r.m) for r in series.records)


@dataclass(frozen=True)
class LinearSyncReport:
    holds: bool
    levels: tuple
    slope: float


def sync_level_linear_check(A: Transducer, M: int, verdict=None) -> LinearSyncReport:
    """Sync levels of min-core powers grow at least linearly (positive least-squares slope and
    level(m) >= level(1) + (m - 1) * slope_lower for a reported positive slope_lower)."""
    from .dual import decide_order

    v = verdict or decide_order(A)
    if v.verdict != "infinite" or not v.certificate or v.certificate.get("kind") != "bad-pairs-circuit":
        raise PreconditionUnmet("needs an infinite-order verdict certified by a bad-pairs circuit")
    levels, B = [], None
    for m in range(1, M + 1):
        B = min_core(A if B is None else product(B, A), check=False)
        levels.append(sync_level(B))
    if M < 2:
        return LinearSyncReport(False, tuple(levels), 0.0)
    slope = min((levels[i] - levels[0]) / i for i in range(1, M))
    return LinearSyncReport(slope > 0, tuple(levels), float(slope))
