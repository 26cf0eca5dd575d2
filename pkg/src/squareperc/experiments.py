"""Monte Carlo sweeps over G(n, p) and closed-form expectations.

A sweep is a grid of edge probabilities (given directly or as scaling
constants ``c`` with ``p = c * sqrt(ln n / n)``) times a number of trials.
Trial ``t`` at grid point ``i`` uses the global trial index
``i * trials + t`` for seeding, so every record is reproducible from the
master seed and its ``trial`` column alone, and different grid points never
share random numbers.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .analysis import (
    DIAMETER2_VERTEX_CAP,
    DIAMETER_VERTEX_CAP,
    SCHEMA_VERSION,
    count_nonbonded,
    t1_components,
    t1_diameter,
    t1_diameter_at_most_two,
)
from .errors import BracketInvalidError, InvalidParamsError, InvalidProbabilityError
from .graph import Graph
from .sampler import derive_trial_seed, sample_gnp

# metric name -> (CSV column, is boolean)
METRICS: dict[str, tuple[str, bool]] = {
    "numSquares": ("num_squares", False),
    "largest": ("largest", False),
    "secondLargest": ("second_largest", False),
    "isolatedT1": ("isolated", False),
    "t1Connected": ("t1_connected", True),
    "sConnected": ("s_connected", True),
    "nonBondedCount": ("non_bonded", False),
    "diameterAtMostTwo": ("diam_le2", True),
    "t1Diameter": ("t1_diameter", False),
}
BOOLEAN_METRICS = frozenset(k for k, (_, b) in METRICS.items() if b)
_DECOMP_METRICS = frozenset({"numSquares", "largest", "secondLargest", "isolatedT1", "t1Connected", "sConnected"})

RAW_COLUMNS = (
    "n", "p", "c", "trial", "seed", "num_edges", "num_non_edges", "num_squares",
    "num_components", "num_nontrivial", "largest", "second_largest", "isolated",
    "t1_connected", "s_connected", "non_bonded", "diam_le2",
)


# -- closed forms ------------------------------------------------------------


def _log_comb(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def expected_isolated_t1(n: int, p: float) -> float:
    """``C(n,2) (1-p) (1-p^2)^(n-2)``: expected number of non-edges whose
    endpoints have no common neighbour."""
    if n < 2:
        raise InvalidParamsError("need n >= 2")
    p = _prob(p)
    if p == 1.0:
        return 0.0
    return math.exp(_log_comb(n, 2) + math.log1p(-p) + (n - 2) * math.log1p(-p * p))


def expected_nonbonded_squares(n: int, p: float) -> float:
    """``C(n,4) * 3 p^4 (1-p)^2 * (1 - 2p^2(1-p^2))^(n-4)``."""
    if n < 4:
        raise InvalidParamsError("need n >= 4")
    p = _prob(p)
    if p in (0.0, 1.0):
        return 0.0
    q = 2 * p * p * (1 - p * p)  # at most 1/2, so the log is finite
    log_val = _log_comb(n, 4) + math.log(3) + 4 * math.log(p) + 2 * math.log1p(-p) + (n - 4) * math.log1p(-q)
    return math.exp(log_val)


def threshold_p(c: float, n: int) -> float:
    """``c * sqrt(ln n / n)``; raises if the result is not a probability."""
    if n < 1:
        raise InvalidParamsError("need n >= 1")
    p = c * math.sqrt(math.log(n) / n)
    if not 0.0 <= p <= 1.0:
        raise InvalidProbabilityError(f"c={c} at n={n} gives p={p}, outside [0, 1]")
    return p


def expected_clique_common_pairs(n: int, p: float) -> float:
    """Expected number of pairs of distinct non-edges whose joint common
    neighbourhood spans no non-edge.

    Only such pairs can be at T1-distance more than two, so this bounds the
    expected number of witnesses against diameter at most two.  Pairs sharing
    a vertex have 3 endpoints, disjoint pairs 4; given ``k`` common
    neighbours the chance they form a clique is ``p^C(k,2)``.
    """
    p = _prob(p)
    total = 0.0
    for size, count in ((3, n * math.comb(n - 1, 2)), (4, math.comb(n, 2) * math.comb(n - 2, 2) // 2)):
        if count == 0:
            continue
        trials = n - size
        q = p**size
        clique = 0.0
        for k in range(trials + 1):
            log_bin = _log_comb(trials, k) + _xlogy(k, q) + _xlogy(trials - k, 1 - q)
            log_cl = _xlogy(k * (k - 1) // 2, p)
            clique += math.exp(log_bin + log_cl) if log_bin + log_cl > -745 else 0.0
        total += count * (1 - p) ** 2 * clique
    return total


def _xlogy(x: float, y: float) -> float:
    if x == 0:
        return 0.0
    return -math.inf if y == 0 else x * math.log(y)


def _prob(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise InvalidProbabilityError(f"probability {p} not in [0, 1]")
    return p


# -- configuration and records ------------------------------------------------


@dataclass(frozen=True)
class Caps:
    diameter2_vertices: int = DIAMETER2_VERTEX_CAP
    diameter_vertices: int = DIAMETER_VERTEX_CAP


@dataclass(frozen=True)
class ExperimentConfig:
    """A grid of edge probabilities times ``trials`` samples each.

    Exactly one of ``p_values`` and ``c_values`` is given.
    """

    n: int
    trials: int
    master_seed: int
    metrics: tuple[str, ...]
    p_values: tuple[float, ...] | None = None
    c_values: tuple[float, ...] | None = None
    caps: Caps = field(default_factory=Caps)

    def __post_init__(self):
        if (self.p_values is None) == (self.c_values is None):
            raise InvalidParamsError("give exactly one of p_values and c_values")
        if self.trials < 1:
            raise InvalidParamsError("trials must be >= 1")
        if self.n < 4:
            raise InvalidParamsError("square metrics need n >= 4")
        unknown = [m for m in self.metrics if m not in METRICS]
        if unknown or not self.metrics:
            raise InvalidParamsError(f"unknown or empty metrics: {unknown}; choose from {sorted(METRICS)}")
        if len(set(self.metrics)) != len(self.metrics):
            raise InvalidParamsError("duplicate metric names")
        grid = self.grid()
        if not grid:
            raise InvalidParamsError("empty probability grid")

    def grid(self) -> list[tuple[float, float | None]]:
        """``(p, c)`` per grid point, in the given order."""
        if self.p_values is not None:
            return [(_prob(p), None) for p in self.p_values]
        return [(threshold_p(c, self.n), float(c)) for c in self.c_values]


@dataclass(frozen=True)
class TrialRecord:
    n: int
    p: float
    c: float | None
    trial: int
    seed: int
    num_edges: int
    num_non_edges: int
    values: dict[str, object]
    markers: tuple[str, ...] = ()

    def row(self) -> dict[str, object]:
        """Raw CSV row; columns that were not computed are left out."""
        out = {"n": self.n, "p": self.p, "c": self.c, "trial": self.trial, "seed": self.seed,
               "num_edges": self.num_edges, "num_non_edges": self.num_non_edges}
        out.update(self.values)
        return out

    def to_json(self) -> dict:
        out = self.row()
        out["markers"] = list(self.markers)
        return out


def _metric_values(g: Graph, metrics: Iterable[str], caps: Caps) -> tuple[dict, list[str]]:
    metrics = set(metrics)
    values: dict[str, object] = {}
    markers: list[str] = []
    if metrics & _DECOMP_METRICS:
        d = t1_components(g)
        markers += d.markers
        values.update(num_squares=d.num_squares, num_components=d.num_components,
                      num_nontrivial=d.num_nontrivial)
        if "largest" in metrics:
            values["largest"] = d.largest
        if "secondLargest" in metrics:
            values["second_largest"] = d.second_largest
        if "isolatedT1" in metrics:
            values["isolated"] = d.isolated_count
        if "t1Connected" in metrics:
            values["t1_connected"] = d.num_components <= 1
        if "sConnected" in metrics:
            values["s_connected"] = d.num_nontrivial <= 1
    if "nonBondedCount" in metrics:
        values["non_bonded"] = count_nonbonded(g)
    empty = g.m == g.n * (g.n - 1) // 2
    if empty and "t1-empty" not in markers:
        markers.append("t1-empty")
    if "diameterAtMostTwo" in metrics:
        values["diam_le2"] = True if empty else t1_diameter_at_most_two(g, caps.diameter2_vertices)
    if "t1Diameter" in metrics:
        values["t1_diameter"] = 0 if empty else t1_diameter(g, caps.diameter_vertices)
    if "numSquares" not in metrics:
        values.pop("num_squares", None)
    return values, markers


def run_trial(n: int, p: float, trial: int, master_seed: int, metrics: Iterable[str],
              c: float | None = None, caps: Caps = Caps()) -> TrialRecord:
    """Sample one graph and compute the requested metrics."""
    seed = derive_trial_seed(master_seed, trial)
    g = sample_gnp(n, p, seed)
    values, markers = _metric_values(g, metrics, caps)
    return TrialRecord(n, float(p), c, trial, seed.key, g.m, g.num_non_edges, values, tuple(markers))


# -- sweeps ------------------------------------------------------------------


@dataclass
class SweepTable:
    config: ExperimentConfig
    aggregate: list[dict]
    records: list[TrialRecord]

    def aggregate_columns(self) -> list[str]:
        return aggregate_columns(self.config.metrics)

    def to_json(self, include_raw: bool = True) -> dict:
        out = {"schema_version": SCHEMA_VERSION, "aggregate": self.aggregate}
        if include_raw:
            out["raw"] = [r.to_json() for r in self.records]
        return out


def aggregate_columns(metrics: Iterable[str]) -> list[str]:
    cols = ["n", "p", "c", "trials"]
    for m in metrics:
        col, is_bool = METRICS[m]
        cols += [f"{col}_freq"] if is_bool else [f"{col}_mean", f"{col}_sd", f"{col}_max"]
    return cols


def _summarise(records: list[TrialRecord], metrics: Iterable[str]) -> dict:
    first = records[0]
    row = {"n": first.n, "p": first.p, "c": first.c, "trials": len(records)}
    for m in metrics:
        col, is_bool = METRICS[m]
        x = np.array([float(r.values[col]) for r in records])
        if is_bool:
            row[f"{col}_freq"] = float(x.mean())
        else:
            row[f"{col}_mean"] = float(x.mean())
            row[f"{col}_sd"] = float(x.std(ddof=1)) if len(x) > 1 else 0.0
            row[f"{col}_max"] = float(x.max())
    return row


def _task(args) -> TrialRecord:
    n, p, trial, master, metrics, c, caps = args
    return run_trial(n, p, trial, master, metrics, c, caps)


def sweep(config: ExperimentConfig, workers: int = 1, keep_raw: bool = True,
          progress: Callable[[TrialRecord], None] | None = None) -> SweepTable:
    """Run every grid point ``trials`` times and aggregate per point."""
    tasks = [
        (config.n, p, i * config.trials + t, config.master_seed, config.metrics, c, config.caps)
        for i, (p, c) in enumerate(config.grid())
        for t in range(config.trials)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        records = []
        for task in tasks:
            records.append(_task(task))
            if progress is not None:
                progress(records[-1])
    records.sort(key=lambda r: (r.p, r.trial))
    groups: dict[int, list[TrialRecord]] = {}
    for r in records:
        groups.setdefault(r.trial // config.trials, []).append(r)
    aggregate = [_summarise(groups[k], config.metrics) for k in sorted(groups, key=lambda k: (groups[k][0].p, k))]
    return SweepTable(config, aggregate, records if keep_raw else [])


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v)


def _csv_text(columns: list[str], rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row.get(col)) for col in columns])
    return buf.getvalue()


def raw_csv(records: Iterable[TrialRecord]) -> str:
    """Raw records in the fixed column order; booleans as 1/0, missing
    metrics as empty cells."""
    return _csv_text(list(RAW_COLUMNS), (r.row() for r in records))


def aggregate_csv(table: SweepTable) -> str:
    return _csv_text(table.aggregate_columns(), table.aggregate)


def write_sweep(table: SweepTable, out: str, raw_out: str | None = None, json_out: str | None = None) -> None:
    with open(out, "w", newline="") as fh:
        fh.write(aggregate_csv(table))
    if raw_out:
        with open(raw_out, "w", newline="") as fh:
            fh.write(raw_csv(table.records))
    if json_out:
        with open(json_out, "w") as fh:
            json.dump(table.to_json(include_raw=bool(raw_out)), fh, indent=1, default=str)
            fh.write("\n")


# -- threshold location ------------------------------------------------------


def _frequency(n: int, metric: str, c: float, trials: int, seed: int, workers: int) -> float:
    cfg = ExperimentConfig(n=n, trials=trials, master_seed=seed, metrics=(metric,), c_values=(c,))
    return sweep(cfg, workers=workers, keep_raw=False).aggregate[0][f"{METRICS[metric][0]}_freq"]


def estimate_crossing(n: int, metric: str, c_low: float, c_high: float, trials: int, seed: int,
                      half_width: float = 0.05, workers: int = 1,
                      history: list[tuple[float, float]] | None = None) -> float:
    """Bisect on ``c`` for the point where ``metric`` holds with frequency 1/2.

    Every evaluation reuses the same master seed, so the graphs at two
    values of ``c`` are coupled (the larger one contains the smaller).
    Stops once the bracket is narrower than ``2 * half_width`` and returns
    its midpoint.  ``history`` collects ``(c, frequency)`` pairs.
    """
    if metric not in BOOLEAN_METRICS:
        raise InvalidParamsError(f"{metric} is not a boolean metric")
    if not c_low < c_high:
        raise BracketInvalidError("need c_low < c_high")
    log = history if history is not None else []

    def freq(c: float) -> float:
        f = _frequency(n, metric, c, trials, seed, workers)
        log.append((c, f))
        return f

    f_lo, f_hi = freq(c_low), freq(c_high)
    if not f_lo < 0.5 < f_hi:
        raise BracketInvalidError(
            f"frequency {f_lo} at c={c_low} and {f_hi} at c={c_high} do not bracket 1/2")
    lo, hi = c_low, c_high
    while (hi - lo) / 2 > half_width:
        mid = (lo + hi) / 2
        if freq(mid) < 0.5:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


# -- presets -----------------------------------------------------------------


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    config: ExperimentConfig
    exploratory: bool = False


def _c_grid(lo: float, hi: float, step: float) -> tuple[float, ...]:
    k = int(round((hi - lo) / step))
    return tuple(round(lo + i * step, 10) for i in range(k + 1))


def presets(seed: int = 1) -> dict[str, Preset]:
    """Named sweeps with desk-scale parameters.

    ``diameter2``: at n=200, p=0.7, :func:`expected_clique_common_pairs` is
    far below 1, so the diameter-at-most-two property should hold in almost
    every trial.  ``near-complete`` puts ``1 - p = c / n^2``, leaving a
    handful of non-edges.  The ``second-size-growth`` and ``diameter-growth``
    presets are exploratory with no pass/fail attached.
    """
    items = [
        Preset("s-threshold", "S and T1 connectivity across c in [0.6, 1.6] at n=1024",
               ExperimentConfig(1024, 50, seed, ("sConnected", "t1Connected", "isolatedT1"),
                                c_values=_c_grid(0.6, 1.6, 0.1))),
        Preset("gap", "n=4096 at c=1.25: S connected while T1 has isolated vertices",
               ExperimentConfig(4096, 50, seed, ("sConnected", "t1Connected", "isolatedT1"), c_values=(1.25,))),
        Preset("diameter2", "T1 diameter at most two at n=200, p=0.7",
               ExperimentConfig(200, 20, seed, ("diameterAtMostTwo",), p_values=(0.7,))),
        Preset("near-complete", "1 - p = c / n^2 at n=200 for c in {1, 2, 4, 8}",
               ExperimentConfig(200, 50, seed, ("t1Connected", "diameterAtMostTwo"),
                                p_values=tuple(1 - c / 200**2 for c in (1, 2, 4, 8)))),
        Preset("second-component", "largest and second-largest components at n=2048, p=0.07",
               ExperimentConfig(2048, 50, seed, ("largest", "secondLargest", "sConnected"), p_values=(0.07,))),
        Preset("isolated-mean", "isolated T1 vertices at n=500, p=0.1115",
               ExperimentConfig(500, 100, seed, ("isolatedT1",), p_values=(0.1115,))),
        Preset("nonbonded-mean", "non-bonded squares at n=300, p=0.15",
               ExperimentConfig(300, 300, seed, ("nonBondedCount",), p_values=(0.15,))),
        Preset("second-size-growth", "second-largest component just above the giant threshold",
               ExperimentConfig(2048, 20, seed, ("largest", "secondLargest"),
                                p_values=tuple(round(x / math.sqrt(2048), 6) for x in (0.75, 0.9, 1.1, 1.4))),
               exploratory=True),
        Preset("diameter-growth", "exact T1 diameter on small graphs over a range of p",
               ExperimentConfig(60, 20, seed, ("t1Diameter",), p_values=(0.3, 0.4, 0.5, 0.6)),
               exploratory=True),
    ]
    return {p.name: p for p in items}
