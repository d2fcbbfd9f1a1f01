"""Monte-Carlo sweeps over generation parameters.

Each trial draws one scenario and runs every requested strategy on that same
scenario (paired design). Trial ``t`` at sweep point ``k`` gets its own
``SeedSequence`` derived from ``(master_seed, stream tag, k, t)``, so results
do not depend on how trials are spread over worker processes.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import statistics
import zlib
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from spectrum_dsa.allocation import Allocation, allocate
from spectrum_dsa.conflict import build_conflict_graph
from spectrum_dsa.generator import RNG_NAME, GenParams, generate_scenario, make_rng
from spectrum_dsa.metrics import METRIC_NAMES, MetricsReport, evaluate
from spectrum_dsa.model import Scenario, coverage_corrections
from spectrum_dsa.sorting import ALL_STRATEGIES, SortStrategy, sort_transmitters

log = logging.getLogger(__name__)

SWEEP_VARIABLES = ("n", "f", "rmax", "bmax", "none")
CSV_HEADER = ("sweep_variable", "sweep_value", "strategy", "metric", "mean", "stddev", "runs")


class SweepAborted(RuntimeError):
    """A sweep could not finish; no partial results are returned."""


@dataclass(frozen=True)
class SweepSpec:
    base: GenParams
    variable: str
    values: tuple[Any, ...]
    strategies: tuple[SortStrategy, ...] = ALL_STRATEGIES
    runs: int = 50
    master_seed: int = 0
    stream: str = "sweep"

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "strategies", tuple(self.strategies))
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        if not self.values:
            raise ValueError("sweep needs at least one value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if not self.strategies:
            raise ValueError("at least one strategy is required")
        if len(set(self.strategies)) != len(self.strategies):
            raise ValueError("duplicate strategies")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master seed must be a 64-bit unsigned integer")
        for v in self.values:
            self.params_at(v)  # surfaces invalid points before any work

    def params_at(self, value: Any) -> GenParams:
        b = self.base
        if self.variable == "n":
            return b.with_(n=int(value))
        if self.variable == "f":
            return b.with_(f=int(value))
        if self.variable == "rmax":
            return b.with_(radius_law=(b.radius_law[0], float(value)))
        if self.variable == "bmax":
            return b.with_(bandwidth_law=(b.bandwidth_law[0], int(value)))
        return b

    def to_dict(self) -> dict[str, Any]:
        return {
            "base": self.base.to_dict(),
            "variable": self.variable,
            "values": list(self.values),
            "strategies": [s.value for s in self.strategies],
            "runs": self.runs,
            "master_seed": self.master_seed,
            "stream": self.stream,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SweepSpec:
        strategies = data.get("strategies")
        return cls(
            base=GenParams.from_dict(data.get("base", {})),
            variable=data.get("variable", "none"),
            values=tuple(data.get("values", (0,))),
            strategies=(
                tuple(SortStrategy.parse(s) for s in strategies) if strategies else ALL_STRATEGIES
            ),
            runs=int(data.get("runs", 50)),
            master_seed=int(data.get("master_seed", 0)),
            stream=str(data.get("stream", "sweep")),
        )


def trial_seeds(
    master_seed: int, stream: str, point: int, trial: int
) -> tuple[np.random.SeedSequence, np.random.SeedSequence]:
    """(scenario stream, ordering stream) for one trial."""
    tag = zlib.crc32(stream.encode())
    key = (tag, point, trial)
    return (
        np.random.SeedSequence(master_seed, spawn_key=key + (0,)),
        np.random.SeedSequence(master_seed, spawn_key=key + (1,)),
    )


@dataclass(frozen=True)
class StrategyOutcome:
    allocation: Allocation
    report: MetricsReport


@dataclass(frozen=True)
class TrialRecord:
    point: int
    trial: int
    scenario_digest: str
    n: int
    f: int
    max_bandwidth: int
    outcomes: dict[SortStrategy, StrategyOutcome]
    # digest of the scenario each strategy was run on; all equal by construction
    consumed: dict[SortStrategy, str] = field(default_factory=dict)


def run_strategies(
    s: Scenario,
    strategies: Iterable[SortStrategy],
    trial_rng: np.random.Generator | None,
) -> tuple[dict[SortStrategy, StrategyOutcome], dict[SortStrategy, str]]:
    g = build_conflict_graph(s)
    corr = coverage_corrections(s)
    digest = s.digest()
    out: dict[SortStrategy, StrategyOutcome] = {}
    consumed: dict[SortStrategy, str] = {}
    for strat in strategies:
        order = sort_transmitters(s, g, strat, trial_rng)
        alloc = allocate(s, g, order)
        out[strat] = StrategyOutcome(alloc, evaluate(s, alloc, corr))
        consumed[strat] = digest
    return out, consumed


def run_trial(
    s: Scenario,
    strategies: Iterable[SortStrategy],
    trial_rng: np.random.Generator | None,
) -> dict[SortStrategy, MetricsReport]:
    """Evaluate each strategy on the same scenario; the conflict graph is built once."""
    outcomes, _ = run_strategies(s, strategies, trial_rng)
    return {k: v.report for k, v in outcomes.items()}


def _one_trial(spec: SweepSpec, point: int, trial: int) -> TrialRecord:
    params = spec.params_at(spec.values[point])
    scen_seed, order_seed = trial_seeds(spec.master_seed, spec.stream, point, trial)
    s = generate_scenario(params, make_rng(scen_seed))
    outcomes, consumed = run_strategies(s, spec.strategies, make_rng(order_seed))
    return TrialRecord(
        point=point,
        trial=trial,
        scenario_digest=s.digest(),
        n=s.n,
        f=s.total_bandwidth,
        max_bandwidth=max(t.bandwidth for t in s.transmitters),
        outcomes=outcomes,
        consumed=consumed,
    )


def _run_chunk(spec: SweepSpec, point: int, first: int, last: int) -> list[TrialRecord]:
    return [_one_trial(spec, point, t) for t in range(first, last)]


def _chunks(spec: SweepSpec, size: int) -> list[tuple[int, int, int]]:
    return [
        (p, lo, min(lo + size, spec.runs))
        for p in range(len(spec.values))
        for lo in range(0, spec.runs, size)
    ]


@dataclass(frozen=True)
class Summary:
    value: Any
    strategy: SortStrategy
    metric: str
    mean: float
    stddev: float
    runs: int


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list[Summary]
    trials: list[TrialRecord] | None = None

    def metadata(self) -> dict[str, Any]:
        from spectrum_dsa import __version__

        return {
            "artifact": "spectrum-dsa",
            "version": __version__,
            "rng": RNG_NAME,
            "master_seed": self.spec.master_seed,
            "spec": self.spec.to_dict(),
            "columns": list(CSV_HEADER),
            "stddev": "sample (denominator runs - 1); 0 when runs == 1",
        }

    def lookup(self, value: Any, strategy: SortStrategy, metric: str) -> Summary:
        for row in self.rows:
            if row.value == value and row.strategy is strategy and row.metric == metric:
                return row
        raise KeyError((value, strategy, metric))

    def samples(self, value: Any, strategy: SortStrategy, metric: str) -> list[float]:
        """Per-trial metric values (requires ``keep_trials``)."""
        if self.trials is None:
            raise ValueError("sweep was run without keep_trials")
        point = self.spec.values.index(value)
        return [
            t.outcomes[strategy].report.value(metric) for t in self.trials if t.point == point
        ]

    def to_csv(self, metrics: Sequence[str] | None = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in self.rows:
            if metrics and row.metric not in metrics:
                continue
            w.writerow(
                (
                    self.spec.variable,
                    row.value,
                    row.strategy.value,
                    row.metric,
                    repr(row.mean),
                    repr(row.stddev),
                    row.runs,
                )
            )
        return buf.getvalue()

    def to_json(self, metrics: Sequence[str] | None = None) -> str:
        doc = self.metadata()
        doc["rows"] = [
            {
                "sweep_variable": self.spec.variable,
                "sweep_value": r.value,
                "strategy": r.strategy.value,
                "metric": r.metric,
                "mean": r.mean,
                "stddev": r.stddev,
                "runs": r.runs,
            }
            for r in self.rows
            if not metrics or r.metric in metrics
        ]
        return json.dumps(doc, indent=2) + "\n"

    def sidecar_json(self) -> str:
        return json.dumps(self.metadata(), indent=2) + "\n"


def _aggregate(spec: SweepSpec, records: list[TrialRecord]) -> list[Summary]:
    rows = []
    for p, value in enumerate(spec.values):
        at_point = [r for r in records if r.point == p]
        for strat in spec.strategies:
            for metric in METRIC_NAMES:
                xs = [r.outcomes[strat].report.value(metric) for r in at_point]
                mean = statistics.fmean(xs)
                sd = statistics.stdev(xs) if len(xs) > 1 else 0.0
                rows.append(Summary(value, strat, metric, float(mean), float(sd), len(xs)))
    return rows


def default_workers() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def run_sweep(
    spec: SweepSpec,
    workers: int | None = 1,
    keep_trials: bool = False,
    chunk_size: int = 50,
) -> SweepResult:
    """Run every trial of ``spec`` and aggregate mean and sample stddev.

    The result is a pure function of ``spec``: trials are reduced in
    (sweep point, trial index) order whatever the worker count.
    """
    workers = default_workers() if workers is None else workers
    chunks = _chunks(spec, chunk_size)
    log.info(
        "sweep %s over %s: %d points x %d runs, %d workers",
        spec.stream, spec.variable, len(spec.values), spec.runs, workers,
    )
    try:
        if workers <= 1:
            parts = [_run_chunk(spec, *c) for c in chunks]
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_run_chunk, spec, *c) for c in chunks]
                parts = [f.result() for f in futures]
    except (MemoryError, BrokenProcessPool) as err:
        raise SweepAborted(f"sweep aborted, partial results discarded: {err!r}") from err

    records = [r for part in parts for r in part]
    records.sort(key=lambda r: (r.point, r.trial))
    return SweepResult(spec, _aggregate(spec, records), records if keep_trials else None)


TABLE1 = GenParams()
HOMOGENEOUS = GenParams(bandwidth_law=(2, 2), radius_law=(12.0, 12.0))


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    metric: str
    base: GenParams
    variable: str
    values: tuple[int, ...]
    runs: int

    def spec(self, master_seed: int = 0, runs: int | None = None) -> SweepSpec:
        return SweepSpec(
            base=self.base,
            variable=self.variable,
            values=self.values,
            runs=self.runs if runs is None else runs,
            master_seed=master_seed,
            stream=self.name,
        )


_N_RANGE = tuple(range(5, 31))
_F_RANGE = tuple(range(5, 16))

PRESETS: dict[str, Preset] = {
    p.name: p
    for p in (
        Preset("fig3a", "feasibility vs number of transmitters", "fi", TABLE1, "n", _N_RANGE, 500),
        Preset("fig3b", "bandwidth usage vs number of transmitters", "bu", TABLE1, "n", _N_RANGE, 50),
        Preset("fig3c", "transmitters while feasible vs N", "tf", TABLE1, "n", _N_RANGE, 50),
        Preset("fig3d", "TF vs N, homogeneous R=12 B=2", "tf", HOMOGENEOUS, "n", _N_RANGE, 50),
        Preset("fig4a", "transmitters while feasible vs F", "tf", TABLE1, "f", _F_RANGE, 50),
        Preset("fig4b", "coverage area vs F", "ca", TABLE1, "f", _F_RANGE, 50),
        Preset("fig5a", "BC vs max radius", "bc", TABLE1, "rmax", tuple(range(8, 31)), 50),
        Preset("fig5b", "BC vs max bandwidth", "bc", TABLE1, "bmax", tuple(range(1, 9)), 50),
    )
}
