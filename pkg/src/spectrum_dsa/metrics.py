"""Performance metrics of a completed allocation: FI, BU, CA, BC and TF."""

from __future__ import annotations

import json
import math
from collections.abc import Collection, Mapping
from dataclasses import dataclass

from spectrum_dsa.allocation import Allocation
from spectrum_dsa.model import Scenario, coverage_correction

METRIC_NAMES = ("fi", "bu", "ca", "bc", "tf")


@dataclass(frozen=True)
class MetricsReport:
    fi: int
    bu: int
    ca: float
    bc: float
    tf: int
    admissible: frozenset[int]

    def value(self, metric: str) -> float:
        if metric not in METRIC_NAMES:
            raise KeyError(metric)
        return getattr(self, metric)

    def to_dict(self) -> dict[str, float]:
        return {m: getattr(self, m) for m in METRIC_NAMES}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def admissible_set(a: Allocation, F: int) -> frozenset[int]:
    return frozenset(i for i, asg in a.assignments.items() if asg.end <= F)


def feasibility_indicator(a: Allocation, F: int) -> int:
    return int(all(asg.end <= F for asg in a.assignments.values()))


def bandwidth_usage(a: Allocation) -> int:
    # 0 for an empty network by convention
    return max((asg.end for asg in a.assignments.values()), default=0)


def coverage_area(
    s: Scenario,
    admissible: Collection[int],
    corrections: Mapping[int, float] | None = None,
) -> float:
    """Sum of clipped disk areas of the admissible transmitters (overlaps not deduplicated)."""
    by_id = s.by_id()
    total = 0.0
    for i in sorted(admissible):
        t = by_id[i]
        c = corrections[i] if corrections is not None else coverage_correction(t, s.region)
        total += math.pi * t.radius**2 * c
    return total


def bandwidth_coverage_product(s: Scenario, admissible: Collection[int]) -> float:
    by_id = s.by_id()
    return float(sum(by_id[i].radius * by_id[i].bandwidth for i in sorted(admissible)))


def total_feasible(a: Allocation, F: int) -> int:
    for pos, i in enumerate(a.ordering):
        if a.assignments[i].end > F:
            return pos
    return len(a.ordering)


def evaluate(
    s: Scenario,
    a: Allocation,
    corrections: Mapping[int, float] | None = None,
) -> MetricsReport:
    F = s.total_bandwidth
    adm = admissible_set(a, F)
    return MetricsReport(
        fi=feasibility_indicator(a, F),
        bu=bandwidth_usage(a),
        ca=coverage_area(s, adm, corrections),
        bc=bandwidth_coverage_product(s, adm),
        tf=total_feasible(a, F),
        admissible=adm,
    )


def identity_violations(report: MetricsReport, a: Allocation, F: int) -> list[str]:
    """Check the definitional links between the metrics; returns human-readable problems."""
    n = len(a.ordering)
    problems = []
    feasible_by_bu = report.bu <= F
    all_admissible = report.admissible == frozenset(a.ordering)
    if not (bool(report.fi) == feasible_by_bu == all_admissible == (report.tf == n)):
        problems.append(
            f"fi={report.fi}, bu={report.bu} (F={F}), tf={report.tf} (N={n}) disagree"
        )
    for pos, i in enumerate(a.ordering[: report.tf]):
        if i not in report.admissible:
            problems.append(f"position {pos + 1} (id {i}) is inside tf but inadmissible")
    if report.tf < n and a.ordering[report.tf] in report.admissible:
        problems.append(f"position {report.tf + 1} should be the first inadmissible")
    return problems
