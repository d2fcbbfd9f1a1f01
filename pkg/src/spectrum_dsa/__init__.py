"""Greedy contiguous spectrum allocation for heterogeneous transmitter networks."""

from spectrum_dsa.allocation import Allocation, Assignment, allocate
from spectrum_dsa.conflict import ConflictGraph, build_conflict_graph
from spectrum_dsa.generator import GenParams, generate_scenario
from spectrum_dsa.metrics import MetricsReport, evaluate
from spectrum_dsa.model import Region, Scenario, Transmitter, coverage_correction, overlaps
from spectrum_dsa.sorting import SortStrategy, sort_transmitters

__version__ = "0.1.0"

__all__ = [
    "Allocation",
    "Assignment",
    "ConflictGraph",
    "GenParams",
    "MetricsReport",
    "Region",
    "Scenario",
    "SortStrategy",
    "Transmitter",
    "allocate",
    "build_conflict_graph",
    "coverage_correction",
    "evaluate",
    "generate_scenario",
    "overlaps",
    "sort_transmitters",
]
