"""Transmitter prioritisation strategies.

Every deterministic strategy breaks ties by ascending transmitter id, so an
ordering depends only on the keys and ids, never on storage order.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from spectrum_dsa.conflict import ConflictGraph
from spectrum_dsa.model import Scenario, Transmitter

Ordering = tuple[int, ...]


class SortStrategy(Enum):
    MOST_OVERLAPS = "most-overlaps"
    BANDWIDTH_COVERAGE = "bandwidth-coverage"
    LEAST_BANDWIDTH = "least-bandwidth"
    LEAST_COVERAGE = "least-coverage"
    RANDOM = "random"

    @classmethod
    def parse(cls, token: str) -> SortStrategy:
        try:
            return cls(token.strip().lower())
        except ValueError:
            names = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown strategy {token!r} (expected one of: {names})") from None

    @property
    def label(self) -> str:
        return self.value


ALL_STRATEGIES: tuple[SortStrategy, ...] = tuple(SortStrategy)


def strategy_key(strategy: SortStrategy, t: Transmitter, g: ConflictGraph) -> float:
    """The quantity a deterministic strategy orders by (before direction)."""
    if strategy is SortStrategy.MOST_OVERLAPS:
        return g.degree(t.id)
    if strategy is SortStrategy.BANDWIDTH_COVERAGE:
        return t.radius * t.bandwidth
    if strategy is SortStrategy.LEAST_BANDWIDTH:
        return t.bandwidth
    if strategy is SortStrategy.LEAST_COVERAGE:
        return t.radius
    raise ValueError(f"{strategy} has no sort key")


DESCENDING = frozenset({SortStrategy.MOST_OVERLAPS, SortStrategy.BANDWIDTH_COVERAGE})


def sort_transmitters(
    s: Scenario,
    g: ConflictGraph,
    strategy: SortStrategy,
    rng: np.random.Generator | None = None,
) -> Ordering:
    if strategy is SortStrategy.RANDOM:
        if rng is None:
            raise ValueError("random ordering needs a seeded generator")
        ids = np.arange(1, s.n + 1)
        return tuple(int(i) for i in rng.permutation(ids))

    sign = -1 if strategy in DESCENDING else 1
    keyed = sorted(s.transmitters, key=lambda t: (sign * strategy_key(strategy, t, g), t.id))
    return tuple(t.id for t in keyed)
