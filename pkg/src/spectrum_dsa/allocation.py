"""First-fit contiguous frequency allocation."""

from __future__ import annotations

from dataclasses import dataclass

from spectrum_dsa.conflict import ConflictGraph
from spectrum_dsa.model import Scenario
from spectrum_dsa.sorting import Ordering


@dataclass(frozen=True)
class Assignment:
    start: int
    width: int

    @property
    def end(self) -> int:
        return self.start + self.width - 1

    def intersects(self, other: Assignment) -> bool:
        return self.start <= other.end and other.start <= self.end


@dataclass(frozen=True)
class Allocation:
    ordering: Ordering
    assignments: dict[int, Assignment]

    def __getitem__(self, i: int) -> Assignment:
        return self.assignments[i]

    def __len__(self) -> int:
        return len(self.assignments)

    def to_csv(self) -> str:
        """``id,start,end`` lines ordered by id."""
        return "".join(
            f"{i},{a.start},{a.end}\n" for i, a in sorted(self.assignments.items())
        )


def first_fit_start(width: int, blocked: list[tuple[int, int]]) -> int:
    """Lowest start >= 1 for ``width`` bands avoiding every closed interval in ``blocked``."""
    start = 1
    for lo, hi in sorted(blocked):
        if lo > start + width - 1:
            break
        if hi >= start:
            start = hi + 1
    return start


def allocate(s: Scenario, g: ConflictGraph, order: Ordering) -> Allocation:
    """Give each transmitter, in ``order``, the lowest contiguous block clear of
    its already-allocated neighbours.

    Spectrum is unbounded: blocks may extend past ``s.total_bandwidth`` and
    still constrain later transmitters.
    """
    if sorted(order) != list(range(1, s.n + 1)):
        raise ValueError("ordering must be a permutation of the scenario ids")
    by_id = s.by_id()
    done: dict[int, Assignment] = {}
    for i in order:
        blocked = [(done[j].start, done[j].end) for j in g.neighbors(i) if j in done]
        width = by_id[i].bandwidth
        done[i] = Assignment(first_fit_start(width, blocked), width)
    return Allocation(tuple(order), done)
