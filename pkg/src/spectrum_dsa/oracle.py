"""Small-instance reference implementations used only for validation."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from spectrum_dsa.allocation import Allocation, Assignment
from spectrum_dsa.conflict import ConflictGraph, build_conflict_graph
from spectrum_dsa.model import Scenario
from spectrum_dsa.sorting import Ordering

MAX_EXACT_N = 8


@dataclass(frozen=True)
class ExactResult:
    min_bu: int
    witness: dict[int, Assignment]


def naive_first_fit(s: Scenario, g: ConflictGraph, order: Ordering) -> Allocation:
    """First fit by trying every start index in turn against a set of busy bands."""
    demand = {t.id: t.bandwidth for t in s.transmitters}
    bands: dict[int, set[int]] = {}
    out: dict[int, Assignment] = {}
    for i in order:
        busy: set[int] = set()
        for j in g.neighbors(i):
            busy |= bands.get(j, set())
        start = 1
        while any(start + k in busy for k in range(demand[i])):
            start += 1
        bands[i] = set(range(start, start + demand[i]))
        out[i] = Assignment(start, demand[i])
    return Allocation(tuple(order), out)


def _max_clique_demand(n: int, adj: list[set[int]], demand: list[int]) -> int:
    best = 0
    for k in range(1, n + 1):
        for sub in combinations(range(n), k):
            if all(b in adj[a] for a, b in combinations(sub, 2)):
                best = max(best, sum(demand[v] for v in sub))
    return best


def exact_min_bu(s: Scenario, bu_cap: int | None = None) -> ExactResult:
    """Minimum achievable highest band index over all contiguous assignments.

    Searches start indices directly rather than orderings, so the result is a
    true lower bound for any greedy ordering. Exponential; N <= 8 only.
    """
    n = s.n
    if n > MAX_EXACT_N:
        raise ValueError(f"exact search limited to N <= {MAX_EXACT_N}, got {n}")
    if n == 0:
        return ExactResult(0, {})
    g = build_conflict_graph(s)
    ids = [t.id for t in sorted(s.transmitters, key=lambda t: t.id)]
    demand = [s.by_id()[i].bandwidth for i in ids]
    adj = [{j - 1 for j in g.neighbors(i)} for i in ids]
    cap = sum(demand) if bu_cap is None else bu_cap

    # most constrained first keeps the search tree shallow
    order = sorted(range(n), key=lambda v: (-len(adj[v]), -demand[v], v))
    starts = [0] * n

    def place(k: int, limit: int) -> bool:
        if k == n:
            return True
        v = order[k]
        placed = [u for u in order[:k] if u in adj[v]]
        for st in range(1, limit - demand[v] + 2):
            end = st + demand[v] - 1
            if all(end < starts[u] or st > starts[u] + demand[u] - 1 for u in placed):
                starts[v] = st
                if place(k + 1, limit):
                    return True
        return False

    lower = _max_clique_demand(n, adj, demand)
    for limit in range(lower, cap + 1):
        if place(0, limit):
            witness = {ids[v]: Assignment(starts[v], demand[v]) for v in range(n)}
            return ExactResult(limit, witness)
    raise ValueError(f"no assignment fits within bu_cap={cap}")
