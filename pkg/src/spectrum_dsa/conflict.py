"""Interference conflict graph induced by pairwise coverage overlap."""

from __future__ import annotations

from dataclasses import dataclass

from spectrum_dsa.model import Scenario, overlaps


@dataclass(frozen=True)
class ConflictGraph:
    """Undirected overlap graph over ids 1..n.

    ``adjacency[i - 1]`` is the ascending tuple of neighbours of id ``i``.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency must have one entry per transmitter")

    def neighbors(self, i: int) -> tuple[int, ...]:
        if not 1 <= i <= self.n:
            raise KeyError(f"unknown transmitter id {i}")
        return self.adjacency[i - 1]

    def degree(self, i: int) -> int:
        return len(self.neighbors(i))

    @property
    def degrees(self) -> dict[int, int]:
        return {i: len(adj) for i, adj in enumerate(self.adjacency, start=1)}

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, adj in enumerate(self.adjacency, start=1) for j in adj if i < j]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges_csv(self) -> str:
        return "".join(f"{i},{j}\n" for i, j in self.edges())


def build_conflict_graph(s: Scenario) -> ConflictGraph:
    txs = sorted(s.transmitters, key=lambda t: t.id)
    adj: list[list[int]] = [[] for _ in txs]
    for a_idx, a in enumerate(txs):
        for b in txs[a_idx + 1 :]:
            if overlaps(a, b):
                adj[a.id - 1].append(b.id)
                adj[b.id - 1].append(a.id)
    return ConflictGraph(len(txs), tuple(tuple(sorted(a)) for a in adj))


def neighbors(g: ConflictGraph, i: int) -> list[int]:
    return list(g.neighbors(i))
