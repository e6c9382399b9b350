from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, NamedTuple, Optional


class GeneratorPair(NamedTuple):
    """Parameters of the two generators, v1 = q1(t1) on site i and v2 = q2(t2) on site j."""

    t1: float
    t2: float


@dataclass
class SkeletonGraph:
    """Undirected simple graph over site indices.

    ``edges`` maps ``(i, j)`` with ``i < j`` to the witness generator pair
    (None when the construction does not produce one, e.g. DT edges, whose
    empty-disc certificates live in ``certificates``).
    """

    n: int
    edges: dict[tuple[int, int], Optional[GeneratorPair]] = field(default_factory=dict)
    certificates: dict[tuple[int, int], Any] = field(default_factory=dict)

    def add_edge(self, i: int, j: int, witness: Optional[GeneratorPair] = None) -> None:
        if i == j:
            raise ValueError("self-loop")
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"edge ({i}, {j}) out of range for n={self.n}")
        if i > j:
            i, j = j, i
            if witness is not None:
                witness = GeneratorPair(witness.t2, witness.t1)
        self.edges[(i, j)] = witness

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def witness(self, i: int, j: int) -> Optional[GeneratorPair]:
        """Witness oriented so that t1 refers to site ``i``."""
        if i < j:
            return self.edges[(i, j)]
        w = self.edges[(j, i)]
        return None if w is None else GeneratorPair(w.t2, w.t1)

    def __contains__(self, pair) -> bool:
        i, j = pair
        return (min(i, j), max(i, j)) in self.edges

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.sorted_edges())

    def __len__(self) -> int:
        return len(self.edges)
