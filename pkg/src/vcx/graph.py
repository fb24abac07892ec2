"""Small simple graphs on ``[n]`` with edges stored as 2-bit masks."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from vcx.bits import elements_of, mask_of
from vcx.core import MAX_N, DomainError


@dataclass(frozen=True)
class Graph:
    edges: frozenset[int]
    vertices: int = 0

    def __post_init__(self) -> None:
        covered = 0
        for e in self.edges:
            if e.bit_count() != 2:
                raise DomainError(f"edge {elements_of(e)} is not a pair")
            covered |= e
        if covered >> MAX_N:
            raise DomainError(f"vertices must lie in 1..{MAX_N}")
        object.__setattr__(self, "vertices", self.vertices | covered)

    @classmethod
    def from_edges(cls, pairs: Iterable[Iterable[int]], vertices: Iterable[int] = ()) -> "Graph":
        edges = set()
        for p in pairs:
            p = tuple(p)
            if len(p) != 2 or p[0] == p[1]:
                raise DomainError(f"not a simple edge: {p}")
            edges.add(mask_of(p))
        return cls(frozenset(edges), mask_of(vertices))

    def vertex_list(self) -> tuple[int, ...]:
        return elements_of(self.vertices)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(elements_of(e) for e in self.edges)  # type: ignore[misc]

    def neighbors(self, x: int) -> int:
        bit = 1 << (x - 1)
        out = 0
        for e in self.edges:
            if e & bit:
                out |= e ^ bit
        return out

    def degree(self, x: int) -> int:
        return self.neighbors(x).bit_count()

    def __len__(self) -> int:
        return len(self.edges)


def max_degree(g: Graph) -> int:
    return max((g.degree(x) for x in g.vertex_list()), default=0)


def matching_number(g: Graph) -> int:
    """Exact maximum matching size by branching on the lowest covered vertex."""
    return _matching(tuple(sorted(g.edges)))


@lru_cache(maxsize=4096)
def _matching(edges: tuple[int, ...]) -> int:
    if not edges:
        return 0
    covered = 0
    for e in edges:
        covered |= e
    u = covered & -covered
    rest = tuple(e for e in edges if not e & u)
    best = _matching(rest)
    for e in edges:
        if e & u:
            without = tuple(f for f in rest if not f & e)
            best = max(best, 1 + _matching(without))
    return best


def has_k22(g: Graph) -> bool:
    """True iff two distinct vertices share at least two common neighbours (a 4-cycle)."""
    nbrs = {x: g.neighbors(x) for x in g.vertex_list()}
    return any((nbrs[a] & nbrs[b]).bit_count() >= 2 for a, b in combinations(nbrs, 2))


def two_element_transversals(g: Graph) -> list[tuple[int, int]]:
    """All unordered vertex pairs ``{u, v}`` that meet every edge."""
    out = []
    for a, b in combinations(g.vertex_list(), 2):
        pair = mask_of((a, b))
        if all(e & pair for e in g.edges):
            out.append((a, b))
    return out


def is_transversal(g: Graph, mask: int) -> bool:
    return all(e & mask for e in g.edges)
