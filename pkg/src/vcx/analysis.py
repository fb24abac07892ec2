"""Structural predicates on uniform families: transversals, intersection
properties, linear triangles and link graphs."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any

from vcx.bits import elements_of
from vcx.core import DomainError, Family, KSet
from vcx.graph import Graph, has_k22, matching_number, max_degree, two_element_transversals


@dataclass(frozen=True)
class TransversalCertificate:
    tau: int
    transversal: int
    minimum_transversals: tuple[int, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "tau": self.tau,
            "transversal": list(elements_of(self.transversal)),
            "minimum_transversals": [list(elements_of(t)) for t in self.minimum_transversals],
        }


def _hitting_sets(masks: tuple[int, ...], chosen: int, budget: int, out: set[int]) -> None:
    for m in masks:
        if not m & chosen:
            break
    else:
        out.add(chosen)
        return
    if budget == 0:
        return
    rest = m
    while rest:
        low = rest & -rest
        rest ^= low
        _hitting_sets(masks, chosen | low, budget - 1, out)


def transversal_number(family: Family) -> TransversalCertificate:
    """Exact transversal number, listing every transversal of minimum size.

    Branches on the elements of the first member not yet hit, deepening the
    size budget until some branch hits everything.
    """
    masks = family.masks
    if not masks:
        raise DomainError("transversal number of an empty family is not defined here")
    if 0 in masks:
        raise DomainError("family contains the empty set; no transversal exists")
    budget = 0
    while True:
        found: set[int] = set()
        _hitting_sets(masks, 0, budget, found)
        if found:
            ordered = tuple(sorted(found))
            return TransversalCertificate(budget, ordered[0], ordered)
        budget += 1


def is_intersecting(family: Family) -> bool:
    return all(a & b for a, b in combinations(family.masks, 2))


def is_2_intersecting(family: Family) -> bool:
    return all((a & b).bit_count() >= 2 for a, b in combinations(family.masks, 2))


def are_cross_intersecting(f1: Family, f2: Family) -> bool:
    return all(a & b for a in f1.masks for b in f2.masks)


def _require_3_uniform(family: Family) -> None:
    if family.masks and family.uniform_k != 3:
        raise DomainError("linear triangles are defined for 3-uniform families")


def is_linear_triangle(a: int, b: int, c: int) -> bool:
    ab, bc, ca = a & b, b & c, c & a
    if ab.bit_count() != 1 or bc.bit_count() != 1 or ca.bit_count() != 1:
        return False
    return len({ab, bc, ca}) == 3 and (a | b | c).bit_count() == 6


def find_linear_triangle(family: Family) -> tuple[KSet, KSet, KSet] | None:
    """First triple of members (colex order) that pairwise meet in single,
    distinct points on six vertices."""
    _require_3_uniform(family)
    masks = family.masks
    for i, a in enumerate(masks):
        for j in range(i + 1, len(masks)):
            b = masks[j]
            if (a & b).bit_count() != 1:
                continue
            for c in masks[j + 1:]:
                if is_linear_triangle(a, b, c):
                    return KSet(a), KSet(b), KSet(c)
    return None


@dataclass(frozen=True)
class LinkGraph:
    center: int
    graph: Graph


def link_graph(family: Family, z: int) -> LinkGraph:
    if not 1 <= z <= family.n:
        raise DomainError(f"center {z} outside [1, {family.n}]")
    bit = 1 << (z - 1)
    edges = frozenset(m ^ bit for m in family.masks if m & bit and m.bit_count() == 3)
    return LinkGraph(z, Graph(edges))


def link_table(family: Family) -> list[dict[str, Any]]:
    rows = []
    for z in range(1, family.n + 1):
        g = link_graph(family, z).graph
        rows.append(
            {
                "center": z,
                "edges": len(g),
                "matching_number": matching_number(g),
                "max_degree": max_degree(g),
                "has_k22": has_k22(g),
                "two_element_transversals": len(two_element_transversals(g)),
            }
        )
    return rows


def analysis_report(family: Family) -> dict[str, Any]:
    report: dict[str, Any] = {"n": family.n, "k": family.uniform_k, "size": len(family)}
    if family.masks:
        report["transversal"] = transversal_number(family).to_dict()
    report["intersecting"] = is_intersecting(family)
    report["2_intersecting"] = is_2_intersecting(family)
    if family.uniform_k == 3 or not family.masks:
        tri = find_linear_triangle(family)
        report["linear_triangle"] = None if tri is None else [list(t.elements) for t in tri]
        report["link_graphs"] = link_table(family)
    return report
