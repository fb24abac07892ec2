"""Maximal witnesses and the pair / singleton / empty decomposition.

For a member ``F`` of a uniform family with no shattered member, a witness is
a proper subset ``W`` of ``F`` such that no member ``G`` has ``G & F == W``.
Among all such subsets the largest is taken, ties going to the smallest
bitmask. The size-2 witnesses form a graph, the elements appearing as size-1
witnesses form the singleton set, and the members whose witness is empty form
the empty-witness subfamily.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Any

from vcx.bits import elements_of, iter_bits, proper_submasks
from vcx.core import DomainError, Family, KSet
from vcx.graph import Graph


class MemberShatteredError(DomainError):
    def __init__(self, member: int):
        self.member = member
        super().__init__(f"member shattered: {KSet(member)!r} has no witness")


def member_witness(masks: tuple[int, ...], f: int) -> int:
    realized = {g & f for g in masks if g != f}
    best = -1
    best_size = -1
    for sub in proper_submasks(f):
        if sub in realized:
            continue
        size = sub.bit_count()
        if size > best_size or (size == best_size and sub < best):
            best, best_size = sub, size
    if best < 0:
        raise MemberShatteredError(f)
    return best


@dataclass(frozen=True)
class WitnessAssignment:
    family: Family
    witnesses: tuple[int, ...]
    _by_member: dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_by_member", dict(zip(self.family.masks, self.witnesses)))

    def witness_of(self, member: int) -> int:
        return self._by_member[member]

    def _of_size(self, size: int) -> list[int]:
        return [w for w in self.witnesses if w.bit_count() == size]

    @property
    def pair_graph(self) -> Graph:
        return Graph(frozenset(self._of_size(2)))

    @property
    def pair_multiplicities(self) -> Counter[int]:
        return Counter(self._of_size(2))

    @property
    def singleton_multiplicities(self) -> dict[int, int]:
        counts = Counter(w.bit_length() for w in self._of_size(1))
        return dict(sorted(counts.items()))

    @property
    def singleton_elements(self) -> tuple[int, ...]:
        return tuple(self.singleton_multiplicities)

    @property
    def empty_members(self) -> Family:
        return Family(
            self.family.ground,
            tuple(m for m, w in zip(self.family.masks, self.witnesses) if w == 0),
            self.family.uniform_k,
        )

    def size_counts(self) -> dict[int, int]:
        return dict(sorted(Counter(w.bit_count() for w in self.witnesses).items()))


def witness_assignment(family: Family) -> WitnessAssignment:
    if family.uniform_k is None:
        raise DomainError("witness assignment needs a uniform family")
    masks = family.masks
    return WitnessAssignment(family, tuple(member_witness(masks, f) for f in masks))


@dataclass(frozen=True)
class BLCSummary:
    m: int
    pairs: int
    singletons: int
    empty: int
    singleton_multiplicities: dict[int, int]
    max_pair_multiplicity: int
    size_counts: dict[int, int]
    identity_holds: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "B": self.pairs,
            "L": self.singletons,
            "C": self.empty,
            "singleton_multiplicities": {str(k): v for k, v in self.singleton_multiplicities.items()},
            "max_pair_multiplicity": self.max_pair_multiplicity,
            "witness_size_counts": {str(k): v for k, v in self.size_counts.items()},
            "identity_holds": self.identity_holds,
        }


def blc_summary(wa: WitnessAssignment) -> BLCSummary:
    """Counts of the decomposition; ``identity_holds`` iff ``m == |B| + |L| + |C|``.

    For 3-uniform families, pair witnesses are never repeated, so the identity
    holds exactly when no element is the singleton witness of two members.
    """
    pairs = wa.pair_multiplicities
    singles = wa.singleton_multiplicities
    empty = len(wa.empty_members)
    m = len(wa.witnesses)
    return BLCSummary(
        m=m,
        pairs=len(pairs),
        singletons=len(singles),
        empty=empty,
        singleton_multiplicities=singles,
        max_pair_multiplicity=max(pairs.values(), default=0),
        size_counts=wa.size_counts(),
        identity_holds=m == len(pairs) + len(singles) + empty,
    )


@dataclass(frozen=True)
class ClaimCheck:
    name: str
    statement: str
    hypothesis_met: bool
    conclusion_holds: bool
    details: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "statement": self.statement,
            "hypothesis_met": self.hypothesis_met,
            "conclusion_holds": self.conclusion_holds,
            "details": self.details,
        }


def dense_regime(family: Family) -> bool:
    """The regime the structural claims assume: 3-uniform, n >= 8, m >= C(n-1,2)+2.

    For VC-dimension <= 2 this is never reachable; the claims are replayed as
    diagnostics only.
    """
    n = family.n
    return family.uniform_k == 3 and n >= 8 and len(family) >= comb(n - 1, 2) + 2


def claim_predicates(family: Family, wa: WitnessAssignment) -> list[ClaimCheck]:
    n = family.n
    hyp = dense_regime(family)
    graph = wa.pair_graph
    singles = set(wa.singleton_elements)
    empty = wa.empty_members.masks
    ground = family.ground.mask

    degrees = {x: family.degree(x) for x in range(1, n + 1)}
    low = {x: d for x, d in degrees.items() if d < n - 1}
    checks = [
        ClaimCheck(
            "min_degree",
            "every element lies in at least n-1 members",
            hyp,
            not low,
            {"degrees": {str(x): d for x, d in degrees.items()}, "below": sorted(low)},
        )
    ]

    nb = {x: graph.neighbors(x).bit_count() for x in sorted(singles)}
    checks.append(
        ClaimCheck(
            "singleton_pair_degree",
            "each singleton-witness element has at most n-4 neighbours in the pair graph",
            hyp,
            all(d <= n - 4 for d in nb.values()),
            {"pair_degree": {str(x): d for x, d in nb.items()}},
        )
    )

    flagged = []
    for f in empty:
        for vbit in iter_bits(ground & ~f):
            hits = sum(1 for ybit in iter_bits(f) if (vbit | ybit) in graph.edges)
            if hits > 1:
                flagged.append({"member": list(elements_of(f)), "v": vbit.bit_length(), "pairs_in_B": hits})
    checks.append(
        ClaimCheck(
            "empty_witness_pair_edges",
            "for F with empty witness and v outside F, at most one pair {v, y}, y in F, is a pair witness",
            hyp,
            not flagged,
            {"violations": flagged},
        )
    )

    overlaps = {}
    for f in empty:
        overlaps[" ".join(map(str, elements_of(f)))] = sum(1 for e in elements_of(f) if e in singles)
    checks.append(
        ClaimCheck(
            "empty_witness_singletons",
            "a member with empty witness contains at most two singleton-witness elements",
            hyp,
            all(v <= 2 for v in overlaps.values()),
            {"overlap": overlaps},
        )
    )
    return checks


def witness_report(family: Family) -> dict[str, Any]:
    wa = witness_assignment(family)
    return {
        "n": family.n,
        "k": family.uniform_k,
        "members": [
            {"member": list(elements_of(f)), "witness": list(elements_of(w))}
            for f, w in zip(family.masks, wa.witnesses)
        ],
        "pair_graph": [list(e) for e in wa.pair_graph.edge_list()],
        "summary": blc_summary(wa).to_dict(),
        "claims": [c.to_dict() for c in claim_predicates(family, wa)],
    }
