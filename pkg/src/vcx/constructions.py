"""Named families, size bounds and a verified one-vertex extension."""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from math import comb
from typing import Any, Iterable

from vcx.bits import colex_k_subsets
from vcx.core import DomainError, Family, GroundSet, IncrementalChecker, uniform_vc_at_most
from vcx.formats import dump_fam

# Listings in their published order; Family stores them colex-sorted.
F6_13 = (
    (1, 2, 6), (1, 3, 5), (1, 4, 5), (1, 4, 6), (1, 5, 6),
    (2, 3, 4), (2, 4, 5), (2, 4, 6), (2, 5, 6),
    (3, 4, 5), (3, 4, 6), (3, 5, 6), (4, 5, 6),
)

F7_16 = (
    (1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 2, 5), (1, 3, 5), (2, 3, 5), (1, 4, 5),
    (1, 2, 6), (1, 3, 6), (2, 3, 6), (2, 4, 6), (3, 5, 6), (1, 2, 7), (1, 3, 7), (2, 3, 7),
)

F8_45 = (
    (1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5), (1, 3, 4, 5), (2, 3, 4, 5), (1, 2, 3, 6), (1, 2, 4, 6),
    (1, 3, 4, 6), (2, 3, 4, 6), (1, 2, 5, 6), (1, 3, 5, 6), (2, 3, 5, 6), (1, 4, 5, 6), (2, 4, 5, 6),
    (3, 4, 5, 6), (1, 2, 3, 7), (1, 2, 4, 7), (1, 3, 4, 7), (2, 3, 4, 7), (1, 2, 5, 7), (1, 3, 5, 7),
    (2, 3, 5, 7), (1, 4, 5, 7), (2, 4, 5, 7), (3, 4, 5, 7), (1, 2, 6, 7), (1, 3, 6, 7), (2, 3, 6, 7),
    (1, 2, 3, 8), (1, 2, 4, 8), (1, 3, 4, 8), (2, 3, 4, 8), (1, 2, 5, 8), (1, 3, 5, 8), (2, 3, 5, 8),
    (1, 4, 5, 8), (3, 4, 5, 8), (1, 4, 6, 8), (2, 4, 6, 8), (3, 4, 6, 8), (1, 5, 6, 8), (2, 5, 7, 8),
    (3, 5, 7, 8), (4, 5, 7, 8), (2, 4, 5, 8),
)


@dataclass(frozen=True)
class NamedConstruction:
    name: str
    n: int
    k: int
    listing: tuple[tuple[int, ...], ...]
    sha256: str
    expected_vc: int
    expected_tau: int | None = None

    def family(self) -> Family:
        fam = Family.from_sets(self.n, self.listing, self.k)
        digest = hashlib.sha256(dump_fam(fam).encode()).hexdigest()
        if digest != self.sha256:
            raise RuntimeError(f"fixture {self.name} is corrupted (sha256 {digest})")
        return fam


NAMED_FAMILIES = {
    "f6_13": NamedConstruction(
        "f6_13", 6, 3, F6_13, "3f0b9473a16209afaf886a449b1a3eda6efdc7dd80c31b5ed1a00abd802f291d", 2
    ),
    "f7_16": NamedConstruction(
        "f7_16", 7, 3, F7_16, "4d457cfef3c563fce9f5c98828958c4ea4758984c5085f6380a2e9a24cdd53c4", 2, 3
    ),
    "f8_45": NamedConstruction(
        "f8_45", 8, 4, F8_45, "329470b5dbc081180c106b64efc6ebb82b42f1dc38ffad911ddb850f2ef79b61", 3
    ),
}


def paper_family(name: str) -> Family:
    try:
        return NAMED_FAMILIES[name].family()
    except KeyError:
        raise DomainError(f"unknown family {name!r}; known: {', '.join(sorted(NAMED_FAMILIES))}") from None


def star_family(n: int, k: int, center: int) -> Family:
    """All k-subsets of [n] through ``center``."""
    if not 1 <= center <= n:
        raise DomainError(f"center {center} outside [1, {n}]")
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n (got k={k}, n={n})")
    bit = 1 << (center - 1)
    return Family(GroundSet(n), tuple(m for m in colex_k_subsets(n, k) if m & bit), k)


def _binom(a: int, b: int) -> int:
    return comb(a, b) if a >= 0 and b >= 0 else 0


def star_bound(n: int, d: int) -> int:
    return _binom(n - 1, d)


def ak_bound(n: int, d: int) -> int:
    """binom(n-1, d) + binom(n-4, d-2), the Ahlswede-Khachatrian lower bound."""
    return _binom(n - 1, d) + _binom(n - 4, d - 2)


def known_maximum(n: int, d: int) -> int | None:
    """Exact maximum where it is established: d = 2 for every n >= 3."""
    if d != 2 or n < 3:
        return None
    if n <= 5:
        return comb(n, 3)
    if n == 6:
        return 13
    return comb(n - 1, 2) + 1


KNOWN_CONSTRUCTIONS = {(8, 3): 45}


def bound_table(n_range: Iterable[int], d: int) -> list[dict[str, Any]]:
    if d < 2:
        raise DomainError("bound table needs d >= 2")
    rows = []
    for n in n_range:
        if n < d + 1:
            continue
        row: dict[str, Any] = {"n": n, "d": d, "star": star_bound(n, d), "ak": ak_bound(n, d)}
        exact = known_maximum(n, d)
        if exact is not None:
            row["exact"] = exact
        if (n, d) in KNOWN_CONSTRUCTIONS:
            row["known_construction"] = KNOWN_CONSTRUCTIONS[(n, d)]
        rows.append(row)
    return rows


def size_annotation(n: int, k: int | None, d: int, size: int) -> str:
    """Relate a family's size to the bounds known for (n, d)."""
    if k != d + 1:
        return "no bound known for non-(d+1)-uniform families"
    exact = known_maximum(n, d)
    if exact is not None:
        if size > exact:
            return f"exceeds the known maximum {exact} for n={n}"
        if size < exact:
            return f"below the known maximum {exact} for n={n}"
        if n <= 5:
            return f"= binom(n,3), extremal for n={n}"
        if n == 6:
            return "= binom(n-1,2)+3, extremal for n=6"
        return f"= binom(n-1,2)+1, extremal for n={n}"
    ak = ak_bound(n, d)
    if size > ak:
        return f"exceeds binom(n-1,d)+binom(n-4,d-2) = {ak}"
    if size == ak:
        return f"= binom(n-1,d)+binom(n-4,d-2) = {ak}"
    return f"below binom(n-1,d)+binom(n-4,d-2) = {ak}"


@dataclass
class ExtensionResult:
    family: Family | None
    route: str
    candidate_size: int
    candidate_valid: bool

    @property
    def ok(self) -> bool:
        return self.family is not None


def extend_extremal(
    family: Family,
    new_vertex: int | None = None,
    center: int = 1,
    time_limit: float | None = None,
) -> ExtensionResult:
    """Grow a 3-uniform VC<=2 family on [n-1] to [n] with binom(n-1,2)+1 members.

    First tries adding every triple {center, new_vertex, u}; if that breaks
    VC-dimension <= 2, searches for a family of the target size, first among
    supersets of the input and then without restriction. Only families that
    pass the non-incremental check are returned.
    """
    from vcx.search.run import SearchConfig, decide_family_exists

    n = family.n + 1
    if new_vertex is None:
        new_vertex = n
    if new_vertex != n:
        raise DomainError(f"new vertex must be {n} for a family on [{family.n}]")
    if family.uniform_k != 3 or not uniform_vc_at_most(family, 2):
        raise DomainError("input must be 3-uniform with VC-dimension <= 2")
    if not 1 <= center <= family.n:
        raise DomainError(f"center {center} outside [1, {family.n}]")
    floor = comb(n - 2, 2) + 1
    if len(family) < floor:
        raise DomainError(f"input has {len(family)} members; extension needs at least binom(n-2,2)+1 = {floor}")

    target = comb(n - 1, 2) + 1
    c_bit, v_bit = 1 << (center - 1), 1 << (new_vertex - 1)
    added = [c_bit | v_bit | (1 << (u - 1)) for u in range(1, n) if u != center]
    candidate = Family(GroundSet(n), family.masks + tuple(added), 3)
    valid = uniform_vc_at_most(candidate, 2)
    if valid:
        return ExtensionResult(candidate, "direct", len(candidate), True)

    cfg = SearchConfig(n, 3, 2, mode="decide", target=target, time_limit=time_limit)
    lifted = Family(GroundSet(n), family.masks, 3)
    for route, forced in (("fallback-extending", lifted), ("fallback", None)):
        report = decide_family_exists(cfg, forced=forced)
        if report.exists and report.verified and report.certificate is not None:
            return ExtensionResult(report.certificate, route, len(candidate), valid)
    return ExtensionResult(None, "failed", len(candidate), valid)


def random_family(n: int, k: int, d: int, max_size: int, seed: int = 0) -> Family:
    """Random k-uniform family with VC-dimension <= d, grown greedily in a
    seeded random order until ``max_size`` members or no candidate fits."""
    if k != d + 1:
        raise DomainError("random families are generated in the k = d+1 regime")
    rng = random.Random(seed)
    order = colex_k_subsets(n, k)
    rng.shuffle(order)
    checker = IncrementalChecker(Family(GroundSet(n), (), k), d)
    for c in order:
        if len(checker.masks) >= max_size:
            break
        checker.add(c)
    return checker.family
