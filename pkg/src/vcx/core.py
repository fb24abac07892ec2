"""Ground sets, uniform set families and VC-dimension computation.

Members are stored as integer bitmasks (element ``e`` at bit ``e - 1``), sorted
ascending. Ascending integer order on bitmasks is colexicographic order on sets,
which is the canonical storage order used throughout the package.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union

from vcx.bits import elements_of, ground_mask, k_subsets, mask_of

MAX_N = 64


class DomainError(ValueError):
    """Raised when an operation is called outside its domain."""


@dataclass(frozen=True)
class GroundSet:
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_N:
            raise DomainError(f"ground set size must be in 1..{MAX_N}, got {self.n!r}")

    @property
    def mask(self) -> int:
        return ground_mask(self.n)

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.n

    def __iter__(self) -> Iterator[int]:
        return iter(range(1, self.n + 1))


@dataclass(frozen=True, order=True)
class KSet:
    bits: int
    k: int = field(compare=False, default=-1)

    def __post_init__(self) -> None:
        if self.bits < 0:
            raise DomainError("negative bitmask")
        count = self.bits.bit_count()
        if self.k == -1:
            object.__setattr__(self, "k", count)
        elif count != self.k:
            raise DomainError(f"bitmask {self.bits:#x} has {count} elements, expected {self.k}")

    @classmethod
    def of(cls, elements: Iterable[int]) -> "KSet":
        elements = list(elements)
        if any(e < 1 or e > MAX_N for e in elements):
            raise DomainError(f"elements must lie in 1..{MAX_N}: {elements}")
        if len(set(elements)) != len(elements):
            raise DomainError(f"repeated element in {elements}")
        return cls(mask_of(elements))

    @property
    def elements(self) -> tuple[int, ...]:
        return elements_of(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return self.k

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


SetLike = Union[KSet, int, Iterable[int]]


def as_mask(s: SetLike) -> int:
    if isinstance(s, KSet):
        return s.bits
    if isinstance(s, int):
        if s < 0:
            raise DomainError("negative bitmask")
        return s
    elements = list(s)
    if any(not isinstance(e, int) or e < 1 or e > MAX_N for e in elements):
        raise DomainError(f"elements must be integers in 1..{MAX_N}: {elements}")
    return mask_of(elements)


@dataclass(frozen=True)
class Family:
    """An ordered, duplicate-free family of subsets of ``[n]``."""

    ground: GroundSet
    masks: tuple[int, ...]
    uniform_k: int | None = None

    def __post_init__(self) -> None:
        masks = tuple(sorted(self.masks))
        if len(set(masks)) != len(masks):
            dup = next(m for i, m in enumerate(masks) if i and masks[i - 1] == m)
            raise DomainError(f"duplicate member {KSet(dup)!r}")
        outside = [m for m in masks if m & ~self.ground.mask]
        if outside:
            raise DomainError(f"member {KSet(outside[0])!r} is not a subset of [{self.ground.n}]")
        k = self.uniform_k
        if k is None and masks:
            sizes = {m.bit_count() for m in masks}
            if len(sizes) == 1:
                k = sizes.pop()
        if k is not None:
            bad = [m for m in masks if m.bit_count() != k]
            if bad:
                raise DomainError(f"member {KSet(bad[0])!r} does not have cardinality {k}")
        object.__setattr__(self, "masks", masks)
        object.__setattr__(self, "uniform_k", k)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[SetLike], k: int | None = None) -> "Family":
        return cls(GroundSet(n), tuple(as_mask(s) for s in sets), k)

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def k(self) -> int | None:
        return self.uniform_k

    @property
    def members(self) -> tuple[KSet, ...]:
        return tuple(KSet(m) for m in self.masks)

    def sets(self) -> list[tuple[int, ...]]:
        return [elements_of(m) for m in self.masks]

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[KSet]:
        return iter(self.members)

    def __contains__(self, s: SetLike) -> bool:
        return as_mask(s) in set(self.masks)

    def with_member(self, s: SetLike) -> "Family":
        return Family(self.ground, self.masks + (as_mask(s),), self.uniform_k)

    def without_member(self, s: SetLike) -> "Family":
        m = as_mask(s)
        if m not in self.masks:
            raise DomainError(f"{KSet(m)!r} is not a member")
        return Family(self.ground, tuple(x for x in self.masks if x != m), self.uniform_k)

    def relabel(self, perm: Mapping[int, int] | Sequence[int]) -> "Family":
        """Apply an element permutation. A sequence ``p`` maps ``e`` to ``p[e - 1]``."""
        if isinstance(perm, Mapping):
            image = [perm.get(e, e) for e in range(1, self.n + 1)]
        else:
            image = list(perm)
        if sorted(image) != list(range(1, self.n + 1)):
            raise DomainError(f"not a permutation of [{self.n}]: {image}")
        return Family(self.ground, tuple(_apply_perm(m, image) for m in self.masks), self.uniform_k)

    def degree(self, x: int) -> int:
        bit = 1 << (x - 1)
        return sum(1 for m in self.masks if m & bit)

    def __repr__(self) -> str:
        body = ", ".join(repr(KSet(m)) for m in self.masks)
        return f"Family(n={self.n}, k={self.uniform_k}, [{body}])"


def _apply_perm(mask: int, image: Sequence[int]) -> int:
    out = 0
    for e in elements_of(mask):
        out |= 1 << (image[e - 1] - 1)
    return out


@dataclass
class ShatterWitnessTable:
    """The intersection patterns ``F & target`` realized by a family."""

    target: int
    realized: set[int] = field(default_factory=set)

    @classmethod
    def build(cls, masks: Iterable[int], target: int) -> "ShatterWitnessTable":
        return cls(target, {m & target for m in masks})

    def add(self, mask: int) -> None:
        self.realized.add(mask & self.target)

    @property
    def missing(self) -> int:
        return (1 << self.target.bit_count()) - len(self.realized)

    @property
    def shattered(self) -> bool:
        return self.missing == 0


def _check_in_ground(family: Family, s: int) -> None:
    if s & ~family.ground.mask:
        raise DomainError(f"{KSet(s)!r} has elements outside the ground set [{family.n}]")


def _shatters_masks(masks: Sequence[int], s: int) -> bool:
    if not masks:
        return False
    return len({m & s for m in masks}) == 1 << s.bit_count()


def shatters(family: Family, s: SetLike) -> bool:
    """True iff every subset of ``s`` is ``F & s`` for some member ``F``.

    The empty family shatters nothing, not even the empty set.
    """
    mask = as_mask(s)
    _check_in_ground(family, mask)
    return _shatters_masks(family.masks, mask)


def find_shattered_set(family: Family, size: int) -> int | None:
    """Return a shattered set of the given size (as a bitmask), or None.

    A shattered ``S`` realizes ``S`` itself, so ``S`` lies inside some member;
    only submasks of members are scanned.
    """
    masks = family.masks
    if not masks or (1 << size) > len(masks):
        return None
    seen: set[int] = set()
    for m in masks:
        if m.bit_count() < size:
            continue
        for s in k_subsets(m, size):
            if s in seen:
                continue
            seen.add(s)
            if _shatters_masks(masks, s):
                return s
    return None


def vc_dimension(family: Family) -> int:
    if not family.masks:
        raise DomainError("VC dimension undefined for empty family")
    cap = max(m.bit_count() for m in family.masks)
    d = 0
    # Shattering is hereditary, so the first size with no shattered set ends the sweep.
    while d < cap and find_shattered_set(family, d + 1) is not None:
        d += 1
    return d


def _require_uniform(family: Family, d: int) -> None:
    if family.uniform_k is None:
        raise DomainError("family is not uniform")
    if family.uniform_k != d + 1:
        raise DomainError(f"expected a {d + 1}-uniform family, got k={family.uniform_k}")


def shattered_member(family: Family) -> int | None:
    """First member (colex order) shattered by the family, if any."""
    masks = family.masks
    for m in masks:
        if _shatters_masks(masks, m):
            return m
    return None


def uniform_vc_at_most(family: Family, d: int) -> bool:
    """VC-dimension <= d for a (d+1)-uniform family.

    A shattered (d+1)-set S must be realized as ``F & S == S`` with ``|F| == |S|``,
    so S is a member; it suffices to test the members.
    """
    _require_uniform(family, d)
    return shattered_member(family) is None


def build_tables(family: Family) -> dict[int, ShatterWitnessTable]:
    """Per-member pattern tables, the cache consumed by ``incremental_vc_check``."""
    return {m: ShatterWitnessTable.build(family.masks, m) for m in family.masks}


def incremental_vc_check(
    family: Family,
    candidate: SetLike,
    d: int,
    cache: Mapping[int, ShatterWitnessTable] | None = None,
) -> bool:
    """Would ``family + candidate`` still have VC-dimension <= d?

    Only two things can go wrong when a (d+1)-set is added to a valid
    (d+1)-uniform family: the candidate itself becomes shattered, or the
    candidate supplies the last missing pattern of an existing member.
    """
    c = as_mask(candidate)
    _check_in_ground(family, c)
    if family.uniform_k is not None:
        _require_uniform(family, d)
    if c.bit_count() != d + 1:
        raise DomainError(f"candidate {KSet(c)!r} does not have cardinality {d + 1}")
    if c in family.masks:
        raise DomainError(f"candidate {KSet(c)!r} is already a member")
    tables = cache if cache is not None else build_tables(family)
    return _fits(family.masks, c, d, tables)


def _fits(masks: Iterable[int], c: int, d: int, tables: Mapping[int, ShatterWitnessTable]) -> bool:
    own = {m & c for m in masks}
    own.add(c)
    if len(own) == 1 << (d + 1):
        return False
    for m, table in tables.items():
        if table.missing == 1 and (c & m) not in table.realized:
            return False
    return True


class IncrementalChecker:
    """Grow a (d+1)-uniform family while keeping VC-dimension <= d."""

    def __init__(self, family: Family, d: int):
        if family.uniform_k is not None:
            _require_uniform(family, d)
        if family.masks and shattered_member(family) is not None:
            raise DomainError("starting family already has VC-dimension > d")
        self.d = d
        self.ground = family.ground
        self.masks = list(family.masks)
        self.tables = build_tables(family)

    @property
    def family(self) -> Family:
        return Family(self.ground, tuple(self.masks), self.d + 1)

    def can_add(self, candidate: SetLike) -> bool:
        c = as_mask(candidate)
        if c & ~self.ground.mask or c.bit_count() != self.d + 1 or c in self.tables:
            raise DomainError(f"{KSet(c)!r} is not a new {self.d + 1}-subset of [{self.ground.n}]")
        return _fits(self.masks, c, self.d, self.tables)

    def add(self, candidate: SetLike) -> bool:
        c = as_mask(candidate)
        if not self.can_add(c):
            return False
        for m, table in self.tables.items():
            table.add(c)
        self.tables[c] = ShatterWitnessTable.build(self.masks + [c], c)
        self.masks.append(c)
        return True
