"""Relabeling-invariant canonical forms for small families.

The default canonical form refines the elements into classes by an
isomorphism-invariant colouring (degree, then repeated member-neighbourhood
refinement), orders the classes by colour, and takes the lexicographically
least sorted member sequence over every relabeling that respects that class
order. ``exhaustive=True`` instead minimises over all ``n!`` relabelings; the
two forms differ as byte strings but induce the same isomorphism classes.
"""
from __future__ import annotations

import struct
from itertools import combinations, permutations, product
from typing import Any

from vcx.bits import elements_of
from vcx.core import DomainError, Family, GroundSet

MAX_CANON_N = 10


class CapabilityError(DomainError):
    pass


def _refined_colours(n: int, members: list[tuple[int, ...]]) -> list[int]:
    """Stable colour (rank) per element 1..n; index 0 unused."""
    containing: list[list[tuple[int, ...]]] = [[] for _ in range(n + 1)]
    for s in members:
        for e in s:
            containing[e].append(s)
    colour = [0] + [len(containing[e]) for e in range(1, n + 1)]
    classes = len(set(colour[1:]))
    while True:
        sig = [None] + [
            (colour[e], tuple(sorted(tuple(sorted(colour[x] for x in s if x != e)) for s in containing[e])))
            for e in range(1, n + 1)
        ]
        ranks = {v: i for i, v in enumerate(sorted(set(sig[1:])))}
        colour = [0] + [ranks[sig[e]] for e in range(1, n + 1)]
        count = len(ranks)
        if count == classes:
            return colour
        classes = count


def _min_image(members: list[tuple[int, ...]], labelings) -> tuple[int, ...]:
    best: tuple[int, ...] | None = None
    for lab in labelings:
        bit = [0] + [1 << (lab[e] - 1) for e in range(1, len(lab))]
        image = []
        for s in members:
            v = 0
            for e in s:
                v |= bit[e]
            image.append(v)
        image.sort()
        t = tuple(image)
        if best is None or t < best:
            best = t
    assert best is not None
    return best


def _labelings_refined(n: int, colour: list[int]):
    cells: dict[int, list[int]] = {}
    for e in range(1, n + 1):
        cells.setdefault(colour[e], []).append(e)
    ordered = [cells[c] for c in sorted(cells)]
    blocks = []
    start = 1
    for cell in ordered:
        blocks.append((cell, list(range(start, start + len(cell)))))
        start += len(cell)
    for choice in product(*(permutations(labels) for _, labels in blocks)):
        lab = [0] * (n + 1)
        for (cell, _), labels in zip(blocks, choice):
            for e, l in zip(cell, labels):
                lab[e] = l
        yield lab


def _labelings_all(n: int):
    for perm in permutations(range(1, n + 1)):
        yield (0,) + perm


def canonical_masks(family: Family, exhaustive: bool = False) -> tuple[int, ...]:
    n = family.n
    if n > MAX_CANON_N:
        raise CapabilityError(
            f"canonical form needs n <= {MAX_CANON_N} (got {n}); use fingerprint() for an invariant vector"
        )
    members = family.sets()
    if not members:
        return ()
    if exhaustive:
        return _min_image(members, _labelings_all(n))
    return _min_image(members, _labelings_refined(n, _refined_colours(n, members)))


def encode(n: int, k: int | None, masks: tuple[int, ...]) -> bytes:
    return struct.pack(">BBH", n, k or 0, len(masks)) + b"".join(struct.pack(">Q", m) for m in masks)


def canonical_form(family: Family, exhaustive: bool = False) -> bytes:
    return encode(family.n, family.uniform_k, canonical_masks(family, exhaustive))


def canonical_family(family: Family) -> Family:
    return Family(GroundSet(family.n), canonical_masks(family), family.uniform_k)


def fingerprint(family: Family) -> dict[str, Any]:
    """Cheap invariant vector usable at any n; equal for isomorphic families."""
    n = family.n
    degrees = sorted((family.degree(x) for x in range(1, n + 1)), reverse=True)
    pair = []
    for a, b in combinations(range(n), 2):
        both = (1 << a) | (1 << b)
        pair.append(sum(1 for m in family.masks if m & both == both))
    sizes = sorted(m.bit_count() for m in family.masks)
    return {"n": n, "m": len(family), "sizes": sizes, "degrees": degrees, "pair_degrees": sorted(pair, reverse=True)}


def are_isomorphic(f1: Family, f2: Family) -> bool:
    if f1.n != f2.n or len(f1) != len(f2):
        return False
    if fingerprint(f1) != fingerprint(f2):
        return False
    return canonical_masks(f1) == canonical_masks(f2)


def members_text(masks: tuple[int, ...]) -> list[list[int]]:
    return [list(elements_of(m)) for m in masks]
