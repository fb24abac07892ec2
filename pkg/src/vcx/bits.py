"""Bitmask helpers. Element ``e`` of the ground set ``[n]`` lives at bit ``e - 1``."""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator


def mask_of(elements: Iterable[int]) -> int:
    value = 0
    for e in elements:
        value |= 1 << (e - 1)
    return value


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the single-bit masks of ``mask`` from lowest to highest."""
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def ground_mask(n: int) -> int:
    return (1 << n) - 1


def k_subsets(mask: int, k: int) -> Iterator[int]:
    """All ``k``-element submasks of ``mask``, in lex order of positions."""
    for combo in combinations(list(iter_bits(mask)), k):
        yield sum(combo)


def colex_k_subsets(n: int, k: int) -> list[int]:
    return sorted(k_subsets(ground_mask(n), k))


def proper_submasks(mask: int) -> Iterator[int]:
    """Every submask of ``mask`` except ``mask`` itself, including 0."""
    sub = (mask - 1) & mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def local_pattern(sub: int, mask: int) -> int:
    """Compress ``sub & mask`` onto the positions of ``mask``'s set bits.

    For ``mask`` with elements e0 < e1 < ... the result has bit i set iff
    ``e_i`` is in ``sub``. This indexes the 2**|mask| intersection patterns.
    """
    out = 0
    pos = 0
    while mask:
        low = mask & -mask
        if sub & low:
            out |= 1 << pos
        pos += 1
        mask ^= low
    return out
