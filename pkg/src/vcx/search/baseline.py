"""Literal backtracking search over k-sets in a fixed order, with a full
VC-dimension test of every tentative family.

Variables follow the textbook formulation: ``idx[1..j-1]`` are the chosen
candidate positions (1-based), ``j`` is the depth plus one, ``l`` the
candidate under test and ``M`` the best size seen. The search starts from the
first candidate and stops once the depth returns to one, so it only explores
families containing that candidate; ``all_starts`` repeats it for every start.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from vcx.bits import colex_k_subsets
from vcx.search.engine import CHECK_EVERY, SearchTimeout


@dataclass
class BaselineResult:
    best: int
    certificate: tuple[int, ...]
    tests: int
    complete: bool


def _vc_at_most(family: list[int], tests: list[int], full: int) -> bool:
    """No (d+1)-subset of the ground set is shattered."""
    for s in tests:
        if len({f & s for f in family}) == full:
            return False
    return True


def algorithm1(n: int, k: int, d: int, deadline: float | None = None, all_starts: bool = False) -> BaselineResult:
    sets = colex_k_subsets(n, k)
    m = len(sets)
    tests = colex_k_subsets(n, d + 1)
    full = 1 << (d + 1)
    best, cert, count = 0, (), 0
    starts = range(1, m + 1) if all_starts else (1,)
    try:
        for start in starts:
            idx = [0] * (m + 2)
            idx[1] = start
            j, l, M = 2, idx[1], 1
            if best < 1:
                best, cert = 1, (sets[start - 1],)
            while j >= 2:
                l += 1
                if l > m:
                    if j - 1 > M:
                        M = j - 1
                    l = idx[j - 1]
                    j -= 1
                else:
                    idx[j] = l
                    trial = [sets[idx[t] - 1] for t in range(1, j + 1)]
                    count += 1
                    if count % CHECK_EVERY == 0 and deadline is not None and time.monotonic() > deadline:
                        raise SearchTimeout
                    if _vc_at_most(trial, tests, full):
                        j += 1
                        if j - 1 > best:
                            best, cert = j - 1, tuple(trial)
            best = max(best, M)
    except SearchTimeout:
        return BaselineResult(best, tuple(sorted(cert)), count, False)
    return BaselineResult(best, tuple(sorted(cert)), count, True)
