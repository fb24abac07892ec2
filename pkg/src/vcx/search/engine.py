"""Bitset branch-and-bound over the k-subsets of [n] in colex order.

Candidates are indexed 0..m-1 in colex order and sets of candidates are Python
ints. A search node carries

* ``chosen``: the candidates in the family so far,
* ``R[p]``: the candidates ``r`` (chosen or not) on which the current family
  already realizes local pattern ``p`` (bit ``i`` of ``p`` stands for the
  ``i``-th smallest element of ``r``),
* ``allowed``: later candidates that can each still be added on their own.

Adding a k-set can only break VC-dimension <= k-1 by shattering itself or by
supplying the last missing pattern of a member, so ``allowed`` shrinks
monotonically down the tree and every candidate taken from it is safe.
"""
from __future__ import annotations

import time
from typing import Callable

from vcx.bits import colex_k_subsets, local_pattern

CHECK_EVERY = 2048


class SearchTimeout(Exception):
    pass


class SearchCancelled(Exception):
    pass


class Engine:
    def __init__(self, n: int, k: int):
        self.n = n
        self.k = k
        self.cands = colex_k_subsets(n, k)
        self.m = m = len(self.cands)
        self.patterns = P = 1 << k
        self.proper = tuple(range(P - 1))
        # realized_on[c][p]: candidates r with local_pattern(c & r, r) == p
        # hits[j][p]: candidates r with local_pattern(r & cand_j, cand_j) == p
        realized_on = [[0] * P for _ in range(m)]
        hits = [[0] * P for _ in range(m)]
        for i, c in enumerate(self.cands):
            for j, r in enumerate(self.cands):
                realized_on[i][local_pattern(c & r, r)] |= 1 << j
                hits[j][local_pattern(c & r, r)] |= 1 << i
        self.realized_on = [tuple(row) for row in realized_on]
        self.hits = [tuple(row) for row in hits]
        self.all = (1 << m) - 1

    def masks(self, chosen: int) -> tuple[int, ...]:
        out = []
        i = 0
        while chosen:
            if chosen & 1:
                out.append(self.cands[i])
            chosen >>= 1
            i += 1
        return tuple(out)

    def root(self) -> tuple[int, tuple[int, ...], int]:
        return 0, (0,) * self.patterns, self.all

    def expand(self, chosen: int, R: tuple[int, ...], rest: int, c: int) -> tuple[int, tuple[int, ...], int]:
        """Add candidate ``c``; ``rest`` is the allowed set strictly after ``c``."""
        Rn = tuple(a | b for a, b in zip(R, self.realized_on[c]))
        ch = chosen | (1 << c)
        proper = self.proper
        last = len(proper)
        # prefix / suffix ANDs over the proper patterns
        pre = [self.all] * (last + 1)
        for p in proper:
            pre[p + 1] = pre[p] & Rn[p]
        allowed = rest & ~pre[last]
        suf = self.all
        hits = self.hits
        for q in range(last - 1, -1, -1):
            x = ch & ~Rn[q] & pre[q] & suf
            suf &= Rn[q]
            while x:
                low = x & -x
                x ^= low
                allowed &= ~hits[low.bit_length() - 1][q]
        return ch, Rn, allowed

    def state_of(self, prefix: tuple[int, ...]) -> tuple[int, tuple[int, ...], int]:
        """Replay a prefix of candidate indices (ascending) from the root."""
        chosen, R, allowed = self.root()
        for c in prefix:
            if not allowed >> c & 1:
                raise ValueError(f"prefix {prefix} is not a valid search path")
            chosen, R, allowed = self.expand(chosen, R, allowed & ~((2 << c) - 1), c)
        return chosen, R, allowed


class Searcher:
    """One depth-first worker. Counters and the incumbent are per instance;
    ``shared_best`` / ``publish`` hook it to a pool-wide monotone bound."""

    def __init__(
        self,
        engine: Engine,
        deadline: float | None = None,
        bound: bool = True,
        shared_best: Callable[[], int] | None = None,
        publish: Callable[[int], None] | None = None,
        cancelled: Callable[[], bool] | None = None,
    ):
        self.e = engine
        self.deadline = deadline
        self.bound = bound
        self.shared_best = shared_best
        self.publish = publish
        self.cancelled = cancelled
        self.nodes = 0
        self.best = 0
        self.best_chosen = 0
        self._tick = CHECK_EVERY

    def _poll(self) -> None:
        self._tick = CHECK_EVERY
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SearchTimeout
        if self.cancelled is not None and self.cancelled():
            raise SearchCancelled
        if self.shared_best is not None:
            self.best = max(self.best, self.shared_best())

    # maximize -------------------------------------------------------------

    def maximize(self, chosen: int, R: tuple[int, ...], allowed: int, size: int) -> None:
        self.nodes += 1
        self._tick -= 1
        if self._tick <= 0:
            self._poll()
        if size > self.best:
            self.best = size
            self.best_chosen = chosen
            if self.publish is not None:
                self.publish(size)
        expand = self.e.expand
        bound = self.bound
        while allowed:
            if bound and size + allowed.bit_count() <= self.best:
                return
            low = allowed & -allowed
            allowed ^= low
            ch, Rn, a = expand(chosen, R, allowed, low.bit_length() - 1)
            self.maximize(ch, Rn, a, size + 1)

    # decide -----------------------------------------------------------------

    def find(self, chosen: int, R: tuple[int, ...], allowed: int, size: int, target: int) -> int | None:
        """First family (DFS order) of at least ``target`` members, or None."""
        self.nodes += 1
        self._tick -= 1
        if self._tick <= 0:
            self._poll()
        if size >= target:
            return chosen
        expand = self.e.expand
        while allowed:
            if size + allowed.bit_count() < target:
                return None
            low = allowed & -allowed
            allowed ^= low
            ch, Rn, a = expand(chosen, R, allowed, low.bit_length() - 1)
            found = self.find(ch, Rn, a, size + 1, target)
            if found is not None:
                return found
        return None

    # enumerate -------------------------------------------------------------

    def collect(self, chosen: int, R: tuple[int, ...], allowed: int, size: int, target: int, out: list[int]) -> None:
        """Append every family of exactly ``target`` members in the subtree to ``out``."""
        self.nodes += 1
        self._tick -= 1
        if self._tick <= 0:
            self._poll()
        if size == target:
            out.append(chosen)
            return
        expand = self.e.expand
        while allowed:
            if size + allowed.bit_count() < target:
                return
            low = allowed & -allowed
            allowed ^= low
            ch, Rn, a = expand(chosen, R, allowed, low.bit_length() - 1)
            self.collect(ch, Rn, a, size + 1, target, out)


def split_tasks(engine: Engine, symmetry: bool, depth: int) -> list[tuple[int, ...]]:
    """Cut the search tree at ``depth`` into prefixes, in DFS order.

    Every node of the tree lies in exactly one task subtree: nodes at the cut
    depth start a task, and shallower nodes with no children are tasks of one
    node. Shallower inner nodes are skipped; their sizes are below ``depth``
    and each is dominated by any of its descendants.
    """
    tasks: list[tuple[int, ...]] = []

    def walk(prefix: tuple[int, ...], allowed: int) -> None:
        if len(prefix) == depth or not allowed:
            tasks.append(prefix)
            return
        chosen, R, _ = engine.state_of(prefix)
        rest = allowed
        while rest:
            low = rest & -rest
            rest ^= low
            c = low.bit_length() - 1
            _, _, a = engine.expand(chosen, R, rest, c)
            walk(prefix + (c,), a)
            if symmetry and not prefix:
                break

    walk((), engine.all)
    return tasks


def task_state(engine: Engine, prefix: tuple[int, ...]) -> tuple[int, tuple[int, ...], int, int]:
    chosen, R, allowed = engine.state_of(prefix)
    return chosen, R, allowed, len(prefix)
