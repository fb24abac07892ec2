"""Task functions shared by the serial loop and the multiprocessing pool.

Workers are forked with the engine in a module global. The only shared state
is a monotone best-size counter (maximize) and a "lowest successful task"
index (decide); both only move in one direction, so any interleaving gives
the same optimum.
"""
from __future__ import annotations

import multiprocessing as mp
from dataclasses import dataclass
from typing import Any, Callable, Iterable

from vcx.search.engine import Engine, SearchCancelled, Searcher, SearchTimeout, task_state

_ctx: "WorkerContext | None" = None


@dataclass
class WorkerContext:
    engine: Engine
    deadline: float | None
    bound: bool
    best: Any = None  # multiprocessing Value or None
    stop: Any = None
    local_best: int = 0
    local_stop: int = 1 << 62
    canon: Callable[[tuple[int, ...]], bytes] | None = None

    def get_best(self) -> int:
        return self.best.value if self.best is not None else self.local_best

    def publish(self, size: int) -> None:
        if self.best is None:
            self.local_best = max(self.local_best, size)
            return
        with self.best.get_lock():
            if size > self.best.value:
                self.best.value = size

    def get_stop(self) -> int:
        return self.stop.value if self.stop is not None else self.local_stop

    def set_stop(self, index: int) -> None:
        if self.stop is None:
            self.local_stop = min(self.local_stop, index)
            return
        with self.stop.get_lock():
            if index < self.stop.value:
                self.stop.value = index


def _init(n: int, k: int, deadline, bound, best, stop, canon) -> None:
    global _ctx
    _ctx = WorkerContext(Engine(n, k), deadline, bound, best, stop, canon=canon)


def maximize_task(prefix: tuple[int, ...], ctx: WorkerContext | None = None) -> tuple[int, int, int, bool]:
    """Returns (size, chosen, nodes, timed_out); size 0 means no improvement here."""
    ctx = ctx or _ctx
    chosen, R, allowed, size = task_state(ctx.engine, prefix)
    s = Searcher(ctx.engine, ctx.deadline, ctx.bound, ctx.get_best, ctx.publish)
    s.best = ctx.get_best()
    start = s.best
    if ctx.bound and size + allowed.bit_count() <= s.best:
        return 0, 0, 0, False
    timed_out = False
    try:
        s.maximize(chosen, R, allowed, size)
    except SearchTimeout:
        timed_out = True
    if s.best_chosen and s.best_chosen.bit_count() > start:
        return s.best_chosen.bit_count(), s.best_chosen, s.nodes, timed_out
    return 0, 0, s.nodes, timed_out


def find_task(item: tuple[int, tuple[int, ...]], target: int, ctx: WorkerContext | None = None):
    """Returns (index, chosen or None, nodes, status) with status ok/timeout/cancelled."""
    ctx = ctx or _ctx
    index, prefix = item
    if ctx.get_stop() < index:
        return index, None, 0, "cancelled"
    chosen, R, allowed, size = task_state(ctx.engine, prefix)
    s = Searcher(ctx.engine, ctx.deadline, True, cancelled=lambda: ctx.get_stop() < index)
    try:
        found = s.find(chosen, R, allowed, size, target)
    except SearchTimeout:
        return index, None, s.nodes, "timeout"
    except SearchCancelled:
        return index, None, s.nodes, "cancelled"
    if found is not None:
        ctx.set_stop(index)
    return index, found, s.nodes, "ok"


def collect_task(prefix: tuple[int, ...], target: int, ctx: WorkerContext | None = None):
    """Returns ({canonical form: canonical masks}, nodes, timed_out)."""
    ctx = ctx or _ctx
    chosen, R, allowed, size = task_state(ctx.engine, prefix)
    s = Searcher(ctx.engine, ctx.deadline, True)
    out: list[int] = []
    timed_out = False
    try:
        s.collect(chosen, R, allowed, size, target, out)
    except SearchTimeout:
        timed_out = True
    classes: dict[bytes, tuple[int, ...]] = {}
    for ch in out:
        masks = ctx.engine.masks(ch)
        key = ctx.canon(masks)
        classes.setdefault(key, masks)
    return classes, s.nodes, timed_out


def _call(args):
    fn, item, extra = args
    return fn(item, *extra)


def run_tasks(
    fn: Callable,
    items: Iterable,
    extra: tuple,
    workers: int,
    n: int,
    k: int,
    deadline: float | None,
    bound: bool,
    canon: Callable | None = None,
    engine: Engine | None = None,
):
    """Yield task results in submission order."""
    items = list(items)
    if workers <= 1:
        ctx = WorkerContext(engine or Engine(n, k), deadline, bound, canon=canon)
        for item in items:
            yield fn(item, *extra, ctx)
        return
    mpctx = mp.get_context("fork")
    best = mpctx.Value("i", 0)
    stop = mpctx.Value("q", 1 << 62)
    with mpctx.Pool(workers, initializer=_init, initargs=(n, k, deadline, bound, best, stop, canon)) as pool:
        yield from pool.imap(_call, [(fn, item, extra) for item in items], chunksize=1)
