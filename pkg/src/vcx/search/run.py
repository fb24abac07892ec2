"""Maximum-family search, decision search and extremal enumeration."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Any, Literal

from vcx.analysis import transversal_number
from vcx.canon import CapabilityError, canonical_masks, encode
from vcx.core import MAX_N, DomainError, Family, GroundSet, uniform_vc_at_most
from vcx.formats import to_json_obj
from vcx.search.baseline import algorithm1
from vcx.search.engine import Engine, Searcher, SearchTimeout, split_tasks
from vcx.search.pool import collect_task, find_task, maximize_task, run_tasks

Mode = Literal["maximize", "decide", "enumerate"]
MAX_ENUMERATE_N = 7


@dataclass(frozen=True)
class SearchConfig:
    n: int
    k: int = 3
    d: int = 2
    mode: Mode = "maximize"
    target: int | None = None
    time_limit: float | None = None
    workers: int = 1
    symmetry_breaking: bool = True
    bound: bool = True
    baseline: bool = False
    split_depth: int = 2

    def __post_init__(self) -> None:
        if self.k != self.d + 1:
            raise DomainError(f"k must equal d+1 (got k={self.k}, d={self.d})")
        if self.d < 0:
            raise DomainError("d must be non-negative")
        if not 1 <= self.n <= MAX_N:
            raise DomainError(f"n must be in 1..{MAX_N}")
        if self.n < self.k:
            raise DomainError(f"n must be at least k (got n={self.n}, k={self.k})")
        if self.mode == "decide" and (self.target is None or self.target < 1):
            raise DomainError("decide mode needs a target >= 1")
        if self.workers < 1:
            raise DomainError("workers must be >= 1")
        if self.split_depth < 1:
            raise DomainError("split depth must be >= 1")
        if self.time_limit is not None and self.time_limit <= 0:
            raise DomainError("time limit must be positive")

    def deadline(self, start: float) -> float | None:
        return None if self.time_limit is None else start + self.time_limit


@dataclass
class ExtremalClass:
    canonical: bytes
    family: Family
    tau: int

    def to_dict(self) -> dict[str, Any]:
        return {"canonical": self.canonical.hex(), "tau": self.tau, "members": to_json_obj(self.family)["members"]}


@dataclass
class SearchReport:
    config: SearchConfig
    complete: bool
    optimum: int | None = None
    exists: bool | None = None
    certificate: Family | None = None
    verified: bool | None = None
    nodes_expanded: int = 0
    elapsed: float = 0.0
    classes: list[ExtremalClass] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"mode": self.config.mode, "config": asdict(self.config), "complete": self.complete}
        if self.config.mode == "decide":
            out["exists"] = self.exists
        else:
            out["optimum" if self.complete else "lower_bound"] = self.optimum
        out["certificate"] = None if self.certificate is None else to_json_obj(self.certificate)
        out["verified"] = self.verified
        if self.config.mode == "enumerate":
            out["classes"] = [c.to_dict() for c in self.classes]
        out["timing"] = {"elapsed_seconds": round(self.elapsed, 6), "nodes_expanded": self.nodes_expanded}
        return out


def _family(n: int, k: int, masks) -> Family:
    return Family(GroundSet(n), tuple(masks), k)


def _verify(report: SearchReport, size: int) -> None:
    """Independent, non-incremental check of the certificate before it leaves."""
    cert = report.certificate
    report.verified = cert is not None and len(cert) == size and uniform_vc_at_most(cert, report.config.d)


def _run_find(cfg: SearchConfig, engine: Engine, target: int, deadline: float | None):
    """DFS-first family of ``target`` members: (chosen or None, nodes, complete)."""
    tasks = list(enumerate(split_tasks(engine, cfg.symmetry_breaking, cfg.split_depth)))
    nodes = 0
    winner: tuple[int, int] | None = None
    complete = True
    for index, found, count, status in run_tasks(
        find_task, tasks, (target,), cfg.workers, cfg.n, cfg.k, deadline, True, engine=engine
    ):
        nodes += count
        if found is not None and (winner is None or index < winner[0]):
            winner = (index, found)
        if status == "timeout":
            complete = False
    if winner is not None:
        return winner[1], nodes, True
    return None, nodes, complete


def _max_with_baseline(cfg: SearchConfig, start: float) -> SearchReport:
    res = algorithm1(cfg.n, cfg.k, cfg.d, cfg.deadline(start), all_starts=not cfg.symmetry_breaking)
    report = SearchReport(cfg, res.complete, optimum=res.best, nodes_expanded=res.tests)
    report.certificate = _family(cfg.n, cfg.k, res.certificate)
    _verify(report, res.best)
    report.elapsed = time.monotonic() - start
    return report


def _maximize(cfg: SearchConfig, engine: Engine, deadline: float | None) -> tuple[int, int, int, bool]:
    best, best_chosen, nodes, complete = 0, 0, 0, True
    tasks = split_tasks(engine, cfg.symmetry_breaking, cfg.split_depth)
    for size, chosen, count, timed_out in run_tasks(
        maximize_task, tasks, (), cfg.workers, cfg.n, cfg.k, deadline, cfg.bound, engine=engine
    ):
        nodes += count
        complete = complete and not timed_out
        if size > best:
            best, best_chosen = size, chosen
    return best, best_chosen, nodes, complete


def max_family_size(cfg: SearchConfig) -> SearchReport:
    """Exact maximum size of a k-uniform family on [n] with VC-dimension <= d."""
    start = time.monotonic()
    if cfg.baseline:
        return _max_with_baseline(cfg, start)
    deadline = cfg.deadline(start)
    engine = Engine(cfg.n, cfg.k)
    best, chosen, nodes, complete = _maximize(cfg, engine, deadline)
    if complete and cfg.workers > 1:
        # the pool's incumbent depends on scheduling; the DFS-first optimum does not
        again, extra, _ = _run_find(cfg, engine, best, None)
        nodes += extra
        if again is not None:
            chosen = again
    report = SearchReport(cfg, complete, optimum=best, nodes_expanded=nodes)
    report.certificate = _family(cfg.n, cfg.k, engine.masks(chosen))
    _verify(report, best)
    report.elapsed = time.monotonic() - start
    return report


def decide_family_exists(cfg: SearchConfig, forced: Family | None = None) -> SearchReport:
    """Find a family of exactly ``cfg.target`` members or prove none exists.

    ``forced`` restricts the search to supersets of a given valid family.
    """
    if cfg.mode != "decide" or cfg.target is None:
        raise DomainError("decide_family_exists needs a decide-mode config")
    start = time.monotonic()
    deadline = cfg.deadline(start)
    engine = Engine(cfg.n, cfg.k)
    if cfg.target > engine.m:
        report = SearchReport(cfg, True, exists=False)
        report.elapsed = time.monotonic() - start
        return report
    if forced is not None:
        found, nodes, complete = _find_extending(cfg, engine, forced, deadline)
    else:
        found, nodes, complete = _run_find(cfg, engine, cfg.target, deadline)
    report = SearchReport(cfg, complete, nodes_expanded=nodes)
    if found is not None:
        report.exists = True
        masks = engine.masks(found)
        report.certificate = _family(cfg.n, cfg.k, masks)
        _verify(report, cfg.target)
    elif complete:
        report.exists = False
    report.elapsed = time.monotonic() - start
    return report


def _find_extending(cfg: SearchConfig, engine: Engine, forced: Family, deadline: float | None):
    if forced.uniform_k not in (None, cfg.k) or forced.n > cfg.n:
        raise DomainError("forced family does not fit the search parameters")
    index = {m: i for i, m in enumerate(engine.cands)}
    chosen, R, allowed = engine.root()
    for m in forced.masks:
        c = index[m]
        if not allowed >> c & 1:
            return None, 0, True
        chosen, R, allowed = engine.expand(chosen, R, allowed & ~(1 << c), c)
    s = Searcher(engine, deadline)
    try:
        found = s.find(chosen, R, allowed & ~chosen, len(forced), cfg.target)
    except SearchTimeout:
        return None, s.nodes, False
    return found, s.nodes, True


def _canon_key(n: int, k: int, masks: tuple[int, ...]) -> bytes:
    return encode(n, k, canonical_masks(_family(n, k, masks)))


def enumerate_extremal(cfg: SearchConfig) -> SearchReport:
    """All maximum-size families up to isomorphism, one canonical representative each."""
    if cfg.n > MAX_ENUMERATE_N:
        raise CapabilityError(f"extremal enumeration is gated to n <= {MAX_ENUMERATE_N} (got {cfg.n})")
    start = time.monotonic()
    deadline = cfg.deadline(start)
    engine = Engine(cfg.n, cfg.k)
    best, chosen, nodes, complete = _maximize(cfg, engine, deadline)
    report = SearchReport(cfg, complete, optimum=best, nodes_expanded=nodes)
    if not complete:
        report.elapsed = time.monotonic() - start
        return report
    canon = partial(_canon_key, cfg.n, cfg.k)
    tasks = split_tasks(engine, cfg.symmetry_breaking, cfg.split_depth)
    merged: dict[bytes, tuple[int, ...]] = {}
    for classes, count, timed_out in run_tasks(
        collect_task, tasks, (best,), cfg.workers, cfg.n, cfg.k, deadline, True, canon=canon, engine=engine
    ):
        report.nodes_expanded += count
        report.complete = report.complete and not timed_out
        for key, masks in classes.items():
            merged.setdefault(key, masks)
    for key in sorted(merged):
        fam = _family(cfg.n, cfg.k, canonical_masks(_family(cfg.n, cfg.k, merged[key])))
        report.classes.append(ExtremalClass(key, fam, transversal_number(fam).tau))
    if report.classes:
        report.certificate = report.classes[0].family
    _verify(report, best)
    report.elapsed = time.monotonic() - start
    return report


def run_search(cfg: SearchConfig) -> SearchReport:
    if cfg.mode == "maximize":
        return max_family_size(cfg)
    if cfg.mode == "decide":
        return decide_family_exists(cfg)
    return enumerate_extremal(cfg)
