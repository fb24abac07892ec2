from vcx.search.baseline import BaselineResult, algorithm1
from vcx.search.engine import Engine, Searcher, SearchTimeout, split_tasks
from vcx.search.run import (
    ExtremalClass,
    SearchConfig,
    SearchReport,
    decide_family_exists,
    enumerate_extremal,
    max_family_size,
    run_search,
)

__all__ = [
    "BaselineResult",
    "Engine",
    "ExtremalClass",
    "SearchConfig",
    "SearchReport",
    "SearchTimeout",
    "Searcher",
    "algorithm1",
    "decide_family_exists",
    "enumerate_extremal",
    "max_family_size",
    "run_search",
    "split_tasks",
]
