"""Deterministic k-subset scans with an enumeration budget and worker fan-out."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from threading import Lock
from typing import Callable, Iterator, TypeVar

from .errors import BudgetExceededError, InputError

DEFAULT_SUBSET_BUDGET = 10_000_000

T = TypeVar("T")


def subset_count(n: int, k: int) -> int:
    return math.comb(n, k)


def check_budget(n: int, k: int, budget: int | None) -> None:
    if budget is not None and subset_count(n, k) > budget:
        raise BudgetExceededError(
            f"scanning C({n},{k}) = {subset_count(n, k)} subsets exceeds the budget of {budget}"
        )


def iter_subsets(n: int, k: int, budget: int | None = None) -> Iterator[tuple[int, ...]]:
    """All k-subsets of range(n) in lexicographic order."""
    check_budget(n, k, budget)
    return combinations(range(n), k)


def first_subset_hit(
    n: int,
    k: int,
    probe: Callable[[tuple[int, ...]], T | None],
    *,
    threads: int = 1,
    budget: int | None = DEFAULT_SUBSET_BUDGET,
) -> tuple[tuple[int, ...], T] | None:
    """Lexicographically first k-subset on which ``probe`` returns non-None.

    With ``threads > 1`` the scan is partitioned by leading index across
    workers; each worker stops at its own first hit and the merge keeps the
    lexicographically smallest one, so the result is schedule-independent.
    """
    if k < 1 or k > n:
        raise InputError(f"subset size {k} out of range for {n} columns")
    if threads < 1:
        raise InputError("thread count must be at least 1")
    check_budget(n, k, budget)

    if threads == 1:
        for subset in combinations(range(n), k):
            result = probe(subset)
            if result is not None:
                return subset, result
        return None

    leads = range(n - k + 1)
    lock = Lock()
    best_lead: list[int | None] = [None]

    def scan(worker: int) -> tuple[tuple[int, ...], T] | None:
        for lead in leads[worker::threads]:
            with lock:
                bound = best_lead[0]
            if bound is not None and lead > bound:
                # a hit with a smaller leading index already exists
                return None
            for rest in combinations(range(lead + 1, n), k - 1):
                subset = (lead,) + rest
                result = probe(subset)
                if result is not None:
                    with lock:
                        if best_lead[0] is None or lead < best_lead[0]:
                            best_lead[0] = lead
                    return subset, result
        return None

    with ThreadPoolExecutor(max_workers=threads) as pool:
        hits = [h for h in pool.map(scan, range(threads)) if h is not None]
    if not hits:
        return None
    return min(hits, key=lambda h: h[0])
