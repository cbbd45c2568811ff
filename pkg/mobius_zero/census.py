"""
Sharded exhaustive census over all permutations of a given length.

Shards are contiguous ranges of lexicographic rank, each identified by a fixed
prefix of leading values. Shards run in worker processes seeded with the
Möbius values of every shorter length and are merged in shard order, so the
result does not depend on the number of workers.
"""
from __future__ import annotations

import itertools
import logging
import math
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import psutil

from mobius_zero.perm import (count_adjacencies, has_opposing_adjacencies, is_simple,
                              symmetry_orbit)
from mobius_zero.poset import MobiusCache, principal_mobius

logger = logging.getLogger(__name__)

_worker_cache = None


@dataclass
class ShardResult:
    prefix: tuple
    counts: Counter = field(default_factory=Counter)
    values: dict = field(default_factory=dict)


def resolve_threads(threads: int) -> int:
    """
    Turn a requested worker count into an actual one; 0 means one worker per
    physical core.
    """
    if threads > 0:
        return threads
    cores = psutil.cpu_count(logical=False) or psutil.cpu_count(logical=True) or os.cpu_count() or 1
    return cores


def shard_prefixes(n: int) -> list[tuple]:
    """
    Prefixes partitioning the length-n permutations into rank ranges, in
    lexicographic order.
    """
    if n < 3:
        return [()]
    depth = 2 if n >= 6 else 1
    return list(itertools.permutations(range(1, n + 1), depth))


def iter_shard(n: int, prefix: tuple):
    remaining = [value for value in range(1, n + 1) if value not in prefix]
    for tail in itertools.permutations(remaining):
        yield prefix + tail


def _init_worker(snapshot: dict):
    global _worker_cache
    _worker_cache = MobiusCache()
    _worker_cache.merge_principal(snapshot)


def scan_mobius_shard(n: int, prefix: tuple, cache: MobiusCache | None = None) -> ShardResult:
    """
    Evaluate mu(1, pi) for the canonical permutations of one shard.

    Each canonical permutation stands for its whole symmetry orbit. Counted
    keys: "total", "mu_zero", "multi_adjacency", "opposing", "nonopp_zero",
    "nonopp_nonzero".
    """
    if cache is None:
        cache = _worker_cache
    result = ShardResult(prefix)
    counts = result.counts
    for perm in iter_shard(n, prefix):
        orbit = symmetry_orbit(perm)
        if perm != orbit.canonical:
            continue
        weight = len(orbit)
        value = principal_mobius(perm, cache)
        result.values[perm] = value
        counts["total"] += weight
        if value == 0:
            counts["mu_zero"] += weight
        if count_adjacencies(perm) >= 2:
            counts["multi_adjacency"] += weight
            if has_opposing_adjacencies(perm):
                counts["opposing"] += weight
            elif value == 0:
                counts["nonopp_zero"] += weight
            else:
                counts["nonopp_nonzero"] += weight
    return result


def scan_simple_shard(n: int, prefix: tuple, cache: MobiusCache | None = None) -> ShardResult:
    result = ShardResult(prefix)
    for perm in iter_shard(n, prefix):
        result.counts["total"] += 1
        if is_simple(perm):
            result.counts["simple"] += 1
    return result


class CensusRunner:
    """
    Runs exhaustive censuses, one length at a time, across worker processes.

    Args:
        threads (int): Worker count, 0 for one per physical core
        status (callable, optional): Receives human-readable progress messages
    """
    def __init__(self, threads: int = 0, status=None):
        self.workers = resolve_threads(threads)
        self.status = status

    def _emit(self, message: str):
        logger.info(message)
        if self.status is not None:
            self.status(message)

    def _run(self, scan, n: int, cache: MobiusCache) -> list[ShardResult]:
        prefixes = shard_prefixes(n)
        if self.workers == 1 or len(prefixes) == 1 or math.factorial(n) < 5000:
            return [scan(n, prefix, cache) for prefix in prefixes]
        snapshot = cache.snapshot(n - 1)
        logger.debug("Dispatching %d shards of length %d to %d workers", len(prefixes), n, self.workers)
        with ProcessPoolExecutor(max_workers=self.workers, initializer=_init_worker,
                                 initargs=(snapshot,)) as pool:
            return list(pool.map(scan, [n] * len(prefixes), prefixes))

    def mobius_counts(self, n: int, cache: MobiusCache) -> Counter:
        """
        Count the length-n permutations by Möbius value and adjacency shape,
        storing every value computed in the cache.

        Shorter lengths not yet marked complete in the cache are run first so
        that workers start from a full snapshot.
        """
        for shorter in range(1, n):
            if shorter not in cache.complete_lengths:
                self.mobius_counts(shorter, cache)
        started = time.monotonic()
        self._emit(f"Computing Möbius values for length {n} ({math.factorial(n)} permutations)")
        total = Counter()
        for shard in self._run(scan_mobius_shard, n, cache):
            total.update(shard.counts)
            cache.merge_principal(shard.values)
        cache.complete_lengths.add(n)
        self._emit(f"Length {n}: {total['mu_zero']} with mu = 0 "
                   f"({time.monotonic() - started:.1f}s)")
        return total

    def simple_count(self, n: int) -> int:
        self._emit(f"Counting simple permutations of length {n}")
        shards = self._run(scan_simple_shard, n, MobiusCache())
        return sum(shard.counts["simple"] for shard in shards)
