"""
Pattern containment, covers, downsets, intervals and the memoized Möbius
function of the permutation pattern poset.
"""
from __future__ import annotations

import itertools
import logging
import threading
from dataclasses import dataclass
from functools import lru_cache

from mobius_zero.errors import DomainError
from mobius_zero.perm import EMPTY, Perm, delete_point, standardize, symmetry_orbit

logger = logging.getLogger(__name__)

ONE: Perm = (1,)


@lru_cache(maxsize=1 << 16)
def contains(sigma: Perm, pi: Perm) -> bool:
    """
    Check whether pi contains the pattern sigma.

    Args:
        sigma (Perm): Pattern
        pi (Perm): Text permutation

    Returns:
        bool: True if some subsequence of pi is order-isomorphic to sigma
    """
    k = len(sigma)
    n = len(pi)
    if k == 0:
        return True
    if k > n:
        return False
    if k == n:
        return sigma == pi
    if k == 1:
        return True
    if k == n - 1:
        return sigma in cover(pi)
    for subsequence in itertools.combinations(pi, k):
        if standardize(subsequence) == sigma:
            return True
    return False


@lru_cache(maxsize=1 << 18)
def cover(pi: Perm) -> frozenset:
    """
    The distinct patterns obtained by deleting one point of pi.

    Args:
        pi (Perm): Permutation of length at least 1

    Returns:
        frozenset: Permutations of length len(pi) - 1
    """
    return frozenset(delete_point(pi, index) for index in range(len(pi)))


def downset(pi: Perm) -> frozenset:
    """
    All patterns contained in pi, including pi itself and the empty
    permutation.

    The downset is built length by length from memoized covers, so every
    pattern is produced once per level instead of once per point subset.
    """
    result = {pi}
    level = {pi}
    while level and len(next(iter(level))) > 0:
        below = set()
        for tau in level:
            below.update(cover(tau))
        result.update(below)
        level = below
    return frozenset(result)


def interval(sigma: Perm, pi: Perm) -> frozenset:
    """
    The closed interval [sigma, pi] of the pattern poset.

    Raises:
        DomainError: If sigma is the empty permutation
    """
    if not sigma:
        raise DomainError("The lower bound of an interval must not be the empty permutation")
    if not contains(sigma, pi):
        return frozenset()
    k = len(sigma)
    if k == 1:
        return downset(pi) - {EMPTY}
    return frozenset(tau for tau in downset(pi) if len(tau) >= k and contains(sigma, tau))


def sigma_closure(sigma: Perm, pi: Perm) -> frozenset:
    """
    The permutations contained in pi that also contain sigma.
    """
    return interval(sigma, pi)


@dataclass(frozen=True)
class CacheStats:
    hits: int
    misses: int
    principal_size: int
    general_size: int


class MobiusCache:
    """
    Memo of Möbius function values.

    Principal values are stored once per symmetry class under the canonical
    permutation; an in-memory index maps every image of a stored class to its
    value so lookups never have to canonicalize. General values mu(sigma, pi)
    are stored under the raw pair.

    Readers may run concurrently; writers are serialized by a lock. Writes are
    idempotent because mu is deterministic.
    """
    def __init__(self):
        self.principal: dict[Perm, int] = {}
        self.general: dict[tuple[Perm, Perm], int] = {}
        self._orbit_index: dict[Perm, int] = {}
        self._lock = threading.Lock()
        # lengths whose every permutation has been evaluated
        self.complete_lengths: set[int] = set()
        self.hits = 0
        self.misses = 0

    def __len__(self):
        return len(self.principal)

    def __contains__(self, perm):
        return perm in self._orbit_index

    def get_principal(self, perm: Perm):
        value = self._orbit_index.get(perm)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put_principal(self, perm: Perm, value: int):
        orbit = symmetry_orbit(perm)
        with self._lock:
            self.principal[orbit.canonical] = value
            for image in orbit.images:
                self._orbit_index[image] = value

    def merge_principal(self, values: dict):
        """
        Merge principal values computed elsewhere, e.g. by census workers.

        Args:
            values (dict): Permutation to Möbius value; keys need not be canonical
        """
        for perm, value in values.items():
            if perm not in self._orbit_index:
                self.put_principal(perm, value)

    def snapshot(self, max_length: int) -> dict:
        """
        Copy every stored principal value for permutations up to max_length,
        keyed by canonical permutation.
        """
        return {perm: value for perm, value in self.principal.items() if len(perm) <= max_length}

    def get_general(self, sigma: Perm, pi: Perm):
        value = self.general.get((sigma, pi))
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put_general(self, sigma: Perm, pi: Perm, value: int):
        with self._lock:
            self.general[(sigma, pi)] = value

    def stats(self) -> CacheStats:
        return CacheStats(self.hits, self.misses, len(self.principal), len(self.general))


def principal_mobius(pi: Perm, cache: MobiusCache) -> int:
    """
    Compute the principal Möbius function mu(1, pi).

    Args:
        pi (Perm): Non-empty permutation
        cache (MobiusCache): Memo, updated with every value computed

    Returns:
        int: mu(1, pi)
    """
    n = len(pi)
    if n == 0:
        raise DomainError("The principal Möbius function is undefined for the empty permutation")
    if n == 1:
        return 1
    value = cache.get_principal(pi)
    if value is not None:
        return value
    total = 0
    for tau in downset(pi):
        if tau and len(tau) < n:
            total += principal_mobius(tau, cache)
    value = -total
    cache.put_principal(pi, value)
    return value


def mobius(sigma: Perm, pi: Perm, cache: MobiusCache) -> int:
    """
    Compute the Möbius function mu(sigma, pi) of the pattern poset.

    The interval [sigma, pi] is enumerated once and evaluated from the bottom
    up, so every mu(sigma, tau) inside it is cached as a by-product.

    Args:
        sigma (Perm): Lower bound, not the empty permutation
        pi (Perm): Upper bound
        cache (MobiusCache): Memo, updated with every value computed

    Returns:
        int: mu(sigma, pi)

    Raises:
        DomainError: If sigma is the empty permutation
    """
    if not sigma:
        raise DomainError("The lower bound of an interval must not be the empty permutation")
    if sigma == ONE:
        return principal_mobius(pi, cache) if pi else 0
    if sigma == pi:
        return 1
    if not contains(sigma, pi):
        return 0
    value = cache.get_general(sigma, pi)
    if value is not None:
        return value

    members = sorted(interval(sigma, pi), key=len)
    values = {sigma: 1}
    for tau in members:
        if tau == sigma:
            continue
        known = cache.get_general(sigma, tau)
        if known is None:
            known = -sum(values.get(rho, 0) for rho in downset(tau) if rho != tau)
            cache.put_general(sigma, tau, known)
        values[tau] = known
    return values[pi]


def interval_sum(sigma: Perm, perms, cache: MobiusCache) -> int:
    """
    Sum mu(sigma, tau) over a collection of permutations.
    """
    return sum(mobius(sigma, tau, cache) for tau in perms)


def interval_sums(sigma: Perm, sets: dict, cache: MobiusCache) -> dict:
    """
    Sum mu(sigma, tau) over each named set.

    Args:
        sigma (Perm): Lower bound
        sets (dict): Name to collection of permutations
        cache (MobiusCache): Möbius memo

    Returns:
        dict: Name to sum
    """
    return {name: interval_sum(sigma, members, cache) for name, members in sets.items()}
