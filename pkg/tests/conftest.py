import itertools
from functools import lru_cache

import pytest

from mobius_zero.perm import standardize
from mobius_zero.poset import MobiusCache, downset
from mobius_zero.szdetect import build_registry


@pytest.fixture(scope="session")
def cache():
    return MobiusCache()


@pytest.fixture(scope="session")
def registry(cache):
    return build_registry(6, cache)


def perms_of(n):
    return list(itertools.permutations(range(1, n + 1)))


def perms_up_to(n, start=1):
    for length in range(start, n + 1):
        yield from itertools.permutations(range(1, length + 1))


@lru_cache(maxsize=None)
def naive_patterns(pi):
    patterns = set()
    for k in range(len(pi) + 1):
        for subsequence in itertools.combinations(pi, k):
            patterns.add(standardize(subsequence))
    return frozenset(patterns)


@lru_cache(maxsize=None)
def naive_mobius(sigma, pi):
    """
    Möbius function straight from its recursive definition, over patterns
    found by enumerating every subsequence.
    """
    if sigma == pi:
        return 1
    if sigma not in naive_patterns(pi):
        return 0
    return -sum(naive_mobius(sigma, tau) for tau in naive_patterns(pi)
                if tau != pi and sigma in naive_patterns(tau))


def raw_principal_values(max_n):
    """
    mu(1, pi) for every permutation up to max_n, computed bottom-up from
    downsets without sharing values across symmetry classes.
    """
    values = {}
    for pi in perms_up_to(max_n):
        if len(pi) == 1:
            values[pi] = 1
        else:
            values[pi] = -sum(values[tau] for tau in downset(pi) if tau and tau != pi)
    return values
