import pytest

from mobius_zero.errors import DomainError
from mobius_zero.perm import has_opposing_adjacencies, has_triple_adjacency, symmetry_orbit
from mobius_zero.poset import (ONE, MobiusCache, contains, cover, downset, interval, interval_sum,
                               interval_sums, mobius, principal_mobius)
from tests.conftest import naive_mobius, perms_of, perms_up_to, raw_principal_values


def test_contains():
    assert contains((1, 3, 2), (2, 4, 1, 3))
    assert not contains((1, 2), (2, 1))
    assert contains((), (2, 1))
    assert not contains((1, 2, 3), (3, 2, 1))


def test_cover_and_downset():
    assert cover((1, 2, 3)) == {(1, 2)}
    assert cover((2, 4, 1, 3)) == {(3, 1, 2), (2, 1, 3), (1, 3, 2), (2, 3, 1)}
    assert downset((1, 2)) == {(), (1,), (1, 2)}


def test_interval():
    assert interval((1, 2), (1, 3, 2)) == {(1, 2), (1, 3, 2)}
    assert interval((2, 1), (1, 2)) == frozenset()
    with pytest.raises(DomainError):
        interval((), (1, 2))


@pytest.mark.parametrize("perm, value", [
    ((1, 2), -1),
    ((1, 2, 3), 0),
    ((1, 3, 2), 1),
    ((1, 2, 4, 3), 0),
    ((2, 4, 1, 3), -3),
])
def test_principal_values(cache, perm, value):
    assert principal_mobius(perm, cache) == value


def test_principal_rejects_empty(cache):
    with pytest.raises(DomainError):
        principal_mobius((), cache)


def test_general_values(cache):
    assert mobius((2, 4, 1, 3), (2, 4, 1, 3), cache) == 1
    assert mobius((2, 1), (1, 2, 3), cache) == 0
    with pytest.raises(DomainError):
        mobius((), (1,), cache)


def test_agrees_with_naive_recursion(cache):
    for pi in perms_up_to(5):
        assert principal_mobius(pi, cache) == naive_mobius(ONE, pi)
    for sigma in [(1, 2), (2, 1), (1, 3, 2), (2, 4, 1, 3)]:
        for pi in perms_up_to(6, start=len(sigma)):
            assert mobius(sigma, pi, cache) == naive_mobius(sigma, pi), (sigma, pi)


@pytest.mark.slow
def test_agrees_with_naive_recursion_up_to_seven():
    cache = MobiusCache()
    mismatches = [pi for pi in perms_up_to(7) if principal_mobius(pi, cache) != naive_mobius(ONE, pi)]
    assert mismatches == []


def test_values_sum_to_zero_over_intervals(cache):
    for pi in perms_up_to(5, start=2):
        for sigma in downset(pi):
            if sigma and sigma != pi:
                assert interval_sum(sigma, interval(sigma, pi), cache) == 0


@pytest.mark.slow
def test_values_sum_to_zero_over_intervals_of_length_six(cache):
    for pi in perms_of(6):
        for sigma in downset(pi):
            if sigma and sigma != pi:
                assert interval_sum(sigma, interval(sigma, pi), cache) == 0, (sigma, pi)


def test_symmetry_invariance():
    for pi in perms_of(5):
        values = {naive_mobius(ONE, image) for image in symmetry_orbit(pi).images}
        assert len(values) == 1, pi


def orbit_disagreements(max_n, cache):
    values = raw_principal_values(max_n)
    return [pi for pi, value in values.items()
            if principal_mobius(pi, cache) != value
            or any(values[image] != value for image in symmetry_orbit(pi).images)]


def test_values_agree_across_orbits(cache):
    assert orbit_disagreements(6, cache) == []


@pytest.mark.slow
def test_values_agree_across_orbits_up_to_eight(cache):
    assert orbit_disagreements(8, cache) == []


def test_opposing_and_triple_adjacencies_force_zero(cache):
    for pi in perms_up_to(6, start=3):
        if has_opposing_adjacencies(pi) or has_triple_adjacency(pi):
            assert principal_mobius(pi, cache) == 0, pi


@pytest.mark.slow
def test_opposing_and_triple_adjacencies_force_zero_up_to_eight(cache):
    for pi in perms_up_to(8, start=7):
        if has_opposing_adjacencies(pi) or has_triple_adjacency(pi):
            assert principal_mobius(pi, cache) == 0, pi


def test_cache_shares_values_across_orbits():
    cache = MobiusCache()
    cache.put_principal((1, 3, 2), 1)
    assert cache.get_principal((2, 1, 3)) == 1
    assert (3, 1, 2) in cache
    assert len(cache) == 1
    assert cache.stats().hits == 1


def test_merge_and_snapshot():
    cache = MobiusCache()
    cache.merge_principal({(2, 3, 1): 1, (3, 4, 1, 2): -1})
    assert cache.snapshot(3) == {(1, 3, 2): 1}
    assert cache.get_principal((2, 1, 4, 3)) == -1


def test_interval_sums(cache):
    sums = interval_sums(ONE, {"a": [(1,), (1, 2)], "b": [(1, 3, 2)]}, cache)
    assert sums == {"a": 0, "b": 1}
