import pytest

from mobius_zero.errors import MalformedPermutationError
from mobius_zero.perm import (EMPTY, adjacency_profile, canonical, check_perm, count_adjacencies,
                              delete_point, format_perm, has_opposing_adjacencies,
                              has_triple_adjacency, is_adjacency_free, is_simple,
                              is_skew_decomposable, is_sum_decomposable, parse_perm,
                              proper_intervals, standardize, symmetries, symmetry_orbit)
from tests.conftest import perms_of


def test_parse_digit_form():
    assert parse_perm("346215") == (3, 4, 6, 2, 1, 5)


def test_parse_empty():
    assert parse_perm("e") == EMPTY
    assert format_perm(EMPTY) == "e"


def test_parse_comma_form_for_long_permutations():
    perm = parse_perm("10,2,3,4,5,6,7,8,9,1")
    assert len(perm) == 10
    assert format_perm(perm) == "10,2,3,4,5,6,7,8,9,1"


@pytest.mark.parametrize("text, token", [("1224", 2), ("12a", "a"), ("13", 3), ("", "")])
def test_parse_rejects_malformed_text(text, token):
    with pytest.raises(MalformedPermutationError) as excinfo:
        parse_perm(text)
    assert excinfo.value.token == token


def test_check_perm_rejects_gaps():
    with pytest.raises(MalformedPermutationError):
        check_perm([1, 3])


def test_standardize_and_delete_point():
    assert standardize((5, 2, 9)) == (2, 1, 3)
    assert delete_point((2, 4, 1, 3), 0) == (3, 1, 2)


def test_symmetries_of_132():
    images = symmetries((1, 3, 2))
    assert images["id"] == (1, 3, 2)
    assert images["r"] == (2, 3, 1)
    assert images["c"] == (3, 1, 2)
    assert images["rc"] == (2, 1, 3)
    assert images["i"] == (1, 3, 2)
    assert len(images) == 8


def test_orbit_sizes():
    orbit = symmetry_orbit((1, 3, 2))
    assert len(orbit) == 4
    assert orbit.canonical == (1, 3, 2)
    assert symmetry_orbit((2, 4, 1, 3)).images == {(2, 4, 1, 3), (3, 1, 4, 2)}
    assert canonical((3, 1, 4, 2)) == (2, 4, 1, 3)


def test_orbits_partition_each_length():
    for n in range(1, 7):
        total = sum(len(symmetry_orbit(perm)) for perm in perms_of(n) if perm == canonical(perm))
        assert total == len(perms_of(n))


def test_adjacency_profile():
    profile = adjacency_profile((1, 2, 4, 3))
    assert profile.up_positions == {1}
    assert profile.down_positions == {3}
    assert profile.count == 2
    assert has_opposing_adjacencies((1, 2, 4, 3))
    assert not has_opposing_adjacencies((2, 1, 4, 3))
    assert adjacency_profile((1, 2, 3)).triple_positions == {1}
    assert has_triple_adjacency((4, 3, 2, 1))
    assert not has_triple_adjacency((1, 2, 4, 3))


def test_adjacency_free():
    assert count_adjacencies((2, 4, 1, 3)) == 0
    assert is_adjacency_free((2, 4, 1, 3))
    assert count_adjacencies((3, 4, 1, 2)) == 2


def test_proper_intervals():
    assert proper_intervals((1, 3, 2)) == [(2, 2)]
    assert proper_intervals((2, 4, 1, 3)) == []


@pytest.mark.parametrize("perm, simple", [
    ((2, 4, 1, 3), True),
    ((3, 1, 4, 2), True),
    ((2, 4, 6, 1, 3, 5), True),
    ((1, 2, 3), False),
    ((1,), True),
    ((2, 1), True),
    (EMPTY, False),
])
def test_is_simple(perm, simple):
    assert is_simple(perm) is simple


def test_decomposability():
    assert is_sum_decomposable((2, 1, 3))
    assert not is_sum_decomposable((3, 1, 2))
    assert is_skew_decomposable((3, 1, 2))
    assert not is_skew_decomposable((2, 4, 1, 3))
