import itertools

import pytest

from mobius_zero.errors import DomainError
from mobius_zero.inflation import InflationSpec, inflate, inflate_at
from mobius_zero.perm import is_adjacency_free, parse_perm
from mobius_zero.poset import ONE, MobiusCache, mobius, principal_mobius
from mobius_zero.szdetect import (SYMMETRIES_OF_1243, CertificateReason, Kind, SZRegistry,
                                  build_registry, build_sigma_registry, classify, export_registry,
                                  fig4_chain, find_core, has_1243_symmetry_interval,
                                  is_certified_strongly_zero, is_nice, is_sigma_nice,
                                  partition_nice, partition_opposing, registry_counterexamples)
from mobius_zero.zstats import compare_with_reference, sz_class_table
from tests.conftest import perms_up_to

BOOLEAN_PARTS = ((1,), (1, 2), (2, 1))


def adjacency_free(max_length, start=1):
    return [sigma for sigma in perms_up_to(max_length, start) if is_adjacency_free(sigma)]


def boolean_inflations(sigma, max_length):
    for parts in itertools.product(BOOLEAN_PARTS, repeat=len(sigma)):
        if len(sigma) + sum(len(part) - 1 for part in parts) <= max_length:
            yield inflate(InflationSpec(sigma, parts))


def opposing_pairs(sigma):
    for ell, r in itertools.combinations(range(1, len(sigma) + 1), 2):
        yield inflate_at(sigma, [ell, r], [(1, 2), (2, 1)])
        yield inflate_at(sigma, [ell, r], [(2, 1), (1, 2)])


def nonzero_with_1243_interval(sigma, max_length, cache):
    return [pi for pi in perms_up_to(max_length, start=len(sigma) + 1)
            if has_1243_symmetry_interval(pi) and mobius(sigma, pi, cache) != 0]


@pytest.mark.parametrize("n, counts", [(3, (0, 2)), (4, (10, 0)), (5, (40, 10)), (6, (258, 16))])
def test_registry_counts(registry, n, counts):
    assert registry.counts(n) == counts


def test_registry_is_sound(registry, cache):
    assert registry_counterexamples(registry, 6, cache) == []


def test_registry_is_monotone(registry, cache):
    shorter = build_registry(5, cache)
    assert {n: members for n, members in registry.nice_members.items() if n <= 5} == shorter.nice_members
    assert [registry.counts(n) for n in range(3, 6)] == [shorter.counts(n) for n in range(3, 6)]


def test_registered_cores_hold_against_final_registry(registry):
    for phi, core in registry.members():
        assert find_core(phi, registry) == core, phi


def test_registry_remembers_first_of_each_class(registry):
    seen = registry.first_seen[5]
    assert set(seen) == {"obviously_zero", "new", "unsplit"}
    assert registry.core_of(seen["new"]) is not None
    assert is_certified_strongly_zero(seen["obviously_zero"], registry, max_pattern_length=4) is not None


@pytest.mark.slow
def test_registry_counts_up_to_eight():
    cache = MobiusCache()
    registry = build_registry(8, cache)
    assert [registry.counts(n) for n in range(3, 9)] == [
        (0, 2), (10, 0), (40, 10), (258, 16), (1570, 144), (11366, 816)]
    assert compare_with_reference(sz_class_table(8, registry), "szclass", registry) == []
    assert registry_counterexamples(registry, 8, cache) == []


def test_short_registry_is_empty(cache):
    registry = build_registry(2, cache)
    assert registry.nice_members == {}
    assert registry.max_length == 2


def test_core_of_123():
    registry = SZRegistry()
    assert find_core((1, 2, 3), registry) == (1, 2)
    with pytest.raises(DomainError):
        find_core((1,), registry)


def test_is_nice(registry, cache):
    assert is_nice((1, 2, 3), registry, cache)
    assert not is_nice((1, 3, 2), registry, cache)


def test_nice_members_have_zero_mobius(registry, cache):
    for phi, core in registry.members():
        assert principal_mobius(phi, cache) == 0
        assert len(core) == len(phi) - 1


def test_export_registry(cache):
    assert export_registry(build_registry(3, cache)) == ["3\t123\t12"]


def test_classify_new(registry, cache):
    classification = classify(parse_perm("12453"), registry, cache)
    assert classification.kind is Kind.NEW
    assert classification.core is not None


def test_classify_opposing(registry, cache):
    classification = classify(parse_perm("1243"), registry, cache)
    assert classification.kind is Kind.OBVIOUSLY_ZERO
    assert classification.certificate.reason is CertificateReason.OPPOSING_ADJACENCIES
    assert str(classification) == "ObviouslyZero (opposing adjacencies up@1 down@3)"


def test_classify_certified_without_core(registry, cache):
    pi = registry.first_seen[5]["unsplit"]
    classification = classify(pi, registry, cache)
    assert classification.kind is Kind.ZERO_NOT_CERTIFIED
    assert classification.certificate is not None
    assert str(classification).endswith(", no core)")


def test_classify_non_zero(registry, cache):
    classification = classify((1, 3, 2), registry, cache)
    assert classification.kind is Kind.NON_ZERO
    assert str(classification) == "NonZero (mu=1)"


def test_interval_certificate(registry):
    certificate = is_certified_strongly_zero(parse_perm("2341"), registry)
    assert certificate.reason is CertificateReason.NICE_INTERVAL
    assert certificate.pattern == (1, 2, 3)
    assert certificate.position == 1


def test_has_1243_symmetry_interval():
    assert has_1243_symmetry_interval((5, 1, 2, 4, 3)) == (2, (1, 2, 4, 3))
    assert has_1243_symmetry_interval((2, 4, 1, 3)) is None


@pytest.mark.parametrize("text, ell, r, gamma", [
    ("53128746", 3, 4, "421635"),
    ("367249815", 2, 5, "3624715"),
])
def test_partition_opposing(cache, text, ell, r, gamma):
    pi = parse_perm(text)
    partition = partition_opposing(pi, ell, r, cache)
    assert partition.gamma == parse_perm(gamma)
    assert partition.reconstructed_mobius() == principal_mobius(pi, cache) == 0
    assert partition.sums["G_gamma"] == 0


def test_partition_opposing_rejects_wrong_positions(cache):
    with pytest.raises(DomainError):
        partition_opposing(parse_perm("53128746"), 2, 4, cache)


def test_partition_nice(registry, cache):
    pi = parse_perm("1324657")
    partition = partition_nice(pi, 2, parse_perm("21354"), registry)
    assert partition.core == parse_perm("2143")
    assert partition.gamma == (1, 2, 3)
    assert partition.lambdas == (parse_perm("1243"), parse_perm("2134"))
    expected = {
        "L1": ["123546", "12345", "12354"],
        "L2": ["132456", "21345"],
        "P": ["132546", "12435", "13245", "21435", "13254", "1234", "2134", "1324", "1243",
              "2143", "123", "213", "132", "12", "21", "1"],
        "R": ["213546", "132465", "21354"],
    }
    for region, members in expected.items():
        for text in members:
            assert partition.region_of(parse_perm(text)) == region, text
    sums = partition.sums(cache)
    assert sums["P"] == 0
    assert sum(sums.values()) == -principal_mobius(pi, cache)


def test_partition_nice_rejects_non_interval(registry):
    with pytest.raises(DomainError):
        partition_nice(parse_perm("1324657"), 1, parse_perm("21354"), registry)


def test_fig4_chain(cache):
    for sigma in [(2, 4, 1, 3), (3, 1, 4, 2)]:
        for c in range(1, 5):
            assert fig4_chain(sigma, c, cache) == (1, -1, -1, 0, 1, 0)


def test_adjacency_free_sigma_with_1243_interval_is_zero(cache):
    for sigma in [(2, 4, 1, 3), (3, 1, 4, 2)]:
        for c in range(1, 5):
            for alpha in SYMMETRIES_OF_1243:
                assert mobius(sigma, inflate_at(sigma, [c], [alpha]), cache) == 0


def test_opposing_pair_over_sigma(cache):
    for sigma in adjacency_free(4, start=2):
        for pi in opposing_pairs(sigma):
            assert mobius(sigma, pi, cache) == 1, (sigma, pi)


def test_opposing_pair_over_sigma_with_adjacency(cache):
    assert mobius((1, 2, 3), inflate_at((1, 2, 3), [1, 2], [(1, 2), (2, 1)]), cache) == 2


@pytest.mark.slow
def test_opposing_pair_over_sigma_of_length_five(cache):
    for sigma in adjacency_free(5, start=5):
        for pi in opposing_pairs(sigma):
            assert mobius(sigma, pi, cache) == 1, (sigma, pi)
        for c in range(1, 6):
            assert fig4_chain(sigma, c, cache) == (1, -1, -1, 0, 1, 0), (sigma, c)


def test_boolean_inflations_alternate(cache):
    for sigma in adjacency_free(4):
        for pi in boolean_inflations(sigma, 6):
            assert mobius(sigma, pi, cache) == (-1) ** (len(pi) - len(sigma)), (sigma, pi)


@pytest.mark.slow
def test_boolean_inflations_alternate_up_to_eight(cache):
    for sigma in adjacency_free(4):
        for pi in boolean_inflations(sigma, 8):
            assert mobius(sigma, pi, cache) == (-1) ** (len(pi) - len(sigma)), (sigma, pi)


def test_1243_interval_forces_zero_over_adjacency_free_sigma(cache):
    for sigma in adjacency_free(4):
        assert nonzero_with_1243_interval(sigma, 6, cache) == [], sigma


@pytest.mark.slow
def test_1243_interval_forces_zero_up_to_seven(cache):
    for sigma in adjacency_free(4):
        assert nonzero_with_1243_interval(sigma, 7, cache) == [], sigma


def test_sigma_one_registry_matches_principal(cache):
    principal = build_registry(5, cache)
    sigma_one = build_sigma_registry(ONE, 5, cache)
    assert sigma_one.nice_members == principal.nice_members
    for n in range(3, 6):
        assert sigma_one.counts(n) == principal.counts(n)


def test_sigma_registry_is_sound():
    cache = MobiusCache()
    sigma = (3, 1, 4, 2)
    registry = build_sigma_registry(sigma, 6, cache)
    assert registry.max_length == 6
    assert registry_counterexamples(registry, 6, cache) == []
    for phi, _ in registry.members():
        assert is_sigma_nice(phi, sigma, registry, cache)


def test_sigma_nice_requires_sigma(cache):
    registry = build_sigma_registry((3, 1, 4, 2), 4, cache)
    assert not is_sigma_nice((1, 2, 3), (3, 1, 4, 2), registry, cache)
    with pytest.raises(DomainError):
        is_sigma_nice((1, 2, 3), (2, 4, 1, 3), registry, cache)
