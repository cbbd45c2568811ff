"""
Detection of strongly zero permutations: ground, core, nice permutations, the
registry of certified strongly zero permutations, classification, and the
set partitions used to verify the opposing-adjacency and nice-interval
arguments. Every operation also has a variant for intervals whose lower bound
is a permutation sigma other than 1.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum

from mobius_zero.errors import DomainError
from mobius_zero.inflation import inflate_at
from mobius_zero.perm import (EMPTY, Perm, adjacency_profile, contiguous_windows,
                              format_perm, is_adjacency_free, standardize,
                              symmetry_orbit)
from mobius_zero.poset import (ONE, MobiusCache, contains, cover, downset, interval_sums,
                               mobius, principal_mobius, sigma_closure)

logger = logging.getLogger(__name__)

SYMMETRIES_OF_1243 = symmetry_orbit((1, 2, 4, 3)).images
FIG4_PARTS = ((1,), (1, 2), (2, 1), (1, 2, 3), (1, 3, 2), (1, 2, 4, 3))


class CertificateReason(Enum):
    OPPOSING_ADJACENCIES = "opposing adjacencies"
    NICE_INTERVAL = "nice interval"
    SYMMETRIC_1243_INTERVAL = "1243-symmetry interval"


@dataclass(frozen=True)
class Certificate:
    """
    Why a permutation is known to be strongly zero.

    Attributes:
        reason (CertificateReason): Which result applies
        up (int, optional): Position of the up-adjacency used
        down (int, optional): Position of the down-adjacency used
        pattern (Perm, optional): The interval's pattern for interval certificates
        position (int, optional): 1-based start of that interval
    """
    reason: CertificateReason
    up: int | None = None
    down: int | None = None
    pattern: Perm | None = None
    position: int | None = None

    def __str__(self):
        if self.reason is CertificateReason.OPPOSING_ADJACENCIES:
            return f"opposing adjacencies up@{self.up} down@{self.down}"
        return f"{self.reason.value} {format_perm(self.pattern)}@{self.position}"


class Kind(Enum):
    OBVIOUSLY_ZERO = "ObviouslyZero"
    NEW = "New"
    ZERO_NOT_CERTIFIED = "ZeroNotCertified"
    NON_ZERO = "NonZero"


@dataclass(frozen=True)
class Classification:
    perm: Perm
    kind: Kind
    mobius: int
    certificate: Certificate | None = None
    core: Perm | None = None

    def __str__(self):
        if self.kind is Kind.OBVIOUSLY_ZERO:
            return f"{self.kind.value} ({self.certificate})"
        if self.kind is Kind.NEW:
            return f"{self.kind.value} (core {format_perm(self.core)})"
        if self.kind is Kind.NON_ZERO:
            return f"{self.kind.value} (mu={self.mobius})"
        if self.certificate is not None:
            return f"{self.kind.value} ({self.certificate}, no core)"
        return self.kind.value


@dataclass
class SZRegistry:
    """
    Certified under-approximation of the strongly zero permutations.

    Attributes:
        max_length (int): Every length up to this one has been fully processed
        nice_members (dict): Length to {nice permutation: its core}
        lower_bound_sigma (Perm): 1 for the principal case, sigma otherwise
        obviously_zero (dict): Length to count of obviously zero permutations
        new (dict): Length to count of new nice permutations
        first_seen (dict): Length to {class: first permutation examined in
            that class}, the classes being "obviously_zero", "new" and
            "unsplit" (mu = 0 but outside both)
    """
    max_length: int = 2
    nice_members: dict = field(default_factory=dict)
    lower_bound_sigma: Perm = ONE
    obviously_zero: dict = field(default_factory=dict)
    new: dict = field(default_factory=dict)
    first_seen: dict = field(default_factory=dict)
    _certified: dict = field(default_factory=dict, repr=False)

    @property
    def is_principal(self) -> bool:
        return self.lower_bound_sigma == ONE

    def register(self, phi: Perm, core: Perm):
        self.nice_members.setdefault(len(phi), {})[phi] = core

    def core_of(self, phi: Perm):
        return self.nice_members.get(len(phi), {}).get(phi)

    def members(self):
        """
        Yield (nice permutation, core) pairs sorted by length, then
        lexicographically.
        """
        for length in sorted(self.nice_members):
            bucket = self.nice_members[length]
            for phi in sorted(bucket):
                yield phi, bucket[phi]

    def counts(self, n: int) -> tuple[int, int]:
        return self.obviously_zero.get(n, 0), self.new.get(n, 0)

    def note(self, n: int, kind: str, perm: Perm):
        self.first_seen.setdefault(n, {}).setdefault(kind, perm)


def _interval_certificate(pi: Perm, registry: SZRegistry, limit: int):
    lengths = [length for length in registry.nice_members if length <= limit and registry.nice_members[length]]
    if not lengths:
        return None
    for start, length in contiguous_windows(pi, min(lengths), max(lengths)):
        bucket = registry.nice_members.get(length)
        if not bucket:
            continue
        pattern = standardize(pi[start - 1:start - 1 + length])
        if pattern in bucket:
            return Certificate(CertificateReason.NICE_INTERVAL, pattern=pattern, position=start)
    return None


def has_1243_symmetry_interval(pi: Perm):
    """
    Find an interval of pi order-isomorphic to a symmetry of 1243.

    Returns:
        tuple or None: (start, pattern) of the first such interval
    """
    for start, _ in contiguous_windows(pi, 4, 4):
        pattern = standardize(pi[start - 1:start + 3])
        if pattern in SYMMETRIES_OF_1243:
            return start, pattern
    return None


def _certify(pi: Perm, registry: SZRegistry, limit: int):
    if registry.is_principal:
        profile = adjacency_profile(pi)
        if profile.up_positions and profile.down_positions:
            return Certificate(CertificateReason.OPPOSING_ADJACENCIES,
                               up=min(profile.up_positions), down=min(profile.down_positions))
    elif is_adjacency_free(registry.lower_bound_sigma):
        found = has_1243_symmetry_interval(pi)
        if found is not None:
            return Certificate(CertificateReason.SYMMETRIC_1243_INTERVAL, pattern=found[1], position=found[0])
    return _interval_certificate(pi, registry, limit)


def is_certified_strongly_zero(pi: Perm, registry: SZRegistry, max_pattern_length: int | None = None):
    """
    Check whether the registry can certify pi as strongly zero.

    For the principal registry the certificates are opposing adjacencies or an
    interval order-isomorphic to a registered nice permutation. For a sigma
    registry with adjacency-free sigma, an interval order-isomorphic to a
    symmetry of 1243 also certifies.

    Args:
        pi (Perm): Permutation to test
        registry (SZRegistry): Registry of nice permutations
        max_pattern_length (int, optional): Only use nice permutations up to
            this length; by default pi itself may be a registered member

    Returns:
        Certificate or None: The witness, or None when nothing applies
    """
    if max_pattern_length is not None:
        return _certify(pi, registry, max_pattern_length)
    memoize = len(pi) <= registry.max_length
    if memoize and pi in registry._certified:
        return registry._certified[pi]
    certificate = _certify(pi, registry, len(pi))
    if memoize:
        registry._certified[pi] = certificate
    return certificate


def ground(perms, registry: SZRegistry) -> frozenset:
    """
    The union of the downsets of perms, minus every permutation the registry
    certifies as strongly zero.
    """
    closure = set()
    for lam in perms:
        closure.update(downset(lam))
    return frozenset(tau for tau in closure if is_certified_strongly_zero(tau, registry) is None)


def find_core(phi: Perm, registry: SZRegistry):
    """
    Find a core of phi: a cover member psi such that the ground of the rest
    of the cover lies inside the downset of psi.

    Args:
        phi (Perm): Permutation of length at least 2
        registry (SZRegistry): Strongly zero test used by the ground

    Returns:
        Perm or None: The lexicographically smallest core, or None
    """
    if len(phi) < 2:
        raise DomainError("A core is only defined for permutations of length at least 2")
    members = sorted(cover(phi))
    uncertified = [lam for lam in members if is_certified_strongly_zero(lam, registry) is None]
    if len(uncertified) > 1:
        return None
    # an uncertified cover member lies in the ground of every other choice
    candidates = uncertified or members
    for psi in candidates:
        rest = [lam for lam in members if lam != psi]
        if ground(rest, registry) <= downset(psi):
            return psi
    return None


def is_nice(phi: Perm, registry: SZRegistry, cache: MobiusCache) -> bool:
    if len(phi) < 2 or principal_mobius(phi, cache) != 0:
        return False
    return find_core(phi, registry) is not None


def build_registry(max_n: int, cache: MobiusCache, status=None) -> SZRegistry:
    """
    Build the strongly zero registry for lengths 3..max_n.

    Each length is processed in full before the next one. Only permutations
    with mu = 0 and a core take part in the split. Such a permutation is
    obviously zero if it has opposing adjacencies or an interval
    order-isomorphic to a strictly shorter registered nice permutation, and
    is registered as new otherwise. Only canonical permutations are examined;
    their orbits are counted and registered with them.

    Args:
        max_n (int): Longest length to process
        cache (MobiusCache): Möbius memo
        status (callable, optional): Receives a progress message per length

    Returns:
        SZRegistry: The completed registry
    """
    registry = SZRegistry()
    for n in range(3, max_n + 1):
        obviously = new = 0
        for perm in itertools.permutations(range(1, n + 1)):
            orbit = symmetry_orbit(perm)
            if perm != orbit.canonical or principal_mobius(perm, cache) != 0:
                continue
            certified = is_certified_strongly_zero(perm, registry, max_pattern_length=n - 1) is not None
            if find_core(perm, registry) is None:
                registry.note(n, "unsplit", perm)
                continue
            if certified:
                obviously += len(orbit)
                registry.note(n, "obviously_zero", perm)
                continue
            new += len(orbit)
            registry.note(n, "new", perm)
            for image in sorted(orbit.images):
                core = find_core(image, registry)
                if core is None:
                    logger.warning("Symmetry %s of nice %s has no core", format_perm(image), format_perm(perm))
                    continue
                registry.register(image, core)
        registry.obviously_zero[n] = obviously
        registry.new[n] = new
        registry.max_length = n
        message = f"Registry length {n}: {obviously} obviously zero, {new} new"
        logger.info(message)
        if status is not None:
            status(message)
    return registry


def classify(pi: Perm, registry: SZRegistry, cache: MobiusCache) -> Classification:
    """
    Place a permutation in the obviously zero / new / uncertified / non-zero
    taxonomy.

    Args:
        pi (Perm): Non-empty permutation
        registry (SZRegistry): Registry covering every length below len(pi)
        cache (MobiusCache): Möbius memo

    Returns:
        Classification: The kind together with its witness
    """
    value = principal_mobius(pi, cache)
    if value != 0:
        return Classification(pi, Kind.NON_ZERO, value)
    certificate = is_certified_strongly_zero(pi, registry, max_pattern_length=len(pi) - 1)
    core = find_core(pi, registry) if len(pi) >= 2 else None
    if core is None:
        return Classification(pi, Kind.ZERO_NOT_CERTIFIED, 0, certificate=certificate)
    if certificate is not None:
        return Classification(pi, Kind.OBVIOUSLY_ZERO, 0, certificate=certificate, core=core)
    return Classification(pi, Kind.NEW, 0, core=core)


def export_registry(registry: SZRegistry) -> list[str]:
    """
    Lines "length TAB permutation TAB core" for every registered nice
    permutation; the principal registry lists canonical members only.
    """
    lines = []
    for phi, core in registry.members():
        if registry.is_principal and phi != symmetry_orbit(phi).canonical:
            continue
        lines.append(f"{len(phi)}\t{format_perm(phi)}\t{format_perm(core)}")
    return lines


def registry_counterexamples(registry: SZRegistry, max_n: int, cache: MobiusCache) -> list:
    """
    Permutations up to max_n the registry certifies although mu(sigma, pi) is
    not zero. A sound registry yields an empty list.
    """
    sigma = registry.lower_bound_sigma
    found = []
    for n in range(max(len(sigma), 1), max_n + 1):
        for perm in itertools.permutations(range(1, n + 1)):
            if is_certified_strongly_zero(perm, registry) is not None and mobius(sigma, perm, cache) != 0:
                found.append(perm)
    return found


@dataclass(frozen=True)
class OpposingPartition:
    """
    The overlapping sets used to show that opposing adjacencies force mu = 0.

    Attributes:
        gamma (Perm): pi with the two chosen adjacencies contracted
        ell (int): Position in gamma inflated by 12
        r (int): Position in gamma inflated by 21
        L, R, G_gamma, G_x, T (frozenset): The sets
        sums (dict): Sum of mu(1, tau) over each set
    """
    pi: Perm
    gamma: Perm
    ell: int
    r: int
    L: frozenset
    R: frozenset
    G_gamma: frozenset
    G_x: frozenset
    T: frozenset
    sums: dict

    def reconstructed_mobius(self) -> int:
        sums = self.sums
        return -sums["L"] - sums["R"] - sums["T"] + sums["G_gamma"] + sums["G_x"]


def partition_opposing(pi: Perm, ell: int, r: int, cache: MobiusCache) -> OpposingPartition:
    """
    Split [1, pi) around an up-adjacency and a later down-adjacency.

    pi must equal gamma[ell, r -> 12, 21], i.e. positions ell, ell+1 of pi
    form an up-adjacency and positions r+1, r+2 a down-adjacency.

    Raises:
        DomainError: If pi is not of that form at (ell, r)
    """
    n = len(pi)
    if not 1 <= ell < r <= n - 2:
        raise DomainError(f"Need 1 <= ell < r <= {n - 2}, got ell={ell}, r={r}")
    if pi[ell] != pi[ell - 1] + 1:
        raise DomainError(f"{format_perm(pi)} has no up-adjacency at position {ell}")
    if pi[r + 1] != pi[r] - 1:
        raise DomainError(f"{format_perm(pi)} has no down-adjacency at position {r + 1}")

    gamma = standardize([value for index, value in enumerate(pi) if index not in (ell, r + 1)])
    lam = inflate_at(gamma, [ell], [(1, 2)])
    rho = inflate_at(gamma, [r], [(2, 1)])
    below = downset(pi) - {EMPTY, pi}
    L = downset(lam) - {EMPTY}
    R = downset(rho) - {EMPTY}
    G_gamma = downset(gamma) - {EMPTY}
    G_x = (L & R) - G_gamma
    T = below - (L | R)
    sums = interval_sums(ONE, {"L": L, "R": R, "G_gamma": G_gamma, "G_x": G_x, "T": T}, cache)
    return OpposingPartition(pi, gamma, ell, r, L, R, G_gamma, G_x, T, sums)


@dataclass(frozen=True)
class NicePartition:
    """
    The disjoint sets P, L_1..L_k, R dividing [1, pi) for pi = gamma[c -> phi]
    with phi nice.
    """
    pi: Perm
    gamma: Perm
    c: int
    phi: Perm
    core: Perm
    lambdas: tuple
    P: frozenset
    L: tuple
    R: frozenset

    def named_sets(self) -> dict:
        sets = {"P": self.P}
        for index, members in enumerate(self.L, start=1):
            sets[f"L{index}"] = members
        sets["R"] = self.R
        return sets

    def region_of(self, tau: Perm):
        for name, members in self.named_sets().items():
            if tau in members:
                return name
        return None

    def sums(self, cache: MobiusCache) -> dict:
        return interval_sums(ONE, self.named_sets(), cache)


def partition_nice(pi: Perm, c: int, phi: Perm, registry: SZRegistry) -> NicePartition:
    """
    Split [1, pi) around an interval of pi order-isomorphic to a registered
    nice permutation phi, starting at position c.

    Raises:
        DomainError: If the window at c is not an interval isomorphic to phi,
            or phi is not registered as nice
    """
    k = len(phi)
    if c < 1 or c + k - 1 > len(pi):
        raise DomainError(f"Position {c} cannot start a window of length {k} in {format_perm(pi)}")
    window = pi[c - 1:c - 1 + k]
    if max(window) - min(window) != k - 1 or standardize(window) != phi:
        raise DomainError(f"{format_perm(pi)} has no interval isomorphic to {format_perm(phi)} at {c}")
    core = registry.core_of(phi)
    if core is None:
        raise DomainError(f"{format_perm(phi)} is not a registered nice permutation")

    gamma = standardize(pi[:c - 1] + (min(window),) + pi[c - 1 + k:])
    lambdas = tuple(sorted(cover(phi) - {core}))
    P = downset(inflate_at(gamma, [c], [core])) - {EMPTY}
    covered = set(P)
    L = []
    for lam in lambdas:
        primed = downset(inflate_at(gamma, [c], [lam])) - {EMPTY}
        L.append(frozenset(primed - covered))
        covered |= primed
    R = frozenset(downset(pi) - {EMPTY, pi} - covered)
    return NicePartition(pi, gamma, c, phi, core, lambdas, P, tuple(L), R)


def fig4_chain(sigma: Perm, c: int, cache: MobiusCache) -> tuple:
    """
    The values mu(sigma, sigma[c -> alpha]) for alpha in 1, 12, 21, 123, 132,
    1243; for adjacency-free sigma these are 1, -1, -1, 0, 1, 0.
    """
    return tuple(mobius(sigma, inflate_at(sigma, [c], [alpha]), cache) for alpha in FIG4_PARTS)


def _require_sigma(sigma: Perm, registry: SZRegistry):
    if not sigma:
        raise DomainError("The lower bound sigma must not be the empty permutation")
    if registry.lower_bound_sigma != sigma:
        raise DomainError(f"Registry was built for {format_perm(registry.lower_bound_sigma)}, "
                          f"not {format_perm(sigma)}")


def sigma_ground(perms, sigma: Perm, registry: SZRegistry) -> frozenset:
    """
    The union of the sigma-closures of perms, minus every permutation the
    sigma registry certifies.
    """
    _require_sigma(sigma, registry)
    closure = set()
    for lam in perms:
        closure.update(sigma_closure(sigma, lam))
    return frozenset(tau for tau in closure if is_certified_strongly_zero(tau, registry) is None)


def find_sigma_core(phi: Perm, sigma: Perm, registry: SZRegistry):
    _require_sigma(sigma, registry)
    if len(phi) < 2:
        raise DomainError("A core is only defined for permutations of length at least 2")
    members = sorted(cover(phi))
    for psi in members:
        rest = [lam for lam in members if lam != psi]
        if sigma_ground(rest, sigma, registry) <= sigma_closure(sigma, psi):
            return psi
    return None


def is_sigma_nice(phi: Perm, sigma: Perm, registry: SZRegistry, cache: MobiusCache) -> bool:
    """
    Check whether phi contains sigma, has mu(sigma, phi) = 0 and a sigma-core.
    """
    _require_sigma(sigma, registry)
    if len(phi) < 2 or not contains(sigma, phi) or mobius(sigma, phi, cache) != 0:
        return False
    return find_sigma_core(phi, sigma, registry) is not None


def build_sigma_registry(sigma: Perm, max_n: int, cache: MobiusCache) -> SZRegistry:
    """
    Build the registry of sigma-nice permutations for lengths len(sigma)+1
    through max_n. Symmetries do not fix sigma, so every permutation
    containing sigma is examined.
    """
    if not sigma:
        raise DomainError("The lower bound sigma must not be the empty permutation")
    registry = SZRegistry(max_length=len(sigma), lower_bound_sigma=sigma)
    for n in range(len(sigma) + 1, max_n + 1):
        obviously = new = 0
        for perm in itertools.permutations(range(1, n + 1)):
            if not contains(sigma, perm) or mobius(sigma, perm, cache) != 0:
                continue
            certified = is_certified_strongly_zero(perm, registry, max_pattern_length=n - 1) is not None
            core = find_sigma_core(perm, sigma, registry)
            if core is None:
                registry.note(n, "unsplit", perm)
            elif certified:
                obviously += 1
                registry.note(n, "obviously_zero", perm)
            else:
                registry.register(perm, core)
                new += 1
                registry.note(n, "new", perm)
        registry.obviously_zero[n] = obviously
        registry.new[n] = new
        registry.max_length = n
        logger.info("Sigma %s registry length %d: %d obviously zero, %d new",
                    format_perm(sigma), n, obviously, new)
    return registry
