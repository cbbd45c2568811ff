"""
Permutation values, symmetries, canonical forms and local structure.

A permutation is a plain tuple of the values 1..n in one-line notation; the
empty tuple is the empty permutation. Positions and values are 1-based in every
public function, matching how permutations are written by hand.
"""
from __future__ import annotations

from dataclasses import dataclass

from mobius_zero.errors import MalformedPermutationError

Perm = tuple[int, ...]

EMPTY: Perm = ()
EMPTY_TEXT = "e"


def check_perm(entries) -> Perm:
    """
    Validate a sequence of integers as a permutation of 1..n.

    Args:
        entries (iterable of int): Candidate one-line notation

    Returns:
        Perm: The entries as a tuple

    Raises:
        MalformedPermutationError: If the entries are not a bijection on 1..n
    """
    perm = tuple(entries)
    n = len(perm)
    seen = set()
    for value in perm:
        if not isinstance(value, int) or isinstance(value, bool):
            raise MalformedPermutationError(f"Permutation entry {value!r} is not an integer", value)
        if value < 1 or value > n:
            raise MalformedPermutationError(
                f"Permutation entry {value} is outside 1..{n}", value)
        if value in seen:
            raise MalformedPermutationError(f"Permutation entry {value} is repeated", value)
        seen.add(value)
    return perm


def parse_perm(text: str) -> Perm:
    """
    Parse a permutation from its text form.

    Accepted forms are "e" for the empty permutation, a digit string such as
    "346215" (length at most 9), or comma-separated integers such as
    "10,2,3,4,5,6,7,8,9,1".

    Args:
        text (str): Permutation text

    Returns:
        Perm: The parsed permutation

    Raises:
        MalformedPermutationError: If the text is not a valid permutation
    """
    stripped = text.strip()
    if stripped == EMPTY_TEXT:
        return EMPTY
    if not stripped:
        raise MalformedPermutationError("Empty permutation text (use 'e' for the empty permutation)", text)
    if "," in stripped:
        tokens = [token.strip() for token in stripped.split(",")]
    else:
        tokens = list(stripped)
    entries = []
    for token in tokens:
        if not token.isdigit():
            raise MalformedPermutationError(f"Invalid permutation token {token!r} in {text!r}", token)
        entries.append(int(token))
    return check_perm(entries)


def format_perm(perm: Perm) -> str:
    """
    Format a permutation as text; the inverse of parse_perm.

    Args:
        perm (Perm): Permutation to format

    Returns:
        str: "e", concatenated digits for n <= 9, or comma-separated integers
    """
    if not perm:
        return EMPTY_TEXT
    if len(perm) <= 9:
        return "".join(str(value) for value in perm)
    return ",".join(str(value) for value in perm)


def standardize(values) -> Perm:
    """
    Rank-reduce a sequence of distinct integers to the permutation it is
    order-isomorphic to.

    Args:
        values (sequence of int): Distinct integers

    Returns:
        Perm: The order-isomorphic permutation
    """
    ranks = {value: rank for rank, value in enumerate(sorted(values), start=1)}
    return tuple(ranks[value] for value in values)


def delete_point(perm: Perm, index: int) -> Perm:
    """
    Remove the point at a 0-based index and rank-reduce the rest.
    """
    removed = perm[index]
    return tuple(value - 1 if value > removed else value
                 for position, value in enumerate(perm) if position != index)


def reverse(perm: Perm) -> Perm:
    return perm[::-1]


def complement(perm: Perm) -> Perm:
    top = len(perm) + 1
    return tuple(top - value for value in perm)


def inverse(perm: Perm) -> Perm:
    result = [0] * len(perm)
    for position, value in enumerate(perm, start=1):
        result[value - 1] = position
    return tuple(result)


def symmetries(perm: Perm) -> dict[str, Perm]:
    """
    Apply the eight symmetries of the permutation poset.

    Args:
        perm (Perm): Source permutation

    Returns:
        dict: Symmetry name to image, names built from r (reverse),
              c (complement) and i (inverse), applied right to left
    """
    inv = inverse(perm)
    images = {}
    for name, base in (("", perm), ("i", inv)):
        rev = reverse(base)
        images[name or "id"] = base
        images["r" + name] = rev
        images["c" + name] = complement(base)
        images["rc" + name] = complement(rev)
    return images


@dataclass(frozen=True)
class SymmetryOrbit:
    """
    The distinct images of a permutation under the symmetry group.

    Attributes:
        images (frozenset): At most eight distinct permutations
        canonical (Perm): Lexicographically smallest image
    """
    images: frozenset
    canonical: Perm

    def __len__(self):
        return len(self.images)


def symmetry_orbit(perm: Perm) -> SymmetryOrbit:
    images = frozenset(symmetries(perm).values())
    return SymmetryOrbit(images=images, canonical=min(images))


def canonical(perm: Perm) -> Perm:
    """
    Return the lexicographically smallest symmetry of a permutation.
    """
    return min(symmetries(perm).values())


@dataclass(frozen=True)
class AdjacencyProfile:
    """
    Positions of the adjacencies of a permutation.

    Attributes:
        up_positions (frozenset): 1-based i with perm[i+1] = perm[i] + 1
        down_positions (frozenset): 1-based i with perm[i+1] = perm[i] - 1
        triple_positions (frozenset): 1-based i starting a monotone run of
            three contiguous values
    """
    up_positions: frozenset
    down_positions: frozenset
    triple_positions: frozenset

    @property
    def count(self) -> int:
        return len(self.up_positions) + len(self.down_positions)


def adjacency_profile(perm: Perm) -> AdjacencyProfile:
    up = set()
    down = set()
    for i in range(len(perm) - 1):
        step = perm[i + 1] - perm[i]
        if step == 1:
            up.add(i + 1)
        elif step == -1:
            down.add(i + 1)
    triple = {i for i in up if i + 1 in up} | {i for i in down if i + 1 in down}
    return AdjacencyProfile(frozenset(up), frozenset(down), frozenset(triple))


def has_opposing_adjacencies(perm: Perm) -> bool:
    has_up = has_down = False
    for i in range(len(perm) - 1):
        step = perm[i + 1] - perm[i]
        if step == 1:
            has_up = True
        elif step == -1:
            has_down = True
        if has_up and has_down:
            return True
    return False


def has_triple_adjacency(perm: Perm) -> bool:
    for i in range(len(perm) - 2):
        step = perm[i + 1] - perm[i]
        if (step == 1 or step == -1) and perm[i + 2] - perm[i + 1] == step:
            return True
    return False


def count_adjacencies(perm: Perm) -> int:
    return sum(1 for i in range(len(perm) - 1) if abs(perm[i + 1] - perm[i]) == 1)


def is_adjacency_free(perm: Perm) -> bool:
    return count_adjacencies(perm) == 0


def contiguous_windows(perm: Perm, min_length: int = 2, max_length: int | None = None):
    """
    Yield the windows of a permutation whose values are contiguous.

    Args:
        perm (Perm): Permutation to scan
        min_length (int): Shortest window reported
        max_length (int, optional): Longest window reported, default len(perm)

    Yields:
        tuple: (start, length) with 1-based start
    """
    n = len(perm)
    if max_length is None or max_length > n:
        max_length = n
    for i in range(n):
        low = high = perm[i]
        for j in range(i + 1, min(n, i + max_length)):
            value = perm[j]
            if value < low:
                low = value
            elif value > high:
                high = value
            length = j - i + 1
            if length >= min_length and high - low == j - i:
                yield i + 1, length


def proper_intervals(perm: Perm) -> list[tuple[int, int]]:
    """
    List the intervals of length 2..n-1 as (start, length) pairs.
    """
    return list(contiguous_windows(perm, 2, len(perm) - 1))


def is_simple(perm: Perm) -> bool:
    """
    Check whether a permutation has no intervals other than the trivial ones.

    The empty permutation is not simple; 1, 12 and 21 are.
    """
    if not perm:
        return False
    for _ in contiguous_windows(perm, 2, len(perm) - 1):
        return False
    return True


def is_sum_decomposable(perm: Perm) -> bool:
    high = 0
    for k, value in enumerate(perm[:-1], start=1):
        high = max(high, value)
        if high == k:
            return True
    return False


def is_skew_decomposable(perm: Perm) -> bool:
    n = len(perm)
    low = n + 1
    for k, value in enumerate(perm[:-1], start=1):
        low = min(low, value)
        if low == n - k + 1:
            return True
    return False
