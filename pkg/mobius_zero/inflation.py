"""
Inflations (with empty parts), inflation sets, witness sets and the
substitution decomposition.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from mobius_zero.errors import DomainError, MalformedPermutationError
from mobius_zero.perm import EMPTY, Perm, format_perm, parse_perm, standardize
from mobius_zero.poset import ONE, downset

_SPEC_PATTERN = re.compile(r"^\s*([^\[\]\s]+)\s*\[(.*)\]\s*$", re.DOTALL)


@dataclass(frozen=True)
class InflationSpec:
    """
    A skeleton permutation and one part per skeleton point.

    Attributes:
        skeleton (Perm): Permutation of length m >= 1
        parts (tuple): m permutations, each possibly empty
    """
    skeleton: Perm
    parts: tuple

    def __post_init__(self):
        if not self.skeleton:
            raise DomainError("An inflation needs a non-empty skeleton")
        if len(self.parts) != len(self.skeleton):
            raise DomainError(
                f"Skeleton {format_perm(self.skeleton)} has {len(self.skeleton)} points "
                f"but {len(self.parts)} parts were given")
        if not any(self.parts):
            raise DomainError("At least one part of an inflation must be non-empty")

    def __str__(self):
        return f"{format_perm(self.skeleton)}[{','.join(format_perm(part) for part in self.parts)}]"


@dataclass(frozen=True)
class Decomposition:
    """
    The substitution decomposition of a permutation: a simple skeleton and its
    non-empty blocks.
    """
    skeleton: Perm
    parts: tuple

    def as_spec(self) -> InflationSpec:
        return InflationSpec(self.skeleton, self.parts)

    def __str__(self):
        return f"{format_perm(self.skeleton)} [ {', '.join(format_perm(part) for part in self.parts)} ]"


def _inflate_parts(skeleton: Perm, parts) -> Perm:
    offsets = [0] * (len(skeleton) + 1)
    for value, part in zip(skeleton, parts):
        offsets[value] = len(part)
    running = 0
    for value in range(1, len(skeleton) + 1):
        running, offsets[value] = running + offsets[value], running
    result = []
    for value, part in zip(skeleton, parts):
        base = offsets[value]
        result.extend(base + entry for entry in part)
    return tuple(result)


def inflate(spec: InflationSpec) -> Perm:
    """
    Replace every skeleton point by a block order-isomorphic to its part;
    empty parts delete the point.

    Args:
        spec (InflationSpec): Skeleton and parts

    Returns:
        Perm: The inflated permutation, of length sum of the part lengths
    """
    return _inflate_parts(spec.skeleton, spec.parts)


def _expand_positions(sigma: Perm, positions, parts) -> list:
    positions = list(positions)
    parts = list(parts)
    if len(positions) != len(parts):
        raise DomainError(f"{len(positions)} positions but {len(parts)} parts")
    for previous, current in zip(positions, positions[1:]):
        if current <= previous:
            raise DomainError(f"Positions must be strictly increasing, got {positions}")
    for position in positions:
        if position < 1 or position > len(sigma):
            raise DomainError(f"Position {position} is outside 1..{len(sigma)}")
    full = [ONE] * len(sigma)
    for position, part in zip(positions, parts):
        full[position - 1] = part
    return full


def inflate_at(sigma: Perm, positions, parts) -> Perm:
    """
    Inflate the listed positions of sigma by the given parts and every other
    position by 1.

    Args:
        sigma (Perm): Skeleton
        positions (list of int): Strictly increasing 1-based positions
        parts (list of Perm): One part per listed position

    Returns:
        Perm: The inflated permutation

    Raises:
        DomainError: On duplicate, unordered or out-of-range positions
    """
    return inflate(InflationSpec(sigma, tuple(_expand_positions(sigma, positions, parts))))


def _inflate_choices(sigma: Perm, choices) -> frozenset:
    result = set()
    for selection in itertools.product(*choices):
        if any(selection):
            result.add(_inflate_parts(sigma, selection))
    return frozenset(result)


def inflation_set(sigma: Perm, positions, parts) -> frozenset:
    """
    All inflations of sigma where each listed position takes an element of
    the downset of its part and every other position takes 1 or the empty
    permutation. The all-empty selection is excluded.
    """
    full = _expand_positions(sigma, positions, parts)
    choices = [sorted(downset(part)) for part in full]
    return _inflate_choices(sigma, choices)


def witness_set(sigma: Perm, position: int, alpha: Perm) -> frozenset:
    """
    All inflations of sigma carrying exactly alpha at one position and 1 or
    the empty permutation everywhere else.

    Raises:
        DomainError: If alpha is empty or the position is out of range
    """
    if not alpha:
        raise DomainError("A witness set needs a non-empty permutation")
    if position < 1 or position > len(sigma):
        raise DomainError(f"Position {position} is outside 1..{len(sigma)}")
    choices = [[ONE, EMPTY]] * len(sigma)
    choices[position - 1] = [alpha]
    return _inflate_choices(sigma, choices)


def _first_sum_component(pi: Perm) -> int:
    high = 0
    for k, value in enumerate(pi[:-1], start=1):
        high = max(high, value)
        if high == k:
            return k
    return 0


def _first_skew_component(pi: Perm) -> int:
    n = len(pi)
    low = n + 1
    for k, value in enumerate(pi[:-1], start=1):
        low = min(low, value)
        if low == n - k + 1:
            return k
    return 0


def _longest_block(pi: Perm, start: int) -> int:
    n = len(pi)
    low = high = pi[start]
    best = 1
    for j in range(start + 1, n):
        low = min(low, pi[j])
        high = max(high, pi[j])
        length = j - start + 1
        if length < n and high - low == j - start:
            best = length
    return best


def decompose(pi: Perm) -> Decomposition:
    """
    Find the unique substitution decomposition of a permutation.

    When the skeleton is 12 (resp. 21) the first part is the shortest sum
    (resp. skew) component, which makes it sum (resp. skew) indecomposable.
    Otherwise the blocks are the maximal proper intervals.

    Args:
        pi (Perm): Non-empty permutation

    Returns:
        Decomposition: Simple skeleton and non-empty parts
    """
    n = len(pi)
    if n == 0:
        raise DomainError("The empty permutation has no decomposition")
    if n == 1:
        return Decomposition(ONE, (ONE,))

    k = _first_sum_component(pi)
    if k:
        return Decomposition((1, 2), (standardize(pi[:k]), standardize(pi[k:])))
    k = _first_skew_component(pi)
    if k:
        return Decomposition((2, 1), (standardize(pi[:k]), standardize(pi[k:])))

    blocks = []
    start = 0
    while start < n:
        length = _longest_block(pi, start)
        blocks.append(pi[start:start + length])
        start += length
    skeleton = standardize([block[0] for block in blocks])
    return Decomposition(skeleton, tuple(standardize(block) for block in blocks))


def parse_inflation(text: str) -> InflationSpec:
    """
    Parse inflation text such as "3624715[1,12,1,1,21,1,1]"; "e" marks an
    empty part and whitespace inside the brackets is ignored. Parts use the
    digit form, since commas separate them.

    Raises:
        MalformedPermutationError: On malformed bracket syntax or permutations
        DomainError: If every part is empty or the part count is wrong
    """
    match = _SPEC_PATTERN.match(text)
    if match is None:
        raise MalformedPermutationError(f"Malformed inflation {text!r}, expected SKELETON[PART,...]", text)
    skeleton = parse_perm(match.group(1))
    inner = re.sub(r"\s+", "", match.group(2))
    if not inner:
        raise MalformedPermutationError(f"Inflation {text!r} lists no parts", text)
    parts = tuple(parse_perm(token) for token in inner.split(","))
    return InflationSpec(skeleton, parts)
