"""
Exact censuses of the principal Möbius function, the strongly zero
classification and simple permutations, plus the asymptotic lower bound for
the proportion of permutations with mu(1, pi) = 0.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from decimal import ROUND_DOWN, ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction

import mpmath
from pydantic import BaseModel, ConfigDict

from mobius_zero.census import CensusRunner
from mobius_zero.errors import CostGateError, DomainError
from mobius_zero.perm import Perm, format_perm
from mobius_zero.poset import MobiusCache

logger = logging.getLogger(__name__)

WORKING_DPS = 30
LARGE_N = 10
CONJECTURED_Z_CEILING = Fraction(6040, 10000)

PUBLISHED_Z = {1: "0.0000", 2: "0.0000", 3: "0.3333", 4: "0.4167", 5: "0.4833", 6: "0.5361",
               7: "0.5742", 8: "0.5942", 9: "0.6019", 10: "0.6040", 11: "0.6034", 12: "0.6021"}
PUBLISHED_NONOPP = {4: (6, 4), 5: (26, 8), 6: (170, 38), 7: (1154, 212), 8: (8954, 1502),
                    9: (78006, 13088), 10: (757966, 130066), 11: (8132206, 1436296),
                    12: (95463532, 17403612)}
PUBLISHED_SZ_CLASS = {3: (0, 2), 4: (10, 0), 5: (40, 10), 6: (258, 16), 7: (1570, 144),
                      8: (11366, 816), 9: (91254, 6144), 10: (817506, 50664)}
PUBLISHED_SIMPLES = {4: 2, 5: 6, 6: 46, 7: 338, 8: 2926, 9: 28146, 10: 298526}
PUBLISHED_NFACT_E2 = {4: "3.2", 5: "16.2", 6: "97.4", 7: "682", 8: "5456", 9: "49110", 10: "491104"}
PUBLISHED_BOUND = {9: "0.3995299850", 100: "0.3995764008"}


class CensusRow(BaseModel):
    """
    Exact counts for one length n. Fields that a given census does not
    produce stay None.
    """
    model_config = ConfigDict(frozen=True)

    n: int
    total: int
    mu_zero: int | None = None
    multi_adjacency: int | None = None
    opposing: int | None = None
    nonopp_zero: int | None = None
    nonopp_nonzero: int | None = None
    obviously_zero: int | None = None
    new: int | None = None
    simple_count: int | None = None

    @property
    def z(self) -> Fraction:
        return Fraction(self.mu_zero, self.total)


@dataclass(frozen=True)
class Mismatch:
    n: int
    field: str
    computed: object
    published: object
    witness: Perm | None = None

    def __str__(self):
        text = f"n={self.n} {self.field}: computed {self.computed}, published {self.published}"
        if self.witness is not None:
            text += f", first differing permutation {format_perm(self.witness)}"
        return text


@dataclass
class BoundSeries:
    """
    Terms, partial sums and finite-n values of the inflation lower bound.

    Attributes:
        terms (dict): k to the exact coefficient (2^k - 2)/k!
        partial_sums (dict): K to (1/e^2) times the sum of terms 2..K
        finite_n (dict): n to the exact finite-length lower bound
    """
    terms: dict = field(default_factory=dict)
    partial_sums: dict = field(default_factory=dict)
    finite_n: dict = field(default_factory=dict)


def round_decimal(value, places: int, rounding: str = ROUND_HALF_UP) -> str:
    """
    Format an exact or high-precision value with a fixed number of decimals,
    rounding halves away from zero unless another decimal rounding mode is
    given.

    Args:
        value (Fraction, int or mpf): Value to format
        places (int): Number of decimals
        rounding (str): A decimal module rounding mode

    Returns:
        str: The rounded value
    """
    with localcontext() as ctx:
        ctx.prec = 60
        if isinstance(value, (Fraction, int)):
            value = Fraction(value)
            exact = Decimal(value.numerator) / Decimal(value.denominator)
        else:
            exact = Decimal(mpmath.nstr(value, 50))
        quantum = Decimal(1).scaleb(-places)
        return str(exact.quantize(quantum, rounding=rounding))


def percentage(count: int, total: int) -> str:
    return round_decimal(Fraction(100 * count, total), 2)


def estimate_cost(n: int, workers: int = 1) -> str:
    """
    Rough wall-clock estimate for an exhaustive Möbius census of length n.
    """
    perms = math.factorial(n)
    # measured on length 9: about 40 microseconds per permutation, growing with n
    seconds = perms * 4e-5 * (n / 9) ** 3 / max(workers, 1)
    return (f"length {n}: {perms:,} permutations, roughly {seconds / 60:,.0f} minutes "
            f"with {workers} worker(s)")


def check_cost(max_n: int, opt_in_large: bool, workers: int = 1):
    """
    Refuse censuses at or above LARGE_N unless explicitly opted in.

    Raises:
        CostGateError: If max_n >= LARGE_N and opt_in_large is False
    """
    if max_n >= LARGE_N and not opt_in_large:
        estimate = estimate_cost(max_n, workers)
        raise CostGateError(f"Census up to length {max_n} needs --yes-large", estimate)


def census_rows(max_n: int, cache: MobiusCache, runner: CensusRunner | None = None) -> list[CensusRow]:
    """
    Evaluate every permutation of length 1..max_n and return the Möbius
    counts per length.
    """
    if max_n < 1:
        raise DomainError("A census needs max_n >= 1")
    runner = runner or CensusRunner(threads=1)
    rows = []
    for n in range(1, max_n + 1):
        counts = runner.mobius_counts(n, cache)
        rows.append(CensusRow(n=n, total=counts["total"], mu_zero=counts["mu_zero"],
                              multi_adjacency=counts["multi_adjacency"], opposing=counts["opposing"],
                              nonopp_zero=counts["nonopp_zero"], nonopp_nonzero=counts["nonopp_nonzero"]))
    return rows


def z_table(max_n: int, cache: MobiusCache, runner: CensusRunner | None = None) -> list[CensusRow]:
    return census_rows(max_n, cache, runner)


def nonopp_table(max_n: int, cache: MobiusCache, runner: CensusRunner | None = None) -> list[CensusRow]:
    """
    Rows for lengths 4..max_n counting permutations with at least two
    adjacencies, none opposing, split by whether mu(1, pi) is zero.
    """
    if max_n < 4:
        raise DomainError("The non-opposing adjacency table starts at length 4")
    return [row for row in census_rows(max_n, cache, runner) if row.n >= 4]


def simple_census(max_n: int, runner: CensusRunner | None = None) -> list[int]:
    """
    Count simple permutations exhaustively.

    Returns:
        list: S(1), S(2), ..., S(max_n)
    """
    if max_n < 1:
        raise DomainError("A census needs max_n >= 1")
    runner = runner or CensusRunner(threads=1)
    return [runner.simple_count(n) for n in range(1, max_n + 1)]


def nfact_over_e2(n: int):
    with mpmath.workdps(WORKING_DPS):
        return mpmath.factorial(n) / mpmath.e ** 2


def s_asymptotic(n: int):
    """
    The truncated asymptotic estimate n!/e^2 (1 - 1/n + 2/(n(n-1))) of the
    number of simple permutations.
    """
    if n < 1:
        raise DomainError("The asymptotic estimate needs n >= 1")
    with mpmath.workdps(WORKING_DPS):
        correction = 1 - mpmath.mpf(1) / n
        if n > 1:
            correction += mpmath.mpf(2) / (n * (n - 1))
        return nfact_over_e2(n) * correction


def format_nfact_over_e2(n: int) -> str:
    """
    n!/e^2 at the published precision: one decimal below 100, whole numbers
    above, truncated.
    """
    value = nfact_over_e2(n)
    return round_decimal(value, 1 if value < 100 else 0, rounding=ROUND_DOWN)


def limit_coefficient(k: int) -> Fraction:
    """
    The limit of P(n, k) e^2 as n grows: (2^k - 2)/k!.

    Raises:
        DomainError: If k < 2
    """
    if k < 2:
        raise DomainError(f"Limit coefficients start at k = 2, got {k}")
    return Fraction(2 ** k - 2, math.factorial(k))


def coefficient_sum(K: int) -> Fraction:
    return sum((limit_coefficient(k) for k in range(2, K + 1)), Fraction(0))


def asymptotic_lower_bound(K: int):
    """
    (1/e^2) times the sum of (2^k - 2)/k! for k = 2..K; the sum is exact and
    the single division by e^2 happens at WORKING_DPS digits.
    """
    if K < 2:
        raise DomainError(f"The bound series starts at K = 2, got {K}")
    total = coefficient_sum(K)
    with mpmath.workdps(WORKING_DPS):
        return mpmath.mpf(total.numerator) / total.denominator / mpmath.e ** 2


def limit_bound():
    """
    The limit of the bound series, (1 - 1/e)^2.
    """
    with mpmath.workdps(WORKING_DPS):
        return (1 - 1 / mpmath.e) ** 2


def zsz_lower_bound(n: int, simple_counts: dict | None = None) -> Fraction:
    """
    Exact lower bound on the proportion of strongly zero permutations of
    length n from inflating simple permutations by adjacencies.

    Terms use skeletons of length n - k >= 4, plus the length-2 skeletons;
    skeletons of length 1 and 3 contribute nothing.

    Args:
        n (int): Length, at least 4
        simple_counts (dict, optional): m to S(m); computed when missing

    Returns:
        Fraction: The bound
    """
    if n < 4:
        raise DomainError("The finite lower bound starts at n = 4")
    if simple_counts is None:
        counts = simple_census(n - 2)
        simple_counts = {m: counts[m - 1] for m in range(1, n - 1)}
    total = 0
    for k in range(2, n // 2 + 1):
        m = n - k
        if m >= 4 or m == 2:
            total += simple_counts[m] * math.comb(m, k) * (2 ** k - 2)
    return Fraction(total, math.factorial(n))


def bound_series(K: int, max_n: int | None = None, simple_counts: dict | None = None) -> BoundSeries:
    if K < 2:
        raise DomainError(f"The bound series starts at K = 2, got {K}")
    series = BoundSeries()
    running = Fraction(0)
    with mpmath.workdps(WORKING_DPS):
        e2 = mpmath.e ** 2
        for k in range(2, K + 1):
            series.terms[k] = limit_coefficient(k)
            running += series.terms[k]
            series.partial_sums[k] = mpmath.mpf(running.numerator) / running.denominator / e2
    if max_n is not None:
        for n in range(4, max_n + 1):
            series.finite_n[n] = zsz_lower_bound(n, simple_counts)
    return series


def sz_class_table(max_n: int, registry) -> list[CensusRow]:
    """
    Obviously zero and new counts per length from a built registry.
    """
    if registry.max_length < max_n:
        raise DomainError(f"Registry only covers lengths up to {registry.max_length}")
    rows = []
    for n in range(3, max_n + 1):
        obviously, new = registry.counts(n)
        rows.append(CensusRow(n=n, total=math.factorial(n), obviously_zero=obviously, new=new))
    return rows


def conjecture_status(row: CensusRow) -> bool:
    """
    Whether Z(n) for this row stays within the conjectured ceiling 0.6040.
    """
    return row.z <= CONJECTURED_Z_CEILING


def _split_witness(registry, n: int, computed: tuple, published: tuple):
    # an over-counted class names its first member, an under-counted one the
    # first zero permutation left outside the split
    seen = registry.first_seen.get(n, {})
    for kind, got, want in zip(("obviously_zero", "new"), computed, published):
        if got > want:
            return seen.get(kind)
        if got < want:
            return seen.get("unsplit")
    return None


def compare_with_reference(rows, table: str, registry=None) -> list[Mismatch]:
    """
    Compare computed rows with the published tables.

    Args:
        rows (list): CensusRow values, or S(n) integers for "simples"
        table (str): One of "z", "nonopp", "szclass", "simples"
        registry (SZRegistry, optional): The registry behind "szclass" rows;
            when given, each mismatch names its first differing permutation

    Returns:
        list: Mismatch entries; empty when every published value agrees
    """
    mismatches = []
    if table == "simples":
        for n, count in enumerate(rows, start=1):
            if n in PUBLISHED_SIMPLES and count != PUBLISHED_SIMPLES[n]:
                mismatches.append(Mismatch(n, "S(n)", count, PUBLISHED_SIMPLES[n]))
        return mismatches
    for row in rows:
        if table == "z" and row.n in PUBLISHED_Z:
            computed = round_decimal(row.z, 4)
            if computed != PUBLISHED_Z[row.n]:
                mismatches.append(Mismatch(row.n, "Z(n)", computed, PUBLISHED_Z[row.n]))
        elif table == "nonopp" and row.n in PUBLISHED_NONOPP:
            computed = (row.nonopp_zero, row.nonopp_nonzero)
            if computed != PUBLISHED_NONOPP[row.n]:
                mismatches.append(Mismatch(row.n, "=0/!=0", computed, PUBLISHED_NONOPP[row.n]))
        elif table == "szclass" and row.n in PUBLISHED_SZ_CLASS:
            computed = (row.obviously_zero, row.new)
            published = PUBLISHED_SZ_CLASS[row.n]
            if computed != published:
                witness = None
                if registry is not None:
                    witness = _split_witness(registry, row.n, computed, published)
                mismatches.append(Mismatch(row.n, "obviously/new", computed, published, witness))
    for mismatch in mismatches:
        logger.warning("Published table disagrees: %s", mismatch)
    return mismatches
