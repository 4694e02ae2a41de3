"""
Brute-force ground truth for the spectrum computations.

Nothing here imports the digit or spectrum modules: multinomials are exact big
integers, valuations come from repeated division, and every composition of the
total is enumerated. Agreement with the fast paths is therefore independent
evidence.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

from . import state
from .constants import DEFAULT_ORACLE_BUDGET
from .errors import EnumerationTooLargeError, InvalidArgumentError
from .exactalg import IntPoly

if TYPE_CHECKING:
    from .spectra import SpectrumQuery


def composition_count(k: int, total: int) -> int:
    """C(total + k - 1, k - 1), the number of k-tuples with the given total."""
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1 (got {k}).")
    return math.comb(total + k - 1, k - 1)


def iter_compositions(
    k: int, total: int, last_values: Iterable[int] | None = None
) -> Iterator[tuple[int, ...]]:
    """
    Yield every k-tuple of non-negative integers with the given total in
    colexicographic order (last entry varies slowest). `last_values` restricts
    the last entry, which is how an enumeration is split into shards.
    """
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1 (got {k}).")
    if total < 0:
        return
    lasts = range(total + 1) if last_values is None else last_values
    if k == 1:
        if total in lasts:
            yield (total,)
        return
    for last in lasts:
        if not 0 <= last <= total:
            continue
        for head in iter_compositions(k - 1, total - last):
            yield head + (last,)


class CompositionCursor:
    """Iterator over compositions that exposes the tuple it is currently on."""

    def __init__(self, k: int, total: int) -> None:
        if total < 0:
            raise InvalidArgumentError(f"total must be >= 0 (got {total}).")
        self.k = k
        self.total = total
        self.current: tuple[int, ...] | None = None
        self._inner = iter_compositions(k, total)

    def __iter__(self) -> CompositionCursor:
        return self

    def __next__(self) -> tuple[int, ...]:
        self.current = next(self._inner)
        return self.current


def multinomial_exact(m: Sequence[int]) -> int:
    """
    (total m)! / (m_1! ... m_k!) by iterated exact division: each step multiplies
    by the next prefix length and divides by the next in-part index, and every
    partial result is itself an integer.
    """
    result = 1
    prefix = 0
    for part in m:
        if part < 0:
            raise InvalidArgumentError(f"Tuple entries must be >= 0 (got {part}).")
        for j in range(1, part + 1):
            prefix += 1
            result, remainder = divmod(result * prefix, j)
            assert remainder == 0, (tuple(m), prefix, j)
    return result


def multinomial_by_factorials(m: Sequence[int]) -> int:
    """Factorial quotient with each division checked for exactness."""
    result = math.factorial(sum(m))
    for part in m:
        result, remainder = divmod(result, math.factorial(part))
        assert remainder == 0, (tuple(m), part)
    return result


def binomial_row(total: int) -> list[int]:
    """C(total, 0..total) stepped as C(t, j + 1) = C(t, j) (t - j) / (j + 1)."""
    if total < 0:
        raise InvalidArgumentError(f"total must be >= 0 (got {total}).")
    row = [1]
    value = 1
    for j in range(total):
        value, remainder = divmod(value * (total - j), j + 1)
        assert remainder == 0, (total, j)
        row.append(value)
    return row


def iter_weighted_compositions(
    k: int, total: int, last_values: Iterable[int] | None = None
) -> Iterator[tuple[tuple[int, ...], int]]:
    """
    Same tuples and order as iter_compositions, each paired with its exact
    multinomial. Fixing the last entry splits the multinomial as
    C(total, last) times the multinomial of the head, so one binomial row per
    total replaces a from-scratch product per tuple.
    """
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1 (got {k}).")
    if total < 0:
        return
    lasts = range(total + 1) if last_values is None else last_values
    if k == 1:
        if total in lasts:
            yield (total,), 1
        return
    row = binomial_row(total)
    for last in lasts:
        if not 0 <= last <= total:
            continue
        weight = row[last]
        if k == 2:
            yield (total - last, last), weight
            continue
        for head, head_weight in iter_weighted_compositions(k - 1, total - last):
            yield head + (last,), head_weight * weight


def valuation_trial_division(value: int, p: int) -> int:
    """Count how many times p divides value exactly."""
    if value == 0:
        raise InvalidArgumentError("Trial-division valuation of 0 is undefined.")
    if p < 2:
        raise InvalidArgumentError(f"p must be >= 2 (got {p}).")
    value = abs(value)
    count = 0
    while True:
        quotient, remainder = divmod(value, p)
        if remainder:
            return count
        value = quotient
        count += 1


def oracle_histogram(
    q: SpectrumQuery, last_values: Iterable[int] | None = None
) -> Counter[int]:
    """Valuation histogram over one shard of the compositions of q.n."""
    histogram: Counter[int] = Counter()
    for _, weight in iter_weighted_compositions(q.k, q.n, last_values):
        histogram[valuation_trial_division(weight, q.p)] += 1
    return histogram


def merge_histograms(parts: Iterable[Counter[int]]) -> Counter[int]:
    merged: Counter[int] = Counter()
    for part in parts:
        merged.update(part)
    return merged


def histogram_to_poly(histogram: Counter[int]) -> IntPoly:
    if not histogram:
        return IntPoly()
    coeffs = [0] * (max(histogram) + 1)
    for power, count in histogram.items():
        coeffs[power] = count
    return IntPoly(tuple(coeffs))


def oracle_spectrum(
    q: SpectrumQuery, budget: int = DEFAULT_ORACLE_BUDGET, shards: int = 1
) -> IntPoly:
    """
    T_{p,k}(n, x) by enumerating every composition. The last entry's range is
    dealt round-robin into `shards` pieces whose histograms are merged; any
    shard count gives the same polynomial.

    Raises:
        EnumerationTooLargeError: when C(n + k - 1, k - 1) exceeds budget.
    """
    required = composition_count(q.k, q.n)
    if required > budget:
        raise EnumerationTooLargeError(required=required, budget=budget)
    if shards < 1:
        raise InvalidArgumentError(f"shards must be >= 1 (got {shards}).")
    state.log.debug(
        "Oracle enumeration p=%s k=%s n=%s tuples=%s shards=%s",
        q.p,
        q.k,
        q.n,
        required,
        shards,
    )
    parts = (
        oracle_histogram(q, range(s, q.n + 1, shards)) for s in range(shards)
    )
    return histogram_to_poly(merge_histograms(parts))
