"""
Valuation spectra of binomial and multinomial coefficient rows.

T_{p,k}(n, x) counts the k-tuples with total n by the p-adic valuation of their
multinomial coefficient. The fast path multiplies one k x k transition matrix
per base-p digit of n, so the cost grows with the digit count of n, not with n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import state
from .errors import InvalidArgumentError, UnsupportedQueryError
from .exactalg import (
    ONE,
    ZERO,
    RAT_ONE,
    RAT_ZERO,
    IntPoly,
    PolyMatrix,
    RatPoly,
    mat_vec,
    poly_add,
    poly_pow,
    poly_scale,
    poly_shift,
    rat_row_vec_mat,
    row_vec_mat,
)
from .padic import (
    factorial_quotient_valuation,
    nu,
    require_prime,
    subword_count,
    to_digits,
)


@dataclass(frozen=True)
class SpectrumQuery:
    """A request for T_{p,k}(n, x); k = 2 is the binomial case."""

    p: int
    k: int
    n: int

    def __post_init__(self) -> None:
        require_prime(self.p)
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise InvalidArgumentError(f"k must be an integer >= 1 (got {self.k!r}).")
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 0:
            raise InvalidArgumentError(
                f"n must be a non-negative integer (got {self.n!r})."
            )


@dataclass(frozen=True)
class StateVector:
    """Component i holds T_{p,k,i}(n, x); for k = 2 component 1 is T'_p(n, x)."""

    components: tuple[IntPoly, ...]

    @property
    def k(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> IntPoly:
        return self.components[i]


def _require_binomial(q: SpectrumQuery, operation: str) -> None:
    if q.k != 2:
        raise UnsupportedQueryError(
            f"{operation} is defined for binomial rows only (k = 2, got k = {q.k})."
        )


def fine_count(n: int, p: int) -> int:
    """Number of binomials C(n, m) not divisible by p: product of (digit + 1)."""
    return math.prod(d + 1 for d in to_digits(n, p))


def fine_count_by_subwords(n: int, p: int) -> int:
    """Same count written as prod_d (d + 1)^{|n|_d}."""
    return math.prod((d + 1) ** subword_count(n, p, (d,)) for d in range(p))


@lru_cache(maxsize=None)
def cpk_row(p: int, k: int) -> tuple[int, ...]:
    """c_{p,k}(0..(p-1)k): each row sums p consecutive entries of the previous row."""
    require_prime(p)
    if k < 0:
        raise InvalidArgumentError(f"k must be >= 0 (got {k}).")
    row: tuple[int, ...] = (1,)
    for _ in range(k):
        width = len(row) + p - 1
        row = tuple(
            sum(row[t - d] for d in range(p) if 0 <= t - d < len(row))
            for t in range(width)
        )
    return row


def cpk(p: int, k: int, n: int) -> int:
    """Number of k-tuples of base-p digits with total n (0 outside [0, (p-1)k])."""
    row = cpk_row(p, k)
    if 0 <= n < len(row):
        return row[n]
    return 0


def cpk_by_power(p: int, k: int, n: int) -> int:
    """Coefficient of x^n in (1 + x + ... + x^{p-1})^k."""
    require_prime(p)
    if k < 0:
        raise InvalidArgumentError(f"k must be >= 0 (got {k}).")
    if n < 0:
        return 0
    return poly_pow(IntPoly((1,) * p), k).coefficient(n)


@lru_cache(maxsize=None)
def transition_matrix(p: int, k: int, d: int) -> PolyMatrix:
    """
    M_{p,k}(d): 1-indexed entry (i, j) is c_{p,k}(p(j-1) + d - (i-1)) x^{i-1},
    stored at [i-1][j-1].
    """
    require_prime(p)
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1 (got {k}).")
    if not 0 <= d < p:
        raise InvalidArgumentError(f"Digit d must lie in [0, {p - 1}] (got {d}).")
    state.log.debug("Building transition matrix p=%s k=%s d=%s", p, k, d)
    return PolyMatrix.from_rows(
        [
            [IntPoly.monomial(cpk(p, k, p * j + d - i), i) for j in range(k)]
            for i in range(k)
        ]
    )


def _initial_vector(k: int) -> list[IntPoly]:
    return [ONE] + [ZERO] * (k - 1)


def spectrum(q: SpectrumQuery) -> IntPoly:
    """T_{p,k}(n, x) = e M(n_0) M(n_1) ... M(n_l) e^T, threading the row vector e."""
    vector = _initial_vector(q.k)
    for d in to_digits(q.n, q.p):
        vector = row_vec_mat(vector, transition_matrix(q.p, q.k, d))
    return vector[0]


def spectrum_state(q: SpectrumQuery) -> StateVector:
    """
    All T_{p,k,i}(n, x) at once: state(pn + d) = M(d) state(n) starting from
    e^T, so digits are applied most-significant first on the column vector.
    """
    vector = _initial_vector(q.k)
    for d in reversed(to_digits(q.n, q.p).digits):
        vector = mat_vec(transition_matrix(q.p, q.k, d), vector)
    return StateVector(tuple(vector))


def state_component_expected(q: SpectrumQuery, i: int) -> IntPoly:
    """T_{p,k,i}(n, x) from its definition: 0 if n < i, else x^{nu_p(n!/(n-i)!) + i} T(n - i)."""
    if not 0 <= i < q.k:
        raise InvalidArgumentError(f"Component index must lie in [0, {q.k - 1}].")
    if q.n < i:
        return ZERO
    shift = factorial_quotient_valuation(q.n, q.n - i, q.p) + i
    return poly_shift(spectrum(SpectrumQuery(p=q.p, k=q.k, n=q.n - i)), shift)


def t_prime(n: int, p: int) -> IntPoly:
    """T'_p(n, x): 0 for n = 0, else x^{nu_p(n) + 1} T_p(n - 1, x)."""
    return spectrum_state(SpectrumQuery(p=p, k=2, n=n))[1]


def spectrum_by_recurrence(q: SpectrumQuery) -> IntPoly:
    """
    T_p(n, x) from the scalar recurrence
    T(pn + d) = (d + 1) T(n) + (p - d - 1) x^{nu_p(n) + 1} T(n - 1)   (n >= 1),
    memoized on n. Each digit level adds at most two new arguments.
    """
    _require_binomial(q, "spectrum_by_recurrence")
    p = q.p
    levels: list[set[int]] = []
    frontier = {q.n}
    while frontier:
        levels.append(frontier)
        below: set[int] = set()
        for m in frontier:
            if m == 0:
                continue
            head = m // p
            below.add(head)
            if head >= 1:
                below.add(head - 1)
        frontier = below

    memo: dict[int, IntPoly] = {0: ONE}
    for level in reversed(levels):
        for m in sorted(level):
            if m in memo:
                continue
            head, d = divmod(m, p)
            value = poly_scale(memo[head], d + 1)
            if head >= 1:
                carry_branch = poly_shift(memo[head - 1], nu(head, p) + 1)
                value = poly_add(value, poly_scale(carry_branch, p - d - 1))
            memo[m] = value
    return memo[q.n]


def spectrum_normalized(q: SpectrumQuery) -> RatPoly:
    """T_p(n, x) / F_p(n); the constant term is always 1."""
    _require_binomial(q, "spectrum_normalized")
    divisor = fine_count(q.n, q.p)
    return RatPoly(tuple(Fraction(c, divisor) for c in spectrum(q).coeffs))


def normalized_transition_matrix(p: int, d: int) -> tuple[tuple[RatPoly, ...], ...]:
    """(1 / (d + 1)) M_p(d) with rational entries."""
    m = transition_matrix(p, 2, d)
    scale = Fraction(1, d + 1)
    return tuple(
        tuple(RatPoly.from_intpoly(entry) * scale for entry in row)
        for row in m.entries
    )


def spectrum_normalized_by_product(q: SpectrumQuery) -> RatPoly:
    """The normalized spectrum as a product of normalized matrices."""
    _require_binomial(q, "spectrum_normalized_by_product")
    vector = [RAT_ONE, RAT_ZERO]
    for d in to_digits(q.n, q.p):
        vector = rat_row_vec_mat(vector, normalized_transition_matrix(q.p, d))
    return vector[0]


def multinomial_fine_count(n: int, p: int, k: int) -> int:
    """T_{p,k}(n, 0) = prod over digits of C(n_i + k - 1, k - 1)."""
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1 (got {k}).")
    return math.prod(math.comb(d + k - 1, k - 1) for d in to_digits(n, p))


def coefficient(poly: IntPoly, alpha: int) -> int:
    """Coefficient of x^alpha (theta_alpha when poly is a spectrum)."""
    if alpha < 0:
        raise InvalidArgumentError(f"alpha must be >= 0 (got {alpha}).")
    return poly.coefficient(alpha)
