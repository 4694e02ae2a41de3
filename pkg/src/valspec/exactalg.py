"""
Exact polynomial and polynomial-matrix arithmetic.

Polynomials are dense, ascending-degree tuples of Python ints (or Fractions for
RatPoly) kept in canonical form: no trailing zero coefficients, and the zero
polynomial is the empty tuple. Every value is immutable, so results can be
shared freely between callers and threads.
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, TypeVar, Union

from .errors import DimensionMismatchError, InvalidArgumentError

Rational = Union[int, Fraction]
R = TypeVar("R", int, Fraction)


class Degree(enum.Enum):
    """Marker for the degree of the zero polynomial."""

    MINUS_INFINITY = "-inf"

    def __repr__(self) -> str:
        return "MINUS_INFINITY"


MINUS_INFINITY = Degree.MINUS_INFINITY


def _strip(coeffs: Sequence[R]) -> tuple[R, ...]:
    """Drop trailing zero coefficients."""
    end = len(coeffs)
    while end and not coeffs[end - 1]:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class IntPoly:
    """Polynomial in x with arbitrary-precision integer coefficients (index = degree)."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coeffs", _strip([operator.index(c) for c in self.coeffs])
        )

    @classmethod
    def constant(cls, value: int) -> IntPoly:
        return cls((value,))

    @classmethod
    def monomial(cls, coefficient: int, power: int) -> IntPoly:
        if power < 0:
            raise InvalidArgumentError(f"Monomial power must be >= 0 (got {power}).")
        return cls((0,) * power + (coefficient,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int | Degree:
        if not self.coeffs:
            return MINUS_INFINITY
        return len(self.coeffs) - 1

    def coefficient(self, power: int) -> int:
        """Coefficient of x^power; 0 beyond the degree."""
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return 0

    def __add__(self, other: IntPoly | int) -> IntPoly:
        return poly_add(self, _as_intpoly(other))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return poly_neg(self)

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return poly_sub(self, _as_intpoly(other))

    def __rsub__(self, other: int) -> IntPoly:
        return poly_sub(_as_intpoly(other), self)

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, IntPoly):
            return poly_mul(self, other)
        return poly_scale(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> IntPoly:
        return poly_pow(self, exponent)

    def __call__(self, value: R) -> R:
        return poly_eval(self, value)


ZERO = IntPoly()
ONE = IntPoly((1,))
X = IntPoly((0, 1))


def _as_intpoly(value: IntPoly | int) -> IntPoly:
    if isinstance(value, IntPoly):
        return value
    return IntPoly.constant(value)


def poly_add(a: IntPoly, b: IntPoly) -> IntPoly:
    """Coefficientwise sum."""
    if len(a.coeffs) < len(b.coeffs):
        a, b = b, a
    out = list(a.coeffs)
    for i, c in enumerate(b.coeffs):
        out[i] += c
    return IntPoly(tuple(out))


def poly_neg(a: IntPoly) -> IntPoly:
    return IntPoly(tuple(-c for c in a.coeffs))


def poly_sub(a: IntPoly, b: IntPoly) -> IntPoly:
    return poly_add(a, poly_neg(b))


def poly_scale(a: IntPoly, factor: int) -> IntPoly:
    return IntPoly(tuple(factor * c for c in a.coeffs))


def poly_shift(a: IntPoly, power: int) -> IntPoly:
    """Multiply by x^power."""
    if power < 0:
        raise InvalidArgumentError(f"Shift must be >= 0 (got {power}).")
    if a.is_zero:
        return a
    return IntPoly((0,) * power + a.coeffs)


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    """
    Schoolbook convolution; zero coefficients are skipped. A single-term
    factor c x^i (every transition-matrix entry) is a scale and shift.
    """
    if a.is_zero or b.is_zero:
        return ZERO
    if len(a.coeffs) > len(b.coeffs):
        a, b = b, a
    *low, lead = a.coeffs
    if not any(low):
        return IntPoly((0,) * len(low) + tuple(lead * c for c in b.coeffs))
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        for j, bj in enumerate(b.coeffs):
            if bj:
                out[i + j] += ai * bj
    return IntPoly(tuple(out))


def poly_pow(a: IntPoly, exponent: int) -> IntPoly:
    """Repeated squaring; a**0 is 1 (including for the zero polynomial)."""
    if exponent < 0:
        raise InvalidArgumentError(f"Exponent must be >= 0 (got {exponent}).")
    result = ONE
    base = a
    while exponent:
        if exponent & 1:
            result = poly_mul(result, base)
        exponent >>= 1
        if exponent:
            base = poly_mul(base, base)
    return result


def poly_eval(a: IntPoly | RatPoly, value: Rational) -> Rational:
    """Exact Horner evaluation. Integer inputs give integer results."""
    result: Rational = 0
    for c in reversed(a.coeffs):
        result = result * value + c
    return result


@dataclass(frozen=True)
class RatPoly:
    """Polynomial in x with exact rational coefficients (reduced Fractions)."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _strip([Fraction(c) for c in self.coeffs]))

    @classmethod
    def from_intpoly(cls, poly: IntPoly) -> RatPoly:
        return cls(tuple(Fraction(c) for c in poly.coeffs))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int | Degree:
        if not self.coeffs:
            return MINUS_INFINITY
        return len(self.coeffs) - 1

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __add__(self, other: RatPoly) -> RatPoly:
        return ratpoly_add(self, other)

    def __mul__(self, other: RatPoly | Rational) -> RatPoly:
        if isinstance(other, RatPoly):
            return ratpoly_mul(self, other)
        return ratpoly_scale(self, other)

    __rmul__ = __mul__

    def __call__(self, value: Rational) -> Fraction:
        return ratpoly_eval(self, value)


RAT_ZERO = RatPoly()
RAT_ONE = RatPoly((Fraction(1),))


def ratpoly_add(a: RatPoly, b: RatPoly) -> RatPoly:
    if len(a.coeffs) < len(b.coeffs):
        a, b = b, a
    out = list(a.coeffs)
    for i, c in enumerate(b.coeffs):
        out[i] += c
    return RatPoly(tuple(out))


def ratpoly_scale(a: RatPoly, factor: Rational) -> RatPoly:
    return RatPoly(tuple(c * factor for c in a.coeffs))


def ratpoly_mul(a: RatPoly, b: RatPoly) -> RatPoly:
    if a.is_zero or b.is_zero:
        return RAT_ZERO
    out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        for j, bj in enumerate(b.coeffs):
            if bj:
                out[i + j] += ai * bj
    return RatPoly(tuple(out))


def ratpoly_eval(a: RatPoly, value: Rational) -> Fraction:
    return Fraction(poly_eval(a, value))


@dataclass(frozen=True)
class PolyMatrix:
    """
    Square matrix of IntPoly entries, stored row-major and 0-indexed.

    Formulas written with 1-indexed (i, j) map to entries[i - 1][j - 1].
    """

    dim: int
    entries: tuple[tuple[IntPoly, ...], ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise InvalidArgumentError(f"Matrix dimension must be >= 1 (got {self.dim}).")
        if len(self.entries) != self.dim or any(
            len(row) != self.dim for row in self.entries
        ):
            raise DimensionMismatchError(
                f"Expected a {self.dim}x{self.dim} grid of entries."
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[IntPoly | int]]) -> PolyMatrix:
        entries = tuple(tuple(_as_intpoly(e) for e in row) for row in rows)
        return cls(len(entries), entries)

    @classmethod
    def identity(cls, dim: int) -> PolyMatrix:
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
        )

    def entry(self, i: int, j: int) -> IntPoly:
        return self.entries[i][j]

    def row(self, i: int) -> tuple[IntPoly, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[IntPoly, ...]:
        return tuple(row[j] for row in self.entries)

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        return mat_mul(self, other)


def identity(dim: int) -> PolyMatrix:
    return PolyMatrix.identity(dim)


def mat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    """Matrix product over Z[x]."""
    if a.dim != b.dim:
        raise DimensionMismatchError(
            f"Cannot multiply {a.dim}x{a.dim} by {b.dim}x{b.dim}."
        )
    return PolyMatrix.from_rows([row_vec_mat(a.row(i), b) for i in range(a.dim)])


def _vec_times_rows(
    vector: Sequence[object],
    rows: Sequence[Sequence[object]],
    zero: object,
    add: Callable,
    mul: Callable,
) -> list:
    dim = len(rows)
    out = [zero] * dim
    for i, vi in enumerate(vector):
        if vi.is_zero:  # type: ignore[attr-defined]
            continue
        row = rows[i]
        for j in range(dim):
            if not row[j].is_zero:  # type: ignore[attr-defined]
                out[j] = add(out[j], mul(vi, row[j]))
    return out


def row_vec_mat(vector: Sequence[IntPoly], m: PolyMatrix) -> list[IntPoly]:
    """Left action v·M of a row vector; dim^2 polynomial products."""
    if len(vector) != m.dim:
        raise DimensionMismatchError(
            f"Row vector of length {len(vector)} cannot act on a {m.dim}x{m.dim} matrix."
        )
    return _vec_times_rows(
        [_as_intpoly(v) for v in vector], m.entries, ZERO, poly_add, poly_mul
    )


def mat_vec(m: PolyMatrix, vector: Sequence[IntPoly]) -> list[IntPoly]:
    """Right action M·v on a column vector."""
    if len(vector) != m.dim:
        raise DimensionMismatchError(
            f"A {m.dim}x{m.dim} matrix cannot act on a column of length {len(vector)}."
        )
    column = [_as_intpoly(v) for v in vector]
    out: list[IntPoly] = []
    for row in m.entries:
        acc = ZERO
        for entry, value in zip(row, column):
            if not entry.is_zero and not value.is_zero:
                acc = poly_add(acc, poly_mul(entry, value))
        out.append(acc)
    return out


def rat_row_vec_mat(
    vector: Sequence[RatPoly], rows: Sequence[Sequence[RatPoly]]
) -> list[RatPoly]:
    """Row-vector action for a square grid of RatPoly entries."""
    if len(vector) != len(rows) or any(len(row) != len(rows) for row in rows):
        raise DimensionMismatchError("Rational row vector and matrix sizes differ.")
    return _vec_times_rows(vector, rows, RAT_ZERO, ratpoly_add, ratpoly_mul)
