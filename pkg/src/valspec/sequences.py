"""Thue-Morse signs, Stern polynomials, and the T_2(n, -1) identity linking them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidArgumentError
from .exactalg import ONE, ZERO, X, IntPoly, PolyMatrix, poly_eval, row_vec_mat
from .padic import to_digits
from .spectra import SpectrumQuery, spectrum


@dataclass(frozen=True)
class SternQuery:
    n: int

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 0:
            raise InvalidArgumentError(
                f"n must be a non-negative integer (got {self.n!r})."
            )


@dataclass(frozen=True)
class SternIdentityReport:
    n: int
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def thue_morse(n: int) -> int:
    """Parity of the number of 1 bits of n."""
    if n < 0:
        raise InvalidArgumentError(f"n must be >= 0 (got {n}).")
    return bin(n).count("1") & 1


def thue_morse_sign(n: int) -> int:
    return -1 if thue_morse(n) else 1


@lru_cache(maxsize=2)
def stern_matrix(bit: int) -> PolyMatrix:
    """A(0) = [[x, 0], [1, 1]], A(1) = [[1, 1], [0, x]]."""
    if bit == 0:
        return PolyMatrix.from_rows([[X, ZERO], [ONE, ONE]])
    if bit == 1:
        return PolyMatrix.from_rows([[ONE, ONE], [ZERO, X]])
    raise InvalidArgumentError(f"Stern matrices are indexed by a bit (got {bit}).")


def stern_poly(n: int) -> IntPoly:
    """S(n, x) = [1 0] A(n_0) A(n_1) ... A(n_l) [0 1]^T; S(0, x) = 0."""
    query = SternQuery(n)
    vector = [ONE, ZERO]
    for bit in to_digits(query.n, 2):
        vector = row_vec_mat(vector, stern_matrix(bit))
    return vector[1]


def stern_diatomic(n: int) -> int:
    """Stern's diatomic s(n), i.e. S(n, 1)."""
    return poly_eval(stern_poly(n), 1)


def check_stern_identity(n: int) -> SternIdentityReport:
    """Compare T_2(n, -1) with (-1)^{t(n)} S(n + 1, -2)."""
    query = SternQuery(n)
    lhs = poly_eval(spectrum(SpectrumQuery(p=2, k=2, n=query.n)), -1)
    rhs = thue_morse_sign(query.n) * poly_eval(stern_poly(query.n + 1), -2)
    return SternIdentityReport(n=query.n, lhs=lhs, rhs=rhs)
