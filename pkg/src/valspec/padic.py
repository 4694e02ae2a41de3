"""
Base-p digits and the valuation theorems built on them.

Digit strings are little-endian (least-significant digit first) because the
digit products consume n_0 first; render() reverses them for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import InvalidArgumentError, InvalidModulusError, UndefinedValuationError

IntTuple = tuple[int, ...]


@lru_cache(maxsize=256)
def is_prime(p: int) -> bool:
    """Deterministic trial division."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def require_prime(p: int) -> int:
    """Return p unchanged, or raise InvalidModulusError when p is not a prime."""
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise InvalidModulusError(f"Modulus must be a prime >= 2 (got {p!r}).")
    return p


def _require_non_negative(value: int, label: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise InvalidArgumentError(f"{label} must be a non-negative integer (got {value!r}).")
    return value


@dataclass(frozen=True)
class DigitString:
    """Canonical little-endian base-p digits; 0 is the empty string."""

    p: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        require_prime(self.p)
        if any(not 0 <= d < self.p for d in self.digits):
            raise InvalidArgumentError(
                f"Digits must lie in [0, {self.p - 1}] (got {self.digits})."
            )
        if self.digits and self.digits[-1] == 0:
            raise InvalidArgumentError("Digit string has a most-significant zero.")

    @property
    def value(self) -> int:
        result = 0
        for d in reversed(self.digits):
            result = result * self.p + d
        return result

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def render(self) -> str:
        """Most-significant-first rendering; digits above 9 are bracketed."""
        if not self.digits:
            return "0"
        if self.p <= 10:
            return "".join(str(d) for d in reversed(self.digits))
        return "".join(f"[{d}]" for d in reversed(self.digits))


def to_digits(n: int, p: int) -> DigitString:
    require_prime(p)
    _require_non_negative(n, "n")
    digits: list[int] = []
    while n:
        n, d = divmod(n, p)
        digits.append(d)
    return DigitString(p, tuple(digits))


def nu(n: int, p: int) -> int:
    """Exponent of the largest power of p dividing n (n >= 1)."""
    require_prime(p)
    if isinstance(n, int) and n == 0:
        raise UndefinedValuationError("The p-adic valuation of 0 is undefined.")
    _require_non_negative(n, "n")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def sigma(n: int, p: int) -> int:
    """Sum of the base-p digits of n."""
    return sum(to_digits(n, p).digits)


def subword_count(n: int, p: int, word: Sequence[int]) -> int:
    """
    Count (overlapping) occurrences of word in the most-significant-first base-p
    representation of n. The representation of 0 is the single digit "0".
    """
    word = tuple(word)
    if not word:
        raise InvalidArgumentError("Subword must be non-empty.")
    if any(not 0 <= d < p for d in word):
        raise InvalidArgumentError(f"Subword digits must lie in [0, {p - 1}].")
    digits = to_digits(n, p).digits or (0,)
    text = tuple(reversed(digits))
    width = len(word)
    return sum(
        1 for start in range(len(text) - width + 1) if text[start : start + width] == word
    )


def legendre(m: int, p: int) -> int:
    """nu_p(m!) = (m - sigma_p(m)) / (p - 1)."""
    _require_non_negative(m, "m")
    return (m - sigma(m, p)) // (p - 1)


def factorial_quotient_valuation(top: int, bottom: int, p: int) -> int:
    """nu_p(top! / bottom!) for 0 <= bottom <= top."""
    if not 0 <= bottom <= top:
        raise InvalidArgumentError(
            f"Factorial quotient needs 0 <= bottom <= top (got {top}, {bottom})."
        )
    return legendre(top, p) - legendre(bottom, p)


def carry_count(a: int, b: int, p: int) -> int:
    """Number of carries when adding a and b in base p."""
    require_prime(p)
    _require_non_negative(a, "a")
    _require_non_negative(b, "b")
    carries = 0
    carry = 0
    while a or b or carry:
        a, da = divmod(a, p)
        b, db = divmod(b, p)
        carry = 1 if da + db + carry >= p else 0
        carries += carry
    return carries


def kummer_binomial(n: int, m: int, p: int) -> int:
    """nu_p(C(n, m)) by carry counting, checked against the digit-sum form."""
    _require_non_negative(n, "n")
    _require_non_negative(m, "m")
    if m > n:
        raise InvalidArgumentError(f"Binomial needs 0 <= m <= n (got n={n}, m={m}).")
    carries = carry_count(m, n - m, p)
    digit_form, remainder = divmod(sigma(m, p) + sigma(n - m, p) - sigma(n, p), p - 1)
    assert remainder == 0 and carries == digit_form, (n, m, p, carries, digit_form)
    return carries


def validate_tuple(m: Sequence[int]) -> IntTuple:
    entries = tuple(m)
    for entry in entries:
        _require_non_negative(entry, "Tuple entry")
    return entries


def kummer_multinomial(m: Sequence[int], p: int) -> int:
    """nu_p(mult m) = (total sigma_p(m) - sigma_p(total m)) / (p - 1)."""
    entries = validate_tuple(m)
    require_prime(p)
    numerator = sum(sigma(e, p) for e in entries) - sigma(sum(entries), p)
    quotient, remainder = divmod(numerator, p - 1)
    assert remainder == 0, (entries, p)
    return quotient


@dataclass(frozen=True)
class ValuationRelationReport:
    """Outcome of checking the digit-shift valuation relation for one tuple."""

    m: IntTuple
    p: int
    n: int
    d: int
    i: int
    j: int
    residue_total_ok: bool
    j_in_range: bool
    lhs: int
    rhs: int

    @property
    def identity_holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def passed(self) -> bool:
        return self.residue_total_ok and self.j_in_range and self.identity_holds


def check_valuation_relation(
    m: Sequence[int], p: int, n: int, d: int, i: int
) -> ValuationRelationReport:
    """
    For total(m) = p*n + d - i, with j = n - total(floor(m/p)), check that
    total(m mod p) = p*j + d - i, 0 <= j <= k-1, and
    nu_p((pn+d)!/(pn+d-i)!) + nu_p(mult m)
        = nu_p(n!/(n-j)!) + nu_p(mult floor(m/p)) + j.
    """
    entries = validate_tuple(m)
    require_prime(p)
    _require_non_negative(n, "n")
    k = len(entries)
    if not 0 <= d < p:
        raise InvalidArgumentError(f"Digit d must lie in [0, {p - 1}] (got {d}).")
    if not 0 <= i < k:
        raise InvalidArgumentError(f"Index i must lie in [0, {k - 1}] (got {i}).")
    top = p * n + d
    if top - i < 0 or sum(entries) != top - i:
        raise InvalidArgumentError(
            f"Tuple total {sum(entries)} does not equal p*n + d - i = {top - i}."
        )

    quotients = tuple(e // p for e in entries)
    residues = tuple(e % p for e in entries)
    j = n - sum(quotients)
    residue_total_ok = sum(residues) == p * j + d - i
    j_in_range = 0 <= j <= k - 1

    lhs = factorial_quotient_valuation(top, top - i, p) + kummer_multinomial(entries, p)
    if j_in_range:
        rhs = (
            factorial_quotient_valuation(n, n - j, p)
            + kummer_multinomial(quotients, p)
            + j
        )
    else:
        rhs = -1
    return ValuationRelationReport(
        m=entries,
        p=p,
        n=n,
        d=d,
        i=i,
        j=j,
        residue_total_ok=residue_total_ok,
        j_in_range=j_in_range,
        lhs=lhs,
        rhs=rhs,
    )
