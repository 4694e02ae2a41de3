import math
import random
from fractions import Fraction

import pytest

from valspec.errors import (
    InvalidArgumentError,
    InvalidModulusError,
    UnsupportedQueryError,
)
from valspec.exactalg import (
    ONE,
    X,
    ZERO,
    IntPoly,
    PolyMatrix,
    RatPoly,
    poly_eval,
    row_vec_mat,
)
from valspec.padic import kummer_binomial, kummer_multinomial, nu, to_digits
from valspec.spectra import (
    SpectrumQuery,
    coefficient,
    cpk,
    cpk_by_power,
    cpk_row,
    fine_count,
    fine_count_by_subwords,
    multinomial_fine_count,
    spectrum,
    spectrum_by_recurrence,
    spectrum_normalized,
    spectrum_normalized_by_product,
    spectrum_state,
    state_component_expected,
    t_prime,
    transition_matrix,
)


def P(*coeffs: int) -> IntPoly:
    return IntPoly(coeffs)


# T_2(n, x) for n = 0..15, ascending coefficients.
BINARY_TABLE = {
    0: P(1),
    1: P(2),
    2: P(2, 1),
    3: P(4),
    4: P(2, 1, 2),
    5: P(4, 2),
    6: P(4, 2, 1),
    7: P(8),
    8: P(2, 1, 2, 4),
    9: P(4, 2, 4),
    10: P(4, 4, 1, 2),
    11: P(8, 4),
    12: P(4, 2, 5, 2),
    13: P(8, 4, 2),
    14: P(8, 4, 2, 1),
    15: P(16),
}


def _binomial_spectrum_by_kummer(n: int, p: int) -> IntPoly:
    coeffs = [0] * (n + 1)
    for m in range(n + 1):
        coeffs[kummer_binomial(n, m, p)] += 1
    return IntPoly(tuple(coeffs))


def test_spectrum_query_validates_inputs():
    with pytest.raises(InvalidModulusError):
        SpectrumQuery(p=4, k=2, n=3)
    with pytest.raises(InvalidArgumentError):
        SpectrumQuery(p=2, k=0, n=3)
    with pytest.raises(InvalidArgumentError):
        SpectrumQuery(p=2, k=2, n=-1)


@pytest.mark.parametrize("n, expected", sorted(BINARY_TABLE.items()))
def test_spectrum_binary_table(n, expected):
    assert spectrum(SpectrumQuery(p=2, k=2, n=n)) == expected


@pytest.mark.parametrize("p, k", [(2, 1), (3, 2), (5, 4), (7, 3)])
def test_spectrum_of_zero_is_one(p, k):
    assert spectrum(SpectrumQuery(p=p, k=k, n=0)) == ONE


def test_spectrum_multinomial_small_case():
    assert spectrum(SpectrumQuery(p=2, k=3, n=2)) == P(3, 3)


def test_spectrum_k_one_is_constant_one():
    for n in range(20):
        assert spectrum(SpectrumQuery(p=3, k=1, n=n)) == ONE


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_spectrum_matches_kummer_histogram(p):
    for n in range(80):
        assert spectrum(SpectrumQuery(p=p, k=2, n=n)) == _binomial_spectrum_by_kummer(n, p)


def test_spectrum_multinomial_matches_kummer_histogram():
    for p in (2, 3):
        for n in range(15):
            coeffs = [0] * (2 * n + 1)
            for a in range(n + 1):
                for b in range(n + 1 - a):
                    coeffs[kummer_multinomial((a, b, n - a - b), p)] += 1
            assert spectrum(SpectrumQuery(p=p, k=3, n=n)) == IntPoly(tuple(coeffs))


@pytest.mark.parametrize("p, k", [(2, 2), (3, 2), (5, 3), (2, 4)])
def test_spectrum_mass_is_composition_count(p, k):
    for n in range(40):
        assert spectrum(SpectrumQuery(p=p, k=k, n=n))(1) == math.comb(n + k - 1, k - 1)


def test_spectrum_handles_huge_n():
    n = 2**3000 - 1
    # every binomial in row 2^m - 1 is odd
    assert spectrum(SpectrumQuery(p=2, k=2, n=n)) == P(2**3000)


@pytest.mark.parametrize(
    "d, expected",
    [
        (0, [[1, 18, 6], [0, P(0, 15), P(0, 10)], [0, P(0, 0, 10), P(0, 0, 15)]]),
        (2, [[6, 18, 1], [P(0, 3), P(0, 19), P(0, 3)], [P(0, 0, 1), P(0, 0, 18), P(0, 0, 6)]]),
        (3, [[10, 15, 0], [P(0, 6), P(0, 18), X], [P(0, 0, 3), P(0, 0, 19), P(0, 0, 3)]]),
        (1, [[3, 19, 3], [X, P(0, 18), P(0, 6)], [0, P(0, 0, 15), P(0, 0, 10)]]),
        (4, [[15, 10, 0], [P(0, 10), P(0, 15), 0], [P(0, 0, 6), P(0, 0, 18), P(0, 0, 1)]]),
    ],
)
def test_transition_matrix_p5_k3(d, expected):
    assert transition_matrix(5, 3, d) == PolyMatrix.from_rows(expected)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_transition_matrix_binomial_closed_form(p):
    for d in range(p):
        assert transition_matrix(p, 2, d) == PolyMatrix.from_rows(
            [[d + 1, p - d - 1], [P(0, d), P(0, p - d)]]
        )
    assert transition_matrix(2, 2, 1) == PolyMatrix.from_rows([[2, 0], [X, X]])


def test_transition_matrix_rejects_bad_digit():
    with pytest.raises(InvalidArgumentError):
        transition_matrix(3, 2, 3)


def test_cpk_values():
    assert cpk(5, 3, 6) == 19
    assert cpk(5, 3, -1) == 0
    assert cpk(5, 3, 13) == 0
    assert cpk(5, 3, 15) == cpk(5, 3, 16) == 0
    assert cpk(5, 4, 8) == 85


def test_cpk_rows_of_p5_triangle():
    assert cpk_row(5, 0) == (1,)
    assert cpk_row(5, 1) == (1, 1, 1, 1, 1)
    assert cpk_row(5, 2) == (1, 2, 3, 4, 5, 4, 3, 2, 1)
    assert cpk_row(5, 3) == (1, 3, 6, 10, 15, 18, 19, 18, 15, 10, 6, 3, 1)
    assert cpk_row(5, 4) == (
        1, 4, 10, 20, 35, 52, 68, 80, 85, 80, 68, 52, 35, 20, 10, 4, 1,
    )


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_cpk_rows_are_symmetric_and_sum_to_powers(p):
    for k in range(7):
        row = cpk_row(p, k)
        assert row == tuple(reversed(row))
        assert sum(row) == p**k
        for n in range(-2, len(row) + 2):
            assert cpk(p, k, n) == cpk_by_power(p, k, n)


def test_cpk_of_binomial_case():
    for p in (2, 3, 5):
        for n in range(2 * p - 1):
            assert cpk(p, 2, n) == min(n + 1, 2 * p - 1 - n)
        assert cpk(p, 2, 2 * p - 1) == 0


@pytest.mark.parametrize("n, p, expected", [(8, 2, 2), (0, 3, 1), (19, 5, 20)])
def test_fine_count(n, p, expected):
    assert fine_count(n, p) == expected
    assert fine_count_by_subwords(n, p) == expected


def test_fine_count_equals_constant_term():
    for p in (2, 3, 5):
        for n in range(200):
            t = spectrum(SpectrumQuery(p=p, k=2, n=n))
            assert coefficient(t, 0) == fine_count(n, p)
            assert poly_eval(t, 0) == fine_count(n, p)


@pytest.mark.parametrize("n, p, k, expected", [(8, 2, 2, 2), (0, 5, 4, 1), (2, 2, 3, 3)])
def test_multinomial_fine_count(n, p, k, expected):
    assert multinomial_fine_count(n, p, k) == expected


def test_spectrum_state_examples():
    assert spectrum_state(SpectrumQuery(p=3, k=4, n=0)).components == (ONE, ZERO, ZERO, ZERO)
    assert spectrum_state(SpectrumQuery(p=2, k=2, n=1)).components == (P(2), X)
    vector = spectrum_state(SpectrumQuery(p=2, k=2, n=4))
    assert vector[0] == BINARY_TABLE[4]
    assert vector[1] == P(0, 0, 0, 4)
    assert vector.k == 2


@pytest.mark.parametrize("p, k", [(2, 2), (3, 2), (2, 3), (5, 3), (3, 4)])
def test_spectrum_state_matches_component_definition(p, k):
    for n in range(30):
        q = SpectrumQuery(p=p, k=k, n=n)
        vector = spectrum_state(q)
        assert vector[0] == spectrum(q)
        for i in range(1, k):
            assert vector[i] == state_component_expected(q, i)


def test_state_component_expected_rejects_bad_index():
    with pytest.raises(InvalidArgumentError):
        state_component_expected(SpectrumQuery(p=2, k=2, n=3), 2)


def test_t_prime():
    assert t_prime(0, 2) == ZERO
    for n in range(1, 40):
        expected = IntPoly((0,) * (nu(n, 3) + 1) + spectrum(SpectrumQuery(p=3, k=2, n=n - 1)).coeffs)
        assert t_prime(n, 3) == expected


@pytest.mark.parametrize(
    "p, n, expected",
    [(2, 9, P(4, 2, 4)), (2, 0, ONE), (2, 12, P(4, 2, 5, 2))],
)
def test_spectrum_by_recurrence_examples(p, n, expected):
    assert spectrum_by_recurrence(SpectrumQuery(p=p, k=2, n=n)) == expected


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_spectrum_by_recurrence_matches_matrix_path(p):
    for n in range(300):
        q = SpectrumQuery(p=p, k=2, n=n)
        assert spectrum_by_recurrence(q) == spectrum(q)


def test_spectrum_by_recurrence_handles_many_digits():
    n = 3**700 + 12345
    q = SpectrumQuery(p=3, k=2, n=n)
    assert spectrum_by_recurrence(q) == spectrum(q)


def test_spectrum_by_recurrence_is_binomial_only():
    with pytest.raises(UnsupportedQueryError):
        spectrum_by_recurrence(SpectrumQuery(p=2, k=3, n=4))


def test_spectrum_normalized_examples():
    assert spectrum_normalized(SpectrumQuery(p=2, k=2, n=8)) == RatPoly(
        (Fraction(1), Fraction(1, 2), Fraction(1), Fraction(2))
    )
    assert spectrum_normalized(SpectrumQuery(p=2, k=2, n=3)) == RatPoly((Fraction(1),))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_spectrum_normalized_by_product_agrees(p):
    for n in range(150):
        q = SpectrumQuery(p=p, k=2, n=n)
        normalized = spectrum_normalized(q)
        assert normalized(0) == 1
        assert spectrum_normalized_by_product(q) == normalized


def test_spectrum_normalized_is_binomial_only():
    with pytest.raises(UnsupportedQueryError):
        spectrum_normalized(SpectrumQuery(p=2, k=3, n=4))


def test_coefficient():
    t_12 = BINARY_TABLE[12]
    assert [coefficient(t_12, a) for a in range(5)] == [4, 2, 5, 2, 0]
    with pytest.raises(InvalidArgumentError):
        coefficient(t_12, -1)


def _thread(p: int, k: int, digits) -> IntPoly:
    vector = [ONE] + [ZERO] * (k - 1)
    for d in digits:
        vector = row_vec_mat(vector, transition_matrix(p, k, d))
    return vector[0]


def test_leading_zero_digits_and_degree_bound_on_random_queries():
    rng = random.Random(12)
    for _ in range(2000):
        p = rng.choice([2, 3, 5, 7])
        k = rng.randint(1, 4)
        n = rng.randrange(p ** rng.randint(1, 12))
        digits = to_digits(n, p).digits
        expected = spectrum(SpectrumQuery(p=p, k=k, n=n))
        assert _thread(p, k, digits + (0,) * rng.randint(1, 3)) == expected
        if k == 2 and n >= 1:
            assert expected.degree <= len(digits) - 1


def test_thousand_digit_binary_n():
    rng = random.Random(0)
    n = rng.randrange(2**999, 2**1000)
    t = spectrum(SpectrumQuery(p=2, k=2, n=n))
    assert t(1) == n + 1
    assert t.degree <= 999
