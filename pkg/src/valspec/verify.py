"""
Verification suites: sweep n (and tuples, for the valuation relation) and
compare every fast path with an independent computation.

Each suite stops at its first mismatch and returns it as a Counterexample so
the CLI can print it verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import state
from .config import VerifySettings
from .constants import VERIFY_SUITES
from .errors import EnumerationTooLargeError
from .exactalg import IntPoly, poly_add, poly_eval, poly_scale, poly_shift
from .oracle import composition_count, iter_compositions, oracle_spectrum
from .output import format_poly
from .padic import check_valuation_relation, nu
from .sequences import check_stern_identity, stern_diatomic, thue_morse
from .spectra import (
    SpectrumQuery,
    coefficient,
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
)

# Multinomial sweeps enumerate C(n + k - 1, k - 1) tuples per n, so they stop here.
MULTINOMIAL_LIMIT = 120


@dataclass
class Counterexample:
    suite: str
    p: int | None
    k: int | None
    n: int | None
    expected: str
    actual: str
    detail: str = ""

    def describe(self) -> str:
        text = (
            f"FAILED suite={self.suite} p={self.p} k={self.k} n={self.n}\n"
            f"  expected: {self.expected}\n"
            f"  actual:   {self.actual}"
        )
        if self.detail:
            text += f"\n  detail:   {self.detail}"
        return text


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    skipped: int = 0
    failure: Counterexample | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None


class _SuiteFailed(Exception):
    def __init__(self, counterexample: Counterexample) -> None:
        super().__init__(counterexample.describe())
        self.counterexample = counterexample


def _expect(
    result: SuiteResult,
    expected: object,
    actual: object,
    *,
    p: int | None = None,
    k: int | None = None,
    n: int | None = None,
    detail: str = "",
) -> None:
    if expected == actual:
        result.checks += 1
        return

    def show(value: object) -> str:
        if isinstance(value, IntPoly):
            return format_poly(value)
        return str(value)

    raise _SuiteFailed(
        Counterexample(
            suite=result.name,
            p=p,
            k=k,
            n=n,
            expected=show(expected),
            actual=show(actual),
            detail=detail,
        )
    )


def _multinomial_limit(settings: VerifySettings) -> int:
    return min(settings.limit, MULTINOMIAL_LIMIT)


def suite_oracle(settings: VerifySettings, result: SuiteResult) -> None:
    """Matrix product against brute-force enumeration (binomial, then multinomial)."""
    sweeps = [(2, settings.limit)] + [
        (k, _multinomial_limit(settings)) for k in settings.k_values if k != 2
    ]
    for p in settings.primes:
        for k, limit in sweeps:
            state.log.info("oracle: p=%s k=%s n<=%s", p, k, limit)
            for n in range(limit + 1):
                q = SpectrumQuery(p=p, k=k, n=n)
                try:
                    expected = oracle_spectrum(q, budget=settings.oracle_budget)
                except EnumerationTooLargeError as exc:
                    state.log.warning("oracle: skipping p=%s k=%s n=%s: %s", p, k, n, exc)
                    state.stats.record_warning()
                    result.skipped += 1
                    continue
                _expect(result, expected, spectrum(q), p=p, k=k, n=n)


def suite_recurrence(settings: VerifySettings, result: SuiteResult) -> None:
    """Scalar recurrence path against the matrix path, plus both digit recurrences."""
    for p in settings.primes:
        state.log.info("recurrence: p=%s n<=%s", p, settings.limit)
        for n in range(settings.limit + 1):
            q = SpectrumQuery(p=p, k=2, n=n)
            _expect(result, spectrum(q), spectrum_by_recurrence(q), p=p, k=2, n=n)

        for n in range(settings.limit // p + 1):
            t_n = spectrum(SpectrumQuery(p=p, k=2, n=n))
            t_prev_shifted = (
                poly_shift(spectrum(SpectrumQuery(p=p, k=2, n=n - 1)), nu(n, p) + 1)
                if n >= 1
                else IntPoly()
            )
            for d in range(p):
                m = p * n + d
                if m > settings.limit:
                    break
                # T(pn+d) = (d+1) T(n) + (p-d-1) x^{nu(n)+1} T(n-1)
                rhs_one = poly_add(
                    poly_scale(t_n, d + 1), poly_scale(t_prev_shifted, p - d - 1)
                )
                _expect(
                    result,
                    rhs_one,
                    spectrum(SpectrumQuery(p=p, k=2, n=m)),
                    p=p,
                    k=2,
                    n=m,
                    detail="carry-scaling recurrence",
                )
                # x^{nu(pn+d)+1} T(pn+d-1) = d x T(n) + (p-d) x x^{nu(n)+1} T(n-1)
                lhs_two = (
                    poly_shift(spectrum(SpectrumQuery(p=p, k=2, n=m - 1)), nu(m, p) + 1)
                    if m >= 1
                    else IntPoly()
                )
                rhs_two = poly_shift(
                    poly_add(poly_scale(t_n, d), poly_scale(t_prev_shifted, p - d)), 1
                )
                _expect(
                    result,
                    rhs_two,
                    lhs_two,
                    p=p,
                    k=2,
                    n=m,
                    detail="shifted-predecessor recurrence",
                )


def suite_lemma(settings: VerifySettings, result: SuiteResult) -> None:
    """Valuation relation for every tuple with total <= limit and admissible (d, i)."""
    for p in settings.primes:
        for k in settings.k_values:
            state.log.info("lemma: p=%s k=%s total<=%s", p, k, settings.limit)
            for total in range(settings.limit + 1):
                for m in iter_compositions(k, total):
                    for i in range(k):
                        for d in range(p):
                            top = total + i
                            if (top - d) % p or top - d < 0:
                                continue
                            report = check_valuation_relation(
                                m, p, (top - d) // p, d, i
                            )
                            _expect(
                                result,
                                True,
                                report.passed,
                                p=p,
                                k=k,
                                n=report.n,
                                detail=f"m={m} d={d} i={i} j={report.j} "
                                f"lhs={report.lhs} rhs={report.rhs}",
                            )


def suite_stern(settings: VerifySettings, result: SuiteResult) -> None:
    """T_2(n, -1) = (-1)^{t(n)} S(n + 1, -2), with the Thue-Morse and diatomic recurrences."""
    state.log.info("stern: n<=%s", settings.limit)
    for n in range(settings.limit + 1):
        report = check_stern_identity(n)
        recurrences_hold = (
            thue_morse(2 * n) == thue_morse(n)
            and thue_morse(2 * n + 1) == 1 - thue_morse(n)
            and stern_diatomic(2 * n) == stern_diatomic(n)
            and stern_diatomic(2 * n + 1) == stern_diatomic(n) + stern_diatomic(n + 1)
        )
        _expect(
            result,
            (report.lhs, True),
            (report.rhs, recurrences_hold),
            p=2,
            k=2,
            n=n,
            detail="(T_2(n,-1), recurrences) vs ((-1)^t(n) S(n+1,-2), True)",
        )


def suite_fine(settings: VerifySettings, result: SuiteResult) -> None:
    """Constant terms against Fine's products, and T(n, 1) against the tuple count."""
    for p in settings.primes:
        state.log.info("fine: p=%s n<=%s", p, settings.limit)
        for n in range(settings.limit + 1):
            t = spectrum(SpectrumQuery(p=p, k=2, n=n))
            f = fine_count(n, p)
            _expect(result, f, coefficient(t, 0), p=p, k=2, n=n, detail="constant term")
            _expect(result, f, fine_count_by_subwords(n, p), p=p, k=2, n=n, detail="subword product")
            _expect(result, n + 1, poly_eval(t, 1), p=p, k=2, n=n, detail="T(n, 1)")
            for d in range(p):
                _expect(
                    result,
                    (d + 1) * f,
                    fine_count(p * n + d, p),
                    p=p,
                    k=2,
                    n=p * n + d,
                    detail="F(pn+d) = (d+1) F(n)",
                )
        for k in settings.k_values:
            for n in range(_multinomial_limit(settings) + 1):
                t = spectrum(SpectrumQuery(p=p, k=k, n=n))
                _expect(
                    result,
                    multinomial_fine_count(n, p, k),
                    coefficient(t, 0),
                    p=p,
                    k=k,
                    n=n,
                    detail="multinomial constant term",
                )
                _expect(
                    result,
                    composition_count(k, n),
                    poly_eval(t, 1),
                    p=p,
                    k=k,
                    n=n,
                    detail="T(n, 1)",
                )


def suite_carlitz(settings: VerifySettings, result: SuiteResult) -> None:
    """
    Carlitz's coefficient recurrences, with theta_a(n) = [x^a] T(n) and
    psi_{a-1}(n-1) = [x^a] T'(n).
    """
    for p in settings.primes:
        state.log.info("carlitz: p=%s n<=%s", p, settings.limit)
        for n in range(settings.limit // p + 1):
            theta = spectrum(SpectrumQuery(p=p, k=2, n=n))
            shifted = t_prime(n, p)
            following = t_prime(n + 1, p)
            for d in range(p):
                m = p * n + d
                big_theta = spectrum(SpectrumQuery(p=p, k=2, n=m))
                big_prime = t_prime(m, p)
                next_prime = t_prime(m + 1, p)
                top = max(len(big_theta.coeffs), len(big_prime.coeffs), len(next_prime.coeffs)) + 1
                for a in range(top + 1):
                    _expect(
                        result,
                        (d + 1) * theta.coefficient(a) + (p - d - 1) * shifted.coefficient(a),
                        big_theta.coefficient(a),
                        p=p,
                        k=2,
                        n=m,
                        detail=f"theta_{a}(pn+d)",
                    )
                    _expect(
                        result,
                        d * theta.coefficient(a) + (p - d) * shifted.coefficient(a),
                        big_prime.coefficient(a + 1),
                        p=p,
                        k=2,
                        n=m,
                        detail=f"psi_{a}(pn+d-1)",
                    )
                    if d <= p - 2:
                        expected = (d + 1) * theta.coefficient(a) + (
                            p - d - 1
                        ) * shifted.coefficient(a)
                    else:
                        expected = p * following.coefficient(a)
                    _expect(
                        result,
                        expected,
                        next_prime.coefficient(a + 1),
                        p=p,
                        k=2,
                        n=m,
                        detail=f"psi_{a}(pn+d)",
                    )


def suite_state(settings: VerifySettings, result: SuiteResult) -> None:
    """Each state component against the definition of T_{p,k,i}."""
    for p in settings.primes:
        for k in [2] + [k for k in settings.k_values if k != 2]:
            limit = settings.limit if k == 2 else _multinomial_limit(settings)
            state.log.info("state: p=%s k=%s n<=%s", p, k, limit)
            for n in range(limit + 1):
                q = SpectrumQuery(p=p, k=k, n=n)
                vector = spectrum_state(q)
                _expect(result, spectrum(q), vector[0], p=p, k=k, n=n, detail="component 0")
                for i in range(1, k):
                    _expect(
                        result,
                        state_component_expected(q, i),
                        vector[i],
                        p=p,
                        k=k,
                        n=n,
                        detail=f"component {i}",
                    )


def suite_normalized(settings: VerifySettings, result: SuiteResult) -> None:
    """Normalized spectrum by division against the normalized-matrix product."""
    for p in settings.primes:
        state.log.info("normalized: p=%s n<=%s", p, settings.limit)
        for n in range(settings.limit + 1):
            q = SpectrumQuery(p=p, k=2, n=n)
            divided = spectrum_normalized(q)
            _expect(result, divided, spectrum_normalized_by_product(q), p=p, k=2, n=n)
            _expect(result, 1, divided(0), p=p, k=2, n=n, detail="value at x = 0")


SUITES: dict[str, Callable[[VerifySettings, SuiteResult], None]] = {
    "oracle": suite_oracle,
    "recurrence": suite_recurrence,
    "lemma": suite_lemma,
    "stern": suite_stern,
    "fine": suite_fine,
    "carlitz": suite_carlitz,
    "state": suite_state,
    "normalized": suite_normalized,
}
assert tuple(SUITES) == VERIFY_SUITES


def run_suite(name: str, settings: VerifySettings) -> SuiteResult:
    """Run one suite, recording its outcome on the shared RunStats."""
    result = SuiteResult(name=name)
    try:
        SUITES[name](settings, result)
    except _SuiteFailed as failed:
        result.failure = failed.counterexample
        state.log.error("Suite %s failed after %s checks.", name, result.checks)
        state.stats.record_error(f"verify:{name}", failed.counterexample.describe())
    state.stats.record_checks(result.checks, 0 if result.passed else 1)
    state.log.info(
        "Suite %s: %s checks passed, %s skipped.", name, result.checks, result.skipped
    )
    return result


def run_suites(names: list[str], settings: VerifySettings) -> list[SuiteResult]:
    """Run suites in order, stopping after the first failing one."""
    results: list[SuiteResult] = []
    for name in names:
        result = run_suite(name, settings)
        results.append(result)
        if not result.passed:
            break
    return results
