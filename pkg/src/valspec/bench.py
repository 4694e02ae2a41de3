"""
Timing harness: the digit-product path against brute-force enumeration.

Sampled n values come from a seeded generator so reruns time the same inputs.
"""

from __future__ import annotations

import csv
import random
import statistics
import time
from dataclasses import dataclass
from typing import IO, Iterable

from . import state
from .config import BenchSettings
from .errors import InvalidArgumentError
from .oracle import composition_count, oracle_spectrum
from .spectra import SpectrumQuery, spectrum

BENCH_HEADER = ["digits", "trial", "n", "matrix_median_seconds", "oracle_seconds"]
SKIPPED = "skipped"


@dataclass(frozen=True)
class BenchRow:
    digits: int
    trial: int
    n: int
    matrix_median_seconds: float
    oracle_seconds: float | None

    def as_csv_row(self) -> list[str]:
        oracle = SKIPPED if self.oracle_seconds is None else f"{self.oracle_seconds:.6g}"
        return [
            str(self.digits),
            str(self.trial),
            str(self.n),
            f"{self.matrix_median_seconds:.6g}",
            oracle,
        ]


def sample_n(rng: random.Random, p: int, digits: int) -> int:
    """A uniform n with exactly `digits` base-p digits (leading digit nonzero)."""
    if digits < 1:
        raise InvalidArgumentError(f"Digit count must be >= 1 (got {digits}).")
    low = p ** (digits - 1)
    high = p**digits - 1
    return rng.randint(low, high)


def _time_once(q: SpectrumQuery, compute) -> float:
    start = time.perf_counter()
    compute(q)
    return time.perf_counter() - start


def run_bench(settings: BenchSettings) -> list[BenchRow]:
    """One row per (digit count, trial); the matrix path is timed `repeat` times."""
    rng = random.Random(settings.seed)
    rows: list[BenchRow] = []
    for digits in settings.digits:
        for trial in range(settings.trials):
            n = sample_n(rng, settings.p, digits)
            q = SpectrumQuery(p=settings.p, k=settings.k, n=n)
            timings = [_time_once(q, spectrum) for _ in range(settings.repeat)]
            median = statistics.median(timings)

            oracle_seconds: float | None = None
            if composition_count(settings.k, n) <= settings.oracle_budget:
                oracle_seconds = _time_once(
                    q, lambda query: oracle_spectrum(query, budget=settings.oracle_budget)
                )
            else:
                state.log.debug(
                    "Oracle skipped for digits=%s trial=%s: C(n+%s, %s) exceeds budget %s.",
                    digits,
                    trial,
                    settings.k - 1,
                    settings.k - 1,
                    settings.oracle_budget,
                )

            state.log.info(
                "bench digits=%s trial=%s matrix_median=%.6gs oracle=%s",
                digits,
                trial,
                median,
                SKIPPED if oracle_seconds is None else f"{oracle_seconds:.6g}s",
            )
            rows.append(
                BenchRow(
                    digits=digits,
                    trial=trial,
                    n=n,
                    matrix_median_seconds=median,
                    oracle_seconds=oracle_seconds,
                )
            )
    return rows


def write_bench_csv(rows: Iterable[BenchRow], stream: IO[str]) -> int:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    count = 0
    for row in rows:
        writer.writerow(row.as_csv_row())
        count += 1
    return count
