"""
Output records and their pretty, JSON and CSV renderings.

All big values travel as decimal strings so JSON consumers never truncate them
to 64-bit numbers; nothing here ever produces a float.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Any, Iterable, Mapping, Sequence

from .exactalg import IntPoly, RatPoly


@dataclass(frozen=True)
class OutputRecord:
    """One spectrum row: n, p, k, ascending coefficients and optional evaluations."""

    n: str
    p: int
    k: int
    coeffs: tuple[str, ...]
    evaluations: dict[str, str] | None = field(default=None)

    @classmethod
    def from_poly(
        cls,
        *,
        n: int,
        p: int,
        k: int,
        poly: IntPoly | RatPoly,
        evaluations: Mapping[Fraction, Fraction | int] | None = None,
    ) -> OutputRecord:
        evaluated = None
        if evaluations is not None:
            evaluated = {str(x): str(Fraction(v)) for x, v in evaluations.items()}
        return cls(
            n=str(n),
            p=p,
            k=k,
            coeffs=tuple(str(c) for c in poly.coeffs),
            evaluations=evaluated,
        )

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "n": self.n,
            "p": self.p,
            "k": self.k,
            "coeffs": list(self.coeffs),
        }
        if self.evaluations is not None:
            data["evaluations"] = dict(self.evaluations)
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> OutputRecord:
        try:
            evaluations = data.get("evaluations")
            return cls(
                n=str(data["n"]),
                p=int(data["p"]),
                k=int(data["k"]),
                coeffs=tuple(str(c) for c in data["coeffs"]),
                evaluations=(
                    {str(x): str(v) for x, v in evaluations.items()}
                    if evaluations is not None
                    else None
                ),
            )
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ValueError(f"Malformed spectrum record: {exc}") from exc

    def as_poly(self) -> IntPoly:
        """Parse integer coefficients back into an IntPoly."""
        return IntPoly(tuple(int(c) for c in self.coeffs))


def record_to_json(record: OutputRecord) -> str:
    return json.dumps(record.to_dict())


def record_from_json(text: str) -> OutputRecord:
    return OutputRecord.from_dict(json.loads(text))


def _monomial(power: int) -> str:
    if power == 0:
        return ""
    if power == 1:
        return "x"
    return f"x^{power}"


def format_poly(poly: IntPoly | RatPoly | Sequence[int | Fraction]) -> str:
    """Descending powers, unit coefficients omitted: '4 x^3 + 2 x^2 + x + 2'."""
    coeffs = poly.coeffs if isinstance(poly, (IntPoly, RatPoly)) else tuple(poly)
    parts: list[str] = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if not c:
            continue
        magnitude = abs(c)
        mono = _monomial(power)
        if not mono:
            body = str(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{magnitude} {mono}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"


def format_record_pretty(record: OutputRecord, with_n: bool = False) -> str:
    coeffs = [Fraction(c) for c in record.coeffs]
    text = format_poly(coeffs)
    if record.evaluations:
        evals = ", ".join(f"x={x}: {v}" for x, v in record.evaluations.items())
        text = f"{text}  [{evals}]"
    return f"{record.n} | {text}" if with_n else text


def csv_header(max_degree: int, *, component: bool = False) -> list[str]:
    lead = ["n", "p", "k", "component", "degree"] if component else ["n", "p", "k", "degree"]
    return lead + [f"coeff_{i}" for i in range(max_degree + 1)]


def _padded(record: OutputRecord, max_degree: int) -> list[str]:
    return list(record.coeffs) + ["0"] * (max_degree - record.degree)


def write_csv(records: Iterable[OutputRecord], stream: IO[str]) -> int:
    """Write records padded to the largest degree among them; returns the row count."""
    rows = list(records)
    max_degree = max((r.degree for r in rows), default=0)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(csv_header(max_degree))
    for r in rows:
        writer.writerow([r.n, r.p, r.k, r.degree, *_padded(r, max_degree)])
    return len(rows)


def write_state_csv(records: Sequence[OutputRecord], stream: IO[str]) -> int:
    """One row per state component; the component column holds its index i."""
    max_degree = max((r.degree for r in records), default=0)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(csv_header(max_degree, component=True))
    for i, r in enumerate(records):
        writer.writerow([r.n, r.p, r.k, i, r.degree, *_padded(r, max_degree)])
    return len(records)
