"""Core package for valspec: exact p-adic valuation spectra of binomial and multinomial rows."""

__all__ = [
    "bench",
    "cli",
    "config",
    "constants",
    "errors",
    "exactalg",
    "logging_utils",
    "oracle",
    "output",
    "padic",
    "sequences",
    "spectra",
    "state",
    "verify",
]
