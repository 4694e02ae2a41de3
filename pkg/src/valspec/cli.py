#!/usr/bin/env python3
import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from . import state
from .bench import run_bench, write_bench_csv
from .config import (
    ConfigError,
    apply_cli_overrides,
    build_bench_settings,
    build_verify_settings,
    default_config_path,
    generate_default_config,
    load_config_from_path,
    output_format,
    resolve_oracle_budget,
    validate_config_types,
)
from .constants import (
    DEFAULT_CONFIG_NAME,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    VALID_FORMATS,
    VERIFY_SUITES,
)
from .errors import ValspecError
from .exactalg import IntPoly, RatPoly
from .logging_utils import log_run_start, log_run_summary, setup_logging
from .output import (
    OutputRecord,
    format_poly,
    format_record_pretty,
    record_to_json,
    write_csv,
    write_state_csv,
)
from .padic import is_prime
from .spectra import (
    SpectrumQuery,
    cpk_row,
    spectrum,
    spectrum_normalized,
    spectrum_state,
)
from .verify import run_suites

CONFIG_ARG = "--config"  # nosec B105


def _lift_int_digit_limit() -> None:
    # n and the coefficients may run to thousands of decimal digits.
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)


def parse_non_negative_int(value: str) -> int:
    """Parse an arbitrary-size non-negative decimal integer for argparse."""
    text = value.strip().replace("_", "")
    if not (text.isascii() and text.isdigit()):
        raise argparse.ArgumentTypeError(
            f"Expected a non-negative decimal integer (got {value!r})."
        )
    return int(text)


def parse_positive_int(value: str) -> int:
    number = parse_non_negative_int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"Expected an integer >= 1 (got {value!r}).")
    return number


def parse_prime(value: str) -> int:
    p = parse_non_negative_int(value)
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"p must be a prime (got {value}).")
    return p


def parse_rational(value: str) -> Fraction:
    """Parse an exact rational such as 3, -1, 1/2 or 0.25."""
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            f"Expected an exact rational such as -1 or 1/2 (got {value!r})."
        )


def parse_digit_list(value: str) -> list[int]:
    """Parse a comma-separated list of digit counts, e.g. 10,100,1000."""
    parts = [part for part in value.replace(" ", "").split(",") if part]
    if not parts:
        raise argparse.ArgumentTypeError("Expected digit counts such as 10,100,1000.")
    return [parse_positive_int(part) for part in parts]


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser for the spectrum, table, verify and bench commands."""
    parser = argparse.ArgumentParser(
        prog="valspec",
        description=(
            "Exact p-adic valuation spectra of binomial and multinomial rows.\n\n"
            "- spectrum: T_{p,k}(n, x) for one n of any size.\n"
            "- table: one polynomial per n, or the c_{p,k} triangle.\n"
            "- verify: sweep the fast paths against independent computations.\n"
            "- bench: time the digit-product path against brute force.\n\n"
            "Defaults are read from an optional TOML config file. "
            "Use --generate-config to create one."
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )

    parser.add_argument(
        CONFIG_ARG,
        help=f"Path to TOML config file (default: {DEFAULT_CONFIG_NAME} in repo root).",
    )
    parser.add_argument(
        "--generate-config",
        action="store_true",
        help="Generate a default config file and exit.",
    )
    parser.add_argument(
        "--silent",
        "-s",
        action="store_true",
        help="Suppress CLI diagnostics (file logging continues).",
    )
    parser.add_argument(
        "--verbose",
        "-v",
        action="store_true",
        help="Enable debug logging to stderr (overrides logging.cli_level).",
    )

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    spec_p = sub.add_parser("spectrum", help="Print T_{p,k}(n, x) for a single n.")
    spec_p.add_argument("--p", type=parse_prime, required=True, help="Prime modulus.")
    spec_p.add_argument(
        "--k", type=parse_positive_int, default=2, help="Row arity (default: 2)."
    )
    spec_p.add_argument(
        "--n", type=parse_non_negative_int, required=True, help="Row index n >= 0."
    )
    spec_p.add_argument(
        "--eval",
        dest="evaluations",
        type=parse_rational,
        action="append",
        metavar="X",
        help="Evaluate at an exact rational X (repeatable).",
    )
    spec_p.add_argument("--format", choices=VALID_FORMATS, help="Output format.")
    spec_p.add_argument(
        "--normalized",
        action="store_true",
        help="Divide by the constant term (k = 2 only).",
    )
    spec_view = spec_p.add_mutually_exclusive_group()
    spec_view.add_argument(
        "--state",
        action="store_true",
        help="Print every state component T_{p,k,i}, i = 0..k-1.",
    )
    spec_view.add_argument(
        "--coefficient",
        type=parse_non_negative_int,
        metavar="A",
        help="Print only the coefficient of x^A.",
    )

    table_p = sub.add_parser("table", help="Print spectra for a range of n.")
    table_p.add_argument("--p", type=parse_prime, required=True, help="Prime modulus.")
    table_p.add_argument(
        "--k", type=parse_positive_int, default=2, help="Row arity (default: 2)."
    )
    table_p.add_argument(
        "--from", dest="start", type=parse_non_negative_int, default=0, help="First n."
    )
    table_p.add_argument("--to", dest="stop", type=parse_non_negative_int, help="Last n.")
    table_p.add_argument("--format", choices=VALID_FORMATS, help="Output format.")
    table_p.add_argument(
        "--triangle",
        choices=("cpk",),
        help="Print the c_{p,k} triangle instead of spectra.",
    )
    table_p.add_argument(
        "--rows",
        type=parse_non_negative_int,
        default=None,
        help="Last triangle row k (with --triangle).",
    )

    verify_p = sub.add_parser("verify", help="Run verification sweeps.")
    verify_p.add_argument(
        "--suite",
        choices=VERIFY_SUITES + ("all",),
        default="all",
        help="Suite to run (default: all).",
    )
    verify_p.add_argument(
        "--limit",
        type=parse_non_negative_int,
        help="Largest n (or tuple total) swept. Overrides verify.limit.",
    )
    verify_p.add_argument(
        "--p",
        type=parse_prime,
        action="append",
        help="Prime to sweep (repeatable). Overrides verify.primes.",
    )
    verify_p.add_argument(
        "--k",
        type=parse_positive_int,
        action="append",
        help="Multinomial arity to sweep (repeatable). Overrides verify.k_values.",
    )

    bench_p = sub.add_parser("bench", help="Time the matrix path against the oracle.")
    bench_p.add_argument("--p", type=parse_prime, required=True, help="Prime modulus.")
    bench_p.add_argument(
        "--k", type=parse_positive_int, default=2, help="Row arity (default: 2)."
    )
    bench_p.add_argument(
        "--digits",
        type=parse_digit_list,
        help="Comma-separated base-p digit counts (e.g. 10,100,1000).",
    )
    bench_p.add_argument(
        "--trials", type=parse_positive_int, help="Sampled n per digit count."
    )
    bench_p.add_argument(
        "--repeat", type=parse_positive_int, help="Timings per n; the median is kept."
    )
    bench_p.add_argument(
        "--seed", type=int, help="Seed for the n sampler (default: 0)."
    )

    return parser


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """Parse CLI arguments; usage errors exit with status 2."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None and not args.generate_config:
        parser.error("a command is required (spectrum, table, verify or bench).")
    if args.command == "spectrum":
        if args.normalized and args.k != 2:
            parser.error("--normalized is defined for k = 2 only.")
        if args.normalized and args.state:
            parser.error("--normalized cannot be combined with --state.")
    if args.command == "table":
        if args.triangle:
            if args.rows is None:
                parser.error("--triangle requires --rows.")
        elif args.stop is None:
            parser.error("--to is required unless --triangle is given.")
        elif args.start > args.stop:
            parser.error(f"--from ({args.start}) must not exceed --to ({args.stop}).")
    return args


def validate_generate_config_args(argv: list[str]) -> None:
    """
    Ensure --generate-config is not combined with a command.

    Permitted tokens: --generate-config, an optional --config path value, and
    verbosity flags (-s/--silent, -v/--verbose).
    """
    allowed = {"--generate-config", CONFIG_ARG, "--silent", "-s", "--verbose", "-v"}
    extras: list[str] = []
    skip_next = False

    for token in argv:
        if skip_next:
            skip_next = False
            continue
        if token == CONFIG_ARG:
            skip_next = True
            continue
        if token.startswith(f"{CONFIG_ARG}=") or token in allowed:
            continue
        extras.append(token)

    if extras:
        state.log.critical(
            "--generate-config cannot be combined with other arguments (found: %s).",
            ", ".join(extras),
        )
        state.stats.record_error(
            "arguments", "generate-config combined with other args"
        )
        raise SystemExit(EXIT_USAGE)


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def _records_out(records: Iterable[OutputRecord], fmt: str, with_n: bool) -> None:
    """Stream pretty and JSON records as they arrive; CSV pads to the widest row first."""
    if fmt == "csv":
        state.stats.record_output(write_csv(records, sys.stdout))
        return
    for record in records:
        if fmt == "json":
            _emit(record_to_json(record))
        else:
            _emit(format_record_pretty(record, with_n=with_n))
        sys.stdout.flush()
        state.stats.record_output()


def cmd_spectrum(args: argparse.Namespace, fmt: str) -> int:
    q = SpectrumQuery(p=args.p, k=args.k, n=args.n)

    if args.state:
        vector = spectrum_state(q)
        if fmt == "json":
            _emit(
                json.dumps(
                    {
                        "n": str(q.n),
                        "p": q.p,
                        "k": q.k,
                        "state": [[str(c) for c in part.coeffs] for part in vector.components],
                    }
                )
            )
            state.stats.record_output()
        elif fmt == "csv":
            records = [
                OutputRecord.from_poly(n=q.n, p=q.p, k=q.k, poly=part)
                for part in vector.components
            ]
            state.stats.record_output(write_state_csv(records, sys.stdout))
        else:
            for i, part in enumerate(vector.components):
                _emit(f"{i} | {format_poly(part)}")
            state.stats.record_output(vector.k)
        return EXIT_OK

    poly: IntPoly | RatPoly = spectrum_normalized(q) if args.normalized else spectrum(q)

    if args.coefficient is not None:
        _emit(str(poly.coefficient(args.coefficient)))
        state.stats.record_output()
        return EXIT_OK

    evaluations = None
    if args.evaluations:
        evaluations = {x: poly(x) for x in args.evaluations}
    record = OutputRecord.from_poly(
        n=q.n, p=q.p, k=q.k, poly=poly, evaluations=evaluations
    )
    _records_out([record], fmt, with_n=False)
    return EXIT_OK


def cmd_table(args: argparse.Namespace, fmt: str) -> int:
    if args.triangle:
        for k in range(args.rows + 1):
            _emit(" ".join(str(c) for c in cpk_row(args.p, k)))
        state.stats.record_output(args.rows + 1)
        return EXIT_OK

    records = (
        OutputRecord.from_poly(
            n=n, p=args.p, k=args.k, poly=spectrum(SpectrumQuery(p=args.p, k=args.k, n=n))
        )
        for n in range(args.start, args.stop + 1)
    )
    _records_out(records, fmt, with_n=True)
    return EXIT_OK


def cmd_verify(cfg: dict[str, Any], args: argparse.Namespace, budget: int) -> int:
    settings = build_verify_settings(cfg, budget)
    names = list(VERIFY_SUITES) if args.suite == "all" else [args.suite]
    results = run_suites(names, settings)

    total = sum(r.checks for r in results)
    for result in results:
        if result.failure is not None:
            _emit(result.failure.describe())
            _emit(f"{total} checks passed before the first failure")
            return EXIT_VERIFY_FAILED
    skipped = sum(r.skipped for r in results)
    if skipped:
        _emit(f"{total} checks passed ({skipped} skipped over budget)")
    else:
        _emit(f"{total} checks passed")
    return EXIT_OK


def cmd_bench(cfg: dict[str, Any], args: argparse.Namespace, budget: int) -> int:
    settings = build_bench_settings(cfg, args.p, args.k, budget)
    rows = run_bench(settings)
    state.stats.record_output(write_bench_csv(rows, sys.stdout))
    return EXIT_OK


def main(argv: list[str] | None = None) -> None:
    _lift_int_digit_limit()
    args = parse_args(argv)
    raw_argv = sys.argv[1:] if argv is None else argv

    explicit_config = bool(args.config)
    config_path = (
        Path(args.config).expanduser() if explicit_config else default_config_path()
    )

    run_started = False
    exit_code = EXIT_OK
    logging_settings: dict[str, Any] = {}

    try:
        _, logging_settings = setup_logging({"logging": {}}, args)

        if args.generate_config:
            validate_generate_config_args(raw_argv)
            generate_default_config(config_path)
            raise SystemExit(EXIT_OK)

        try:
            cfg = load_config_from_path(config_path, required=explicit_config)
            cfg = apply_cli_overrides(args, cfg)
            validate_config_types(cfg)
            budget = resolve_oracle_budget(cfg)
        except ConfigError as exc:
            state.log.critical(str(exc))
            state.stats.record_error("configuration", str(exc))
            raise SystemExit(EXIT_USAGE)

        _, logging_settings = setup_logging(cfg, args)

        log_run_start(
            command=args.command,
            config_path=config_path,
            oracle_budget=budget,
            silent=logging_settings["silent"],
            cli_level=logging_settings["cli_level"],
            file_level=logging_settings["file_level"],
            log_file=(
                Path(logging_settings["file_path"])
                if logging_settings["file_enabled"]
                else None
            ),
        )
        run_started = True

        fmt = output_format(cfg)
        try:
            if args.command == "spectrum":
                exit_code = cmd_spectrum(args, fmt)
            elif args.command == "table":
                exit_code = cmd_table(args, fmt)
            elif args.command == "verify":
                exit_code = cmd_verify(cfg, args, budget)
            else:
                exit_code = cmd_bench(cfg, args, budget)
        except ValspecError as exc:
            state.log.critical(str(exc))
            state.stats.record_error(args.command, str(exc))
            raise SystemExit(EXIT_USAGE)

    except SystemExit as exc:
        exit_code = exc.code if isinstance(exc.code, int) else EXIT_VERIFY_FAILED
    except Exception:
        state.log.exception("Unhandled exception during run.")
        state.stats.record_error("run", "Unhandled exception")
        exit_code = EXIT_VERIFY_FAILED
    finally:
        if run_started:
            log_run_summary(state.stats)
        sys.stdout.flush()

    sys.exit(exit_code)


if __name__ == "__main__":
    main()
