import textwrap

APP_VERSION = "0.1.0"

DEFAULT_CONFIG_NAME = "valspec.toml"

ORACLE_BUDGET_ENV = "VALSPEC_ORACLE_BUDGET"
FULL_SWEEP_ENV = "VALSPEC_FULL_SWEEP"

# Largest number of compositions the brute-force oracle will enumerate.
DEFAULT_ORACLE_BUDGET = 10_000_000

DEFAULT_VERIFY_LIMIT = 1000
DEFAULT_VERIFY_PRIMES = [2, 3, 5, 7]
DEFAULT_VERIFY_K_VALUES = [3, 4]

DEFAULT_BENCH_TRIALS = 3
DEFAULT_BENCH_REPEAT = 5
DEFAULT_BENCH_SEED = 0
DEFAULT_BENCH_DIGITS = [10, 100, 1000]

VALID_FORMATS = ("pretty", "json", "csv")
DEFAULT_FORMAT = "pretty"

VERIFY_SUITES = (
    "oracle",
    "recurrence",
    "lemma",
    "stern",
    "fine",
    "carlitz",
    "state",
    "normalized",
)

# Exit code contract for the command-line frontend.
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

SECTION_KEY_MAP = {
    "oracle": ["budget"],
    "output": ["format"],
}

DEFAULT_TOML_TEMPLATE = textwrap.dedent(
    """\
    # valspec configuration (TOML)

    [oracle]
    # Largest number of tuples the brute-force oracle may enumerate for one n.
    # The VALSPEC_ORACLE_BUDGET environment variable overrides this value.
    # Default: 10000000.
    budget = 10000000

    [output]
    # Output format for spectrum/table (pretty|json|csv).
    # Default: pretty.
    format = "pretty"

    [verify]
    # Upper bound on n for verification sweeps (overridden by --limit).
    # For the lemma suite this bounds the tuple total instead.
    # Default: 1000.
    limit = 1000
    # Primes swept when --p is not given.
    # Default: [2, 3, 5, 7].
    primes = [2, 3, 5, 7]
    # Tuple sizes swept by multinomial checks when --k is not given.
    # Multinomial oracle sweeps stop at n = 120 regardless of limit.
    # Default: [3, 4].
    k_values = [3, 4]

    [bench]
    # Sampled n values per digit count.
    # Default: 3.
    trials = 3
    # Timed repetitions per sampled n (the median is reported).
    # Default: 5.
    repeat = 5
    # Seed for the deterministic n generator.
    # Default: 0.
    seed = 0
    # Digit counts to benchmark.
    # Default: [10, 100, 1000].
    digits = [10, 100, 1000]

    [logging]
    # Write logs to file.
    # Default: False.
    file_enabled = false
    # Path to log file.
    # Default: valspec.log.
    file_path = "valspec.log"
    # File log level (DEBUG, INFO, WARNING, ERROR, CRITICAL).
    # Default: INFO.
    file_level = "INFO"
    # CLI log level. Diagnostics go to stderr; stdout carries data only.
    # Default: WARNING.
    cli_level = "WARNING"
    # Suppress CLI logging except critical errors.
    # Default: False.
    silent = false
    """
)
