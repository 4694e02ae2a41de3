from __future__ import annotations

import copy
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - runtime fallback for Python <3.11
    import tomli as tomllib

from . import state
from .constants import (
    DEFAULT_BENCH_DIGITS,
    DEFAULT_BENCH_REPEAT,
    DEFAULT_BENCH_SEED,
    DEFAULT_BENCH_TRIALS,
    DEFAULT_CONFIG_NAME,
    DEFAULT_FORMAT,
    DEFAULT_ORACLE_BUDGET,
    DEFAULT_TOML_TEMPLATE,
    DEFAULT_VERIFY_K_VALUES,
    DEFAULT_VERIFY_LIMIT,
    DEFAULT_VERIFY_PRIMES,
    EXIT_USAGE,
    ORACLE_BUDGET_ENV,
    SECTION_KEY_MAP,
    VALID_FORMATS,
)
from .padic import is_prime


@dataclass
class VerifySettings:
    """Resolved parameters for a verification run."""

    limit: int
    primes: list[int]
    k_values: list[int]
    oracle_budget: int


@dataclass
class BenchSettings:
    """Resolved parameters for a benchmark run."""

    p: int
    k: int
    digits: list[int]
    trials: int
    repeat: int
    seed: int
    oracle_budget: int


class ConfigError(Exception):
    """Raised when configuration files or overrides are missing, invalid, or unsupported."""


def _merge_section_keys(cfg: dict[str, Any]) -> dict[str, Any]:
    """Lift known section keys to the top level when missing."""
    normalized_sections = {
        name.lower(): value for name, value in cfg.items() if isinstance(value, dict)
    }
    for section, keys in SECTION_KEY_MAP.items():
        table = normalized_sections.get(section)
        if not isinstance(table, dict):
            continue
        for key in keys:
            if key in table and (key not in cfg or isinstance(cfg.get(key), dict)):
                cfg[key] = table[key]
    return cfg


def default_config_path() -> Path:
    """Return the default config path relative to the repository root."""
    repo_root = Path(__file__).resolve().parents[2]
    return repo_root / DEFAULT_CONFIG_NAME


def generate_default_config(config_path: Path) -> None:
    """Create a starter TOML config file with the built-in defaults."""
    if config_path.suffix.lower() != ".toml":
        state.log.critical(
            "Config generation supports only TOML files. "
            "Please use a .toml extension (e.g. valspec.toml)."
        )
        sys.exit(EXIT_USAGE)

    if config_path.exists():
        state.log.error("Config file already exists: %s", config_path)
        sys.exit(EXIT_USAGE)

    config_path.parent.mkdir(parents=True, exist_ok=True)
    config_path.write_text(DEFAULT_TOML_TEMPLATE.strip() + "\n", encoding="utf-8")
    state.log.warning("Config file generated at: %s", config_path)


def load_config_from_path(config_path: Path, required: bool = True) -> dict[str, Any]:
    """
    Load and parse a valspec TOML configuration file.

    When `required` is false a missing file yields an empty config, so the
    built-in defaults apply.

    Raises:
        ConfigError: if the file is not a .toml file, is missing while
            required, or cannot be parsed.
    """
    if config_path.suffix.lower() != ".toml":
        raise ConfigError(
            "Unsupported config format: expected a .toml file (e.g. valspec.toml)."
        )

    if not config_path.exists():
        if not required:
            state.log.debug("No config at %s; using defaults.", config_path)
            return {}
        raise ConfigError(
            f"Config file not found: {config_path}. Create one with "
            "--generate-config or omit --config to use the defaults."
        )

    try:
        with config_path.open("rb") as f:
            cfg = tomllib.load(f)
    except Exception as exc:  # tomllib/tomli raise TOMLDecodeError subclasses
        raise ConfigError(f"Failed to parse TOML config {config_path}: {exc}") from exc

    if not isinstance(cfg, dict):
        raise ConfigError(
            f"Invalid config structure in {config_path}: expected a "
            "TOML table at the root."
        )

    return _merge_section_keys(cfg)


def validate_config_types(cfg: dict[str, Any]) -> None:
    """
    Validate the loaded configuration for expected types and ranges.

    Raises:
        ConfigError: listing every invalid value found.
    """
    errors: list[str] = []

    def is_int(value: Any) -> bool:
        return isinstance(value, int) and not isinstance(value, bool)

    def expect_bool(container: dict[str, Any], key: str, context: str) -> None:
        if key in container and not isinstance(container[key], bool):
            errors.append(f"{context}.{key} must be a boolean.")

    def expect_positive_int(container: dict[str, Any], key: str, context: str) -> None:
        if key in container:
            value = container[key]
            if not is_int(value):
                errors.append(f"{context}.{key} must be an integer.")
            elif value < 1:
                errors.append(f"{context}.{key} must be greater than zero.")

    def expect_int(container: dict[str, Any], key: str, context: str) -> None:
        if key in container and not is_int(container[key]):
            errors.append(f"{context}.{key} must be an integer.")

    def expect_string(container: dict[str, Any], key: str, context: str) -> None:
        if key in container and not isinstance(container[key], str):
            errors.append(f"{context}.{key} must be a string.")

    def expect_int_list(
        container: dict[str, Any], key: str, context: str, minimum: int = 0
    ) -> list[int]:
        if key not in container:
            return []
        value = container[key]
        if not isinstance(value, list) or not all(is_int(v) for v in value):
            errors.append(f"{context}.{key} must be a list of integers.")
            return []
        if any(v < minimum for v in value):
            errors.append(f"{context}.{key} entries must be >= {minimum}.")
        return value

    expect_positive_int(cfg, "budget", "config.oracle")
    expect_string(cfg, "format", "config.output")
    fmt = cfg.get("format")
    if isinstance(fmt, str) and fmt not in VALID_FORMATS:
        errors.append(
            f"config.output.format must be one of {', '.join(VALID_FORMATS)}."
        )

    for section in ("oracle", "output", "verify", "bench", "logging"):
        table = cfg.get(section)
        if table is not None and not isinstance(table, dict):
            errors.append(f"config.{section} must be a table/object.")

    verify_cfg = cfg.get("verify")
    if isinstance(verify_cfg, dict):
        expect_int(verify_cfg, "limit", "config.verify")
        limit = verify_cfg.get("limit")
        if is_int(limit) and limit < 0:
            errors.append("config.verify.limit must be >= 0.")
        primes = expect_int_list(verify_cfg, "primes", "config.verify", minimum=2)
        composite = [p for p in primes if not is_prime(p)]
        if composite:
            errors.append(
                "config.verify.primes must contain only primes "
                f"(found {', '.join(str(p) for p in composite)})."
            )
        expect_int_list(verify_cfg, "k_values", "config.verify", minimum=1)

    bench_cfg = cfg.get("bench")
    if isinstance(bench_cfg, dict):
        expect_positive_int(bench_cfg, "trials", "config.bench")
        expect_positive_int(bench_cfg, "repeat", "config.bench")
        expect_int(bench_cfg, "seed", "config.bench")
        expect_int_list(bench_cfg, "digits", "config.bench", minimum=1)

    logging_cfg = cfg.get("logging")
    if isinstance(logging_cfg, dict):
        expect_string(logging_cfg, "file_path", "config.logging")
        expect_bool(logging_cfg, "file_enabled", "config.logging")
        expect_string(logging_cfg, "file_level", "config.logging")
        expect_string(logging_cfg, "cli_level", "config.logging")
        expect_bool(logging_cfg, "silent", "config.logging")

    if errors:
        raise ConfigError("Invalid configuration values: " + "; ".join(errors))


def resolve_oracle_budget(
    cfg: dict[str, Any], environ: Mapping[str, str] | None = None
) -> int:
    """
    Effective oracle budget: environment variable, then config, then default.

    Raises:
        ConfigError: when the environment value is not a positive integer.
    """
    env = os.environ if environ is None else environ
    raw = env.get(ORACLE_BUDGET_ENV)
    if raw is not None and raw.strip():
        try:
            budget = int(raw.strip().replace("_", ""))
        except ValueError as exc:
            raise ConfigError(
                f"{ORACLE_BUDGET_ENV} must be a positive integer (got {raw!r})."
            ) from exc
        if budget < 1:
            raise ConfigError(f"{ORACLE_BUDGET_ENV} must be a positive integer.")
        return budget
    return int(cfg.get("budget", DEFAULT_ORACLE_BUDGET))


def apply_cli_overrides(args: Any, cfg: dict[str, Any]) -> dict[str, Any]:
    """Merge CLI overrides into a deep copy of the loaded config."""
    merged = copy.deepcopy(cfg)

    if getattr(args, "format", None):
        merged["format"] = args.format

    for section in ("verify", "bench"):
        if not isinstance(merged.get(section), dict):
            merged[section] = {}

    if getattr(args, "command", None) == "verify":
        if getattr(args, "limit", None) is not None:
            merged["verify"]["limit"] = args.limit
        if getattr(args, "p", None):
            merged["verify"]["primes"] = list(args.p)
        if getattr(args, "k", None):
            merged["verify"]["k_values"] = list(args.k)

    if getattr(args, "command", None) == "bench":
        for key in ("trials", "repeat", "seed", "digits"):
            value = getattr(args, key, None)
            if value is not None:
                merged["bench"][key] = value

    return merged


def build_verify_settings(cfg: dict[str, Any], oracle_budget: int) -> VerifySettings:
    verify_cfg = cfg.get("verify") or {}
    return VerifySettings(
        limit=int(verify_cfg.get("limit", DEFAULT_VERIFY_LIMIT)),
        primes=list(verify_cfg.get("primes", DEFAULT_VERIFY_PRIMES)),
        k_values=list(verify_cfg.get("k_values", DEFAULT_VERIFY_K_VALUES)),
        oracle_budget=oracle_budget,
    )


def build_bench_settings(
    cfg: dict[str, Any], p: int, k: int, oracle_budget: int
) -> BenchSettings:
    bench_cfg = cfg.get("bench") or {}
    return BenchSettings(
        p=p,
        k=k,
        digits=list(bench_cfg.get("digits", DEFAULT_BENCH_DIGITS)),
        trials=int(bench_cfg.get("trials", DEFAULT_BENCH_TRIALS)),
        repeat=int(bench_cfg.get("repeat", DEFAULT_BENCH_REPEAT)),
        seed=int(bench_cfg.get("seed", DEFAULT_BENCH_SEED)),
        oracle_budget=oracle_budget,
    )


def output_format(cfg: dict[str, Any]) -> str:
    fmt = cfg.get("format", DEFAULT_FORMAT)
    return fmt if fmt in VALID_FORMATS else DEFAULT_FORMAT
