import argparse

import pytest

from valspec.config import (
    ConfigError,
    apply_cli_overrides,
    build_bench_settings,
    build_verify_settings,
    generate_default_config,
    load_config_from_path,
    output_format,
    resolve_oracle_budget,
    validate_config_types,
)
from valspec.constants import (
    DEFAULT_ORACLE_BUDGET,
    DEFAULT_VERIFY_K_VALUES,
    DEFAULT_VERIFY_LIMIT,
    DEFAULT_VERIFY_PRIMES,
    ORACLE_BUDGET_ENV,
)


def test_load_config_from_path_parses_toml_and_builds_settings(tmp_path):
    config_path = tmp_path / "valspec.toml"
    config_path.write_text(
        """
        [oracle]
        budget = 5000

        [verify]
        limit = 40
        primes = [3, 5]
        k_values = [3]

        [bench]
        trials = 2
        repeat = 1
        seed = 9
        digits = [10, 20]
        """,
        encoding="utf-8",
    )

    cfg = load_config_from_path(config_path)
    validate_config_types(cfg)
    budget = resolve_oracle_budget(cfg, environ={})
    assert budget == 5000

    verify = build_verify_settings(cfg, budget)
    assert verify.limit == 40
    assert verify.primes == [3, 5]
    assert verify.k_values == [3]

    bench = build_bench_settings(cfg, 2, 2, budget)
    assert (bench.trials, bench.repeat, bench.seed, bench.digits) == (2, 1, 9, [10, 20])
    assert bench.oracle_budget == 5000


def test_load_config_from_path_rejects_non_toml(tmp_path):
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text("{}", encoding="utf-8")
    with pytest.raises(ConfigError, match="expected a \\.toml file"):
        load_config_from_path(cfg_path)


def test_load_config_from_path_missing_file(tmp_path):
    missing_path = tmp_path / "missing.toml"
    with pytest.raises(ConfigError, match="Config file not found"):
        load_config_from_path(missing_path)


def test_load_config_from_path_missing_optional_file_uses_defaults(tmp_path):
    cfg = load_config_from_path(tmp_path / "valspec.toml", required=False)
    assert cfg == {}
    settings = build_verify_settings(cfg, DEFAULT_ORACLE_BUDGET)
    assert settings.limit == DEFAULT_VERIFY_LIMIT
    assert settings.primes == DEFAULT_VERIFY_PRIMES
    assert settings.k_values == DEFAULT_VERIFY_K_VALUES
    assert output_format(cfg) == "pretty"


def test_load_config_from_path_rejects_broken_toml(tmp_path):
    cfg_path = tmp_path / "valspec.toml"
    cfg_path.write_text("[verify\nlimit = ", encoding="utf-8")
    with pytest.raises(ConfigError, match="Failed to parse TOML"):
        load_config_from_path(cfg_path)


def test_validate_config_types_rejects_invalid_types(tmp_path):
    cfg_path = tmp_path / "valspec.toml"
    cfg_path.write_text(
        """
        [oracle]
        budget = "lots"

        [output]
        format = "yaml"

        [verify]
        limit = -1
        primes = [2, 4, 9]

        [bench]
        trials = 0

        [logging]
        silent = "yes"
        """,
        encoding="utf-8",
    )
    cfg = load_config_from_path(cfg_path)
    with pytest.raises(ConfigError) as excinfo:
        validate_config_types(cfg)
    message = str(excinfo.value)
    assert "config.oracle.budget" in message
    assert "config.output.format" in message
    assert "config.verify.limit" in message
    assert "found 4, 9" in message
    assert "config.bench.trials" in message
    assert "config.logging.silent" in message


def test_validate_config_types_accepts_empty_config():
    validate_config_types({})


def test_generate_default_config_requires_toml(tmp_path):
    path = tmp_path / "config.json"
    with pytest.raises(SystemExit) as excinfo:
        generate_default_config(path)
    assert excinfo.value.code == 2
    assert not path.exists()


def test_generate_default_config_writes_loadable_template(tmp_path):
    path = tmp_path / "nested" / "valspec.toml"
    generate_default_config(path)
    cfg = load_config_from_path(path)
    validate_config_types(cfg)
    assert cfg["budget"] == DEFAULT_ORACLE_BUDGET
    assert cfg["format"] == "pretty"

    with pytest.raises(SystemExit):
        generate_default_config(path)


def test_load_config_from_sections_lifts_keys(tmp_path):
    cfg_path = tmp_path / "valspec.toml"
    cfg_path.write_text(
        """
        [oracle]
        budget = 77

        [output]
        format = "csv"
        """,
        encoding="utf-8",
    )
    cfg = load_config_from_path(cfg_path)
    assert cfg["budget"] == 77
    assert cfg["format"] == "csv"
    assert output_format(cfg) == "csv"


@pytest.mark.parametrize(
    "environ, cfg, expected",
    [
        ({}, {}, DEFAULT_ORACLE_BUDGET),
        ({}, {"budget": 123}, 123),
        ({ORACLE_BUDGET_ENV: "456"}, {"budget": 123}, 456),
        ({ORACLE_BUDGET_ENV: "1_000"}, {}, 1000),
        ({ORACLE_BUDGET_ENV: "  "}, {"budget": 9}, 9),
    ],
)
def test_resolve_oracle_budget_precedence(environ, cfg, expected):
    assert resolve_oracle_budget(cfg, environ=environ) == expected


@pytest.mark.parametrize("raw", ["many", "0", "-5"])
def test_resolve_oracle_budget_rejects_bad_environment(raw):
    with pytest.raises(ConfigError, match=ORACLE_BUDGET_ENV):
        resolve_oracle_budget({}, environ={ORACLE_BUDGET_ENV: raw})


def test_resolve_oracle_budget_reads_process_environment(monkeypatch):
    monkeypatch.setenv(ORACLE_BUDGET_ENV, "321")
    assert resolve_oracle_budget({"budget": 5}) == 321


def test_apply_cli_overrides_for_verify_does_not_mutate_input():
    cfg = {"verify": {"limit": 10, "primes": [2]}}
    args = argparse.Namespace(command="verify", limit=99, p=[5, 7], k=None)
    merged = apply_cli_overrides(args, cfg)
    assert merged["verify"] == {"limit": 99, "primes": [5, 7]}
    assert cfg == {"verify": {"limit": 10, "primes": [2]}}


def test_apply_cli_overrides_for_bench_and_format():
    args = argparse.Namespace(
        command="bench", trials=4, repeat=None, seed=3, digits=[5], format=None
    )
    merged = apply_cli_overrides(args, {"bench": {"repeat": 2}})
    assert merged["bench"] == {"repeat": 2, "trials": 4, "seed": 3, "digits": [5]}

    args = argparse.Namespace(command="table", format="json")
    assert apply_cli_overrides(args, {})["format"] == "json"


def test_apply_cli_overrides_ignores_other_command_flags():
    args = argparse.Namespace(command="spectrum", p=3, k=2, format=None)
    merged = apply_cli_overrides(args, {"verify": {"primes": [2]}})
    assert merged["verify"] == {"primes": [2]}
