from dataclasses import dataclass, field
import logging
from secrets import token_hex


@dataclass
class RunStats:
    """
    In-memory counters for a single valspec run.

    Semantics:
    - checks_passed/checks_failed: individual verification checks.
    - records: output records emitted by spectrum/table/bench.
    - warnings/errors: diagnostics raised while running.
    """

    checks_passed: int = 0
    checks_failed: int = 0
    records: int = 0
    warnings: int = 0
    errors: int = 0
    failed_items: list[tuple[str, str]] = field(default_factory=list)

    def record_checks(self, passed: int, failed: int = 0) -> None:
        """Add a batch of check outcomes from a finished suite."""
        self.checks_passed += max(0, passed)
        self.checks_failed += max(0, failed)

    def record_output(self, count: int = 1) -> None:
        if count < 0:
            return
        self.records += count

    def record_warning(self) -> None:
        self.warnings += 1

    def record_error(self, path: str, reason: str) -> None:
        """Count an error and capture where it happened and why."""
        self.errors += 1
        self.failed_items.append((path, reason))


run_id = token_hex(4)
stats = RunStats()

# Default logger; configured at runtime by logging_utils.setup_logging
log: logging.LoggerAdapter = logging.LoggerAdapter(
    logging.getLogger("valspec"), {"run_id": run_id}
)


def reset_state() -> None:
    """
    Reset counters. Useful in tests to isolate runs.
    """
    global stats
    stats = RunStats()
