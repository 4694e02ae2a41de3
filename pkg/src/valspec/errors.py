class ValspecError(Exception):
    """Base class for errors raised by the valspec library."""


class InvalidModulusError(ValspecError, ValueError):
    """Raised when a base/modulus is not a prime number >= 2."""


class InvalidArgumentError(ValspecError, ValueError):
    """Raised when an argument violates an operation's precondition."""


class UndefinedValuationError(ValspecError, ValueError):
    """Raised when the p-adic valuation of 0 is requested."""


class DimensionMismatchError(ValspecError, ValueError):
    """Raised when matrix/vector dimensions do not line up."""


class UnsupportedQueryError(ValspecError, ValueError):
    """Raised when a query asks for a path that only exists for binomials (k = 2)."""


class EnumerationTooLargeError(ValspecError):
    """Raised when a brute-force enumeration would exceed the configured budget."""

    def __init__(self, required: int, budget: int) -> None:
        super().__init__(
            f"Enumeration needs {required} tuples, which exceeds the oracle budget "
            f"of {budget} (raise [oracle].budget or VALSPEC_ORACLE_BUDGET)."
        )
        self.required = required
        self.budget = budget
