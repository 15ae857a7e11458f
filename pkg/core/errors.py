"""
Solver Error Handling

This module provides the exception hierarchy shared by the scalar parser, the
instance model, the solvers and the command-line tools. Every error carries a
stable error code and the process exit status the CLI maps it to.
"""

import logging
from typing import List, Optional

logger = logging.getLogger(__name__)

EXIT_FEASIBLE = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2


class SolverError(Exception):
    """Base exception for solver-related errors."""

    def __init__(self, error_code: str, description: str, exit_status: int = EXIT_USAGE):
        self.error_code = error_code
        self.description = description
        self.exit_status = exit_status
        super().__init__(f"{error_code}: {description}")


class ScalarParseError(SolverError):
    """Raised when a token does not match the scalar grammar."""

    def __init__(self, token: str, position: int, reason: str = "malformed scalar"):
        self.token = token
        self.position = position
        super().__init__("invalid_scalar", f"{reason} {token!r} at position {position}")


class InstanceValidationError(SolverError):
    """Raised when parsed fields do not form a well-formed instance."""

    def __init__(self, violations: List[str], field: Optional[str] = None):
        self.violations = list(violations)
        self.field = field
        description = "; ".join(self.violations)
        if field:
            description = f"Invalid {field}: {description}"
        super().__init__("invalid_instance", description)


class InstanceFileError(SolverError):
    """Raised on syntax errors in an instance file."""

    def __init__(self, description: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__("invalid_instance_file", f"line {line}, column {column}: {description}")


class ContractViolation(SolverError):
    """Raised when a caller breaks an operation's precondition."""

    def __init__(self, description: str):
        super().__init__("contract_violation", description)


class UnsupportedConfigurationError(SolverError):
    """Raised for algorithm/mode/goal combinations that are declared unsupported."""

    def __init__(self, description: str):
        super().__init__("unsupported_configuration", description)


class OracleCapExceeded(SolverError):
    """Raised when the brute-force oracle is asked for more variables than its cap."""

    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(
            "oracle_cap_exceeded",
            f"brute force refuses n={n}; the configured cap is {cap} (2^{n} assignments)",
        )


class PairSetCapExceeded(SolverError):
    """Raised instead of materializing a pair set larger than the cap."""

    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(
            "pair_set_cap_exceeded",
            f"match list covers {count} pairs, above the materialization cap of {cap}",
        )


class ConfigurationError(SolverError):
    """Raised when an environment setting cannot be interpreted."""

    def __init__(self, variable: str, value: str, expected: str):
        self.variable = variable
        super().__init__("invalid_configuration", f"{variable}={value!r} is not {expected}")


class UsageError(SolverError):
    """Raised for invalid command-line arguments or generator specs."""

    def __init__(self, description: str):
        super().__init__("invalid_arguments", description)
