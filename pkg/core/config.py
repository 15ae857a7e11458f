"""
Solver Configuration Management

This module centralizes the environment-driven settings of the 0-1 program
solver. Values are read from the process environment (populated from a .env
file by main.py) once, on first use of get_solver_config().
"""

import os
from typing import Any, Dict, Optional

from core.errors import ConfigurationError

_TRUE_VALUES = {"1", "true", "yes", "on"}
_FALSE_VALUES = {"0", "false", "no", "off", ""}


def _env_int(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None:
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        raise ConfigurationError(name, raw, "an integer")
    if value < minimum:
        raise ConfigurationError(name, raw, f"an integer >= {minimum}")
    return value


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None:
        return default
    try:
        value = float(raw.strip())
    except ValueError:
        raise ConfigurationError(name, raw, "a number")
    if value < 0:
        raise ConfigurationError(name, raw, "a nonnegative number")
    return value


def _env_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    lowered = raw.strip().lower()
    if lowered in _TRUE_VALUES:
        return True
    if lowered in _FALSE_VALUES:
        return False
    raise ConfigurationError(name, raw, "a boolean")


class SolverConfig:
    """
    Centralized solver configuration.

    This class provides a single source of truth for budgets, caps and
    algorithm switches used across the solvers and the CLI.
    """

    def __init__(self):
        # Memory budget consulted by --algorithm auto
        self.memory_budget_mb = _env_int("IP01_MEMORY_BUDGET_MB", 512, minimum=1)
        self.entry_bytes = _env_int("IP01_ENTRY_BYTES", 96, minimum=1)

        # Oracle and materialization caps
        self.brute_force_cap = _env_int("IP01_BRUTE_FORCE_CAP", 24, minimum=1)
        self.pair_set_cap = _env_int("IP01_PAIR_SET_CAP", 1_000_000, minimum=0)

        # Algorithm switches
        self.heuristic_pivot = _env_bool("IP01_HEURISTIC_PIVOT", False)
        self.incremental_tables = _env_bool("IP01_INCREMENTAL_TABLES", True)
        self.threads = _env_int("IP01_THREADS", 1, minimum=1)
        self.tolerance = _env_float("IP01_TOLERANCE", 1e-9)

        # Logging
        self.log_level = os.getenv("IP01_LOG_LEVEL", "WARNING").upper()
        self.log_file: Optional[str] = os.getenv("IP01_LOG_FILE") or None

    def estimate_two_table_bytes(self, n: int, m: int) -> int:
        """
        Estimate the memory held by the two half tables of an n-variable instance.

        Args:
            n: Variable count
            m: Constraint count

        Returns:
            Estimated size in bytes
        """
        entries = (1 << ((n + 1) // 2)) + (1 << (n // 2))
        return entries * (m + 2) * self.entry_bytes

    def exceeds_memory_budget(self, n: int, m: int) -> bool:
        """Check whether the two-table method would exceed the memory budget."""
        return self.estimate_two_table_bytes(n, m) > self.memory_budget_mb * 1024 * 1024

    def get_environment_summary(self) -> Dict[str, Any]:
        """
        Get a summary of the active configuration.

        Returns:
            Dictionary with every setting
        """
        return {
            "memory_budget_mb": self.memory_budget_mb,
            "entry_bytes": self.entry_bytes,
            "brute_force_cap": self.brute_force_cap,
            "pair_set_cap": self.pair_set_cap,
            "heuristic_pivot": self.heuristic_pivot,
            "incremental_tables": self.incremental_tables,
            "threads": self.threads,
            "tolerance": self.tolerance,
            "log_level": self.log_level,
            "log_file": self.log_file,
        }


# Global configuration instance
_solver_config = None


def get_solver_config() -> SolverConfig:
    """
    Get the global solver configuration instance.

    Returns:
        The singleton solver configuration instance
    """
    global _solver_config
    if _solver_config is None:
        _solver_config = SolverConfig()
    return _solver_config


def reload_solver_config() -> SolverConfig:
    """
    Reload the solver configuration from environment variables.

    This is useful for testing or when environment variables change.

    Returns:
        The reloaded solver configuration instance
    """
    global _solver_config
    _solver_config = SolverConfig()
    return _solver_config
