import functools
import logging
import sys

from pydantic import ValidationError

from core.errors import SolverError, UsageError

logger = logging.getLogger(__name__)


def safe_print(text: str) -> None:
    """Print a human-facing note to stderr, degrading on encoding errors."""
    try:
        print(text, file=sys.stderr)
    except UnicodeEncodeError:
        print(text.encode("ascii", errors="replace").decode(), file=sys.stderr)


def handle_solver_errors(operation: str):
    """
    A decorator to handle solver errors in a standardized way.

    SolverErrors are logged and re-raised untouched so callers can map them to
    exit statuses. pydantic ValidationErrors become UsageErrors. Anything else
    is logged with its traceback and wrapped in a SolverError with the code
    "internal_error".

    Args:
        operation (str): The name of the decorated operation (e.g., 'run_solve').
    """

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except SolverError as e:
                logger.error(f"[{operation}] {e.error_code}: {e.description}")
                raise
            except ValidationError as e:
                problems = "; ".join(
                    f"{'.'.join(str(part) for part in error['loc']) or 'spec'}: {error['msg']}"
                    for error in e.errors()
                )
                logger.error(f"[{operation}] invalid arguments: {problems}")
                raise UsageError(problems) from e
            except Exception as e:
                message = f"An unexpected error occurred in {operation}: {e}"
                logger.exception(message)
                raise SolverError("internal_error", message) from e

        return wrapper

    return decorator
