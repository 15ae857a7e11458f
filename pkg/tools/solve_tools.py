"""
Solve Command

Reads an instance file, dispatches it to one of the solvers and reports the
outcome. Exit statuses: 0 feasible/optimal, 1 infeasible, 2 usage or parse
errors (including unsupported algorithm/mode/goal combinations).
"""

import argparse
import logging
import sys
from typing import Optional, Tuple

from core.config import SolverConfig, get_solver_config
from core.errors import EXIT_FEASIBLE, EXIT_INFEASIBLE, UnsupportedConfigurationError, UsageError
from core.instance import Goal, Instance, SolveOutcome
from core.instance_file import InstanceFile, read_instance_file
from core.scalars import EXACT, CompareMode
from core.utils import handle_solver_errors
from solvers.brute_force import brute_force_solve
from solvers.four_table import solve_four_table
from solvers.two_table import MatchAlgorithm, solve_two_table
from tools.reports import ResultReport, create_result_report

logger = logging.getLogger(__name__)

ALGORITHMS = ("auto", "sort2", "recursive2", "four-table", "brute")
TWO_TABLE = {"sort2": MatchAlgorithm.SORT, "recursive2": MatchAlgorithm.RECURSIVE}


def add_solve_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", help="Instance file path, or '-' for stdin")
    parser.add_argument("--algorithm", choices=ALGORITHMS, default="auto",
                        help="Solver to run; auto picks four-table only when two-table memory exceeds the budget")
    parser.add_argument("--goal", choices=[goal.value for goal in Goal], default=Goal.OPTIMIZE.value,
                        help="What to compute (default: optimize)")
    parser.add_argument("--limit", type=int, default=None,
                        help="Maximum number of enumerated solutions")
    parser.add_argument("--mode", choices=["exact", "float"], default="exact",
                        help="Exact rational arithmetic or float with tolerance")
    parser.add_argument("--tol", type=float, default=None,
                        help="Tolerance for float mode (default: IP01_TOLERANCE)")
    parser.add_argument("--output", choices=["text", "structured"], default="text",
                        help="Human-readable text or JSON")
    parser.add_argument("--blocks", action="store_true",
                        help="Print the compressed match blocks instead of enumerated witnesses")
    parser.add_argument("--threads", type=int, default=None,
                        help="Table construction threads (default: IP01_THREADS)")


def select_algorithm(
    requested: str, instance: Instance, goal: Goal, mode: CompareMode, config: Optional[SolverConfig] = None
) -> str:
    """
    Resolve "auto" to a concrete solver.

    The four-table solver is chosen only when the estimated two-table memory
    exceeds the budget and the four-table solver supports the goal and mode.
    Explicit choices are returned unchanged.
    """
    if requested != "auto":
        return requested
    config = config or get_solver_config()
    if not config.exceeds_memory_budget(instance.n, instance.m):
        return "sort2"
    if mode.is_exact and goal in (Goal.FEASIBILITY, Goal.OPTIMIZE):
        logger.info(
            f"[select_algorithm] two-table estimate {config.estimate_two_table_bytes(instance.n, instance.m)} bytes "
            f"exceeds {config.memory_budget_mb} MB; using four-table"
        )
        return "four-table"
    logger.warning(
        f"[select_algorithm] two-table memory exceeds the budget but four-table cannot run "
        f"goal={goal.value} mode={mode.name}; falling back to sort2"
    )
    return "sort2"


def _compare_mode(args: argparse.Namespace, config: SolverConfig) -> CompareMode:
    if args.mode == "exact":
        if args.tol is not None:
            raise UsageError("--tol applies only to --mode float")
        return EXACT
    tolerance = config.tolerance if args.tol is None else args.tol
    if tolerance < 0:
        raise UsageError(f"--tol must be nonnegative, got {tolerance}")
    return CompareMode.tolerant(tolerance)


def load_instance_file(path: str) -> InstanceFile:
    """Read an instance file from a path, or from stdin for '-'."""
    if path == "-":
        return read_instance_file(sys.stdin.buffer.read())
    try:
        with open(path, "rb") as handle:
            data = handle.read()
    except OSError as e:
        raise UsageError(f"cannot read instance file {path!r}: {e.strerror or e}")
    return read_instance_file(data)


def _check_combination(algorithm: str, goal: Goal, mode: CompareMode, blocks: bool) -> None:
    if algorithm in ("recursive2", "four-table", "brute") and not mode.is_exact:
        raise UnsupportedConfigurationError(
            f"{algorithm} requires exact mode; float mode is supported by sort2 only"
        )
    if algorithm == "four-table" and goal not in (Goal.FEASIBILITY, Goal.OPTIMIZE):
        raise UnsupportedConfigurationError(
            f"four-table supports feasibility and optimize, not {goal.value}; use sort2"
        )
    if algorithm == "brute" and goal is Goal.ENUMERATE:
        raise UnsupportedConfigurationError("brute reports counts only; enumerate with sort2 or recursive2")
    if blocks and algorithm not in TWO_TABLE:
        raise UnsupportedConfigurationError(f"--blocks needs a two-table match list; {algorithm} has none")


def dispatch(
    algorithm: str,
    instance: Instance,
    goal: Goal,
    mode: CompareMode = EXACT,
    limit: Optional[int] = None,
    threads: Optional[int] = None,
) -> SolveOutcome:
    """Run a concrete solver (not "auto") on an instance."""
    if algorithm in TWO_TABLE:
        return solve_two_table(instance, goal, TWO_TABLE[algorithm], mode, limit=limit, threads=threads)
    if algorithm == "four-table":
        return solve_four_table(instance, goal, mode, threads=threads)
    if algorithm == "brute":
        if not mode.is_exact:
            raise UnsupportedConfigurationError("brute requires exact mode")
        return brute_force_solve(instance, goal)
    raise UsageError(f"unknown algorithm {algorithm!r}; expected one of {', '.join(ALGORITHMS[1:])}")


@handle_solver_errors("run_solve")
def run_solve(args: argparse.Namespace) -> Tuple[int, ResultReport]:
    """
    Execute the solve command.

    Args:
        args: Parsed arguments from add_solve_arguments()

    Returns:
        (exit status, report). The report is not printed here.

    Raises:
        SolverError: Usage, parse and unsupported-combination errors (exit status 2)
    """
    config = get_solver_config()
    if args.limit is not None and args.limit < 0:
        raise UsageError(f"--limit must be nonnegative, got {args.limit}")
    if args.threads is not None and args.threads < 1:
        raise UsageError(f"--threads must be at least 1, got {args.threads}")
    goal = Goal(args.goal)
    mode = _compare_mode(args, config)

    instance_file = load_instance_file(args.input)
    instance = instance_file.instance
    algorithm = select_algorithm(args.algorithm, instance, goal, mode, config)
    _check_combination(algorithm, goal, mode, args.blocks)

    # blocks replace enumerated witnesses; counting still fills the full match list
    solve_goal = Goal.COUNT if args.blocks and goal is Goal.ENUMERATE else goal
    if solve_goal is Goal.ENUMERATE and args.limit is None:
        logger.warning("[run_solve] enumerating without --limit; output may hold every solution")

    logger.info(
        f"[run_solve] {args.input}: n={instance.n} m={instance.m} algorithm={algorithm} "
        f"goal={goal.value} mode={mode.name}"
    )
    outcome = dispatch(algorithm, instance, solve_goal, mode, limit=args.limit, threads=args.threads)

    provenance = {"input": args.input, "algorithm": algorithm, "goal": goal.value}
    provenance.update(instance_file.metadata())
    report = create_result_report(
        outcome, instance, mode.name, provenance=provenance, include_blocks=args.blocks
    )
    status = EXIT_FEASIBLE if outcome.is_feasible else EXIT_INFEASIBLE
    return status, report
