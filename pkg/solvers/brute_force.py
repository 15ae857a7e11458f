"""
Brute-force oracle: exhaustive search over all 2^n assignments.

Used as ground truth by the tests and the benchmark harness.
"""

import logging
import time
from typing import List, Optional, Tuple

from core.config import get_solver_config
from core.errors import OracleCapExceeded
from core.instance import Assignment, Goal, Instance, SolveOutcome, SolveStats, Status
from core.scalars import LexVector, Scalar, add_vectors

logger = logging.getLogger(__name__)


def brute_force_solve(instance: Instance, goal: Goal = Goal.OPTIMIZE, cap: Optional[int] = None) -> SolveOutcome:
    """
    Enumerate every assignment in lexicographic order of (x_1, ..., x_n).

    The outcome always carries the full solution count and the
    lexicographically least optimal witness, whatever the goal.

    Args:
        instance: The program (exact or float values; float is compared exactly)
        goal: Determines only whether a found optimum is reported as OPTIMAL
        cap: Largest accepted n; defaults to IP01_BRUTE_FORCE_CAP

    Raises:
        OracleCapExceeded: If n is above the cap
    """
    if cap is None:
        cap = get_solver_config().brute_force_cap
    if instance.n > cap:
        raise OracleCapExceeded(instance.n, cap)

    started = time.perf_counter()
    n = instance.n
    columns = instance.columns()
    costs = instance.costs
    target: LexVector = tuple(instance.b)

    count = 0
    best: Optional[Scalar] = None
    best_x: Optional[Assignment] = None
    bits: List[int] = [0] * n

    # depth-first with x_j = 0 before x_j = 1 visits assignments in lexicographic order
    stack: List[Tuple[int, LexVector, Scalar, int]] = [(0, tuple(0 for _ in target), 0, 0)]
    while stack:
        j, partial, weight, bit = stack.pop()
        if j > 0:
            bits[j - 1] = bit
        if j == n:
            if partial == target:
                count += 1
                if best is None or weight < best:
                    best, best_x = weight, tuple(bits)
            continue
        stack.append((j + 1, add_vectors(partial, columns[j]), weight + costs[j], 1))
        stack.append((j + 1, partial, weight, 0))

    stats = SolveStats(
        table_sizes=(1 << n,),
        table_entries_built=1 << n,
        peak_live_entries=n + 1,
        wall_time=time.perf_counter() - started,
        extra={"assignments_scanned": 1 << n},
    )
    outcome = SolveOutcome(status=Status.INFEASIBLE, stats=stats, solver="brute", solution_count=count)
    if best_x is not None:
        outcome.status = Status.OPTIMAL if goal is Goal.OPTIMIZE else Status.FEASIBLE
        outcome.witness = best_x
        outcome.objective = best
    logger.info(f"[brute_force_solve] n={n} count={count} status={outcome.status.value} in {stats.wall_time:.3f}s")
    return outcome
