"""
Four-Table Solver

Space-reduced variant of the two-table method. The variables split into four
blocks giving tables U, V, S, T with

    u = sum_{X1} A_j x_j        v = sum_{X2} A_j x_j
    s = -sum_{X3} A_j x_j       t = b - sum_{X4} A_j x_j

so x is feasible iff u + v = s + t. Two priority queues stream the pair sums
u + v and s + t in ascending lexicographic order while holding at most |U|
and |S| entries, and each common sum is drained from both queues to take the
best left and right weights.
"""

import heapq
import logging
import time
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Set, Tuple

from core.errors import SolverError, UnsupportedConfigurationError
from core.instance import (
    Assignment,
    Goal,
    Instance,
    SolveOutcome,
    SolveStats,
    Status,
    VariablePartition,
    evaluate,
    is_feasible_assignment,
    split_variables,
)
from core.scalars import EXACT, CompareMode, LexVector, Scalar, add_vectors
from solvers.tables import TableEntry, build_part_table, decode_codes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuarterTables:
    """Four tables, each sorted ascending by (vector, code)."""

    U: List[TableEntry]
    V: List[TableEntry]
    S: List[TableEntry]
    T: List[TableEntry]
    partition: VariablePartition

    @property
    def entries_built(self) -> int:
        return len(self.U) + len(self.V) + len(self.S) + len(self.T)


class QueueEntry(NamedTuple):
    """A pair sum and the positions of its two summands; orders by sum, then positions."""

    sum: LexVector
    left_idx: int
    right_idx: int


@dataclass
class MinTracker:
    """Best combined weight so far; None stands for infinity (no quartet found)."""

    value: Optional[Scalar] = None
    solution: Optional[Tuple[int, int, int, int]] = None

    def offer(self, value: Scalar, solution: Tuple[int, int, int, int]) -> bool:
        if self.value is None or value < self.value:
            self.value = value
            self.solution = solution
            return True
        return False

    @property
    def is_infinite(self) -> bool:
        return self.value is None


@dataclass
class DrainedBlock:
    key: LexVector
    left_min: Scalar
    right_min: Scalar
    left_pairs: int
    right_pairs: int


@dataclass
class SweepTrace:
    """Instrumentation of one vector_sum_equality_min sweep."""

    drained: List[DrainedBlock] = field(default_factory=list)
    pushes: int = 0
    duplicate_pushes: int = 0
    peak_left_queue: int = 0
    peak_right_queue: int = 0
    _seen_left: Set[Tuple[int, int]] = field(default_factory=set, repr=False)
    _seen_right: Set[Tuple[int, int]] = field(default_factory=set, repr=False)

    def record_push(self, side: int, left_idx: int, right_idx: int) -> None:
        seen = self._seen_left if side == 1 else self._seen_right
        pair = (left_idx, right_idx)
        if pair in seen:
            self.duplicate_pushes += 1
        seen.add(pair)
        self.pushes += 1

    def is_monotone(self) -> bool:
        keys = [block.key for block in self.drained]
        return all(a < b for a, b in zip(keys, keys[1:]))


def build_quarter_tables(
    instance: Instance, incremental: Optional[bool] = None, threads: Optional[int] = None
) -> QuarterTables:
    """Enumerate and sort the four quarter tables of an instance."""
    partition = split_variables(instance.n, 4)
    p1, p2, p3, p4 = partition.parts

    def sorted_table(indices, sign, with_rhs=False) -> List[TableEntry]:
        table = build_part_table(
            instance, indices, sign=sign, with_rhs=with_rhs, incremental=incremental, threads=threads
        )
        table.sort(key=lambda entry: (entry.vec, entry.code))
        return table

    return QuarterTables(
        U=sorted_table(p1, 1),
        V=sorted_table(p2, 1),
        S=sorted_table(p3, -1),
        T=sorted_table(p4, -1, with_rhs=True),
        partition=partition,
    )


def decode_quartet(tables: QuarterTables, solution: Tuple[int, int, int, int]) -> Assignment:
    """Assignment from positions (alpha, beta, gamma, delta) in the sorted tables."""
    alpha, beta, gamma, delta = solution
    codes = (tables.U[alpha].code, tables.V[beta].code, tables.S[gamma].code, tables.T[delta].code)
    return decode_codes(codes, tables.partition)


def vector_sum_equality_min(
    tables: QuarterTables,
    goal: Goal = Goal.OPTIMIZE,
    trace: Optional[SweepTrace] = None,
) -> SolveOutcome:
    """
    Find the minimum of w(u) + w(v) + w(s) + w(t) over quartets with u + v = s + t.

    Queue Q1 starts with (u^k + v^1) for every k and Q2 with (s^k + t^1);
    the smaller top is popped and replaced by its right successor. When the
    tops agree on a sum w, every entry with sum w is drained from both queues
    (successors pushed as they go) and MIN1 + MIN2 of the drained block
    competes for the global minimum.

    Args:
        tables: Output of build_quarter_tables
        goal: Optimize, or feasibility (stops after the first drained block)
        trace: Optional SweepTrace to populate

    Returns:
        SolveOutcome whose witness comes from the minimizing quartet
    """
    U, V, S, T = tables.U, tables.V, tables.S, tables.T
    q1 = [QueueEntry(add_vectors(U[k].vec, V[0].vec), k, 0) for k in range(len(U))]
    q2 = [QueueEntry(add_vectors(S[k].vec, T[0].vec), k, 0) for k in range(len(S))]
    heapq.heapify(q1)
    heapq.heapify(q2)
    if trace is not None:
        for entry in q1:
            trace.record_push(1, entry.left_idx, entry.right_idx)
        for entry in q2:
            trace.record_push(2, entry.left_idx, entry.right_idx)
        trace.peak_left_queue, trace.peak_right_queue = len(q1), len(q2)

    peak_queue = len(q1) + len(q2)
    comparisons = 0
    blocks = 0
    early_exit = False
    tracker = MinTracker()
    # feasibility sweeps with c treated as zero
    weighted = goal is Goal.OPTIMIZE

    def advance(queue: List[QueueEntry], entry: QueueEntry, left, right, side: int) -> None:
        nonlocal peak_queue
        successor = entry.right_idx + 1
        if successor < len(right):
            pair_sum = add_vectors(left[entry.left_idx].vec, right[successor].vec)
            heapq.heappush(queue, QueueEntry(pair_sum, entry.left_idx, successor))
            if trace is not None:
                trace.record_push(side, entry.left_idx, successor)
                if side == 1:
                    trace.peak_left_queue = max(trace.peak_left_queue, len(queue))
                else:
                    trace.peak_right_queue = max(trace.peak_right_queue, len(queue))
            peak_queue = max(peak_queue, len(q1) + len(q2))

    while q1 and q2:
        top1, top2 = q1[0], q2[0]
        comparisons += 1
        if top1.sum < top2.sum:
            advance(q1, heapq.heappop(q1), U, V, 1)
        elif top1.sum > top2.sum:
            advance(q2, heapq.heappop(q2), S, T, 2)
        else:
            w = top1.sum
            min1: Optional[Scalar] = None
            sol1 = (0, 0)
            left_pairs = 0
            while q1 and q1[0].sum == w:
                entry = heapq.heappop(q1)
                advance(q1, entry, U, V, 1)
                left_pairs += 1
                weight = U[entry.left_idx].weight + V[entry.right_idx].weight if weighted else 0
                if min1 is None or weight < min1:
                    min1, sol1 = weight, (entry.left_idx, entry.right_idx)
            min2: Optional[Scalar] = None
            sol2 = (0, 0)
            right_pairs = 0
            while q2 and q2[0].sum == w:
                entry = heapq.heappop(q2)
                advance(q2, entry, S, T, 2)
                right_pairs += 1
                weight = S[entry.left_idx].weight + T[entry.right_idx].weight if weighted else 0
                if min2 is None or weight < min2:
                    min2, sol2 = weight, (entry.left_idx, entry.right_idx)

            blocks += 1
            tracker.offer(min1 + min2, (*sol1, *sol2))
            if trace is not None:
                trace.drained.append(DrainedBlock(w, min1, min2, left_pairs, right_pairs))
            if goal is Goal.FEASIBILITY:
                early_exit = bool(q1 and q2)
                break

    stats = SolveStats(
        table_sizes=(len(U), len(V), len(S), len(T)),
        table_entries_built=tables.entries_built,
        comparisons=comparisons,
        blocks=blocks,
        peak_queue_entries=peak_queue,
        peak_live_entries=tables.entries_built + peak_queue,
        early_exit=early_exit,
    )
    outcome = SolveOutcome(status=Status.INFEASIBLE, stats=stats, solver="four-table")
    if not tracker.is_infinite:
        outcome.status = Status.OPTIMAL if goal is Goal.OPTIMIZE else Status.FEASIBLE
        outcome.witness = decode_quartet(tables, tracker.solution)
        outcome.objective = tracker.value
    return outcome


def solve_four_table(
    instance: Instance,
    goal: Goal = Goal.OPTIMIZE,
    mode: CompareMode = EXACT,
    trace: Optional[SweepTrace] = None,
    threads: Optional[int] = None,
) -> SolveOutcome:
    """
    Solve a 0-1 program with the four-table method.

    Raises:
        UnsupportedConfigurationError: Tolerant mode, or a counting/enumeration goal
    """
    if not mode.is_exact:
        raise UnsupportedConfigurationError(
            "the four-table sweep requires exact mode; tolerant solving uses the sort2 path"
        )
    if goal not in (Goal.FEASIBILITY, Goal.OPTIMIZE):
        raise UnsupportedConfigurationError(
            f"the four-table solver supports feasibility and optimize, not {goal.value}; use sort2 for counting"
        )

    started = time.perf_counter()
    tables = build_quarter_tables(instance, threads=threads)
    outcome = vector_sum_equality_min(tables, goal, trace=trace)
    if outcome.witness is not None:
        if not is_feasible_assignment(instance, outcome.witness):
            raise SolverError("witness_verification_failed", f"quartet {outcome.witness} violates Ax = b")
        objective = evaluate(instance, outcome.witness)[1]
        if goal is Goal.FEASIBILITY:
            outcome.objective = objective
        elif objective != outcome.objective:
            raise SolverError(
                "witness_verification_failed",
                f"sweep minimum {outcome.objective} differs from the witness objective {objective}",
            )
    outcome.stats.wall_time = time.perf_counter() - started
    outcome.stats.extra["mode"] = mode.name
    logger.info(
        f"[solve_four_table] n={instance.n} m={instance.m} tables={outcome.stats.table_sizes} "
        f"peak_queue={outcome.stats.peak_queue_entries} status={outcome.status.value} "
        f"in {outcome.stats.wall_time:.3f}s"
    )
    return outcome
