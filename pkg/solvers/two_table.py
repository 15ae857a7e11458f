"""
Two-Table Solver

Meet-in-the-middle reduction of a 0-1 program to vector equality. The
variables split into a left block X1 and a right block X2; every left
assignment yields u = sum_{X1} A_j x_j and every right assignment yields
v = b - sum_{X2} A_j x_j, so x is feasible iff its halves satisfy u = v.
Objective weights are carried alongside and minimized separately on each
side of every match block.
"""

import enum
import logging
import time
from dataclasses import dataclass
from itertools import islice
from typing import Iterator, List, Optional, Tuple

from core.errors import ContractViolation, SolverError, UnsupportedConfigurationError
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
    to_float_instance,
)
from core.scalars import EXACT, CompareMode, Scalar
from solvers.tables import TableEntry, build_part_table, decode_codes
from solvers.vector_equality import (
    MatchBlock,
    MatchList,
    RecursionTrace,
    VectorSet,
    recursive_vector_equality,
    sort_vector_equality,
)

logger = logging.getLogger(__name__)


class MatchAlgorithm(str, enum.Enum):
    SORT = "sort"
    RECURSIVE = "recursive"


@dataclass(frozen=True)
class HalfTables:
    U: List[TableEntry]
    V: List[TableEntry]
    partition: VariablePartition

    @property
    def entries_built(self) -> int:
        return len(self.U) + len(self.V)


def build_half_tables(
    instance: Instance, incremental: Optional[bool] = None, threads: Optional[int] = None
) -> HalfTables:
    """
    Enumerate both half tables of an instance.

    The left table holds u = sum over X1 of A_j x_j, the right table holds
    v = b - sum over X2 of A_j x_j; weights are the matching partial
    objectives. Entry k of each table has code k.
    """
    partition = split_variables(instance.n, 2)
    left, right = partition.parts
    U = build_part_table(instance, left, sign=1, incremental=incremental, threads=threads)
    V = build_part_table(instance, right, sign=-1, with_rhs=True, incremental=incremental, threads=threads)
    return HalfTables(U=U, V=V, partition=partition)


def decode_witness(u_code: int, v_code: int, partition: VariablePartition) -> Assignment:
    """Full assignment from a left code and a right code."""
    if partition.k != 2:
        raise ContractViolation(f"two-table witnesses need a 2-way partition, got {partition.k}")
    return decode_codes((u_code, v_code), partition)


def match_half_tables(
    tables: HalfTables,
    algo: MatchAlgorithm = MatchAlgorithm.SORT,
    mode: CompareMode = EXACT,
    stop_after_first: bool = False,
    trace: Optional[RecursionTrace] = None,
) -> MatchList:
    """Run vector equality over the half tables; ids in the result are entry codes."""
    U = VectorSet(tuple(entry.vec for entry in tables.U), tuple(range(len(tables.U))))
    V = VectorSet(tuple(entry.vec for entry in tables.V), tuple(range(len(tables.V))))
    if algo is MatchAlgorithm.RECURSIVE:
        return recursive_vector_equality(U, V, mode, trace=trace)
    return sort_vector_equality(U, V, mode, stop_after_first=stop_after_first)


def optimize_block(tables: HalfTables, match_list: MatchList, block: MatchBlock) -> Tuple[Scalar, int, int]:
    """
    Minimize w(u) + w(v) over one block by minimizing each side separately.

    Ties go to the lowest code on each side.

    Returns:
        (best weight, left code, right code)
    """
    u_code = min(match_list.u_ids(block), key=lambda code: (tables.U[code].weight, code))
    v_code = min(match_list.v_ids(block), key=lambda code: (tables.V[code].weight, code))
    return tables.U[u_code].weight + tables.V[v_code].weight, u_code, v_code


def _verify(instance: Instance, x: Assignment, tolerance: Optional[float]) -> Assignment:
    if not is_feasible_assignment(instance, x, tolerance):
        raise SolverError("witness_verification_failed", f"decoded assignment {x} violates Ax = b")
    return x


def _iter_block_assignments(
    instance: Instance, tables: HalfTables, match_list: MatchList, tolerance: Optional[float]
) -> Iterator[Assignment]:
    for block in match_list.blocks:
        for u_code in match_list.u_ids(block):
            for v_code in match_list.v_ids(block):
                yield _verify(instance, decode_witness(u_code, v_code, tables.partition), tolerance)


def _prepare(instance: Instance, algo: MatchAlgorithm, mode: CompareMode) -> Tuple[Instance, Optional[float]]:
    if mode.is_exact:
        return instance, None
    if algo is MatchAlgorithm.RECURSIVE:
        raise UnsupportedConfigurationError(
            "the recursive matcher requires exact mode; tolerant solving uses the sort path"
        )
    return to_float_instance(instance), float(mode.epsilon)


def enumerate_solutions(
    instance: Instance,
    limit: Optional[int] = None,
    algo: MatchAlgorithm = MatchAlgorithm.SORT,
    mode: CompareMode = EXACT,
    threads: Optional[int] = None,
) -> Iterator[Assignment]:
    """
    Lazily yield feasible assignments block by block, at most limit of them.

    Every yielded assignment has been checked against Ax = b.
    """
    work, tolerance = _prepare(instance, algo, mode)
    tables = build_half_tables(work, threads=threads)
    match_list = match_half_tables(tables, algo, mode)
    yield from islice(_iter_block_assignments(work, tables, match_list, tolerance), limit)


def solve_two_table(
    instance: Instance,
    goal: Goal = Goal.OPTIMIZE,
    algo: MatchAlgorithm = MatchAlgorithm.SORT,
    mode: CompareMode = EXACT,
    limit: Optional[int] = None,
    trace: Optional[RecursionTrace] = None,
    threads: Optional[int] = None,
) -> SolveOutcome:
    """
    Solve a 0-1 program with the two-table method.

    Args:
        instance: The program
        goal: Feasibility, optimization, counting or enumeration
        algo: Vector equality algorithm used for matching
        mode: Exact, or tolerant (sort path only)
        limit: Maximum number of enumerated assignments
        trace: Optional RecursionTrace for the recursive matcher
        threads: Table construction threads; defaults to config

    Returns:
        SolveOutcome with witness, objective, count and statistics

    Raises:
        UnsupportedConfigurationError: Recursive matching in tolerant mode
    """
    started = time.perf_counter()
    work, tolerance = _prepare(instance, algo, mode)
    solver = "recursive2" if algo is MatchAlgorithm.RECURSIVE else "sort2"

    tables = build_half_tables(work, threads=threads)
    match_list = match_half_tables(
        tables, algo, mode, stop_after_first=goal is Goal.FEASIBILITY, trace=trace
    )

    stats = SolveStats(
        table_sizes=(len(tables.U), len(tables.V)),
        table_entries_built=tables.entries_built,
        comparisons=match_list.comparisons,
        blocks=len(match_list.blocks),
        peak_live_entries=tables.entries_built,
        early_exit=match_list.early_exit,
        extra={"match_algorithm": algo.value, "mode": mode.name},
    )
    outcome = SolveOutcome(status=Status.INFEASIBLE, stats=stats, solver=solver, match_list=match_list)

    if not match_list.blocks:
        outcome.solution_count = 0 if goal in (Goal.COUNT, Goal.ENUMERATE) else None
        if goal is Goal.ENUMERATE:
            outcome.solutions = []
    elif goal is Goal.OPTIMIZE:
        best: Optional[Tuple[Scalar, int, int]] = None
        for block in match_list.blocks:
            candidate = optimize_block(tables, match_list, block)
            if best is None or candidate[0] < best[0]:
                best = candidate
        objective, u_code, v_code = best
        outcome.status = Status.OPTIMAL
        outcome.witness = _verify(work, decode_witness(u_code, v_code, tables.partition), tolerance)
        outcome.objective = objective
        outcome.solution_count = match_list.pair_count
    else:
        first = match_list.blocks[0]
        u_code = match_list.u_ids(first)[0]
        v_code = match_list.v_ids(first)[0]
        outcome.status = Status.FEASIBLE
        outcome.witness = _verify(work, decode_witness(u_code, v_code, tables.partition), tolerance)
        outcome.objective = evaluate(work, outcome.witness)[1]
        if goal is not Goal.FEASIBILITY:
            outcome.solution_count = match_list.pair_count
        if goal is Goal.ENUMERATE:
            outcome.solutions = list(islice(_iter_block_assignments(work, tables, match_list, tolerance), limit))

    stats.wall_time = time.perf_counter() - started
    logger.info(
        f"[solve_two_table] {solver} n={instance.n} m={instance.m} |U|={len(tables.U)} |V|={len(tables.V)} "
        f"blocks={len(match_list.blocks)} status={outcome.status.value} in {stats.wall_time:.3f}s"
    )
    return outcome
