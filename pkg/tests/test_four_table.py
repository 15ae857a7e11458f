from itertools import product

import pytest

from core.errors import UnsupportedConfigurationError
from core.instance import Goal, Status, evaluate, is_feasible_assignment, validate_instance
from core.scalars import CompareMode, add_vectors
from solvers.four_table import (
    MinTracker,
    QueueEntry,
    SweepTrace,
    build_quarter_tables,
    solve_four_table,
    vector_sum_equality_min,
)
from solvers.two_table import solve_two_table
from tools.generators import Family, GenSpec, generate


def vecs(table):
    return [entry.vec for entry in table]


class TestQuarterTables:
    def test_signed_construction(self):
        tables = build_quarter_tables(validate_instance(4, 1, [[1, 1, 1, 1]], [2]))
        assert vecs(tables.U) == [(0,), (1,)]
        assert vecs(tables.V) == [(0,), (1,)]
        assert vecs(tables.S) == [(-1,), (0,)]
        assert vecs(tables.T) == [(1,), (2,)]

    def test_zero_instance(self):
        tables = build_quarter_tables(validate_instance(5, 2, [[0] * 5, [0] * 5], [0, 0]))
        for table in (tables.U, tables.V, tables.S, tables.T):
            assert all(vec == (0, 0) for vec in vecs(table))

    def test_degenerate_parts(self):
        tables = build_quarter_tables(validate_instance(2, 1, [[1, 2]], [3]))
        assert (len(tables.U), len(tables.V), len(tables.S), len(tables.T)) == (2, 2, 1, 1)
        assert vecs(tables.S) == [(0,)]
        assert vecs(tables.T) == [(3,)]

    def test_sorted_by_vector_then_code(self):
        instance, _ = generate(GenSpec(family=Family.RANDOM, n=14, m=2, seed=3, coeff_range=1))
        tables = build_quarter_tables(instance)
        for table in (tables.U, tables.V, tables.S, tables.T):
            keys = [(entry.vec, entry.code) for entry in table]
            assert keys == sorted(keys)


class TestSweep:
    def test_choose_two(self, choose_two):
        trace = SweepTrace()
        outcome = vector_sum_equality_min(build_quarter_tables(choose_two), Goal.OPTIMIZE, trace=trace)
        assert outcome.status is Status.OPTIMAL
        assert outcome.objective == 3
        assert outcome.witness == (0, 1, 0, 1)
        assert [block.key for block in trace.drained] == [(0,), (1,), (2,)]
        by_key = {block.key: block for block in trace.drained}
        assert (by_key[(1,)].left_min, by_key[(1,)].right_min) == (1, 2)

    def test_zero_instance_prefers_lowest_codes(self):
        instance = validate_instance(4, 1, [[0, 0, 0, 0]], [0], [0, 0, 0, 0])
        outcome = vector_sum_equality_min(build_quarter_tables(instance))
        assert outcome.objective == 0
        assert outcome.witness == (0, 0, 0, 0)

    def test_infeasible(self, unreachable):
        outcome = vector_sum_equality_min(build_quarter_tables(unreachable))
        assert outcome.status is Status.INFEASIBLE
        assert outcome.witness is None and outcome.objective is None

    def test_feasibility_stops_after_first_block(self, choose_two):
        trace = SweepTrace()
        outcome = vector_sum_equality_min(build_quarter_tables(choose_two), Goal.FEASIBILITY, trace=trace)
        assert outcome.status is Status.FEASIBLE
        assert len(trace.drained) == 1
        assert outcome.stats.early_exit

    def test_feasibility_ignores_costs(self, choose_two):
        trace = SweepTrace()
        outcome = vector_sum_equality_min(build_quarter_tables(choose_two), Goal.FEASIBILITY, trace=trace)
        block = trace.drained[0]
        assert (block.left_min, block.right_min) == (0, 0)
        assert outcome.objective == 0


def test_queue_entries_order_by_sum_then_positions():
    entries = [QueueEntry((1, 0), 0, 1), QueueEntry((0, 5), 3, 0), QueueEntry((1, 0), 0, 0)]
    assert sorted(entries) == [QueueEntry((0, 5), 3, 0), QueueEntry((1, 0), 0, 0), QueueEntry((1, 0), 0, 1)]


def test_min_tracker():
    tracker = MinTracker()
    assert tracker.is_infinite and tracker.solution is None
    assert tracker.offer(5, (0, 0, 0, 0))
    assert not tracker.offer(5, (1, 1, 1, 1))
    assert tracker.offer(-2, (1, 0, 1, 0))
    assert (tracker.value, tracker.solution) == (-2, (1, 0, 1, 0))


class TestSolveFourTable:
    def test_subset_sum_feasibility(self, subset_sum_2357):
        outcome = solve_four_table(subset_sum_2357, Goal.FEASIBILITY)
        assert outcome.status is Status.FEASIBLE
        assert outcome.objective == 0
        assert is_feasible_assignment(subset_sum_2357, outcome.witness)

    def test_feasibility_reports_witness_cost(self, choose_two):
        outcome = solve_four_table(choose_two, Goal.FEASIBILITY)
        assert outcome.status is Status.FEASIBLE
        assert is_feasible_assignment(choose_two, outcome.witness)
        assert outcome.objective == evaluate(choose_two, outcome.witness)[1]

    def test_optimize(self, choose_two):
        outcome = solve_four_table(choose_two, Goal.OPTIMIZE)
        assert outcome.status is Status.OPTIMAL
        assert outcome.objective == 3
        assert outcome.solver == "four-table"

    def test_infeasible(self, unreachable):
        assert solve_four_table(unreachable).status is Status.INFEASIBLE

    def test_tolerant_mode_unsupported(self, choose_two):
        with pytest.raises(UnsupportedConfigurationError):
            solve_four_table(choose_two, mode=CompareMode.tolerant(1e-9))

    @pytest.mark.parametrize("goal", [Goal.COUNT, Goal.ENUMERATE])
    def test_counting_goals_unsupported(self, choose_two, goal):
        with pytest.raises(UnsupportedConfigurationError):
            solve_four_table(choose_two, goal)


def brute_block_minimum(left, right, key):
    return min(
        (a.weight + b.weight for a, b in product(left, right) if add_vectors(a.vec, b.vec) == key),
        default=None,
    )


@pytest.mark.parametrize("seed", range(40))
def test_sweep_invariants(seed):
    spec = GenSpec(family=Family.PLANTED, n=4 + seed % 9, m=1 + seed % 3, seed=seed, coeff_range=2)
    instance, _ = generate(spec)
    tables = build_quarter_tables(instance)
    trace = SweepTrace()
    outcome = vector_sum_equality_min(tables, Goal.OPTIMIZE, trace=trace)

    assert trace.is_monotone()
    assert trace.duplicate_pushes == 0
    assert trace.peak_left_queue <= len(tables.U)
    assert trace.peak_right_queue <= len(tables.S)
    assert outcome.stats.peak_live_entries <= tables.entries_built + len(tables.U) + len(tables.S)
    for block in trace.drained:
        assert block.left_min == brute_block_minimum(tables.U, tables.V, block.key)
        assert block.right_min == brute_block_minimum(tables.S, tables.T, block.key)


@pytest.mark.parametrize("seed", range(60))
def test_agrees_with_two_table(seed):
    family = Family.PLANTED if seed % 2 else Family.RANDOM
    spec = GenSpec(family=family, n=2 + seed % 13, m=1 + seed % 4, seed=seed, coeff_range=3)
    instance, _ = generate(spec)
    four = solve_four_table(instance, Goal.OPTIMIZE)
    two = solve_two_table(instance, Goal.OPTIMIZE)
    assert four.status == two.status
    assert four.objective == two.objective
    if four.witness is not None:
        assert is_feasible_assignment(instance, four.witness)
