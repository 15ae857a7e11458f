import pytest

from core.config import reload_solver_config
from core.errors import OracleCapExceeded
from core.instance import Goal, Status, validate_instance
from solvers.brute_force import brute_force_solve


def test_subset_sum_count(subset_sum_2357):
    outcome = brute_force_solve(subset_sum_2357, Goal.COUNT)
    assert outcome.status is Status.FEASIBLE
    assert outcome.solution_count == 2


def test_infeasible(unreachable):
    outcome = brute_force_solve(unreachable)
    assert outcome.status is Status.INFEASIBLE
    assert outcome.solution_count == 0
    assert outcome.witness is None


def test_no_constraints_picks_negative_costs():
    outcome = brute_force_solve(validate_instance(2, 0, [], [], [-1, 2]), Goal.OPTIMIZE)
    assert outcome.status is Status.OPTIMAL
    assert outcome.objective == -1
    assert outcome.witness == (1, 0)
    assert outcome.solution_count == 4


def test_optimum(choose_two):
    outcome = brute_force_solve(choose_two)
    assert (outcome.objective, outcome.witness) == (3, (0, 1, 0, 1))


def test_lexicographically_least_optimal_witness():
    outcome = brute_force_solve(validate_instance(3, 1, [[1, 1, 1]], [1]))
    assert outcome.witness == (0, 0, 1)
    assert outcome.solution_count == 3


def test_stats(subset_sum_2357):
    stats = brute_force_solve(subset_sum_2357).stats
    assert stats.table_entries_built == 16
    assert stats.extra["assignments_scanned"] == 16


def test_cap():
    instance = validate_instance(5, 1, [[1] * 5], [1])
    with pytest.raises(OracleCapExceeded) as excinfo:
        brute_force_solve(instance, cap=4)
    assert (excinfo.value.n, excinfo.value.cap) == (5, 4)


def test_cap_defaults_to_config(monkeypatch):
    monkeypatch.setenv("IP01_BRUTE_FORCE_CAP", "3")
    reload_solver_config()
    with pytest.raises(OracleCapExceeded):
        brute_force_solve(validate_instance(4, 1, [[1] * 4], [1]))
