"""Oracle equivalence across every solver path on seeded random instances."""

import pytest

from core.instance import Goal, Status, is_feasible_assignment
from solvers.brute_force import brute_force_solve
from solvers.four_table import solve_four_table
from solvers.two_table import MatchAlgorithm, solve_two_table
from tools.generators import Family, GenSpec, generate

CONSTRAINT_COUNTS = (1, 2, 4, 8)


def random_spec(seed: int) -> GenSpec:
    n = 4 + seed % 13
    m = CONSTRAINT_COUNTS[(seed // 13) % len(CONSTRAINT_COUNTS)]
    return GenSpec(family=Family.RANDOM, n=n, m=m, seed=seed, coeff_range=5, density=1.0)


def check_agreement(instance):
    oracle = brute_force_solve(instance, Goal.OPTIMIZE)
    by_sort = solve_two_table(instance, Goal.COUNT, MatchAlgorithm.SORT)
    by_recursion = solve_two_table(instance, Goal.COUNT, MatchAlgorithm.RECURSIVE)
    sort_optimum = solve_two_table(instance, Goal.OPTIMIZE, MatchAlgorithm.SORT)
    recursive_optimum = solve_two_table(instance, Goal.OPTIMIZE, MatchAlgorithm.RECURSIVE)
    four = solve_four_table(instance, Goal.OPTIMIZE)

    assert by_sort.solution_count == by_recursion.solution_count == oracle.solution_count
    for outcome in (sort_optimum, recursive_optimum, four):
        assert outcome.status == oracle.status
        assert outcome.objective == oracle.objective
    for outcome in (by_sort, by_recursion, sort_optimum, recursive_optimum, four, oracle):
        if outcome.witness is not None:
            assert is_feasible_assignment(instance, outcome.witness)


@pytest.mark.parametrize("seed", range(500))
def test_random_instances(seed):
    instance, _ = generate(random_spec(seed))
    check_agreement(instance)


@pytest.mark.parametrize("seed", range(60))
def test_planted_instances(seed):
    spec = GenSpec(family=Family.PLANTED, n=4 + seed % 11, m=1 + seed % 3, seed=seed, coeff_range=2)
    instance, _ = generate(spec)
    check_agreement(instance)
    assert solve_four_table(instance, Goal.FEASIBILITY).status is Status.FEASIBLE


def test_choose_two_optimum_on_every_path(choose_two):
    assert brute_force_solve(choose_two).objective == 3
    assert solve_two_table(choose_two, algo=MatchAlgorithm.SORT).objective == 3
    assert solve_two_table(choose_two, algo=MatchAlgorithm.RECURSIVE).objective == 3
    assert solve_four_table(choose_two).objective == 3


def test_subset_sum_count_on_counting_paths(subset_sum_2357):
    assert brute_force_solve(subset_sum_2357).solution_count == 2
    for algo in MatchAlgorithm:
        assert solve_two_table(subset_sum_2357, Goal.COUNT, algo).solution_count == 2
