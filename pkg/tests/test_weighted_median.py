from fractions import Fraction

import numpy as np
import pytest

from core.errors import ContractViolation
from solvers.weighted_median import is_weighted_median, median_of_medians, select_kth, weighted_median


@pytest.mark.parametrize(
    "items, expected",
    [
        ([(1, 1), (2, 1), (3, 1)], 2),
        ([(1, 3), (2, 1)], 1),
        ([(5, 1), (5, 2), (5, 7)], 5),
        ([(Fraction(1, 2), 1), (Fraction(1, 3), 5)], Fraction(1, 3)),
    ],
)
@pytest.mark.parametrize("heuristic_pivot", [False, True])
def test_examples(items, expected, heuristic_pivot):
    assert weighted_median(items, heuristic_pivot=heuristic_pivot) == expected


def test_empty_input():
    with pytest.raises(ContractViolation):
        weighted_median([])


@pytest.mark.parametrize("weight", [0, -1])
def test_nonpositive_weight(weight):
    with pytest.raises(ContractViolation):
        weighted_median([(1, 1), (2, weight)])


@pytest.mark.parametrize("heuristic_pivot", [False, True])
def test_random_inputs_satisfy_both_half_weight_bounds(heuristic_pivot):
    rng = np.random.default_rng(20240611)
    for _ in range(300):
        size = int(rng.integers(1, 120))
        values = rng.integers(-6, 7, size=size).tolist()
        weights = rng.integers(1, 9, size=size).tolist()
        items = list(zip(values, weights))
        k = weighted_median(items, heuristic_pivot=heuristic_pivot)
        assert k in values
        assert is_weighted_median(items, k)


def test_is_weighted_median_rejects_off_center_values():
    items = [(1, 3), (2, 1)]
    assert is_weighted_median(items, 1)
    assert not is_weighted_median(items, 2)


class TestSelection:
    def test_select_kth_matches_sorting(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            values = rng.integers(-50, 50, size=int(rng.integers(1, 200))).tolist()
            ordered = sorted(values)
            for k in (0, len(values) // 2, len(values) - 1):
                assert select_kth(values, k) == ordered[k]

    @pytest.mark.parametrize("k", [-1, 3])
    def test_select_kth_out_of_range(self, k):
        with pytest.raises(ContractViolation):
            select_kth([1, 2, 3], k)

    def test_median_of_medians_is_a_member(self):
        values = list(range(37, 0, -1))
        pivot = median_of_medians(values)
        assert pivot in values
        # at least 3/10 of the values fall on each side, minus rounding
        assert sum(value < pivot for value in values) >= 6
        assert sum(value > pivot for value in values) >= 6
