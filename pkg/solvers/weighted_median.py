"""
Weighted Median Selection

Deterministic worst-case linear selection. The pivot is the median of the
medians of groups of five, which discards a constant fraction of the
candidates per round; the weighted search then keeps only the side that must
contain the answer.
"""

import logging
from typing import List, Sequence, Tuple

from core.errors import ContractViolation
from core.scalars import Scalar

logger = logging.getLogger(__name__)

WeightedItem = Tuple[Scalar, Scalar]


def select_kth(values: Sequence[Scalar], k: int) -> Scalar:
    """
    Return the k-th smallest value (0-based) in worst-case linear time.

    Raises:
        ContractViolation: If k is out of range
    """
    if not 0 <= k < len(values):
        raise ContractViolation(f"cannot select index {k} from {len(values)} values")
    candidates = list(values)
    while True:
        if len(candidates) <= 5:
            return sorted(candidates)[k]
        pivot = median_of_medians(candidates)
        less = [value for value in candidates if value < pivot]
        greater = [value for value in candidates if value > pivot]
        equal_count = len(candidates) - len(less) - len(greater)
        if k < len(less):
            candidates = less
        elif k < len(less) + equal_count:
            return pivot
        else:
            k -= len(less) + equal_count
            candidates = greater


def median_of_medians(values: Sequence[Scalar]) -> Scalar:
    """Median of the medians of consecutive groups of five."""
    medians = []
    for start in range(0, len(values), 5):
        group = sorted(values[start:start + 5])
        medians.append(group[(len(group) - 1) // 2])
    if len(medians) == 1:
        return medians[0]
    return select_kth(medians, (len(medians) - 1) // 2)


def weighted_median(items: Sequence[WeightedItem], heuristic_pivot: bool = False) -> Scalar:
    """
    Find a value k of the items such that the weight strictly below k and the
    weight strictly above k are each at most half of the total weight.

    Args:
        items: (value, weight) pairs with positive weights
        heuristic_pivot: Use the middle candidate as pivot instead of the
            median of medians; usually faster, without the linear-time bound

    Returns:
        A weighted median occurring among the item values

    Raises:
        ContractViolation: On empty input or a nonpositive weight
    """
    if not items:
        raise ContractViolation("weighted median of an empty sequence")
    total = 0
    for value, weight in items:
        if weight <= 0:
            raise ContractViolation(f"weights must be positive, got {weight} for value {value}")
        total += weight

    below = 0
    above = 0
    candidates: List[WeightedItem] = list(items)
    while True:
        if heuristic_pivot:
            pivot = candidates[len(candidates) // 2][0]
        else:
            pivot = median_of_medians([value for value, _ in candidates])

        less: List[WeightedItem] = []
        greater: List[WeightedItem] = []
        less_weight = equal_weight = greater_weight = 0
        for item in candidates:
            value, weight = item
            if value < pivot:
                less.append(item)
                less_weight += weight
            elif value > pivot:
                greater.append(item)
                greater_weight += weight
            else:
                equal_weight += weight

        if 2 * (below + less_weight) > total:
            above += equal_weight + greater_weight
            candidates = less
        elif 2 * (above + greater_weight) > total:
            below += less_weight + equal_weight
            candidates = greater
        else:
            return pivot


def is_weighted_median(items: Sequence[WeightedItem], k: Scalar) -> bool:
    """Check both half-weight inequalities for a candidate k."""
    total = sum(weight for _, weight in items)
    below = sum(weight for value, weight in items if value < k)
    above = sum(weight for value, weight in items if value > k)
    return 2 * below <= total and 2 * above <= total
