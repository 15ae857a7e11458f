"""
Vector Equality

Given two sets of m-dimensional vectors U and V, report every pair u = v as a
list of match blocks: disjoint (U-range x V-range) products over an ordering
of each set. Two algorithms produce the same pair set:

- sort_vector_equality: sort both sets lexicographically and merge with two
  cursors, emitting one block per run of equal vectors.
- recursive_vector_equality: quicksort-like three-way partitioning around the
  weighted median of one coordinate, descending a coordinate on the "equal"
  branch. Optional tracing checks the pivot and the per-node shrinking of
  the measure |U| * |V| * 2^m.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

from core.config import get_solver_config
from core.errors import ContractViolation, PairSetCapExceeded, UnsupportedConfigurationError
from core.scalars import EXACT, CompareMode, LexVector, Ordering, compare_lex
from solvers.weighted_median import is_weighted_median, weighted_median

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VectorSet:
    """Vectors of one dimension, each labeled with the id used for decoding."""

    vectors: Tuple[LexVector, ...]
    ids: Tuple[int, ...]

    def __post_init__(self):
        if len(self.vectors) != len(self.ids):
            raise ContractViolation(f"{len(self.vectors)} vectors but {len(self.ids)} ids")
        if self.vectors:
            m = len(self.vectors[0])
            for vector in self.vectors:
                if len(vector) != m:
                    raise ContractViolation(f"vector set mixes dimensions {m} and {len(vector)}")

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence], ids: Optional[Sequence[int]] = None) -> "VectorSet":
        vectors = tuple(tuple(vector) for vector in vectors)
        if ids is None:
            ids = range(len(vectors))
        return cls(vectors=vectors, ids=tuple(ids))

    @property
    def dimension(self) -> Optional[int]:
        return len(self.vectors[0]) if self.vectors else None

    def __len__(self) -> int:
        return len(self.vectors)


class MatchBlock(NamedTuple):
    """Every u in u_range equals every v in v_range; both ranges are nonempty."""

    u_range: range
    v_range: range
    key: LexVector

    @property
    def pair_count(self) -> int:
        return len(self.u_range) * len(self.v_range)


@dataclass
class MatchList:
    """
    Compressed representation of all matched pairs.

    Block ranges index u_order and v_order, which list the original ids of U
    and V in the order the algorithm arranged them.
    """

    blocks: List[MatchBlock]
    u_order: Tuple[int, ...]
    v_order: Tuple[int, ...]
    comparisons: int = 0
    early_exit: bool = False

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[MatchBlock]:
        return iter(self.blocks)

    @property
    def pair_count(self) -> int:
        return sum(block.pair_count for block in self.blocks)

    def u_ids(self, block: MatchBlock) -> Tuple[int, ...]:
        return self.u_order[block.u_range.start:block.u_range.stop]

    def v_ids(self, block: MatchBlock) -> Tuple[int, ...]:
        return self.v_order[block.v_range.start:block.v_range.stop]


@dataclass
class TraceNode:
    """One node of the recursive algorithm."""

    depth: int
    u_size: int
    v_size: int
    remaining_dim: int
    kind: str
    pivot: object = None
    children: Tuple[Tuple[int, int], ...] = ()
    median_ok: bool = True
    measure_ok: bool = True


@dataclass
class RecursionTrace:
    """Per-node records of a recursive_vector_equality run."""

    nodes: List[TraceNode] = field(default_factory=list)
    top_u: int = 0
    top_v: int = 0
    top_dim: int = 0

    @property
    def max_depth(self) -> int:
        return max((node.depth for node in self.nodes), default=0)

    @property
    def depth_bound(self) -> float:
        """log2(|U| * |V| * 2^m) + 1 for the top-level call."""
        if self.top_u == 0 or self.top_v == 0:
            return 1.0
        return math.log2(self.top_u * self.top_v) + self.top_dim + 1

    def violations(self) -> List[TraceNode]:
        return [node for node in self.nodes if not (node.median_ok and node.measure_ok)]


def _check_dimensions(U: VectorSet, V: VectorSet) -> Optional[int]:
    if U.dimension is not None and V.dimension is not None and U.dimension != V.dimension:
        raise ContractViolation(f"U has dimension {U.dimension}, V has dimension {V.dimension}")
    return U.dimension if U.dimension is not None else V.dimension


def _sorted_positions(vectors: VectorSet) -> List[int]:
    # ties between equal vectors break on the original id
    return sorted(range(len(vectors)), key=lambda p: (vectors.vectors[p], vectors.ids[p]))


def sort_vector_equality(
    U: VectorSet,
    V: VectorSet,
    mode: CompareMode = EXACT,
    stop_after_first: bool = False,
) -> MatchList:
    """
    Solve vector equality by sorting both sets and merging with two cursors.

    Sorting always uses strict value order; tolerant mode relaxes only the
    equality tests of the merge.

    Args:
        U: Left vector set
        V: Right vector set
        mode: Comparison mode used by the merge
        stop_after_first: Return after the first block (feasibility short-circuit)

    Returns:
        MatchList of maximal runs of equal vectors

    Raises:
        ContractViolation: If the dimensions differ
    """
    _check_dimensions(U, V)
    u_positions = _sorted_positions(U)
    v_positions = _sorted_positions(V)
    u_sorted = [U.vectors[p] for p in u_positions]
    v_sorted = [V.vectors[p] for p in v_positions]
    u_order = tuple(U.ids[p] for p in u_positions)
    v_order = tuple(V.ids[p] for p in v_positions)

    comparisons = 0
    exact = mode.is_exact

    def compare(left: LexVector, right: LexVector) -> int:
        nonlocal comparisons
        comparisons += 1
        if exact:
            return (left > right) - (left < right)
        return int(compare_lex(left, right, mode))

    blocks: List[MatchBlock] = []
    early_exit = False
    alpha, beta = 0, 0
    size_u, size_v = len(u_sorted), len(v_sorted)
    while alpha < size_u and beta < size_v:
        order = compare(u_sorted[alpha], v_sorted[beta])
        if order > 0:
            beta += 1
        elif order < 0:
            alpha += 1
        else:
            alpha_start, beta_start = alpha, beta
            key = u_sorted[alpha]
            while alpha < size_u and compare(key, u_sorted[alpha]) == Ordering.EQUAL:
                alpha += 1
            while beta < size_v and compare(key, v_sorted[beta]) == Ordering.EQUAL:
                beta += 1
            blocks.append(MatchBlock(range(alpha_start, alpha), range(beta_start, beta), key))
            if stop_after_first:
                early_exit = alpha < size_u and beta < size_v
                break

    logger.debug(f"[sort_vector_equality] |U|={size_u} |V|={size_v} blocks={len(blocks)} comparisons={comparisons}")
    return MatchList(blocks, u_order, v_order, comparisons=comparisons, early_exit=early_exit)


def recursive_vector_equality(
    U: VectorSet,
    V: VectorSet,
    mode: CompareMode = EXACT,
    trace: Optional[RecursionTrace] = None,
    heuristic_pivot: Optional[bool] = None,
) -> MatchList:
    """
    Solve vector equality by weighted-median partitioning.

    At a node (U, V, i) the weighted median k of coordinate i over U and V is
    taken with weight |V| for every element of U and |U| for every element of
    V. Both sets split into (> k, = k, < k) parts; the "=" parts continue at
    coordinate i + 1. Blocks come out in the order greater, equal, less.

    Args:
        U: Left vector set
        V: Right vector set
        mode: Must be exact
        trace: Optional RecursionTrace to populate
        heuristic_pivot: Override the configured pivot rule

    Returns:
        MatchList covering exactly the equal pairs

    Raises:
        UnsupportedConfigurationError: In tolerant mode
        ContractViolation: If the dimensions differ
    """
    if not mode.is_exact:
        raise UnsupportedConfigurationError(
            "the recursive vector equality path requires exact mode; use the sort path for tolerant matching"
        )
    m = _check_dimensions(U, V) or 0
    if heuristic_pivot is None:
        heuristic_pivot = get_solver_config().heuristic_pivot
    if trace is not None:
        trace.top_u, trace.top_v, trace.top_dim = len(U), len(V), m

    blocks: List[MatchBlock] = []
    u_order: List[int] = []
    v_order: List[int] = []
    u_matched: Set[int] = set()
    v_matched: Set[int] = set()

    # (u positions, v positions, coordinate, depth); popped in output order
    stack: List[Tuple[List[int], List[int], int, int]] = [(list(range(len(U))), list(range(len(V))), 0, 0)]
    while stack:
        us, vs, i, depth = stack.pop()
        remaining = m - i
        if not us or not vs:
            if trace is not None:
                trace.nodes.append(TraceNode(depth, len(us), len(vs), remaining, "empty"))
            continue
        if i >= m:
            if trace is not None:
                trace.nodes.append(TraceNode(depth, len(us), len(vs), remaining, "match"))
            u_start, v_start = len(u_order), len(v_order)
            u_order.extend(U.ids[p] for p in us)
            v_order.extend(V.ids[p] for p in vs)
            u_matched.update(us)
            v_matched.update(vs)
            blocks.append(MatchBlock(range(u_start, len(u_order)), range(v_start, len(v_order)), U.vectors[us[0]]))
            continue

        weight_u, weight_v = len(vs), len(us)
        items = [(U.vectors[p][i], weight_u) for p in us] + [(V.vectors[p][i], weight_v) for p in vs]
        k = weighted_median(items, heuristic_pivot=heuristic_pivot)

        u_greater, u_equal, u_less = _partition(U, us, i, k)
        v_greater, v_equal, v_less = _partition(V, vs, i, k)

        if trace is not None:
            measure = 2 * len(u_greater) * len(v_greater) + 2 * len(u_less) * len(v_less)
            measure += len(u_equal) * len(v_equal)
            trace.nodes.append(
                TraceNode(
                    depth,
                    len(us),
                    len(vs),
                    remaining,
                    "split",
                    pivot=k,
                    children=(
                        (len(u_greater), len(v_greater)),
                        (len(u_equal), len(v_equal)),
                        (len(u_less), len(v_less)),
                    ),
                    median_ok=is_weighted_median(items, k),
                    measure_ok=measure <= len(us) * len(vs),
                )
            )

        stack.append((u_less, v_less, i, depth + 1))
        stack.append((u_equal, v_equal, i + 1, depth + 1))
        stack.append((u_greater, v_greater, i, depth + 1))

    u_order.extend(U.ids[p] for p in range(len(U)) if p not in u_matched)
    v_order.extend(V.ids[p] for p in range(len(V)) if p not in v_matched)
    if trace is not None:
        logger.debug(
            f"[recursive_vector_equality] nodes={len(trace.nodes)} max_depth={trace.max_depth} "
            f"bound={trace.depth_bound:.2f} violations={len(trace.violations())}"
        )
    return MatchList(blocks, tuple(u_order), tuple(v_order))


def _partition(vectors: VectorSet, positions: List[int], i: int, k) -> Tuple[List[int], List[int], List[int]]:
    greater, equal, less = [], [], []
    for p in positions:
        value = vectors.vectors[p][i]
        if value > k:
            greater.append(p)
        elif value < k:
            less.append(p)
        else:
            equal.append(p)
    return greater, equal, less


def scan_vector_equality(U: VectorSet, V: VectorSet) -> Set[Tuple[int, int]]:
    """Reference O(|U| * |V| * m) scan returning every equal (u_id, v_id) pair."""
    _check_dimensions(U, V)
    return {
        (u_id, v_id)
        for u_vec, u_id in zip(U.vectors, U.ids)
        for v_vec, v_id in zip(V.vectors, V.ids)
        if u_vec == v_vec
    }


def canonical_pair_set(match_list: MatchList, cap: Optional[int] = None) -> Set[Tuple[int, int]]:
    """
    Materialize the matched (u_id, v_id) pairs.

    Args:
        match_list: Output of either algorithm
        cap: Largest pair count to materialize; defaults to IP01_PAIR_SET_CAP

    Raises:
        PairSetCapExceeded: Carrying the exact count when it exceeds the cap
    """
    if cap is None:
        cap = get_solver_config().pair_set_cap
    count = match_list.pair_count
    if count > cap:
        raise PairSetCapExceeded(count, cap)
    pairs: Set[Tuple[int, int]] = set()
    for block in match_list.blocks:
        for u_id in match_list.u_ids(block):
            for v_id in match_list.v_ids(block):
                pairs.add((u_id, v_id))
    return pairs
