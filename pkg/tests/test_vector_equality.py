import numpy as np
import pytest

from core.errors import ContractViolation, PairSetCapExceeded, UnsupportedConfigurationError
from core.scalars import CompareMode
from solvers.vector_equality import (
    MatchBlock,
    MatchList,
    RecursionTrace,
    VectorSet,
    canonical_pair_set,
    recursive_vector_equality,
    scan_vector_equality,
    sort_vector_equality,
)

ALGORITHMS = [sort_vector_equality, recursive_vector_equality]


def vs(*vectors):
    return VectorSet.from_vectors(vectors)


def assert_disjoint_blocks(match_list: MatchList):
    u_seen, v_seen = set(), set()
    for block in match_list.blocks:
        assert len(block.u_range) > 0 and len(block.v_range) > 0
        assert u_seen.isdisjoint(block.u_range)
        assert v_seen.isdisjoint(block.v_range)
        u_seen.update(block.u_range)
        v_seen.update(block.v_range)


class TestVectorSet:
    def test_mixed_dimensions_rejected(self):
        with pytest.raises(ContractViolation):
            VectorSet.from_vectors([(1, 2), (3,)])

    def test_ids_must_match(self):
        with pytest.raises(ContractViolation):
            VectorSet(vectors=((1,), (2,)), ids=(0,))

    def test_dimension(self):
        assert vs((1, 2)).dimension == 2
        assert VectorSet.from_vectors([]).dimension is None


@pytest.mark.parametrize("algorithm", ALGORITHMS)
class TestExamples:
    def test_single_common_vector(self, algorithm):
        result = algorithm(vs((1, 2), (3, 4)), vs((3, 4), (5, 6)))
        assert canonical_pair_set(result) == {(1, 0)}
        assert [block.key for block in result.blocks] == [(3, 4)]

    def test_identity(self, algorithm):
        result = algorithm(vs((0,)), vs((0,)))
        assert len(result.blocks) == 1
        assert canonical_pair_set(result) == {(0, 0)}

    def test_disjoint(self, algorithm):
        assert algorithm(vs((1,)), vs((2,))).blocks == []

    def test_two_blocks(self, algorithm):
        result = algorithm(vs((1,), (2,)), vs((1,), (2,)))
        assert len(result.blocks) == 2
        assert canonical_pair_set(result) == {(0, 0), (1, 1)}

    def test_empty_side(self, algorithm):
        result = algorithm(VectorSet.from_vectors([]), vs((1,)))
        assert result.blocks == [] and result.pair_count == 0

    def test_dimension_mismatch(self, algorithm):
        with pytest.raises(ContractViolation):
            algorithm(vs((1, 2)), vs((1,)))

    def test_duplicates_form_one_block(self, algorithm):
        result = algorithm(vs((1, 1), (1, 1), (0, 0)), vs((1, 1), (1, 1), (1, 1)))
        assert len(result.blocks) == 1
        assert result.pair_count == 6

    def test_zero_dimensional_vectors_all_match(self, algorithm):
        result = algorithm(vs((), ()), vs((), (), ()))
        assert result.pair_count == 6


def test_sort_orders_equal_vectors_by_id():
    U = VectorSet(vectors=((1,), (1,), (0,)), ids=(5, 2, 9))
    result = sort_vector_equality(U, vs((1,)))
    assert result.u_order == (9, 2, 5)
    assert result.u_ids(result.blocks[0]) == (2, 5)


def test_sort_stop_after_first():
    U = vs((1,), (2,), (3,))
    result = sort_vector_equality(U, U, stop_after_first=True)
    assert len(result.blocks) == 1
    assert result.blocks[0].key == (1,)
    assert result.early_exit


def test_sort_tolerant_merge():
    U, V = vs((1.0,)), vs((1.0 + 1e-12,))
    assert sort_vector_equality(U, V).blocks == []
    assert len(sort_vector_equality(U, V, CompareMode.tolerant(1e-9)).blocks) == 1


def test_recursive_requires_exact_mode():
    with pytest.raises(UnsupportedConfigurationError):
        recursive_vector_equality(vs((1.0,)), vs((1.0,)), CompareMode.tolerant(1e-9))


def test_recursive_trace_of_identity():
    trace = RecursionTrace()
    recursive_vector_equality(vs((0,)), vs((0,)), trace=trace)
    kinds = [node.kind for node in trace.nodes]
    assert kinds.count("split") == 1
    assert kinds.count("match") == 1
    split = next(node for node in trace.nodes if node.kind == "split")
    match = next(node for node in trace.nodes if node.kind == "match")
    assert split.pivot == 0 and split.children[1] == (1, 1)
    assert match.remaining_dim == 0 and match.depth == 1
    assert trace.violations() == []


def test_recursive_blocks_come_out_greater_first():
    result = recursive_vector_equality(vs((1,), (2,), (3,)), vs((1,), (2,), (3,)))
    assert [block.key for block in result.blocks] == [(3,), (2,), (1,)]


class TestCanonicalPairSet:
    def test_empty(self):
        assert canonical_pair_set(MatchList([], (), ())) == set()

    def test_cartesian_product(self):
        block = MatchBlock(range(0, 2), range(0, 3), (0,))
        assert len(canonical_pair_set(MatchList([block], (0, 1), (0, 1, 2)))) == 6

    def test_sum_over_blocks(self):
        blocks = [MatchBlock(range(0, 1), range(0, 1), (0,)), MatchBlock(range(1, 3), range(1, 3), (1,))]
        assert len(canonical_pair_set(MatchList(blocks, (0, 1, 2), (0, 1, 2)))) == 5

    def test_cap_reports_exact_count(self):
        block = MatchBlock(range(0, 2), range(0, 3), (0,))
        with pytest.raises(PairSetCapExceeded) as excinfo:
            canonical_pair_set(MatchList([block], (0, 1), (0, 1, 2)), cap=5)
        assert excinfo.value.count == 6


def random_family(rng: np.random.Generator):
    m = int(rng.integers(0, 7))
    size_u = int(rng.integers(0, 257))
    size_v = int(rng.integers(0, 257))
    # few coordinate values so that duplicates and collisions are common
    spread = int(rng.integers(1, 4))
    U = rng.integers(0, spread, size=(size_u, m)).tolist()
    V = rng.integers(0, spread, size=(size_v, m)).tolist()
    if size_u and size_v:
        V[: min(size_v, 8)] = [U[int(rng.integers(0, size_u))] for _ in range(min(size_v, 8))]
    return VectorSet.from_vectors(U), VectorSet.from_vectors(V)


@pytest.mark.parametrize("seed", range(200))
def test_algorithms_agree_with_pair_scan(seed):
    U, V = random_family(np.random.default_rng(seed))
    expected = scan_vector_equality(U, V)

    by_sort = sort_vector_equality(U, V)
    trace = RecursionTrace()
    by_recursion = recursive_vector_equality(U, V, trace=trace)

    assert canonical_pair_set(by_sort) == expected
    assert canonical_pair_set(by_recursion) == expected
    assert_disjoint_blocks(by_sort)
    assert_disjoint_blocks(by_recursion)

    assert trace.violations() == []
    assert all(node.median_ok and node.measure_ok for node in trace.nodes)
    assert trace.max_depth <= trace.depth_bound


@pytest.mark.parametrize("seed", range(20))
def test_heuristic_pivot_gives_the_same_pairs(seed):
    U, V = random_family(np.random.default_rng(1000 + seed))
    trace = RecursionTrace()
    result = recursive_vector_equality(U, V, trace=trace, heuristic_pivot=True)
    assert canonical_pair_set(result) == scan_vector_equality(U, V)
    assert all(node.median_ok for node in trace.nodes)
