"""
Partial-assignment tables shared by the two-table and four-table solvers.

For a block of variables X_p, every assignment phi of X_p becomes an entry
whose vector is offset + sign * sum(A[:, j] * phi(x_j)) and whose weight is
sum(c_j * phi(x_j)). Bit t of an entry's code is phi of the t-th variable of
the block, and a table lists its entries in code order.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, NamedTuple, Optional, Sequence, Tuple

from core.config import get_solver_config
from core.errors import ContractViolation
from core.instance import Assignment, Instance, VariablePartition
from core.scalars import LexVector, Scalar, add_vectors

logger = logging.getLogger(__name__)


class TableEntry(NamedTuple):
    vec: LexVector
    weight: Scalar
    code: int


def _signed_columns(instance: Instance, indices: Sequence[int], sign: int) -> List[LexVector]:
    columns = []
    for j in indices:
        column = instance.column(j)
        columns.append(column if sign > 0 else tuple(-value for value in column))
    return columns


def _build_incremental(columns: List[LexVector], costs: List[Scalar], offset: LexVector) -> List[TableEntry]:
    entries = [TableEntry(offset, 0, 0)]
    for code in range(1, 1 << len(columns)):
        high = code.bit_length() - 1
        previous = entries[code ^ (1 << high)]
        entries.append(TableEntry(add_vectors(previous.vec, columns[high]), previous.weight + costs[high], code))
    return entries


def _build_direct(columns: List[LexVector], costs: List[Scalar], offset: LexVector) -> List[TableEntry]:
    entries = []
    for code in range(1 << len(columns)):
        vec = offset
        weight: Scalar = 0
        for bit, (column, cost) in enumerate(zip(columns, costs)):
            if code >> bit & 1:
                vec = add_vectors(vec, column)
                weight += cost
        entries.append(TableEntry(vec, weight, code))
    return entries


def _build_threaded(
    columns: List[LexVector], costs: List[Scalar], offset: LexVector, threads: int
) -> List[TableEntry]:
    # the top bits select a chunk; every chunk shifts one shared low-bit table
    top_bits = min(len(columns), max(threads - 1, 1).bit_length())
    low_count = len(columns) - top_bits
    low = _build_incremental(columns[:low_count], costs[:low_count], offset)

    def build_chunk(prefix: int) -> List[TableEntry]:
        shift: LexVector = tuple(0 for _ in offset)
        shift_weight: Scalar = 0
        for bit in range(top_bits):
            if prefix >> bit & 1:
                shift = add_vectors(shift, columns[low_count + bit])
                shift_weight += costs[low_count + bit]
        base = prefix << low_count
        return [TableEntry(add_vectors(e.vec, shift), e.weight + shift_weight, base | e.code) for e in low]

    with ThreadPoolExecutor(max_workers=threads) as executor:
        chunks = list(executor.map(build_chunk, range(1 << top_bits)))
    return [entry for chunk in chunks for entry in chunk]


def build_part_table(
    instance: Instance,
    indices: Sequence[int],
    sign: int = 1,
    with_rhs: bool = False,
    incremental: Optional[bool] = None,
    threads: Optional[int] = None,
) -> List[TableEntry]:
    """
    Enumerate all assignments of one variable block.

    Args:
        instance: The program
        indices: 0-based variable indices of the block, in code-bit order
        sign: +1 to add columns, -1 to subtract them
        with_rhs: Start every vector at b instead of the zero vector
        incremental: Add one column per entry instead of recomputing; defaults to config
        threads: Worker threads; defaults to config

    Returns:
        2^len(indices) entries, entry k having code k
    """
    if sign not in (1, -1):
        raise ContractViolation(f"sign must be +1 or -1, got {sign}")
    config = get_solver_config()
    if incremental is None:
        incremental = config.incremental_tables
    if threads is None:
        threads = config.threads

    columns = _signed_columns(instance, indices, sign)
    costs = [instance.costs[j] for j in indices]
    offset: LexVector = tuple(instance.b) if with_rhs else tuple(0 for _ in range(instance.m))

    if threads > 1 and len(columns) > 1:
        return _build_threaded(columns, costs, offset, threads)
    if incremental:
        return _build_incremental(columns, costs, offset)
    return _build_direct(columns, costs, offset)


def decode_codes(codes: Sequence[int], partition: VariablePartition) -> Assignment:
    """
    Place each block's code bits at the block's original variable indices.

    Raises:
        ContractViolation: If the code count or a code is out of range
    """
    if len(codes) != partition.k:
        raise ContractViolation(f"{len(codes)} codes for a {partition.k}-way partition")
    n = sum(partition.sizes)
    bits = [0] * n
    for code, part in zip(codes, partition.parts):
        if not 0 <= code < (1 << len(part)):
            raise ContractViolation(f"code {code} out of range for a block of {len(part)} variables")
        for bit, j in enumerate(part):
            bits[j] = code >> bit & 1
    return tuple(bits)


def encode_bits(bits: Sequence[int]) -> int:
    """Code of a block assignment given as bits in block order."""
    return sum(bit << position for position, bit in enumerate(bits))


def table_sizes(tables: Sequence[Sequence[TableEntry]]) -> Tuple[int, ...]:
    return tuple(len(table) for table in tables)
