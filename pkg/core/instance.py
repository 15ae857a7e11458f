"""
Instance Model

The 0-1 integer program (A, b, c), assignments, solve outcomes and the
contiguous variable partition shared by the two-table and four-table solvers.
"""

import enum
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from core.errors import ContractViolation, InstanceValidationError
from core.scalars import LexVector, Scalar, normalize_scalar

logger = logging.getLogger(__name__)

Assignment = Tuple[int, ...]


@dataclass(frozen=True)
class Instance:
    """
    A validated 0-1 program: find x in {0,1}^n with Ax = b, optionally minimizing c^T x.

    Use validate_instance() to build one from raw fields.
    """

    n: int
    m: int
    A: Tuple[Tuple[Scalar, ...], ...]
    b: Tuple[Scalar, ...]
    c: Optional[Tuple[Scalar, ...]] = None

    @property
    def has_objective(self) -> bool:
        return self.c is not None

    @property
    def costs(self) -> Tuple[Scalar, ...]:
        """Objective coefficients, all zero when the instance has none."""
        return self.c if self.c is not None else (0,) * self.n

    def column(self, j: int) -> LexVector:
        """Column j (0-based) of A as an m-vector."""
        return tuple(row[j] for row in self.A)

    def columns(self) -> List[LexVector]:
        return [self.column(j) for j in range(self.n)]


class Status(str, enum.Enum):
    INFEASIBLE = "infeasible"
    FEASIBLE = "feasible"
    OPTIMAL = "optimal"


class Goal(str, enum.Enum):
    FEASIBILITY = "feasibility"
    OPTIMIZE = "optimize"
    COUNT = "count"
    ENUMERATE = "enumerate"


@dataclass
class SolveStats:
    """Counters collected during a solve."""

    table_sizes: Tuple[int, ...] = ()
    table_entries_built: int = 0
    comparisons: int = 0
    blocks: int = 0
    peak_live_entries: int = 0
    peak_queue_entries: int = 0
    early_exit: bool = False
    wall_time: float = 0.0
    extra: Dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, Any]:
        data = {
            "table_sizes": list(self.table_sizes),
            "table_entries_built": self.table_entries_built,
            "comparisons": self.comparisons,
            "blocks": self.blocks,
            "peak_live_entries": self.peak_live_entries,
            "peak_queue_entries": self.peak_queue_entries,
            "early_exit": self.early_exit,
            "wall_time": round(self.wall_time, 6),
        }
        data.update(self.extra)
        return data


@dataclass
class SolveOutcome:
    """
    Result of a solve.

    A non-infeasible outcome always carries a witness with zero residual
    (within tolerance in float mode); an optimal outcome's objective is the
    witness's objective value.
    """

    status: Status
    witness: Optional[Assignment] = None
    objective: Optional[Scalar] = None
    solution_count: Optional[int] = None
    solutions: Optional[List[Assignment]] = None
    stats: SolveStats = field(default_factory=SolveStats)
    solver: str = ""
    match_list: Any = None

    @property
    def is_feasible(self) -> bool:
        return self.status is not Status.INFEASIBLE


@dataclass(frozen=True)
class VariablePartition:
    """Contiguous, size-balanced blocks of 0-based variable indices."""

    parts: Tuple[Tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(part) for part in self.parts)


def _as_row(values: Any, length: int, label: str, violations: List[str]) -> Optional[Tuple[Scalar, ...]]:
    if values is None:
        violations.append(f"{label} is missing")
        return None
    values = list(values)
    if len(values) != length:
        violations.append(f"{label} has {len(values)} of {length} entries")
        return None
    return tuple(normalize_scalar(value) for value in values)


def validate_instance(
    n: int,
    m: int,
    A: Sequence[Sequence[Scalar]],
    b: Sequence[Scalar],
    c: Optional[Sequence[Scalar]] = None,
) -> Instance:
    """
    Build a well-formed Instance from raw fields.

    Args:
        n: Variable count (positive)
        m: Constraint count (nonnegative)
        A: m rows of n scalars
        b: m scalars
        c: Optional n objective coefficients

    Returns:
        The validated, immutable Instance

    Raises:
        InstanceValidationError: Listing every violation found
    """
    violations: List[str] = []
    if not isinstance(n, int) or n < 1:
        raise InstanceValidationError([f"n must be a positive integer, got {n!r}"], "n")
    if not isinstance(m, int) or m < 0:
        raise InstanceValidationError([f"m must be a nonnegative integer, got {m!r}"], "m")

    rows = list(A) if A is not None else []
    if len(rows) != m:
        violations.append(f"A has {len(rows)} of {m} rows")
    matrix = []
    for i, row in enumerate(rows, start=1):
        checked = _as_row(row, n, f"row {i}", violations)
        if checked is not None:
            matrix.append(checked)
    rhs = _as_row(b, m, "b", violations)
    costs = _as_row(c, n, "c", violations) if c is not None else None

    if violations:
        raise InstanceValidationError(violations)

    if n < 63 and m >= (1 << n):
        logger.warning(f"[validate_instance] m={m} is at least 2^n for n={n}; tables will be dominated by m")

    return Instance(n=n, m=m, A=tuple(matrix), b=rhs, c=costs)


def evaluate(instance: Instance, x: Sequence[int]) -> Tuple[LexVector, Scalar]:
    """
    Compute the residual Ax - b and the objective c^T x of an assignment.

    Raises:
        ContractViolation: If x does not have length n
    """
    if len(x) != instance.n:
        raise ContractViolation(f"assignment has length {len(x)}, instance has n={instance.n}")
    chosen = [j for j, bit in enumerate(x) if bit]
    residual = tuple(sum((row[j] for j in chosen), 0) - rhs for row, rhs in zip(instance.A, instance.b))
    objective = sum((instance.costs[j] for j in chosen), 0)
    return residual, objective


def residual_within(instance: Instance, x: Sequence[int], tolerance: float) -> bool:
    """Post-hoc float-mode check: |(Ax - b)_i| <= tolerance on every row."""
    residual, _ = evaluate(instance, x)
    return all(abs(value) <= tolerance for value in residual)


def is_feasible_assignment(instance: Instance, x: Sequence[int], tolerance: Optional[float] = None) -> bool:
    """Check Ax = b exactly, or per row within tolerance when one is given."""
    if tolerance is not None:
        return residual_within(instance, x, tolerance)
    residual, _ = evaluate(instance, x)
    return all(value == 0 for value in residual)


def to_float_instance(instance: Instance) -> Instance:
    """Float-mode realization of an exact instance."""
    return Instance(
        n=instance.n,
        m=instance.m,
        A=tuple(tuple(float(value) for value in row) for row in instance.A),
        b=tuple(float(value) for value in instance.b),
        c=tuple(float(value) for value in instance.c) if instance.c is not None else None,
    )


def split_variables(n: int, k: int) -> VariablePartition:
    """
    Split variables 0..n-1 into k contiguous blocks whose sizes differ by at most one.

    Larger blocks come first, so k=2 gives sizes ceil(n/2), floor(n/2).

    Raises:
        ContractViolation: If n < 1 or k is not 2 or 4
    """
    if k not in (2, 4):
        raise ContractViolation(f"variables can be split into 2 or 4 parts, not {k}")
    if n < 1:
        raise ContractViolation(f"cannot split n={n} variables")
    base, extra = divmod(n, k)
    parts = []
    start = 0
    for index in range(k):
        size = base + (1 if index < extra else 0)
        parts.append(tuple(range(start, start + size)))
        start += size
    return VariablePartition(parts=tuple(parts))


def render_assignment(x: Sequence[int]) -> str:
    return "".join(str(bit) for bit in x)
