"""
Instance Generators

Reproducible random, planted-solution and subset-sum instance families.
Every generator is a pure function of its GenSpec: the seed drives a numpy
PCG64 bit generator, named in the metadata so instances can be regenerated.
"""

import enum
import logging
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.instance import Assignment, Instance, render_assignment, validate_instance
from core.scalars import Scalar

logger = logging.getLogger(__name__)

RNG_ALGORITHM = "PCG64"
# entries in [-R, R] are drawn as int64
MAX_COEFF_RANGE = 2**62


class Family(str, enum.Enum):
    RANDOM = "random"
    PLANTED = "planted"
    SUBSET_SUM = "subset-sum"


class GenSpec(BaseModel):
    """Parameters of one generated instance."""

    model_config = ConfigDict(frozen=True)

    family: Family
    n: int = Field(ge=1)
    m: int = Field(default=1, ge=0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    coeff_range: int = Field(default=5, ge=1, le=MAX_COEFF_RANGE)
    density: float = Field(default=1.0, gt=0.0, le=1.0)
    with_objective: bool = True
    # subset-sum only: target is the sum of a random subset (always feasible)
    # instead of uniform in [0, sum of weights]
    planted_target: bool = True

    @model_validator(mode="before")
    @classmethod
    def _subset_sum_has_one_row(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("family") in (Family.SUBSET_SUM, Family.SUBSET_SUM.value):
            data = {**data, "m": 1}
        return data

    def metadata_line(self) -> str:
        """The "gen ..." comment recorded in generated files."""
        return (
            f"gen family={self.family.value} n={self.n} m={self.m} seed={self.seed} "
            f"range={self.coeff_range} density={self.density} objective={str(self.with_objective).lower()} "
            f"planted_target={str(self.planted_target).lower()} rng={RNG_ALGORITHM}"
        )


def _rng(spec: GenSpec) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(spec.seed))


def _draw(rng: np.random.Generator, shape: Tuple[int, ...], bound: int, density: float) -> np.ndarray:
    values = rng.integers(-bound, bound, size=shape, endpoint=True)
    mask = rng.random(size=shape) < density
    return values * mask


def _dot(row: Sequence[int], bits: Sequence[int]) -> int:
    return sum(int(a) * int(x) for a, x in zip(row, bits))


def _uniform_int(rng: np.random.Generator, high: int) -> int:
    """Uniform integer in [0, high]; targets past int64 are drawn from raw bytes by rejection."""
    if high < 2**63:
        return int(rng.integers(0, high, endpoint=True))
    bits = high.bit_length()
    width = (bits + 7) // 8
    while True:
        draw = int.from_bytes(rng.bytes(width), "little") >> (8 * width - bits)
        if draw <= high:
            return draw


def _costs(rng: np.random.Generator, spec: GenSpec) -> Optional[List[int]]:
    if not spec.with_objective:
        return None
    return rng.integers(-spec.coeff_range, spec.coeff_range, size=spec.n, endpoint=True).tolist()


def gen_random(spec: GenSpec) -> Instance:
    """Uniform integer A and b in [-R, R], each entry kept with probability density."""
    rng = _rng(spec)
    A = _draw(rng, (spec.m, spec.n), spec.coeff_range, spec.density)
    b = _draw(rng, (spec.m,), spec.coeff_range, spec.density)
    c = _costs(rng, spec)
    return validate_instance(spec.n, spec.m, A.tolist(), b.tolist(), c)


def gen_planted(spec: GenSpec) -> Tuple[Instance, Assignment]:
    """Random A and a random x*, with b := A x*; feasible by construction."""
    rng = _rng(spec)
    A = _draw(rng, (spec.m, spec.n), spec.coeff_range, spec.density)
    x_star = rng.integers(0, 1, size=spec.n, endpoint=True)
    A_rows = A.tolist()
    b = [_dot(row, x_star.tolist()) for row in A_rows]
    c = _costs(rng, spec)
    instance = validate_instance(spec.n, spec.m, A_rows, b, c)
    return instance, tuple(int(bit) for bit in x_star)


def subset_sum_instance(
    weights: Sequence[Scalar], target: Scalar, costs: Optional[Sequence[Scalar]] = None
) -> Instance:
    """Single-constraint instance: choose items whose weights sum to target."""
    return validate_instance(len(weights), 1, [list(weights)], [target], costs)


def _subset_sum(spec: GenSpec) -> Tuple[Instance, Optional[Assignment]]:
    rng = _rng(spec)
    weights = rng.integers(1, spec.coeff_range, size=spec.n, endpoint=True)
    subset: Optional[Assignment] = None
    if spec.planted_target:
        chosen = rng.integers(0, 1, size=spec.n, endpoint=True)
        target = _dot(weights.tolist(), chosen.tolist())
        subset = tuple(int(bit) for bit in chosen)
    else:
        target = _uniform_int(rng, sum(weights.tolist()))
    c = _costs(rng, spec)
    return subset_sum_instance(weights.tolist(), target, c), subset


def gen_subset_sum(spec: GenSpec) -> Instance:
    """Positive weights in [1, R]; target planted or uniform per spec.planted_target."""
    return _subset_sum(spec)[0]


def generate(spec: GenSpec) -> Tuple[Instance, Optional[Assignment]]:
    """
    Dispatch on GenSpec.family.

    Returns:
        The instance and, when one is known by construction, a feasible witness
    """
    if spec.family is Family.RANDOM:
        instance, witness = gen_random(spec), None
    elif spec.family is Family.PLANTED:
        instance, witness = gen_planted(spec)
    else:
        instance, witness = _subset_sum(spec)
    logger.debug(
        f"[generate] {spec.metadata_line()}"
        + (f" witness={render_assignment(witness)}" if witness is not None else "")
    )
    return instance, witness
