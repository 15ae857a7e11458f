"""
Scalar Core

Exact and tolerant scalar arithmetic for matrix entries, right-hand sides,
weights and objectives, plus lexicographic comparison of vectors.

Exact scalars are Python ints when integral and fractions.Fraction otherwise;
both are arbitrary-precision rationals, so sums and comparisons never round.
Float mode uses Python floats and only relaxes equality, never ordering.
"""

import enum
import re
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from operator import add, sub
from typing import Iterator, Sequence, Tuple, Union

from core.errors import ContractViolation, ScalarParseError

Scalar = Union[int, Fraction, float]
LexVector = Tuple[Scalar, ...]

_INTEGER = re.compile(r"-?\d+")
_DECIMAL = re.compile(r"-?\d+\.\d+")
_RATIONAL = re.compile(r"(-?\d+)/(\d+)")


@contextmanager
def unbounded_int_digits() -> Iterator[None]:
    """Lift the interpreter's int/str conversion digit limit inside the block."""
    get_limit = getattr(sys, "get_int_max_str_digits", None)
    if get_limit is None:
        yield
        return
    limit = get_limit()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(limit)


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class CompareMode:
    """
    Equality realization used by comparisons.

    Exact mode (epsilon None) is a total order; tolerant mode treats a and b
    as equal iff |a - b| <= epsilon and is not transitive.
    """

    epsilon: Union[float, Fraction, None] = None

    def __post_init__(self):
        if self.epsilon is not None and self.epsilon < 0:
            raise ContractViolation(f"tolerance must be nonnegative, got {self.epsilon}")

    @classmethod
    def tolerant(cls, epsilon: Union[float, Fraction]) -> "CompareMode":
        return cls(epsilon=epsilon)

    @property
    def is_exact(self) -> bool:
        return self.epsilon is None

    @property
    def name(self) -> str:
        return "exact" if self.is_exact else f"tolerant(eps={self.epsilon})"


EXACT = CompareMode()


def parse_scalar(text: str, position: int = 0) -> Fraction:
    """
    Parse a scalar token into its exact rational value.

    Accepted forms are integers ("-12"), finite decimals ("0.25") and
    rationals ("-7/14"). Decimals are converted exactly.

    Args:
        text: The token
        position: Column of the token inside its line, used in error messages

    Returns:
        The canonical Fraction

    Raises:
        ScalarParseError: If the token is malformed or has a zero denominator
    """
    with unbounded_int_digits():
        if _INTEGER.fullmatch(text):
            return Fraction(int(text))
        if _DECIMAL.fullmatch(text):
            return Fraction(text)
        match = _RATIONAL.fullmatch(text)
        if match:
            denominator = int(match.group(2))
            if denominator == 0:
                raise ScalarParseError(text, position, reason="zero denominator in")
            return Fraction(int(match.group(1)), denominator)
    raise ScalarParseError(text, position)


def normalize_scalar(value: Scalar) -> Scalar:
    """Collapse integral Fractions to int; leave other values unchanged."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def render_scalar(value: Scalar) -> str:
    """
    Render a scalar in its shortest grammar form: integer or "p/q".

    Floats are rendered with repr, which parse_scalar does not accept; they
    appear only in float-mode reports, never in instance files.
    """
    if isinstance(value, float):
        return repr(value)
    value = Fraction(value)
    with unbounded_int_digits():
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"


def compare_scalars(a: Scalar, b: Scalar, mode: CompareMode = EXACT) -> Ordering:
    """
    Compare two scalars under the given mode.

    Args:
        a: Left scalar
        b: Right scalar
        mode: Exact or tolerant comparison

    Returns:
        Ordering of a relative to b
    """
    if not mode.is_exact and abs(a - b) <= mode.epsilon:
        return Ordering.EQUAL
    if a < b:
        return Ordering.LESS
    if a > b:
        return Ordering.GREATER
    return Ordering.EQUAL


def compare_lex(u: Sequence[Scalar], v: Sequence[Scalar], mode: CompareMode = EXACT) -> Ordering:
    """
    Compare two vectors lexicographically; the first non-equal coordinate decides.

    Raises:
        ContractViolation: If the dimensions differ
    """
    if len(u) != len(v):
        raise ContractViolation(f"cannot compare vectors of dimension {len(u)} and {len(v)}")
    for left, right in zip(u, v):
        order = compare_scalars(left, right, mode)
        if order is not Ordering.EQUAL:
            return order
    return Ordering.EQUAL


def vectors_equal(u: Sequence[Scalar], v: Sequence[Scalar], mode: CompareMode = EXACT) -> bool:
    if mode.is_exact:
        return tuple(u) == tuple(v)
    return compare_lex(u, v, mode) is Ordering.EQUAL


def add_vectors(u: Sequence[Scalar], v: Sequence[Scalar]) -> LexVector:
    return tuple(map(add, u, v))


def sub_vectors(u: Sequence[Scalar], v: Sequence[Scalar]) -> LexVector:
    return tuple(map(sub, u, v))
