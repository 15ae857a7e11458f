"""
Instance File Format

Line-oriented text format for 0-1 programs:

    # comment lines start with '#'
    p ip01 <n> <m>
    c <c_1> ... <c_n>              (optional, at most once)
    e <A_i1> ... <A_in> <b_i>      (exactly m lines)

Tokens follow the scalar grammar of core.scalars and are whitespace separated.
write_instance_file() produces the canonical form; parsing it back yields an
equal instance and writing that again yields identical bytes.
"""

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple, Union

from core.errors import ContractViolation, InstanceFileError, ScalarParseError
from core.instance import Instance, validate_instance
from core.scalars import Scalar, parse_scalar, render_scalar, unbounded_int_digits

_TOKEN = re.compile(r"\S+")


@dataclass(frozen=True)
class InstanceFile:
    """A parsed instance together with the comment lines of its file."""

    instance: Instance
    comments: Tuple[str, ...] = ()

    def metadata(self) -> Dict[str, str]:
        """
        Collect key=value pairs from generator comment lines.

        Lines of the form "# gen family=planted n=12 ..." contribute their
        pairs; "# witness 0101" contributes the key "witness".
        """
        found: Dict[str, str] = {}
        for comment in self.comments:
            words = comment.split()
            if not words:
                continue
            if words[0] == "gen":
                for word in words[1:]:
                    key, sep, value = word.partition("=")
                    if sep:
                        found[key] = value
            elif words[0] == "witness" and len(words) == 2:
                found["witness"] = words[1]
        return found


def _tokens(line: str) -> List[Tuple[str, int]]:
    return [(match.group(0), match.start() + 1) for match in _TOKEN.finditer(line)]


def _parse_scalars(tokens: List[Tuple[str, int]], line_no: int) -> List[Scalar]:
    values = []
    for text, column in tokens:
        try:
            values.append(parse_scalar(text, column))
        except ScalarParseError as e:
            raise InstanceFileError(e.description, line_no, column) from e
    return values


def _parse_count(text: str, column: int, line_no: int, label: str) -> int:
    if not text.isdigit():
        raise InstanceFileError(f"{label} must be a nonnegative integer, got {text!r}", line_no, column)
    with unbounded_int_digits():
        return int(text)


def read_instance_file(data: Union[bytes, str]) -> InstanceFile:
    """
    Parse an instance file, keeping its comment lines.

    Args:
        data: File contents as bytes (UTF-8) or text

    Returns:
        InstanceFile with the validated instance

    Raises:
        InstanceFileError: On syntax errors, with line and column
        InstanceValidationError: On dimension mismatches
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise InstanceFileError(f"file is not valid UTF-8: {e}", 1)
    else:
        text = data

    header: Optional[Tuple[int, int]] = None
    header_line = 0
    objective: Optional[List[Scalar]] = None
    rows: List[List[Scalar]] = []
    rhs: List[Scalar] = []
    comments: List[str] = []
    line_no = 0

    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            comments.append(stripped[1:].strip())
            continue

        tokens = _tokens(line)
        kind, kind_column = tokens[0]

        if header is None:
            if kind != "p":
                raise InstanceFileError(f"expected header 'p ip01 <n> <m>', found {kind!r}", line_no, kind_column)
            if len(tokens) != 4 or tokens[1][0] != "ip01":
                raise InstanceFileError("header must read 'p ip01 <n> <m>'", line_no, kind_column)
            n = _parse_count(tokens[2][0], tokens[2][1], line_no, "n")
            m = _parse_count(tokens[3][0], tokens[3][1], line_no, "m")
            if n < 1:
                raise InstanceFileError("n must be at least 1", line_no, tokens[2][1])
            header = (n, m)
            header_line = line_no
            continue

        n, m = header
        if kind == "p":
            raise InstanceFileError("duplicate header line", line_no, kind_column)
        if kind == "c":
            if objective is not None:
                raise InstanceFileError("duplicate objective line", line_no, kind_column)
            if len(tokens) - 1 != n:
                raise InstanceFileError(f"objective line has {len(tokens) - 1} of {n} entries", line_no, kind_column)
            objective = _parse_scalars(tokens[1:], line_no)
        elif kind == "e":
            if len(rows) == m:
                raise InstanceFileError(f"declared {m} rows, found more", line_no, kind_column)
            if len(tokens) - 1 != n + 1:
                raise InstanceFileError(
                    f"row {len(rows) + 1} has {len(tokens) - 1} of {n + 1} entries (n coefficients and b)",
                    line_no,
                    kind_column,
                )
            values = _parse_scalars(tokens[1:], line_no)
            rows.append(values[:-1])
            rhs.append(values[-1])
        else:
            raise InstanceFileError(f"unknown line type {kind!r}", line_no, kind_column)

    if header is None:
        raise InstanceFileError("missing header 'p ip01 <n> <m>'", max(line_no, 1))
    n, m = header
    if len(rows) != m:
        raise InstanceFileError(f"declared {m} rows, found {len(rows)}", header_line)

    instance = validate_instance(n, m, rows, rhs, objective)
    return InstanceFile(instance=instance, comments=tuple(comments))


def parse_instance_file(data: Union[bytes, str]) -> Instance:
    """Parse an instance file into a validated Instance."""
    return read_instance_file(data).instance


def write_instance_file(instance: Instance, comments: Iterable[str] = ()) -> bytes:
    """
    Render an instance in canonical form.

    Args:
        instance: An exact-mode instance
        comments: Optional comment lines written before the header

    Returns:
        UTF-8 encoded, newline-terminated file contents

    Raises:
        ContractViolation: If the instance holds float values
    """
    for value in (*instance.b, *(v for row in instance.A for v in row), *(instance.c or ())):
        if isinstance(value, float):
            raise ContractViolation("float-mode instances cannot be written; instance files are exact")

    lines = [f"# {comment}" if comment else "#" for comment in comments]
    lines.append(f"p ip01 {instance.n} {instance.m}")
    if instance.c is not None:
        lines.append("c " + " ".join(render_scalar(value) for value in instance.c))
    for row, rhs in zip(instance.A, instance.b):
        lines.append("e " + " ".join(render_scalar(value) for value in (*row, rhs)))
    return ("\n".join(lines) + "\n").encode("utf-8")
