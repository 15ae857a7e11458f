"""
Shared result report rendering.

Provides the ResultReport model used by the solve command, renderable as
human-readable text or as structured JSON carrying enough provenance
(solver, mode, seed, versions) to regenerate any reported number.
"""

import platform
from importlib import metadata
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from core.instance import Instance, SolveOutcome, render_assignment
from core.scalars import render_scalar
from tools.generators import RNG_ALGORITHM


def package_version() -> str:
    try:
        return metadata.version("ip01-mitm")
    except metadata.PackageNotFoundError:
        return "dev"


def build_provenance(extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Versions and generator details attached to every report."""
    provenance: Dict[str, Any] = {
        "version": package_version(),
        "python": platform.python_version(),
        "numpy": np.__version__,
        "rng": RNG_ALGORITHM,
    }
    if extra:
        provenance.update(extra)
    return provenance


class ResultReport(BaseModel):
    """Outcome of one solve, as shown to the user."""

    n: int
    status: str
    objective: Optional[str] = None
    witness: Optional[str] = None
    count: Optional[int] = None
    solutions: Optional[List[str]] = None
    blocks: Optional[List[Dict[str, Any]]] = None
    stats: Dict[str, Any] = Field(default_factory=dict)
    solver: str
    mode: str
    provenance: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _witness_has_length_n(self) -> "ResultReport":
        if self.witness is not None and len(self.witness) != self.n:
            raise ValueError(f"witness has length {len(self.witness)}, expected {self.n}")
        return self

    def render_text(self) -> str:
        lines = [f"status: {self.status}"]
        if self.objective is not None:
            lines.append(f"objective: {self.objective}")
        if self.witness is not None:
            lines.append(f"witness: {self.witness}")
        if self.count is not None:
            lines.append(f"count: {self.count}")
        if self.solutions is not None:
            lines.append(f"solutions ({len(self.solutions)} shown):")
            lines.extend(self.solutions)
        if self.blocks is not None:
            lines.append(f"blocks ({len(self.blocks)}):")
            for block in self.blocks:
                lines.append(
                    f"  key=({', '.join(block['key'])}) U[{block['u_range'][0]}:{block['u_range'][1]}] "
                    f"V[{block['v_range'][0]}:{block['v_range'][1]}] "
                    f"u_codes={block['u_codes']} v_codes={block['v_codes']}"
                )
        lines.append(f"solver: {self.solver}")
        lines.append(f"mode: {self.mode}")
        lines.append("stats: " + " ".join(f"{key}={value}" for key, value in self.stats.items()))
        lines.append("provenance: " + " ".join(f"{key}={value}" for key, value in self.provenance.items()))
        return "\n".join(lines)

    def render(self, output: str = "text") -> str:
        if output == "structured":
            return self.model_dump_json(indent=2)
        return self.render_text()


def _render_blocks(outcome: SolveOutcome) -> List[Dict[str, Any]]:
    match_list = outcome.match_list
    blocks = []
    for block in match_list.blocks:
        blocks.append(
            {
                "key": [render_scalar(value) for value in block.key],
                "u_range": [block.u_range.start, block.u_range.stop],
                "v_range": [block.v_range.start, block.v_range.stop],
                "u_codes": list(match_list.u_ids(block)),
                "v_codes": list(match_list.v_ids(block)),
            }
        )
    return blocks


def create_result_report(
    outcome: SolveOutcome,
    instance: Instance,
    mode: str,
    provenance: Optional[Dict[str, Any]] = None,
    include_blocks: bool = False,
) -> ResultReport:
    """
    Create a standardized report from a solve outcome.

    Args:
        outcome: The solver's outcome
        instance: The solved instance
        mode: Comparison mode name
        provenance: Extra provenance entries (input path, seed, ...)
        include_blocks: Render the compressed match list (two-table solvers only)

    Returns:
        ResultReport ready for rendering
    """
    return ResultReport(
        n=instance.n,
        status=outcome.status.value,
        objective=render_scalar(outcome.objective) if outcome.objective is not None else None,
        witness=render_assignment(outcome.witness) if outcome.witness is not None else None,
        count=outcome.solution_count,
        solutions=[render_assignment(x) for x in outcome.solutions] if outcome.solutions is not None else None,
        blocks=_render_blocks(outcome) if include_blocks and outcome.match_list is not None else None,
        stats=outcome.stats.as_dict(),
        solver=outcome.solver,
        mode=mode,
        provenance=build_provenance(provenance),
    )
