"""
Gen Command

Writes reproducible instance files. Each file starts with a "# gen ..."
comment recording the full GenSpec (and the RNG algorithm), followed for
planted families by a "# witness ..." comment holding the planted solution.
"""

import argparse
import logging
import os
import sys
from typing import List

from core.errors import UsageError
from core.instance import render_assignment
from core.instance_file import write_instance_file
from core.utils import handle_solver_errors
from tools.generators import Family, GenSpec, generate

logger = logging.getLogger(__name__)


def add_gen_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("family", choices=[family.value for family in Family], help="Instance family")
    parser.add_argument("--n", type=int, required=True, help="Number of variables")
    parser.add_argument("--m", type=int, default=1, help="Number of constraints (subset-sum forces 1)")
    parser.add_argument("--seed", type=int, default=0, help="64-bit seed")
    parser.add_argument("--range", dest="coeff_range", type=int, default=5,
                        help="Coefficient bound R; entries are drawn from [-R, R]")
    parser.add_argument("--density", type=float, default=1.0, help="Fraction of nonzero entries")
    parser.add_argument("--no-objective", action="store_true", help="Omit the objective line")
    parser.add_argument("--uniform-target", action="store_true",
                        help="subset-sum: draw the target uniformly instead of from a random subset")
    parser.add_argument("--count", type=int, default=1,
                        help="Number of instances; seeds seed..seed+count-1 are written into the --out directory")
    parser.add_argument("--out", default=None,
                        help="Output file (or directory with --count > 1); stdout when omitted")


def render_generated(spec: GenSpec) -> bytes:
    """Generate one instance and render it with its metadata comments."""
    instance, witness = generate(spec)
    comments = [spec.metadata_line()]
    if witness is not None and spec.family is Family.PLANTED:
        comments.append(f"witness {render_assignment(witness)}")
    return write_instance_file(instance, comments)


def _spec(args: argparse.Namespace, seed: int) -> GenSpec:
    return GenSpec(
        family=args.family,
        n=args.n,
        m=args.m,
        seed=seed,
        coeff_range=args.coeff_range,
        density=args.density,
        with_objective=not args.no_objective,
        planted_target=not args.uniform_target,
    )


@handle_solver_errors("run_gen")
def run_gen(args: argparse.Namespace) -> List[str]:
    """
    Execute the gen command.

    Args:
        args: Parsed arguments from add_gen_arguments()

    Returns:
        Paths written ("-" for stdout)

    Raises:
        UsageError: Invalid spec values or --count/--out combinations
    """
    if args.count < 1:
        raise UsageError(f"--count must be at least 1, got {args.count}")
    if args.count > 1 and not args.out:
        raise UsageError("--count > 1 needs --out naming a directory")

    specs = [_spec(args, args.seed + offset) for offset in range(args.count)]

    if args.count == 1:
        data = render_generated(specs[0])
        if not args.out or args.out == "-":
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
            return ["-"]
        _write(args.out, data)
        return [args.out]

    os.makedirs(args.out, exist_ok=True)
    written = []
    for spec in specs:
        path = os.path.join(args.out, f"{spec.family.value}-n{spec.n}-m{spec.m}-s{spec.seed}.ip01")
        _write(path, render_generated(spec))
        written.append(path)
    logger.info(f"[run_gen] wrote {len(written)} instances to {args.out}")
    return written


def _write(path: str, data: bytes) -> None:
    try:
        with open(path, "wb") as handle:
            handle.write(data)
    except OSError as e:
        raise UsageError(f"cannot write {path!r}: {e.strerror or e}")
    logger.debug(f"[run_gen] wrote {path} ({len(data)} bytes)")

