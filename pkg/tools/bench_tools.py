"""
Bench Command

Runs seeded generated instances through a set of solvers and writes one CSV
row per (instance, algorithm) run, followed by a "# growth <algorithm> <ratio>"
footer per algorithm: the geometric mean of time(n+2)/time(n) over the n-list.
The fixed column order is the field order of BenchRow.
"""

import argparse
import csv
import io
import logging
import math
import sys
from collections import defaultdict
from typing import Dict, List, Sequence, TextIO

from pydantic import BaseModel, Field

from core.config import get_solver_config
from core.errors import UsageError
from core.instance import Goal
from core.utils import handle_solver_errors
from tools.generators import Family, GenSpec, generate
from tools.solve_tools import ALGORITHMS, dispatch

logger = logging.getLogger(__name__)

BENCH_ALGORITHMS = ALGORITHMS[1:]
# floor for wall times entering growth ratios; a timer tick can read zero
_MIN_TIME = 1e-9


class BenchRow(BaseModel):
    """One solver run in a benchmark."""

    n: int = Field(ge=1)
    m: int = Field(ge=0)
    algorithm: str
    trial: int = Field(ge=0)
    wall_time: float = Field(ge=0.0)
    table_entries_built: int = Field(ge=0)
    peak_live_entries: int = Field(ge=0)
    status: str


CSV_HEADER = tuple(BenchRow.model_fields)


def add_bench_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n-list", required=True,
                        help="Variable counts: 'start..stop:step', 'start..stop' or a comma list")
    parser.add_argument("--m", type=int, default=1, help="Number of constraints")
    parser.add_argument("--trials", type=int, default=1, help="Instances per n")
    parser.add_argument("--algorithms", default="sort2,four-table",
                        help=f"Comma-separated subset of {','.join(BENCH_ALGORITHMS)}")
    parser.add_argument("--seed-base", type=int, default=0, help="Trial t uses seed seed-base + t")
    parser.add_argument("--family", choices=[family.value for family in Family], default=Family.PLANTED.value,
                        help="Generated instance family (default: planted)")
    parser.add_argument("--range", dest="coeff_range", type=int, default=5, help="Coefficient bound R")
    parser.add_argument("--goal", choices=[Goal.FEASIBILITY.value, Goal.OPTIMIZE.value],
                        default=Goal.OPTIMIZE.value, help="Goal solved by every run")
    parser.add_argument("--out", default=None, help="CSV output path; stdout when omitted")


def parse_n_list(text: str) -> List[int]:
    """
    Parse an n-list such as "8..16:2", "8..12" or "8,10,14".

    Raises:
        UsageError: On malformed text, empty ranges, nonpositive steps or n < 1
    """
    text = text.strip()
    try:
        if ".." in text:
            bounds, _, step_text = text.partition(":")
            start_text, _, stop_text = bounds.partition("..")
            start, stop = int(start_text), int(stop_text)
            step = int(step_text) if step_text else 1
            if step < 1:
                raise UsageError(f"n-list step must be positive, got {step}")
            if start > stop:
                raise UsageError(f"n-list range {start}..{stop} is empty")
            values = list(range(start, stop + 1, step))
        else:
            values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"cannot parse n-list {text!r}; expected 'start..stop:step' or a comma list")
    if not values:
        raise UsageError("n-list is empty")
    if min(values) < 1:
        raise UsageError(f"every n must be at least 1, got {min(values)}")
    return values


def parse_algorithms(text: str) -> List[str]:
    names = [name.strip() for name in text.split(",") if name.strip()]
    unknown = [name for name in names if name not in BENCH_ALGORITHMS]
    if unknown or not names:
        raise UsageError(
            f"unknown algorithm(s) {', '.join(unknown) or '(none given)'}; choose from {', '.join(BENCH_ALGORITHMS)}"
        )
    return names


def growth_ratios(rows: Sequence[BenchRow]) -> Dict[str, float]:
    """
    Geometric mean of time(n+2)/time(n) per algorithm.

    Times are averaged over trials first. Algorithms without any pair of
    measured n values two apart are left out.
    """
    times: Dict[str, Dict[int, List[float]]] = defaultdict(lambda: defaultdict(list))
    for row in rows:
        times[row.algorithm][row.n].append(max(row.wall_time, _MIN_TIME))

    ratios: Dict[str, float] = {}
    for algorithm, per_n in times.items():
        means = {n: sum(values) / len(values) for n, values in per_n.items()}
        logs = [math.log(means[n + 2] / means[n]) for n in sorted(means) if n + 2 in means]
        if logs:
            ratios[algorithm] = math.exp(sum(logs) / len(logs))
    return ratios


def write_bench_csv(rows: Sequence[BenchRow], growth: Dict[str, float], stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        data = row.model_dump()
        data["wall_time"] = f"{row.wall_time:.6f}"
        writer.writerow(data)
    for algorithm, ratio in growth.items():
        stream.write(f"# growth {algorithm} {ratio:.4f}\n")


def run_trials(
    n_values: Sequence[int],
    m: int,
    trials: int,
    algorithms: Sequence[str],
    seed_base: int = 0,
    family: Family = Family.PLANTED,
    coeff_range: int = 5,
    goal: Goal = Goal.OPTIMIZE,
) -> List[BenchRow]:
    """
    Solve every generated instance with every algorithm.

    Brute force is skipped (with a warning) for n above the oracle cap.
    """
    cap = get_solver_config().brute_force_cap
    rows: List[BenchRow] = []
    for n in n_values:
        for trial in range(trials):
            spec = GenSpec(family=family, n=n, m=m, seed=seed_base + trial, coeff_range=coeff_range)
            instance, _ = generate(spec)
            for algorithm in algorithms:
                if algorithm == "brute" and n > cap:
                    logger.warning(f"[run_trials] skipping brute at n={n}; above the oracle cap {cap}")
                    continue
                outcome = dispatch(algorithm, instance, goal)
                rows.append(
                    BenchRow(
                        n=n,
                        m=instance.m,
                        algorithm=algorithm,
                        trial=trial,
                        wall_time=outcome.stats.wall_time,
                        table_entries_built=outcome.stats.table_entries_built,
                        peak_live_entries=outcome.stats.peak_live_entries,
                        status=outcome.status.value,
                    )
                )
                logger.debug(
                    f"[run_trials] n={n} trial={trial} {algorithm}: {outcome.status.value} "
                    f"in {outcome.stats.wall_time:.4f}s"
                )
    return rows


@handle_solver_errors("run_bench")
def run_bench(args: argparse.Namespace) -> List[BenchRow]:
    """
    Execute the bench command.

    Args:
        args: Parsed arguments from add_bench_arguments()

    Returns:
        The rows written

    Raises:
        UsageError: Invalid n-list, trial count, constraint count or algorithm names
    """
    n_values = parse_n_list(args.n_list)
    algorithms = parse_algorithms(args.algorithms)
    if args.trials < 1:
        raise UsageError(f"--trials must be at least 1, got {args.trials}")
    if args.m < 0:
        raise UsageError(f"--m must be nonnegative, got {args.m}")

    rows = run_trials(
        n_values,
        args.m,
        args.trials,
        algorithms,
        seed_base=args.seed_base,
        family=Family(args.family),
        coeff_range=args.coeff_range,
        goal=Goal(args.goal),
    )
    growth = growth_ratios(rows)

    buffer = io.StringIO()
    write_bench_csv(rows, growth, buffer)
    if args.out and args.out != "-":
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as handle:
                handle.write(buffer.getvalue())
        except OSError as e:
            raise UsageError(f"cannot write {args.out!r}: {e.strerror or e}")
    else:
        sys.stdout.write(buffer.getvalue())
    logger.info(f"[run_bench] {len(rows)} runs over n={n_values} with {', '.join(algorithms)}")
    return rows
