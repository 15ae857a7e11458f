#!/usr/bin/env python3
"""
0-1 Integer Program Solver

Exact meet-in-the-middle solver for 0-1 integer programs with equality
constraints: min c^T x subject to Ax = b, x in {0,1}^n.

Commands:
    solve   solve an instance file (two-table, four-table or brute force)
    gen     write reproducible random, planted or subset-sum instances
    bench   time solvers over generated instances and write CSV
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from dotenv import load_dotenv

from core.config import get_solver_config, reload_solver_config
from core.errors import EXIT_FEASIBLE, EXIT_USAGE, SolverError
from core.utils import safe_print
from tools.bench_tools import add_bench_arguments, run_bench
from tools.gen_tools import add_gen_arguments, run_gen
from tools.reports import package_version
from tools.solve_tools import add_solve_arguments, run_solve

# Load environment variables
dotenv_path = os.path.join(os.path.dirname(os.path.abspath(__file__)), ".env")
load_dotenv(dotenv_path=dotenv_path)

logger = logging.getLogger(__name__)


def configure_logging(level: str, log_file: Optional[str]) -> None:
    """Root logging to stderr at the configured level, plus an optional detailed file log."""
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    if not log_file:
        return
    try:
        root_logger = logging.getLogger()
        file_handler = logging.FileHandler(log_file, mode="a")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(
            logging.Formatter(
                "%(asctime)s - %(name)s - %(levelname)s - %(process)d - %(threadName)s "
                "[%(module)s.%(funcName)s:%(lineno)d] - %(message)s"
            )
        )
        root_logger.addHandler(file_handler)
        root_logger.setLevel(logging.DEBUG)
        logger.debug(f"Detailed file logging configured to: {log_file}")
    except Exception as e:
        sys.stderr.write(f"CRITICAL: Failed to set up file logging to '{log_file}': {e}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ip01", description="Exact 0-1 integer program solver")
    parser.add_argument("--verbose", action="store_true",
                        help="Print version and active configuration to stderr before running")
    subparsers = parser.add_subparsers(dest="command", required=True)
    add_solve_arguments(subparsers.add_parser("solve", help="Solve an instance file"))
    add_gen_arguments(subparsers.add_parser("gen", help="Generate instance files"))
    add_bench_arguments(subparsers.add_parser("bench", help="Benchmark solvers, writing CSV"))
    return parser


def print_banner(command: str) -> None:
    safe_print("🔧 0-1 Integer Program Solver")
    safe_print("=" * 35)
    safe_print(f"   📦 Version: {package_version()}")
    safe_print(f"   🛠️  Command: {command}")
    safe_print(f"   🐍 Python: {sys.version.split()[0]}")
    safe_print("")
    safe_print("⚙️ Active Configuration:")
    for key, value in get_solver_config().get_environment_summary().items():
        safe_print(f"   - {key}: {value}")
    safe_print("")


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point for the ip01 command line.

    Returns the process exit status: 0 feasible/optimal (or success for gen
    and bench), 1 infeasible, 2 usage, parse or configuration errors.
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = reload_solver_config()
    except SolverError as e:
        safe_print(f"❌ {e.description}")
        return EXIT_USAGE
    configure_logging(config.log_level, config.log_file)

    if args.verbose:
        print_banner(args.command)

    try:
        if args.command == "solve":
            status, report = run_solve(args)
            print(report.render(args.output))
            return status
        if args.command == "gen":
            run_gen(args)
            return EXIT_FEASIBLE
        run_bench(args)
        return EXIT_FEASIBLE
    except SolverError as e:
        safe_print(f"❌ {e.error_code}: {e.description}")
        return e.exit_status
    except KeyboardInterrupt:
        safe_print("\n👋 Interrupted")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
