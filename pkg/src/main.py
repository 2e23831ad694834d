"""
quiverhn - Main Orchestrator.

Wires together:
    Config + Logger     (configs/config.yaml, env overrides, CLI overrides)
    ProblemFile         (JSON problem → quiver, field, dims, weights, matrices)
    CommandManager      (slope, semistable, hn, kempf, verify, scan, envelope)

The report goes to stdout, logs to stderr. The exit status is the
``exit_status`` of the raised QuiverError, or 0.
"""
import sys
import os
import argparse
from typing import List, Optional

from utils.config import Config
from utils.constants import COMMANDS, EXIT_MALFORMED
from utils.failures import QuiverError
from utils.logger import Logger
from handlers.problem_file import load_problem
from managers.commands import CommandManager, CommandOptions


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with the malformed-input status."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def parse_args(argv: Optional[List[str]] = None):
    """Parse command-line arguments."""
    parser = _ArgumentParser(
        description="quiverhn - HN and Kempf filtrations of quiver representations over finite fields"
    )
    parser.add_argument('command', choices=COMMANDS, help='Computation to run')
    parser.add_argument('problem', help='Path to the JSON problem file')
    parser.add_argument(
        '--config', '-c',
        type=str,
        default=None,
        help='Path to a YAML config file (defaults to configs/config.yaml)'
    )
    parser.add_argument(
        '--guard-subspaces',
        type=int,
        default=None,
        help='Maximum subspace tuples enumerated per subrepresentation search'
    )
    parser.add_argument(
        '--guard-reps',
        type=int,
        default=None,
        help='Maximum representations visited by scan'
    )
    parser.add_argument(
        '--seed',
        type=int,
        default=None,
        help='Seed for the randomized pairing samples'
    )
    parser.add_argument(
        '--pairing-samples',
        type=int,
        default=None,
        help='Random weighted chains per representation checked by scan'
    )
    parser.add_argument(
        '--workers',
        type=int,
        default=None,
        help='Worker threads for scan'
    )
    parser.add_argument(
        '--svg',
        type=str,
        default=None,
        help='envelope: also write the figure to this SVG file'
    )
    parser.add_argument(
        '--transform',
        type=int,
        nargs=2,
        metavar=('A', 'B'),
        default=None,
        help="Replace Θ by AΘ + Bσ (A > 0) before computing"
    )
    return parser.parse_args(argv)


class QuiverWorkbench:
    """
    quiverhn Orchestrator.

    Lifecycle:
        1. Config (file, env, CLI flags) + Logger
        2. CommandManager
        3. run() → load problem, dispatch, print report
    """

    def __init__(self, args: argparse.Namespace):
        # 1. Configuration & Logging
        self.config = Config(args.config)
        overrides = {
            'guards.subspaces': args.guard_subspaces,
            'guards.representations': args.guard_reps,
            'verify.seed': args.seed,
            'verify.pairing_samples': args.pairing_samples,
            'scan.workers': args.workers,
        }
        for key, value in overrides.items():
            if value is not None:
                self.config.set(key, value)
        logging_settings = dict(self.config.get('logging', {}))
        logging_settings['file_logging'] = self.config.get_bool('logging.file_logging')
        Logger.setup(logging_settings)
        self.logger = Logger("QuiverWorkbench")

        self.args = args
        self.options = CommandOptions(
            svg=args.svg,
            transform=tuple(args.transform) if args.transform else None,
        )

        # 2. Command Manager
        self.commands = CommandManager(self.config)

    def run(self) -> int:
        """Run the requested command; returns the exit status."""
        try:
            problem = load_problem(self.args.problem)
            text, status = self.commands.dispatch(self.args.command, problem, self.options)
        except QuiverError as e:
            if e.critical:
                self.logger.critical(f"{type(e).__name__}: {e.message}")
            else:
                self.logger.info(f"{type(e).__name__}: {e.message}")
            print(e.message, file=sys.stderr)
            return e.exit_status
        sys.stdout.write(text)
        return status


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    try:
        workbench = QuiverWorkbench(args)
    except (FileNotFoundError, ValueError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    return workbench.run()


if __name__ == "__main__":
    sys.path.append(os.path.dirname(os.path.abspath(__file__)))
    sys.exit(main())
