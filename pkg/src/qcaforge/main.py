"""
qcaforge command line.

    qcaforge simulate LAYOUT (--vectors FILE | --exhaustive) -o OUT.csv [--hold N]
    qcaforge verify LAYOUT TABLE [--hold N] [--format text|csv]
    qcaforge metrics LAYOUT [--format text|csv]
    qcaforge render LAYOUT -o OUT.svg [--trace TRACE.csv --sample N]
    qcaforge compare [--circuits-dir DIR] [--format text|csv]

Exit codes: 0 success, 1 verification failure or metric deviation, 2 usage, I/O or
parse error.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from .core.constants import DEFAULT_LOGGING_CONFIG_PATH, THREADS_ENV_VAR
from .core.errors import ConfigurationError, QcaForgeError
from .core.logging import setup_logging
from .models.schemas import CliConfig
from .orchestration.service import QcaForgeService
from .reporting import reports

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

# flag dest -> SimConfig field
OVERRIDE_FLAGS = {
    "samples_per_cycle": "samples_per_cycle",
    "tolerance": "convergence_tolerance",
    "max_iterations": "max_iterations_per_sample",
    "radius": "radius_of_effect",
    "epsilon_r": "epsilon_r",
    "gamma_high": "gamma_high",
    "gamma_low": "gamma_low",
}


def _common_options(suppress: bool) -> argparse.ArgumentParser:
    """Global and engine flags, accepted before or after the subcommand."""
    default = argparse.SUPPRESS if suppress else None
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=default, help="YAML config file (default: configs/config.yaml)")
    common.add_argument("--log-level", default=default, help="Level of the qcaforge logger (DEBUG, INFO, ...)")
    common.add_argument(
        "--threads", type=int, default=default,
        help=f"Engine worker threads, 0 = one per CPU (overrides {THREADS_ENV_VAR})",
    )
    engine = common.add_argument_group("engine settings")
    engine.add_argument("--samples-per-cycle", type=int, default=default)
    engine.add_argument("--tolerance", type=float, default=default, help="Convergence tolerance")
    engine.add_argument("--max-iterations", type=int, default=default, help="Sweeps per sample")
    engine.add_argument("--radius", type=float, default=default, help="Radius of effect in nm")
    engine.add_argument("--epsilon-r", type=float, default=default)
    engine.add_argument("--gamma-high", type=float, default=default, help="Released barrier in J")
    engine.add_argument("--gamma-low", type=float, default=default, help="Held barrier in J")
    return common


def _format_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "csv"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcaforge",
        description="Simulate and verify clocked QCA layouts",
        parents=[_common_options(suppress=False)],
    )
    common = _common_options(suppress=True)
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", parents=[common], help="Run a layout and write a trace CSV")
    simulate.add_argument("layout")
    source = simulate.add_mutually_exclusive_group(required=True)
    source.add_argument("--vectors", help="Vector file (qcaforge-vectors v1)")
    source.add_argument("--exhaustive", action="store_true", help="Every input assignment")
    simulate.add_argument("-o", "--output", required=True, help="Trace CSV to write")
    simulate.add_argument("--hold", type=int, default=1, help="Clock cycles per vector")

    verify = commands.add_parser("verify", parents=[common], help="Check a layout against a truth table")
    verify.add_argument("layout")
    verify.add_argument("table")
    verify.add_argument("--hold", type=int, default=None, help="Clock cycles per vector")
    _format_option(verify)

    metrics = commands.add_parser("metrics", parents=[common], help="Cell count, area and clock phases")
    metrics.add_argument("layout")
    _format_option(metrics)

    render = commands.add_parser("render", parents=[common], help="Draw a layout as SVG")
    render.add_argument("layout")
    render.add_argument("-o", "--output", required=True, help="SVG file to write")
    render.add_argument("--trace", help="Trace CSV to take polarizations from")
    render.add_argument("--sample", type=int, default=None, help="Trace sample to draw (default 0)")

    compare = commands.add_parser("compare", parents=[common], help="Reproduce the comparison tables")
    compare.add_argument("--circuits-dir", default=None, help="Directory of stored bundled layouts")
    _format_option(compare)

    return parser


def _cli_config(args: argparse.Namespace) -> CliConfig:
    try:
        return CliConfig(
            subcommand=args.command,
            overrides={field: getattr(args, dest) for dest, field in OVERRIDE_FLAGS.items()},
            threads=args.threads,
            config_path=args.config,
            log_level=args.log_level,
        )
    except ValidationError as e:
        problems = "; ".join(err["msg"] for err in e.errors())
        raise ConfigurationError(f"invalid arguments: {problems}") from e


def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def run(args: argparse.Namespace) -> int:
    cli = _cli_config(args)
    layout_path = getattr(args, "layout", None)
    if layout_path is not None and not Path(layout_path).is_file():
        print(f"error: no such layout: {layout_path}", file=sys.stderr)
        return EXIT_ERROR

    service = QcaForgeService(cli.config_path, cli.overrides, cli.threads)

    if cli.subcommand == "simulate":
        service.simulate_file(
            args.layout, args.output,
            vectors_path=args.vectors, exhaustive=args.exhaustive, hold_cycles=args.hold,
        )
        return EXIT_OK

    if cli.subcommand == "verify":
        report = service.verify_files(args.layout, args.table, args.hold)
        text = reports.verification_csv(report) if args.format == "csv" else reports.verification_text(report)
        _emit(text)
        return EXIT_OK if report.passed else EXIT_FAILED

    if cli.subcommand == "metrics":
        layout, report = service.metrics(args.layout)
        text = reports.metrics_csv(layout.name, report) if args.format == "csv" else reports.metrics_text(layout.name, report)
        _emit(text)
        return EXIT_OK

    if cli.subcommand == "render":
        service.render(args.layout, args.output, trace_path=args.trace, sample=args.sample)
        return EXIT_OK

    if cli.subcommand == "compare":
        report = service.compare(args.circuits_dir)
        text = reports.comparison_csv(report) if args.format == "csv" else reports.comparison_text(report)
        _emit(text)
        return EXIT_OK if report.passed else EXIT_FAILED

    raise ConfigurationError(f"unknown command '{cli.subcommand}'")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_ERROR

    try:
        setup_logging(DEFAULT_LOGGING_CONFIG_PATH, args.log_level)
        return run(args)
    except (QcaForgeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as e:
        logger.critical(f"Fatal error: {e}", exc_info=True)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
