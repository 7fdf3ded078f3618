#!/usr/bin/env python3
"""
Command-line interface

    qheisenberg.py run <config.ini> [--output PATH]
    qheisenberg.py sweep <config.ini> --q 0.9,1.0,1.1 [--output PATH]
    qheisenberg.py verify
    qheisenberg.py verify-identities

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numeric-tolerance breach, 4 I/O failure.
"""

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple, Union

import structlog

from .config import Config, get_config
from .dynamics import CrossValidationReport, cross_validate
from .errors import ConfigError, DomainError, RepresentationMismatchError, ToleranceBreach
from .qsymb import verify_identities
from .report import write_block, write_blocks
from .run_config import RunConfig, load_run_config
from .verification import all_passed, run_verification

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_TOLERANCE_BREACH = 3
EXIT_IO_ERROR = 4

SweepOutcome = Tuple[RunConfig, Union[CrossValidationReport, str]]


def resolve_output_path(run_config: RunConfig, app_config: Config, override: Optional[str] = None) -> str:
    """
    Where the CSV goes.

    ``--output`` wins; otherwise the config's ``output`` or the default
    filename, placed under OUTPUT_DIRECTORY when that variable is set.
    """
    if override:
        return override
    scenario = run_config.run.scenario
    filename = os.path.basename(run_config.run.output) if run_config.run.output else \
        app_config.get_output_filename(scenario)
    if os.getenv('OUTPUT_DIRECTORY'):
        return os.path.join(os.environ['OUTPUT_DIRECTORY'], filename)
    if run_config.run.output:
        return run_config.run.output
    return app_config.get_output_path(scenario)


def _load(path: str) -> Tuple[Optional[RunConfig], int]:
    try:
        return load_run_config(path), EXIT_OK
    except ConfigError as e:
        print(f"❌ Configuration error: {e}")
        return None, EXIT_CONFIG_ERROR
    except OSError as e:
        print(f"❌ Could not read {path}: {e}")
        return None, EXIT_IO_ERROR


def _report_breaches(reports: Sequence[CrossValidationReport], tolerance: float) -> int:
    code = EXIT_OK
    for report in reports:
        try:
            report.require_within(tolerance)
        except ToleranceBreach as e:
            logger.warning("tolerance_breach", scenario=report.scenario.name, q=report.scenario.q,
                           deviation=e.deviation, tolerance=e.tolerance)
            print(f"⚠️  {e}")
            for item in report.breaches(tolerance):
                print(f"   {item.observable}: {item.engine_a} vs {item.engine_b} = {item.max_deviation:.3e}")
            code = EXIT_TOLERANCE_BREACH
    return code


def _open_output(path: str):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, mode=0o755, exist_ok=True)
    return open(path, 'w', encoding='utf-8', newline='')


def cmd_run(config_path: str, output: Optional[str] = None, app_config: Optional[Config] = None) -> int:
    """Run one scenario and write its CSV"""
    app_config = app_config or get_config()
    run_config, code = _load(config_path)
    if run_config is None:
        return code

    scenario = run_config.to_scenario()
    print(f"🚀 Running {scenario.name} at q={scenario.q} ({scenario.grid.steps} steps to t={scenario.grid.t_end})")
    try:
        report = cross_validate(scenario, run_config.engine_list, app_config.numerics)
    except (ConfigError, DomainError, RepresentationMismatchError) as e:
        print(f"❌ Configuration error: {e}")
        return EXIT_CONFIG_ERROR

    path = resolve_output_path(run_config, app_config, output)
    try:
        with _open_output(path) as stream:
            write_block(stream, report, run_config, app_config.output.significant_digits)
    except OSError as e:
        print(f"❌ Could not write {path}: {e}")
        return EXIT_IO_ERROR
    print(f"💾 CSV saved to: {path}")
    print(f"📊 Engines: {', '.join(report.engines)}; bracket: {report.bracket}; rhs: {report.rhs_mode}")

    code = _report_breaches([report], run_config.run.tolerance)
    if code == EXIT_OK:
        print("✅ All exact engine comparisons within tolerance")
    return code


def parse_q_list(text: Optional[str]) -> List[float]:
    if not text:
        raise ConfigError("the q list is empty")
    try:
        values = [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise ConfigError(f"malformed q list {text!r}: {e}") from e
    if not values:
        raise ConfigError("the q list is empty")
    return values


def _sweep_point(run_config: RunConfig, q: float, app_config: Config) -> SweepOutcome:
    point = run_config.with_q(q)
    scenario = run_config.to_scenario(q)
    try:
        return point, cross_validate(scenario, run_config.engine_list, app_config.numerics)
    except DomainError as e:
        logger.warning("sweep_point_skipped", scenario=scenario.name, q=q, reason=str(e))
        return point, f"skipped q={q!r}: {e}"


def cmd_sweep(config_path: str, q_text: Optional[str], output: Optional[str] = None,
              app_config: Optional[Config] = None) -> int:
    """
    Run one scenario per q value, concurrently, and write the blocks in input order.
    """
    app_config = app_config or get_config()
    try:
        q_values = parse_q_list(q_text)
    except ConfigError as e:
        print(f"❌ Configuration error: {e}")
        return EXIT_CONFIG_ERROR
    run_config, code = _load(config_path)
    if run_config is None:
        return code

    try:
        for q in q_values:
            run_config.to_scenario(q)
    except ConfigError as e:
        print(f"❌ Configuration error: {e}")
        return EXIT_CONFIG_ERROR

    print(f"🔄 Sweeping {run_config.run.scenario} over {len(q_values)} q value(s)")
    with ThreadPoolExecutor(max_workers=app_config.numerics.sweep_workers) as executor:
        try:
            outcomes = list(executor.map(lambda q: _sweep_point(run_config, q, app_config), q_values))
        except (ConfigError, RepresentationMismatchError) as e:
            print(f"❌ Configuration error: {e}")
            return EXIT_CONFIG_ERROR

    for point, outcome in outcomes:
        if isinstance(outcome, str):
            print(f"⚠️  {outcome}")
        else:
            print(f"✅ q={point.physics.q}: {len(outcome.comparisons)} comparison(s)")

    path = resolve_output_path(run_config, app_config, output)
    try:
        with _open_output(path) as stream:
            write_blocks(stream, outcomes, app_config.output.significant_digits)
    except OSError as e:
        print(f"❌ Could not write {path}: {e}")
        return EXIT_IO_ERROR
    print(f"💾 CSV saved to: {path}")

    reports = [outcome for _, outcome in outcomes if not isinstance(outcome, str)]
    return _report_breaches(reports, run_config.run.tolerance)


def cmd_verify(app_config: Optional[Config] = None) -> int:
    """Run the invariant suite; nonzero on any failure"""
    app_config = app_config or get_config()
    results = run_verification(app_config.numerics)
    if all_passed(results):
        print("🎉 All invariants hold!")
        return EXIT_OK
    print("💥 Some invariants failed. Please review the results above.")
    return EXIT_VERIFY_FAILED


def cmd_verify_identities(app_config: Optional[Config] = None) -> int:
    """Print each golden identity with the engine's canonical result"""
    app_config = app_config or get_config()
    results = verify_identities(app_config.numerics.rewrite_budget)
    for result in results:
        marker = "✅ match   " if result.passed else "❌ MISMATCH"
        print(f"{marker} {result.name}: {result.statement}")
        print(f"             engine:   {result.computed}")
        print(f"             expected: {result.expected}")
    return EXIT_OK if all(result.passed for result in results) else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qheisenberg",
        description="Simulate and verify q-deformed Heisenberg-picture dynamics.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run one scenario and write a CSV")
    run.add_argument("config", help="INI run configuration")
    run.add_argument("--output", "-o", help="CSV path (overrides the config and OUTPUT_DIRECTORY)")

    sweep = commands.add_parser("sweep", help="run a scenario for several q values")
    sweep.add_argument("config", help="INI run configuration")
    sweep.add_argument("--q", dest="q_values", default="", help="comma-separated q values")
    sweep.add_argument("--output", "-o", help="CSV path (overrides the config and OUTPUT_DIRECTORY)")

    commands.add_parser("verify", help="run the full invariant suite")
    commands.add_parser("verify-identities", help="print the golden identity corpus")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        app_config = get_config()
    except ConfigError as e:
        print(f"❌ Configuration error: {e}")
        return EXIT_CONFIG_ERROR
    app_config.setup_logging()

    if args.command == "run":
        return cmd_run(args.config, args.output, app_config)
    if args.command == "sweep":
        return cmd_sweep(args.config, args.q_values, args.output, app_config)
    if args.command == "verify":
        return cmd_verify(app_config)
    return cmd_verify_identities(app_config)


if __name__ == "__main__":
    sys.exit(main())
