"""
trdiff command line.

Usage:
    python main.py --config run.cfg [--out DIR] [--strict] [--long-running]
"""

import argparse
import sys
from pathlib import Path

from dotenv import load_dotenv

# Add repository root to path
sys.path.insert(0, str(Path(__file__).parent))

from config.logging_config import setup_logging
from config.settings import get_settings
from src.pipeline.run import EXIT_CONFIG, EXIT_OK, run_config_text

# Load environment variables
load_dotenv()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trdiff",
        description="Three-temperature radiation diffusion solver and benchmarks"
    )
    parser.add_argument('--config', required=True, help='Run configuration file (key = value)')
    parser.add_argument('--out', default=None, help='Output directory (default: <output_root>/<problem>)')
    parser.add_argument(
        '--strict',
        action='store_true',
        default=None,
        help='Exit with status 4 on the first non-converged implicit step'
    )
    parser.add_argument(
        '--long-running',
        action='store_true',
        help='Use the full-scale settings of the problem preset'
    )
    return parser


def main(argv=None) -> int:
    """Parse arguments, run, and return the exit status."""
    args = build_parser().parse_args(argv)

    settings = get_settings()
    logger = setup_logging(log_file=settings.log_file, level=settings.log_level, log_dir=settings.logs_dir)
    strict = settings.strict if args.strict is None else args.strict

    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as e:
        logger.error(f"Cannot read configuration {args.config}: {e}")
        return EXIT_CONFIG

    outcome = run_config_text(text, out_dir=args.out, strict=strict, long_running=args.long_running)

    print("\n" + "=" * 80)
    if outcome.exit_code != EXIT_OK:
        print(f"FAILED (exit {outcome.exit_code}): {outcome.error}")
    else:
        report = outcome.report
        status = "all checks passed" if report.passed else "some checks failed"
        print(f"{report.problem}: {status} -> {outcome.out_dir}")
        for key, ok in report.checks.items():
            print(f"  {'PASS' if ok else 'FAIL'}  {key}")
    print("=" * 80)

    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
