"""
Run the benchmark presets back to back and print their acceptance checks.

Usage:
    python scripts/run_benchmarks.py
    python scripts/run_benchmarks.py --problems accuracy model2d --out runs/bench
    python scripts/run_benchmarks.py --problems icf --long-running
"""

import argparse
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config.logging_config import setup_logging
from config.settings import get_settings
from src.pipeline.run import EXIT_OK, run_config_text


def main():
    """Parse arguments and run the presets sequentially."""
    parser = argparse.ArgumentParser(description="Run trdiff benchmark presets")
    parser.add_argument(
        '--problems',
        nargs='+',
        default=['accuracy', 'model2d', 'icf'],
        choices=['accuracy', 'model2d', 'icf'],
        help='Presets to run (default: all three)'
    )
    parser.add_argument('--out', default=None, help='Root output directory (default: settings)')
    parser.add_argument('--strict', action='store_true', help='Fail on non-converged implicit steps')
    parser.add_argument('--long-running', action='store_true', help='Full-scale preset settings')
    args = parser.parse_args()

    settings = get_settings()
    setup_logging(log_file="benchmarks.log", level=settings.log_level, log_dir=settings.logs_dir)
    root = Path(args.out) if args.out else settings.output_root

    results = {}
    for problem in args.problems:
        outcome = run_config_text(
            f"problem = {problem}\n",
            out_dir=root / problem,
            strict=args.strict,
            long_running=args.long_running,
        )
        results[problem] = outcome

    print("\n" + "=" * 80)
    print("Benchmark Results")
    print("=" * 80)

    exit_code = EXIT_OK
    for problem, outcome in results.items():
        if outcome.exit_code != EXIT_OK:
            print(f"\n{problem}: FAILED (exit {outcome.exit_code})")
            print(f"  Error: {outcome.error}")
            exit_code = max(exit_code, outcome.exit_code)
            continue
        report = outcome.report
        print(f"\n{problem}: {'PASS' if report.passed else 'CHECKS FAILED'}")
        for key, ok in report.checks.items():
            print(f"  {'PASS' if ok else 'FAIL'}  {key}")

    print("\n" + "=" * 80)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
