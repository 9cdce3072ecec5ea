#!/usr/bin/env python3
"""
Run the acceptance sweeps at full size.

Prints one row per sweep (checked cases, violations, skipped cases and
seconds) and exits with status 1 if any sweep found a violation.

Usage:
  python scripts/run_acceptance.py
  python scripts/run_acceptance.py --only oracle-agreement main-bound
"""

import argparse
import logging
import sys
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from config import settings  # noqa: E402
from use_cases.acceptance import SWEEPS  # noqa: E402


def main():
    """Run the selected sweeps and print a summary table."""
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument(
        "--only",
        nargs="+",
        choices=sorted(SWEEPS),
        help="Run only these sweeps",
    )
    parser.add_argument("--log-level", default=settings.log_level)
    args = parser.parse_args()

    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    names = args.only or list(SWEEPS)
    print(f"Running {len(names)} acceptance sweeps...")
    print("-" * 64)
    print(
        f"{'sweep':<24}{'checked':>9}{'violations':>12}"
        f"{'skipped':>9}{'seconds':>10}"
    )

    failed = []
    for name in names:
        result = SWEEPS[name]()
        print(
            f"{name:<24}{result.checked:>9}{result.violations:>12}"
            f"{result.skipped:>9}{result.seconds:>10.2f}"
        )
        if not result.ok:
            failed.append(result)

    print("-" * 64)
    if failed:
        print("❌ The following sweeps found violations:")
        for result in failed:
            print(f"  - {result.name}")
            for detail in result.details:
                print(f"      {detail}")
        sys.exit(1)
    print("✅ All sweeps passed")


if __name__ == "__main__":
    main()
