"""Run the twelve acceptance criteria and print one line per criterion.

    python3 scripts/run_acceptance.py [--jobs N] [--json PATH]
"""

import argparse
import json
import sys

from qfold.suite import run_all, summary_line


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", help="also write the full reports here")
    args = p.parse_args()
    reports = run_all(args.jobs)
    for rep in reports:
        print(f"{summary_line(rep)}  ({rep['elapsed']:.2f} s)")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(reports, fh, indent=2, sort_keys=True)
    return 0 if all(r["ok"] for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
