"""Run the acceptance criteria, print one line each and write results/acceptance.json."""

import argparse
import json
import sys
from pathlib import Path

from lofs.experiments import CRITERIA, evaluate, summary_line


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    ap.add_argument("--out", type=Path, default=Path("results/acceptance.json"))
    args = ap.parse_args()
    rows = []
    for c in CRITERIA:
        if args.only and c.number not in args.only:
            continue
        row = evaluate(c)
        print(summary_line(row), flush=True)
        rows.append(row)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(rows, indent=2, sort_keys=True, default=str))
    return 0 if all(r["passed"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
