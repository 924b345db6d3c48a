"""Write the R-algebra golden report (four conditions per universe plus witnesses)."""

import argparse
import json
from pathlib import Path

from lofs.experiments import criterion_r_algebras


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("results/r_algebra_golden.json"))
    args = ap.parse_args()
    report = criterion_r_algebras()
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(report, indent=2, sort_keys=True, default=str))
    for run in report["runs"]:
        print(f"{run['system']}: {run['maps']} maps, {run['algebras']} algebras, ok={run['ok']}")
        print(f"  positive: R of {run['positive_witness']['of_map']['table']} is an algebra")
        print(f"  negative: {run['negative_witness']['map']['table']} fails all four conditions")
    print(f"written to {args.out}")


if __name__ == "__main__":
    main()
