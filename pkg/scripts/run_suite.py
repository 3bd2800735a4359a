#!/usr/bin/env python3
"""Run the randomized theorem suite and write a JSON report.

Example:
    python3 scripts/run_suite.py --n 200 --seed 42 --out suite_report.json
"""

import argparse
import json
import sys
import time

from stochorder import SuiteConfig, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=200, help="number of scenarios")
    ap.add_argument("--seed", type=int, default=42, help="master seed")
    ap.add_argument("--samples", type=int, default=100_000,
                    help="Monte Carlo samples per side")
    ap.add_argument("--delta", type=float, default=0.01,
                    help="DKW confidence parameter")
    ap.add_argument("--presets", default=None,
                    help="comma-separated preset names (default: all)")
    ap.add_argument("--out", default="suite_report.json")
    args = ap.parse_args()

    kwargs = dict(n_scenarios=args.n, master_seed=args.seed,
                  n_samples=args.samples, delta=args.delta)
    if args.presets:
        kwargs["presets"] = tuple(args.presets.split(","))
    config = SuiteConfig(**kwargs)

    start = time.monotonic()
    report = run_suite(config)
    elapsed = time.monotonic() - start

    with open(args.out, "w") as f:
        json.dump(report.to_dict(), f, indent=2)
        f.write("\n")

    print(f"ran {report.n_run} scenarios in {elapsed:.1f}s")
    print(f"  consistent:        {report.n_consistent}")
    print(f"  inconsistent:      {report.n_inconsistent}")
    print(f"  skipped (unknown): {report.n_skipped_unknown}")
    print(f"  failed hypotheses: {report.n_failed_hypotheses}")
    print(f"report written to {args.out}")
    return 0 if report.n_inconsistent == 0 else 2


if __name__ == "__main__":
    sys.exit(main())
