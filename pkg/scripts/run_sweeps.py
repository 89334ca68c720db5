"""Run the experiment suites and write one JSON report per suite.

    python scripts/run_sweeps.py --out results/ --count 10000 --workers 4
    python scripts/run_sweeps.py --suites exhaustive-r3-n5 bounds
"""

import argparse
import json
import sys
from pathlib import Path

from berge.experiments import SUITES, run_suite


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--suites", nargs="+", choices=SUITES, default=list(SUITES))
    p.add_argument("--out", default="results")
    p.add_argument("--count", type=int, default=10_000)
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    args = p.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ok = True
    for name in args.suites:
        rep = run_suite(name, seed=args.seed, count=args.count, max_n=args.max_n, workers=args.workers)
        print(rep.summary(), flush=True)
        (out / f"{name}.json").write_text(json.dumps(rep.to_dict(), indent=1) + "\n")
        ok &= rep.ok
    return 0 if ok else 3


if __name__ == "__main__":
    sys.exit(main())
