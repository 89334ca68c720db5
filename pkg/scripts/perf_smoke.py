"""Time a single extraction on growing random instances (r=5, m=n by default).

Prints n, seconds and the outcome kind; the ratio column shows how time
grows relative to the previous size.
"""

import argparse
import time

from berge.extractor import extract
from berge.generators import random_connected


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--r", type=int, default=5)
    p.add_argument("--sizes", type=int, nargs="+", default=[250, 500, 1000, 2000, 4000])
    p.add_argument("--surplus", type=int, default=0, help="m = n + surplus")
    p.add_argument("--seed", type=int, default=2024)
    args = p.parse_args()

    prev = None
    print(f"{'n':>6} {'seconds':>9} {'ratio':>6}  outcome")
    for n in args.sizes:
        h = random_connected(args.r, n, n + args.surplus, args.seed)
        t = time.perf_counter()
        res = extract(h, 0)
        dt = time.perf_counter() - t
        ratio = f"{dt / prev:6.2f}" if prev else "     -"
        print(f"{n:>6} {dt:9.3f} {ratio}  {res.kind} ({len(res.trace)} trace steps)")
        prev = dt


if __name__ == "__main__":
    main()
