"""Regenerate the space and time convergence tables for the cosine manufactured problem.

    python scripts/reproduce_tables.py --outdir results [--quick]

--quick drops the three finest space grids (N+1 = 320, 640, 1280), which take
most of the runtime.
"""

import argparse
import csv
import pathlib
import time

from ffpe_fv.study import ProblemRef, convergence_study

SPACE = [10, 20, 40, 80, 160, 320, 640, 1280]
TIME = [10, 20, 40, 80, 160]
TIME_N = {0.2: 15000, 0.5: 5000, 0.8: 5000}


def write(table, path):
    with open(path, "w", newline="") as fh:
        csv.writer(fh, lineterminator="\n").writerows(table.to_rows())
    for row in table.to_rows():
        print("  " + "  ".join(f"{c:>10s}" for c in row))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--outdir", default="results")
    parser.add_argument("--quick", action="store_true")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()
    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    space = SPACE[:5] if args.quick else SPACE
    for alpha in (0.2, 0.5, 0.8):
        ref = ProblemRef("example41", {"alpha": alpha})
        t0 = time.time()
        print(f"space, alpha={alpha}, L=10000")
        write(convergence_study(ref, "space", space, 10000, args.workers), out / f"space_alpha{alpha}.csv")
        print(f"time, alpha={alpha}, N={TIME_N[alpha]}")
        write(convergence_study(ref, "time", TIME, TIME_N[alpha], args.workers), out / f"time_alpha{alpha}.csv")
        print(f"  ({time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()
