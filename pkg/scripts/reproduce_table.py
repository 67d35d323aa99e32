"""Recompute the smallest-modulus table for [i,i,i], [i,i,i+1], [i,i,i+2].

Writes the CSV table and prints a comparison against the published values
for n <= 16 on stderr.

    python3 scripts/reproduce_table.py --max-n 16 --out table.csv
"""

import argparse
import os
import sys
import time

from comer_ra import search


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=16)
    ap.add_argument("--max-p", type=int, default=search.DEFAULT_TABLE_BOUND)
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--out", help="CSV destination (default: stdout)")
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    cells = search.reproduce_table(args.max_n, args.max_p, jobs=args.jobs)
    text = search.table_csv(cells)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    issues = search.compare_with_published(cells)
    for m in issues:
        print(m, file=sys.stderr)
    hard = [m for m in issues if not m.advisory]
    print(f"{len(cells)} cells in {time.perf_counter() - t0:.1f}s; "
          f"{len(hard)} disagreements, {len(issues) - len(hard)} advisory", file=sys.stderr)
    return 1 if hard else 0


if __name__ == "__main__":
    sys.exit(main())
