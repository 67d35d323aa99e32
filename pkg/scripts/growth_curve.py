"""Smallest prime realizing a single forbidden class, as a function of n.

Prints a TSV (n, scheme, p) and, when matplotlib is available and --plot is
given, saves a log-scale plot.  Missing p means nothing below --max-p.

    python3 scripts/growth_curve.py --max-n 40 --schemes 0,0,0 0,0,1
"""

import argparse
import math
import os
import sys

from comer_ra import search
from comer_ra.cli import _triple


def fit_exponent(rows):
    """Least-squares slope of log p against log n over the rows with a hit."""
    pts = [(math.log(n), math.log(p)) for n, _, p in rows if p and n > 1]
    if len(pts) < 2:
        return None
    mx = sum(x for x, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    sxx = sum((x - mx) ** 2 for x, _ in pts)
    return sum((x - mx) * (y - my) for x, y in pts) / sxx


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=1)
    ap.add_argument("--max-n", type=int, default=30)
    ap.add_argument("--schemes", type=_triple, nargs="+", default=[(0, 0, 0), (0, 0, 1)])
    ap.add_argument("--max-p", type=int, default=100_000)
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--plot", help="save a PNG plot here (needs matplotlib)")
    args = ap.parse_args(argv)

    rows = search.emit_growth_data(range(args.min_n, args.max_n + 1), args.schemes, args.max_p,
                                   jobs=args.jobs)
    sys.stdout.write(search.growth_tsv(rows))

    for t in args.schemes:
        label = ",".join(map(str, t))
        slope = fit_exponent([r for r in rows if r[1] == label])
        if slope is not None:
            print(f"[{label}] p grows roughly like n^{slope:.2f}", file=sys.stderr)

    if args.plot:
        try:
            import matplotlib
            matplotlib.use("Agg")
            import matplotlib.pyplot as plt
        except ImportError:
            print("matplotlib is not installed; skipping the plot", file=sys.stderr)
            return 0
        fig, ax = plt.subplots()
        for t in args.schemes:
            label = ",".join(map(str, t))
            pts = [(n, p) for n, s, p in rows if s == label and p]
            ax.plot(*zip(*pts), "o-", label=f"[{label}]")
        ax.set_yscale("log")
        ax.set_xlabel("n")
        ax.set_ylabel("smallest p")
        ax.legend()
        fig.savefig(args.plot, dpi=120)
    return 0


if __name__ == "__main__":
    sys.exit(main())
