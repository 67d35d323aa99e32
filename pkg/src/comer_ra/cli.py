"""Command-line interface: ``comer-ra <subcommand>``.

Exit codes: 0 found / pass, 1 legitimate negative (no hit, failed check),
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import atoms, embed, search, spectrum
from .numtheory import build_partition

CACHE_ENV = "COMER_RA_CACHE"


class UsageError(Exception):
    pass


def _triple(text: str) -> tuple[int, int, int]:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad triple {text!r}; expected i,j,k") from None
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"bad triple {text!r}; expected i,j,k")
    return parts


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


def _partition(args):
    try:
        return build_partition(args.p, args.n, args.g)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_spectrum(args) -> int:
    spec = spectrum.compute_spectrum(_partition(args))
    report = spectrum.spectrum_report(spec)
    if args.format == "json":
        _emit(_dump(report), args.out)
        return 0
    lines = [f"C({spec.p},{spec.n})  g={spec.g}  k={spec.k}  neg_index={spec.neg_index}"]
    for m in range(spec.n):
        row = "".join("1" if spec.entry(m, d) else "." for d in range(spec.n))
        lines.append(f"  M[{m:>{len(str(spec.n))}}] {row}")
    classes = " ".join(f"[{t[0]},{t[1]},{t[2]}]" for t in report["forbidden_classes"]) or "none"
    lines.append(f"forbidden classes: {classes}")
    lines.append(f"ramsey: {str(report['ramsey']).lower()}  all_flexible: {str(report['all_flexible']).lower()}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_search(args) -> int:
    try:
        scheme = search.ForbiddenScheme.from_triples(args.n, args.scheme, args.parity)
    except ValueError as e:
        raise UsageError(str(e)) from None
    ck_path = args.resume
    if ck_path is None and os.environ.get(CACHE_ENV):
        ck_path = search.checkpoint_path_for(scheme, os.environ[CACHE_ENV])
    resume = None
    if ck_path is not None and Path(ck_path).exists():
        try:
            resume = search.SearchCheckpoint.load(ck_path)
        except search.CorruptCheckpoint as e:
            raise UsageError(str(e)) from None
    try:
        out = search.search_scheme(scheme, args.max_p, resume=resume, jobs=args.jobs, checkpoint_path=ck_path)
    except (search.CorruptCheckpoint, search.InvalidScheme) as e:
        raise UsageError(str(e)) from None
    logging.getLogger(__name__).info("search took %.2fs", out.elapsed)
    _emit(_dump(out.to_dict()) if args.format == "json" else str(out) + "\n", args.out)
    return 0 if out.found else 1


def _parse_assign(items: list[str], n: int) -> dict[str, set[int]]:
    out: dict[str, set[int]] = {}
    rest = None
    for item in items:
        name, _, spec = item.partition("=")
        if not spec:
            raise UsageError(f"bad --assign {item!r}; expected atom=i,j,... or atom=rest")
        if spec == "rest":
            rest = name
            continue
        out[name] = {int(x) for x in spec.split(",")}
    if rest is not None:
        used = set().union(*out.values()) if out else set()
        out[rest] = set(range(n)) - used
    return out


def cmd_verify(args) -> int:
    try:
        catalog = embed.load_catalog(args.catalog)
        alg = embed.catalog_lookup(args.algebra, catalog)
        if args.assign:
            assignment = _parse_assign(args.assign, args.n)
        else:
            assignment = embed.scheme_for(args.algebra, args.n).assignment
        spec = spectrum.compute_spectrum(_partition(args))
        emb = embed.AtomEmbedding.from_names(spec, alg.structure, assignment)
        report = embed.verify_embedding(alg.structure, emb)
    except (embed.UnknownAlgebra, embed.IncompatibleColorCount, embed.MalformedEmbedding, ValueError) as e:
        raise UsageError(str(e).strip("'\"")) from None
    if args.format == "json":
        d = report.to_dict()
        d["algebra"] = alg.name
        d["assignment"] = {k: sorted(v) for k, v in assignment.items()}
        _emit(_dump(d), args.out)
    else:
        lines = [f"{alg.name} into C({report.p},{report.n}) with g={report.g}"]
        lines += [f"  {name} -> {sorted(assignment[name])}" for name in alg.structure.names]
        lines += [str(c) for c in report.checks]
        lines.append(f"verdict: {report.verdict}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if report.passed else 1


def cmd_aut(args) -> int:
    s = atoms.make_An(args.n, args.j, args.ell)
    try:
        auts = atoms.automorphisms(s, cap=args.cap)
    except atoms.CapExceeded as e:
        raise UsageError(str(e)) from None
    if args.format == "json":
        _emit(_dump({"n": args.n, "j": args.j, "ell": args.ell, "count": len(auts),
                     "automorphisms": [str(a) for a in auts]}), args.out)
    else:
        lines = [f"|aut(A_{args.n}([i,i+{args.j},i+{args.ell}]))| = {len(auts)}"] + [str(a) for a in auts]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_table(args) -> int:
    if args.max_n < 1:
        raise UsageError("--max-n must be at least 1")
    cells = search.reproduce_table(args.max_n, args.max_p, jobs=args.jobs)
    if args.format == "json":
        _emit(_dump([c.__dict__ for c in cells]), args.out)
    else:
        _emit(search.table_csv(cells), args.out)
    if not args.check_paper:
        return 0
    issues = search.compare_with_published(cells)
    failures = [m for m in issues if not m.advisory]
    for m in issues:
        print(m, file=sys.stderr)
    checked = sum(1 for c in cells if c.n in search.PUBLISHED_TABLE)
    print(f"check: {checked - len(failures)}/{checked} cells agree with the published table"
          f" (bound {args.max_p})", file=sys.stderr)
    return 1 if failures else 0


def cmd_growth(args) -> int:
    if args.min_n < 1 or args.max_n < args.min_n:
        raise UsageError("need 1 <= --min-n <= --max-n")
    rows = search.emit_growth_data(range(args.min_n, args.max_n + 1), args.schemes, args.max_p,
                                   parity=args.parity, jobs=args.jobs)
    if args.format == "json":
        _emit(_dump([{"n": n, "scheme": s, "p": p} for n, s, p in rows]), args.out)
    else:
        _emit(search.growth_tsv(rows), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="comer-ra", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    default_jobs = os.cpu_count() or 1

    def common(sp, formats=("text", "json")):
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--out", help="write output to this file instead of stdout")

    sp = sub.add_parser("spectrum", help="forbidden/mandatory spectrum of C(p,n)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--g", type=int)
    common(sp, ("json", "text"))
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("search", help="smallest prime realizing a forbidden scheme")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--scheme", type=_triple, action="append", required=True,
                    help="class representative i,j,k; repeat for several classes")
    sp.add_argument("--parity", choices=search.PARITIES, default="even")
    sp.add_argument("--max-p", type=int, default=search.DEFAULT_TABLE_BOUND)
    sp.add_argument("--jobs", type=int, default=default_jobs)
    sp.add_argument("--resume", help="checkpoint file to resume from and write to")
    common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", help="check a catalog algebra's template embedding")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--g", type=int)
    sp.add_argument("--catalog", help="extra catalog file (JSON)")
    sp.add_argument("--assign", action="append",
                    help="override the template: atom=i,j,... or atom=rest (repeatable)")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("aut", help="automorphisms of A_n([i,i+j,i+ell])")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--cap", type=int, default=atoms.BRUTE_FORCE_CAP)
    common(sp)
    sp.set_defaults(func=cmd_aut)

    sp = sub.add_parser("table", help="smallest moduli for [i,i,i], [i,i,i+1], [i,i,i+2]")
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--max-p", type=int, default=search.DEFAULT_TABLE_BOUND)
    sp.add_argument("--jobs", type=int, default=default_jobs)
    sp.add_argument("--check-paper", action="store_true",
                    help="compare against the published values for n <= 16")
    common(sp, ("csv", "json"))
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("growth", help="smallest modulus per n, tab-separated")
    sp.add_argument("--min-n", type=int, default=1)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--schemes", type=_triple, nargs="+", default=[(0, 0, 0), (0, 0, 1)])
    sp.add_argument("--max-p", type=int, default=100_000)
    sp.add_argument("--parity", choices=search.PARITIES, default="even")
    sp.add_argument("--jobs", type=int, default=default_jobs)
    common(sp, ("tsv", "json"))
    sp.set_defaults(func=cmd_growth)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"comer-ra {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
