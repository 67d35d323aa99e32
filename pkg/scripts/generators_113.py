"""Which primitive roots of 113 give C(113, 8) the forbidden classes
[0,0,0], [0,0,6], [0,0,7], and does the 59_65 template embed under each?

Every primitive root is tried; the ones producing exactly that class set are
listed together with the verdict of the coset-level check and of the
independent check on the materialized relations.
"""

import argparse
import sys

from comer_ra import embed
from comer_ra.numtheory import build_partition, primitive_roots
from comer_ra.spectrum import class_triples, compute_spectrum, forbidden_classes

TARGET = [[0, 0, 0], [0, 0, 6], [0, 0, 7]]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="primitive roots of 113 realizing the 59_65 scheme")
    ap.add_argument("--p", type=int, default=113)
    args = ap.parse_args(argv)

    alg = embed.catalog_lookup("59_65")
    assignment = embed.scheme_for("59_65", 8).assignment
    matching = []
    for g in primitive_roots(args.p):
        part = build_partition(args.p, 8, g)
        spec = compute_spectrum(part)
        classes = class_triples(forbidden_classes(spec))
        if classes != TARGET:
            continue
        emb = embed.AtomEmbedding.from_names(spec, alg.structure, assignment)
        report = embed.verify_embedding(alg.structure, emb)
        order = [frozenset(assignment[a]) for a in alg.structure.names]
        materialized = embed.materialized_verdict(alg.structure, part, tuple(order))
        matching.append(g)
        print(f"g={g:>3}  coset check {report.verdict}  materialized {'PASS' if materialized else 'FAIL'}")
    if not matching:
        print(f"no primitive root of {args.p} gives {TARGET}")
        return 1
    print(f"smallest matching generator: {min(matching)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
