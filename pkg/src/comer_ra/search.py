"""Prime searches for Comer algebras realizing a target forbidden scheme.

Only the smallest primitive root is used to build each candidate.  Changing
generator to a root ``r`` in X_s rescales every coset index by ``s^-1 mod n``,
so a candidate is a hit when its forbidden set equals the scheme scaled by
some unit ``s``; the reported generator is the smallest primitive root in X_s.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

from sympy import primerange

from .numtheory import build_partition, root_in_coset
from .spectrum import CycleClass, canonical_class, class_closure, compute_spectrum, normalize

log = logging.getLogger(__name__)

PARITIES = ("even", "odd", "any")
CHECKPOINT_VERSION = 1
DEFAULT_TABLE_BOUND = 5000
TABLE_OFFSETS = (0, 1, 2)

# Smallest modulus per row n and column [i,i,i], [i,i,i+1], [i,i,i+2];
# "x" = no representation, "--" = redundant cell.
PUBLISHED_TABLE: dict[int, tuple] = {
    1: (2, "x", "x"),
    2: (5, "x", "x"),
    3: (13, "x", "x"),
    4: (41, "x", "x"),
    5: (71, 61, "--"),
    6: (97, 109, "x"),
    7: (491, 127, "--"),
    8: ("x", 257, "x"),
    9: (523, 307, "--"),
    10: (1181, 641, 421),
    11: (947, 331, "--"),
    12: (769, 673, "x"),
    13: ("x", 667, "--"),
    14: (1709, 953, "x"),
    15: (1291, "x", "x"),
    16: (1217, 2593, 1697),
}
# 667 = 23 * 29 is not prime; the cell is reported, never asserted
ADVISORY_CELLS = {(13, 1)}


class InvalidScheme(ValueError):
    pass


class CorruptCheckpoint(ValueError):
    pass


def _neg_for(n: int, parity: str) -> int:
    return n // 2 if parity == "odd" else 0


@dataclass(frozen=True)
class ForbiddenScheme:
    """Target set of forbidden classes for C(p, n) with a required k-parity.

    ``parity="even"`` means every coset is closed under negation (k even,
    or the degenerate p = 2).
    """

    n: int
    classes: frozenset[CycleClass]
    parity: str = "even"

    def __post_init__(self):
        if self.n < 1:
            raise InvalidScheme("n must be positive")
        if self.parity not in PARITIES:
            raise InvalidScheme(f"parity must be one of {PARITIES}")
        if self.parity == "odd" and self.n % 2:
            raise InvalidScheme("odd k requires even n")
        neg = _neg_for(self.n, self.parity)
        for c in self.classes:
            if not (0 <= c.j < self.n and 0 <= c.ell < self.n):
                raise InvalidScheme(f"class {c} has indices outside 0..{self.n - 1}")
            if canonical_class(c.triple, self.n, neg).triple != c.triple:
                raise InvalidScheme(f"class {c} is not canonical")

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[Sequence[int]], parity: str = "even") -> "ForbiddenScheme":
        if parity not in PARITIES:
            raise InvalidScheme(f"parity must be one of {PARITIES}")
        neg = _neg_for(n, parity) if n >= 1 else 0
        return cls(n, frozenset(canonical_class(tuple(t), n, neg) for t in triples), parity)

    @property
    def triples(self) -> list[list[int]]:
        return [list(c.triple) for c in sorted(self.classes)]

    @property
    def label(self) -> str:
        return " ".join(",".join(map(str, t)) for t in self.triples)

    def admits(self, p: int) -> bool:
        if (p - 1) % self.n:
            return False
        symmetric = p == 2 or ((p - 1) // self.n) % 2 == 0
        return self.parity == "any" or symmetric == (self.parity == "even")

    def target_pairs(self, neg: int, scale: int = 1) -> frozenset[tuple[int, int]]:
        n = self.n
        return class_closure(((0, c.j * scale, c.ell * scale) for c in self.classes), n, neg)


@lru_cache(maxsize=64)
def _units(n: int) -> tuple[int, ...]:
    return tuple(s for s in range(n) if gcd(s, n) == 1) if n > 1 else (0,)


def forbidden_pairs_match(scheme: ForbiddenScheme, p: int, g: int) -> bool:
    part = build_partition(p, scheme.n, g)
    return compute_spectrum(part).forbidden_pairs() == scheme.target_pairs(part.neg_index)


def evaluate_prime(scheme: ForbiddenScheme, p: int) -> int | None:
    """Matching generator for C(p, n), or None.  Assumes ``scheme.admits(p)``."""
    part = build_partition(p, scheme.n)
    spec = compute_spectrum(part)
    fp = spec.forbidden_pairs()
    neg = part.neg_index
    best = None
    for s in _units(scheme.n):
        target = scheme.target_pairs(neg, s)
        if len(target) != len(fp) or target != fp:
            continue
        g = part.g if s == 1 else root_in_coset(part, s)
        if g is not None and (best is None or g < best):
            best = g
    return best


def _evaluate_batch(args) -> list[int | None]:
    scheme, primes = args
    return [evaluate_prime(scheme, p) for p in primes]


@dataclass(frozen=True)
class SearchOutcome:
    scheme: ForbiddenScheme
    found: bool
    p: int | None
    g: int | None
    bound: int
    primes_checked: int
    elapsed: float = field(default=0.0, compare=False)

    @property
    def status(self) -> str:
        return "found" if self.found else "none_below_bound"

    def to_dict(self) -> dict:
        return {
            "n": self.scheme.n,
            "classes": self.scheme.triples,
            "parity": self.scheme.parity,
            "status": self.status,
            "p": self.p,
            "g": self.g,
            "max_p": self.bound,
            "primes_checked": self.primes_checked,
        }

    def __str__(self) -> str:
        head = f"n={self.scheme.n} scheme={self.scheme.label} parity={self.scheme.parity}"
        if self.found:
            return f"{head}: found p={self.p} g={self.g} ({self.primes_checked} primes checked)"
        return f"{head}: none below {self.bound} ({self.primes_checked} primes checked)"


@dataclass
class SearchCheckpoint:
    scheme: ForbiddenScheme
    max_p: int
    last_checked: int
    hits: list[tuple[int, int]] = field(default_factory=list)
    version: int = CHECKPOINT_VERSION

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "n": self.scheme.n,
            "classes": self.scheme.triples,
            "parity": self.scheme.parity,
            "max_p": self.max_p,
            "last_checked": self.last_checked,
            "hits": [{"p": p, "g": g} for p, g in sorted(self.hits)],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SearchCheckpoint":
        try:
            if d["version"] != CHECKPOINT_VERSION:
                raise CorruptCheckpoint(f"unsupported checkpoint version {d['version']}")
            scheme = ForbiddenScheme.from_triples(int(d["n"]), d["classes"], d["parity"])
            hits = [(int(h["p"]), int(h["g"])) for h in d["hits"]]
            ck = cls(scheme, int(d["max_p"]), int(d["last_checked"]), hits)
        except CorruptCheckpoint:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise CorruptCheckpoint(f"malformed checkpoint: {e}") from e
        if hits != sorted(hits):
            raise CorruptCheckpoint("hits are not sorted by p")
        return ck

    def save(self, path: str | os.PathLike) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(self.to_dict(), fh, sort_keys=False)
            fh.write("\n")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "SearchCheckpoint":
        try:
            with open(path) as fh:
                d = json.load(fh)
        except json.JSONDecodeError as e:
            raise CorruptCheckpoint(f"{path}: {e}") from e
        return cls.from_dict(d)


def candidate_primes(scheme: ForbiddenScheme, lo: int, hi: int) -> list[int]:
    """Parity-compatible primes p = 1 (mod n) with lo < p <= hi."""
    return [p for p in primerange(max(lo + 1, 2), hi + 1) if scheme.admits(p)]


def search_scheme(
    scheme: ForbiddenScheme,
    max_p: int,
    resume: SearchCheckpoint | None = None,
    jobs: int = 1,
    checkpoint_path: str | os.PathLike | None = None,
    batch_size: int = 64,
) -> SearchOutcome:
    """Smallest prime p <= max_p whose C(p, n) forbids exactly ``scheme``."""
    if max_p < 2:
        raise InvalidScheme("max_p must be at least 2")
    start = time.perf_counter()
    last = 1
    if resume is not None:
        if (resume.scheme.n, resume.scheme.classes, resume.scheme.parity) != (
            scheme.n, scheme.classes, scheme.parity
        ):
            raise CorruptCheckpoint("checkpoint belongs to a different scheme")
        last = resume.last_checked
        for p, g in resume.hits:
            if p <= max_p:
                return _finish(scheme, p, g, max_p, start)

    def save(last_checked: int, hits: list[tuple[int, int]]) -> None:
        if checkpoint_path is not None:
            SearchCheckpoint(scheme, max_p, last_checked, hits).save(checkpoint_path)

    primes = candidate_primes(scheme, last, max_p)
    batches = [primes[i : i + batch_size] for i in range(0, len(primes), batch_size)]
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 and len(primes) > batch_size else None
    try:
        step = max(jobs, 1)
        for b in range(0, len(batches), step):
            group = batches[b : b + step]
            if pool is None:
                results = [_evaluate_batch((scheme, batch)) for batch in group]
            else:
                results = list(pool.map(_evaluate_batch, [(scheme, batch) for batch in group]))
            for batch, res in zip(group, results):
                for p, g in zip(batch, res):
                    if g is not None:
                        save(p, [(p, g)])
                        return _finish(scheme, p, g, max_p, start)
            save(group[-1][-1], [])
        # the whole interval up to max_p is now processed
        save(max(last, max_p), [])
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    return SearchOutcome(scheme, False, None, None, max_p, len(candidate_primes(scheme, 1, max_p)),
                         time.perf_counter() - start)


def _finish(scheme: ForbiddenScheme, p: int, g: int, max_p: int, start: float) -> SearchOutcome:
    if not scheme.admits(p) or not forbidden_pairs_match(scheme, p, g):
        raise AssertionError(f"hit C({p},{scheme.n}) with g={g} failed re-verification")
    checked = len(candidate_primes(scheme, 1, p))
    return SearchOutcome(scheme, True, p, g, max_p, checked, time.perf_counter() - start)


def checkpoint_path_for(scheme: ForbiddenScheme, cache_dir: str | os.PathLike) -> Path:
    tag = "_".join("-".join(map(str, t)) for t in scheme.triples)
    return Path(cache_dir) / f"search_n{scheme.n}_{tag}_{scheme.parity}.json"


# -- table and growth data ---------------------------------------------------


@dataclass(frozen=True)
class TableCell:
    n: int
    scheme: str
    p: int | None
    g: int | None
    status: str  # found | none_below_bound | redundant


def is_redundant(n: int, j: int) -> bool:
    """[i,i,i+j] coincides with [i,i,i] or is isomorphic to [i,i,i+1] via scaling."""
    if j == 0:
        return False
    if j % n == 0:
        return True
    return j != 1 and gcd(j, n) == 1


def reproduce_table(max_n: int, max_p: int = DEFAULT_TABLE_BOUND, jobs: int = 1) -> list[TableCell]:
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    cells = []
    for n in range(1, max_n + 1):
        for j in TABLE_OFFSETS:
            label = f"0,0,{j}"
            if is_redundant(n, j):
                cells.append(TableCell(n, label, None, None, "redundant"))
                continue
            out = search_scheme(ForbiddenScheme.from_triples(n, [(0, 0, j)]), max_p, jobs=jobs)
            cells.append(TableCell(n, label, out.p, out.g, out.status))
            log.info("n=%d [0,0,%d]: %s", n, j, out.status)
    return cells


def table_csv(cells: Iterable[TableCell]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "scheme", "p", "g", "status"])
    for c in cells:
        w.writerow([c.n, c.scheme, "" if c.p is None else c.p, "" if c.g is None else c.g, c.status])
    return buf.getvalue()


@dataclass(frozen=True)
class TableMismatch:
    n: int
    column: int
    published: object
    cell: TableCell
    advisory: bool = False

    def __str__(self) -> str:
        got = self.cell.p if self.cell.status == "found" else self.cell.status
        kind = "advisory" if self.advisory else "mismatch"
        return f"{kind}: n={self.n} [i,i,i+{TABLE_OFFSETS[self.column]}] published {self.published}, computed {got}"


def cell_matches(published, cell: TableCell) -> bool:
    if published == "--":
        return cell.status == "redundant"
    if published == "x":
        return cell.status in ("none_below_bound", "redundant")
    return cell.status == "found" and cell.p == published


def compare_with_published(cells: Iterable[TableCell]) -> list[TableMismatch]:
    """Cells disagreeing with PUBLISHED_TABLE; advisory cells are flagged, not failed."""
    out = []
    for cell in cells:
        if cell.n not in PUBLISHED_TABLE:
            continue
        col = TABLE_OFFSETS.index(int(cell.scheme.split(",")[2]))
        published = PUBLISHED_TABLE[cell.n][col]
        advisory = (cell.n, col) in ADVISORY_CELLS
        if advisory or not cell_matches(published, cell):
            out.append(TableMismatch(cell.n, col, published, cell, advisory))
    return out


def emit_growth_data(
    n_range: Iterable[int],
    schemes: Sequence[Sequence[int]],
    max_p: int,
    parity: str = "even",
    jobs: int = 1,
) -> list[tuple[int, str, int | None]]:
    """One (n, scheme label, smallest p or None) row per n and scheme."""
    rows = []
    for n in n_range:
        for t in schemes:
            label = ",".join(str(x) for x in t)
            triple = normalize(t, n) if n > 0 else t
            out = search_scheme(ForbiddenScheme.from_triples(n, [triple], parity), max_p, jobs=jobs)
            rows.append((n, label, out.p))
    return rows


def growth_tsv(rows: Iterable[tuple[int, str, int | None]]) -> str:
    return "".join(f"{n}\t{label}\t{'' if p is None else p}\n" for n, label, p in rows)
