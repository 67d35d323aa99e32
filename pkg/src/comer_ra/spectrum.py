"""Mandatory/forbidden cycle spectra of Comer algebras C(p, n).

A triple (i, j, k) is *mandatory* when (X_i + X_j) meets X_k.  Multiplying
through by an element of X_i shows this only depends on the differences
``(j - i, k - i) mod n``, so the whole spectrum is an n x n table ``M`` with
``M[m][d]`` true iff some ``z`` in X_m has ``1 + z`` in X_d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .numtheory import CosetPartition, IndexOutOfRange

Triple = tuple[int, int, int]

ORACLE_CAP = 10_000


class OracleCapExceeded(ValueError):
    pass


class InconsistentOrbit(AssertionError):
    pass


@dataclass(frozen=True)
class SumSpectrum:
    """Rotation-reduced mandatory-triple table, one packed bit-row per ``m``."""

    p: int
    n: int
    g: int
    neg_index: int
    rows: tuple[int, ...]

    @property
    def k(self) -> int:
        return (self.p - 1) // self.n

    def entry(self, m: int, d: int) -> bool:
        return bool(self.rows[m % self.n] >> (d % self.n) & 1)

    @property
    def matrix(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=bool)
        for m, row in enumerate(self.rows):
            for d in range(self.n):
                out[m, d] = row >> d & 1
        return out

    def row_set(self, m: int) -> set[int]:
        return {d for d in range(self.n) if self.rows[m] >> d & 1}

    def forbidden_pairs(self) -> set[tuple[int, int]]:
        full = (1 << self.n) - 1
        out = set()
        for m, row in enumerate(self.rows):
            missing = full & ~row
            d = 0
            while missing:
                if missing & 1:
                    out.add((m, d))
                missing >>= 1
                d += 1
        return out


def _pack_rows(mat: np.ndarray) -> tuple[int, ...]:
    n = mat.shape[0]
    weights = [1 << d for d in range(n)]
    return tuple(sum(w for w, bit in zip(weights, row) if bit) for row in mat.tolist())


def compute_spectrum(part: CosetPartition) -> SumSpectrum:
    """O(p) spectrum: scan z = 1..p-2 and record (ind z, ind(1 + z))."""
    n, p = part.n, part.p
    mat = np.zeros((n, n), dtype=bool)
    if p > 2:
        # z = p-1 is skipped: 1 + z = 0 lies in no coset
        mat[part.ind[1 : p - 1], part.ind[2:p]] = True
    return SumSpectrum(p=p, n=n, g=part.g, neg_index=part.neg_index, rows=_pack_rows(mat))


def brute_force_triples(part: CosetPartition, cap: int = ORACLE_CAP) -> set[Triple]:
    """Every mandatory (i, j, k), from all (p-1)^2 sums x + y over F_p."""
    p, n = part.p, part.n
    if p > cap:
        raise OracleCapExceeded(f"p={p} exceeds oracle cap {cap}")
    ind = np.asarray(part.ind)
    ys = np.arange(1, p)
    codes: set[int] = set()
    for x in range(1, p):
        s = (x + ys) % p
        hit = s != 0
        c = (int(ind[x]) * n + ind[ys[hit]]) * n + ind[s[hit]]
        codes.update(np.unique(c).tolist())
    return {(c // (n * n), c // n % n, c % n) for c in codes}


def brute_force_spectrum(part: CosetPartition, cap: int = ORACLE_CAP) -> SumSpectrum:
    triples = brute_force_triples(part, cap)
    mat = np.zeros((part.n, part.n), dtype=bool)
    for i, j, k in triples:
        if i == 0:
            mat[j, k] = True
    return SumSpectrum(
        p=part.p, n=part.n, g=part.g, neg_index=part.neg_index, rows=_pack_rows(mat)
    )


def triple_mandatory(spec: SumSpectrum, i: int, j: int, k: int) -> bool:
    n = spec.n
    for x in (i, j, k):
        if not 0 <= x < n:
            raise IndexOutOfRange(f"index {x} outside 0..{n - 1}")
    return spec.entry((j - i) % n, (k - i) % n)


# -- cycle classes -----------------------------------------------------------


def normalize(t: Iterable[int], n: int) -> Triple:
    i, j, k = t
    return (0, (j - i) % n, (k - i) % n)


def _pair_moves(a: int, b: int, n: int, neg: int) -> Iterator[tuple[int, int]]:
    # (0,a,b) -swap-> (a,0,b); -peirce-> (neg,b,a); both re-normalized
    yield (-a) % n, (b - a) % n
    yield (b - neg) % n, (a - neg) % n


def pair_orbit(a: int, b: int, n: int, neg: int) -> frozenset[tuple[int, int]]:
    """Orbit of the normalized triple (0, a, b) under rotation, swap and Peirce move."""
    start = (a % n, b % n)
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for nxt in _pair_moves(*cur, n, neg):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return frozenset(seen)


@dataclass(frozen=True, order=True)
class CycleClass:
    """Canonical representative (0, j, ell) of an equivalence class of triples."""

    j: int
    ell: int
    n: int = field(compare=False)
    neg_index: int = field(default=0, compare=False)

    @property
    def triple(self) -> Triple:
        return (0, self.j, self.ell)

    def members(self) -> frozenset[Triple]:
        return frozenset((0, a, b) for a, b in pair_orbit(self.j, self.ell, self.n, self.neg_index))

    def __str__(self) -> str:
        return f"[0,{self.j},{self.ell}]"


def canonical_class(t: Iterable[int], n: int, neg: int = 0) -> CycleClass:
    _, a, b = normalize(t, n)
    j, ell = min(pair_orbit(a, b, n, neg))
    return CycleClass(j, ell, n, neg)


def class_closure(triples: Iterable[Iterable[int]], n: int, neg: int = 0) -> frozenset[tuple[int, int]]:
    """Union of the normalized orbits of ``triples``, as (j, ell) pairs."""
    out: set[tuple[int, int]] = set()
    for t in triples:
        _, a, b = normalize(t, n)
        out |= pair_orbit(a, b, n, neg)
    return frozenset(out)


def forbidden_classes(spec: SumSpectrum) -> frozenset[CycleClass]:
    """Canonical representatives of the orbits of non-mandatory triples."""
    n, neg = spec.n, spec.neg_index
    forbidden = spec.forbidden_pairs()
    seen: set[tuple[int, int]] = set()
    out = set()
    for a, b in sorted(forbidden):
        if (a, b) in seen:
            continue
        orbit = pair_orbit(a, b, n, neg)
        if not orbit <= forbidden:
            raise InconsistentOrbit(
                f"orbit of (0,{a},{b}) in C({spec.p},{spec.n}) mixes mandatory and forbidden triples"
            )
        seen |= orbit
        # first unseen pair in sorted order is its orbit's minimum
        out.add(CycleClass(a, b, n, neg))
    return frozenset(out)


def class_triples(classes: Iterable[CycleClass]) -> list[list[int]]:
    return [list(c.triple) for c in sorted(classes)]


def is_all_flexible(spec: SumSpectrum) -> bool:
    full = (1 << spec.n) - 1
    return all(row == full for row in spec.rows)


def is_ramsey(spec: SumSpectrum) -> bool:
    """Checks the three coset conditions directly and cross-checks the class form."""
    n = spec.n
    full = (1 << n) - 1
    symmetric = spec.neg_index == 0
    own_sum = spec.rows[0] == full & ~1  # X_0 + X_0 misses exactly X_0
    other_sums = all(row == full for row in spec.rows[1:])
    direct = symmetric and own_sum and other_sums
    by_class = symmetric and forbidden_classes(spec) == {CycleClass(0, 0, n, 0)}
    if direct != by_class:
        raise AssertionError(f"Ramsey routes disagree for C({spec.p},{n})")
    return direct


def spectrum_report(spec: SumSpectrum) -> dict:
    return {
        "p": spec.p,
        "n": spec.n,
        "g": spec.g,
        "k": spec.k,
        "neg_index": spec.neg_index,
        "forbidden_classes": class_triples(forbidden_classes(spec)),
        "ramsey": is_ramsey(spec),
        "all_flexible": is_all_flexible(spec),
    }
