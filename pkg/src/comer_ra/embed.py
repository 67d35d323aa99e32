"""Embedding abstract atom structures into Comer algebras.

An embedding sends every diversity atom to a union of coset indices.  Since
X_0 acts transitively on each coset, ``X_i + X_j`` either contains all of
X_k or misses it, so an abstract cycle (a, b, c) is realized iff

* forbidden: no index triple over set(a) x set(b) x set(c) is mandatory;
* mandatory: every k in set(c) is reached by some mandatory (i, j, k).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Mapping

import numpy as np

from .atoms import AtomStructure
from .numtheory import CosetPartition
from .search import ForbiddenScheme
from .spectrum import SumSpectrum

Triple = tuple[int, int, int]

MATERIALIZE_CAP = 400


class MalformedEmbedding(ValueError):
    pass


class UnknownAlgebra(KeyError):
    pass


class IncompatibleColorCount(ValueError):
    pass


@dataclass(frozen=True)
class NamedAlgebra:
    name: str
    structure: AtomStructure
    provenance: str = ""
    notes: str = ""

    def atom(self, name: str) -> int:
        return self.structure.names.index(name)


@dataclass(frozen=True)
class AtomEmbedding:
    target: SumSpectrum
    assignment: tuple[frozenset[int], ...]  # indexed by atom

    @classmethod
    def from_names(cls, target: SumSpectrum, s: AtomStructure, assignment: Mapping[str, set[int]]) -> "AtomEmbedding":
        unknown = set(assignment) - set(s.names)
        if unknown:
            raise MalformedEmbedding(f"unknown atoms {sorted(unknown)}")
        missing = set(s.names) - set(assignment)
        if missing:
            raise MalformedEmbedding(f"coverage: atoms {sorted(missing)} are not assigned")
        return cls(target, tuple(frozenset(assignment[name]) for name in s.names))


def check_embedding(s: AtomStructure, e: AtomEmbedding) -> None:
    """Raise MalformedEmbedding naming the first violated invariant."""
    n, neg = e.target.n, e.target.neg_index
    if len(e.assignment) != s.n:
        raise MalformedEmbedding(f"coverage: {len(e.assignment)} index sets for {s.n} atoms")
    seen: set[int] = set()
    for atom, idx in enumerate(e.assignment):
        if not idx:
            raise MalformedEmbedding(f"nonempty: atom {s.names[atom]} has no indices")
        if any(not 0 <= i < n for i in idx):
            raise MalformedEmbedding(f"range: atom {s.names[atom]} uses indices outside 0..{n - 1}")
        if seen & idx:
            raise MalformedEmbedding(f"disjoint: atom {s.names[atom]} overlaps {sorted(seen & idx)}")
        seen |= idx
    if seen != set(range(n)):
        raise MalformedEmbedding(f"coverage: indices {sorted(set(range(n)) - seen)} unassigned")
    for atom, idx in enumerate(e.assignment):
        shifted = frozenset((i + neg) % n for i in idx)
        if e.assignment[s.converse[atom]] != shifted:
            raise MalformedEmbedding(
                f"converse: set of {s.names[s.converse[atom]]} is not set of {s.names[atom]} shifted by {neg}"
            )


@dataclass(frozen=True)
class CycleCheck:
    cycle: tuple[str, str, str]
    expected: str  # "forbidden" | "mandatory"
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        sep = "" if all(len(a) == 1 for a in self.cycle) else " "
        line = f"{'PASS' if self.passed else 'FAIL'} {sep.join(self.cycle)} ({self.expected})"
        return f"{line}  {self.detail}" if self.detail else line


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CycleCheck, ...]
    p: int
    n: int
    g: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "g": self.g,
            "verdict": self.verdict,
            "cycles": [
                {"cycle": list(c.cycle), "expected": c.expected, "pass": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


def verify_embedding(s: AtomStructure, e: AtomEmbedding) -> VerificationReport:
    check_embedding(s, e)
    spec = e.target
    n = spec.n
    sets = [sorted(idx) for idx in e.assignment]
    checks = []
    for a, b, c in product(range(s.n), repeat=3):
        names = (s.names[a], s.names[b], s.names[c])
        if s.is_forbidden(a, b, c):
            bad = next(
                ((i, j, k) for i in sets[a] for j in sets[b] for k in sets[c]
                 if spec.entry((j - i) % n, (k - i) % n)),
                None,
            )
            detail = "" if bad is None else f"mandatory index triple {bad}"
            checks.append(CycleCheck(names, "forbidden", bad is None, detail))
        else:
            uncovered = [
                k for k in sets[c]
                if not any(spec.entry((j - i) % n, (k - i) % n) for i in sets[a] for j in sets[b])
            ]
            detail = "" if not uncovered else f"X_k not reached for k in {uncovered}"
            checks.append(CycleCheck(names, "mandatory", not uncovered, detail))
    return VerificationReport(tuple(checks), spec.p, spec.n, spec.g)


def materialized_verdict(s: AtomStructure, part: CosetPartition, assignment: tuple[frozenset[int], ...],
                         cap: int = MATERIALIZE_CAP) -> bool:
    """Independent check on the actual relations R_a = {(x, y) : x - y in union of X_i}.

    Builds p x p boolean matrices, composes them, and tests every diversity
    cycle by containment/disjointness.  Also checks R_{a converse} = R_a^-1.
    """
    p = part.p
    if p > cap:
        raise ValueError(f"p={p} exceeds materialization cap {cap}")
    ind = np.asarray(part.ind)
    diff = (np.arange(p)[:, None] - np.arange(p)[None, :]) % p
    diff_idx = ind[diff]  # -1 on the diagonal
    rel = [np.isin(diff_idx, sorted(idx)) for idx in assignment]
    for a in range(s.n):
        if not np.array_equal(rel[s.converse[a]], rel[a].T):
            return False
    ints = [r.astype(np.int32) for r in rel]
    for a, b in product(range(s.n), repeat=2):
        comp = (ints[a] @ ints[b]) > 0
        for c in range(s.n):
            if s.is_forbidden(a, b, c):
                if (comp & rel[c]).any():
                    return False
            elif not comp[rel[c]].all():
                return False
    return True


# -- catalog -----------------------------------------------------------------


def _parse_catalog(data: dict) -> dict[str, NamedAlgebra]:
    out = {}
    for entry in data["algebras"]:
        names = list(entry["atoms"])
        if len(set(names)) != len(names):
            raise ValueError(f"{entry['name']}: duplicate atom names")
        pos = {a: i for i, a in enumerate(names)}
        conv = list(range(len(names)))
        for x, y in entry.get("converse", {}).items():
            conv[pos[x]], conv[pos[y]] = pos[y], pos[x]
        cycles = [tuple(pos[a] for a in cyc) for cyc in entry["forbidden"]]
        structure = AtomStructure.from_cycles(len(names), cycles, conv, names)
        out[entry["name"]] = NamedAlgebra(entry["name"], structure, entry.get("provenance", ""),
                                          entry.get("notes", ""))
    return out


def load_catalog(path: str | Path | None = None) -> dict[str, NamedAlgebra]:
    """Built-in catalog, extended (and overridden by name) with the file at ``path``."""
    text = resources.files(__package__).joinpath("catalog.json").read_text()
    catalog = _parse_catalog(json.loads(text))
    if path is not None:
        catalog.update(_parse_catalog(json.loads(Path(path).read_text())))
    return catalog


def catalog_lookup(name: str, catalog: Mapping[str, NamedAlgebra] | None = None) -> NamedAlgebra:
    catalog = load_catalog() if catalog is None else catalog
    try:
        return catalog[name]
    except KeyError:
        raise UnknownAlgebra(f"unknown algebra {name!r}; known: {', '.join(sorted(catalog))}") from None


@dataclass(frozen=True)
class Template:
    scheme: ForbiddenScheme
    assignment: dict[str, frozenset[int]] = field(hash=False)


def scheme_for(name: str, n: int) -> Template:
    """Target forbidden scheme and atom -> index template for a catalog algebra."""
    def rest(*used):
        return frozenset(range(n)) - set(used)

    if name == "34_65":
        if n % 2 or n <= 4:
            raise IncompatibleColorCount(f"34_65 needs an even color count above 4, got {n}")
        h = n // 2
        scheme = ForbiddenScheme.from_triples(n, [(0, 0, h)], "even")
        return Template(scheme, {"b": frozenset({0}), "c": frozenset({h}), "a": rest(0, h)})
    if name == "35_37":
        if n % 2 or n < 4:
            raise IncompatibleColorCount(f"35_37 needs an even color count of at least 4, got {n}")
        h = n // 2
        scheme = ForbiddenScheme.from_triples(n, [(0, 0, 0)], "odd")
        return Template(scheme, {"r": frozenset({0}), "r~": frozenset({h}), "a": rest(0, h)})
    if name == "59_65":
        if n != 8:
            raise IncompatibleColorCount(f"59_65 template is fixed to 8 colors, got {n}")
        scheme = ForbiddenScheme.from_triples(8, [(0, 0, 0), (0, 0, 6), (0, 0, 7)], "even")
        return Template(scheme, {"b": frozenset({0}), "c": frozenset({6, 7}), "a": rest(0, 6, 7)})
    catalog_lookup(name)
    raise IncompatibleColorCount(f"no embedding template is known for {name}")
