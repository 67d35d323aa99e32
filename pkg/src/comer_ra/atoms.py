"""Abstract integral atom structures and their symmetries.

Atoms are the diversity atoms ``0..n-1``; the identity atom is implicit.
A cycle ``(x, y, z)`` asserts ``z <= x ; y``.  Forbidden cycle sets are kept
closed under the six Peircean transforms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Iterator, Sequence

from .numtheory import CosetPartition, build_partition, root_in_coset
from .spectrum import canonical_class, compute_spectrum, forbidden_classes

Triple = tuple[int, int, int]

BRUTE_FORCE_CAP = 9


class CapExceeded(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


class NotCoprime(ValueError):
    pass


class GcdIsOne(ValueError):
    pass


class NoRootFound(RuntimeError):
    pass


def peirce_transforms(t: Triple, conv: Sequence[int]) -> Iterator[Triple]:
    x, y, z = t
    yield (x, y, z)
    yield (conv[x], z, y)
    yield (z, conv[y], x)
    yield (y, conv[z], conv[x])
    yield (conv[z], x, conv[y])
    yield (conv[y], conv[x], conv[z])


def peirce_closure(cycles: Iterable[Triple], conv: Sequence[int]) -> frozenset[Triple]:
    out: set[Triple] = set()
    stack = [tuple(c) for c in cycles]
    while stack:
        t = stack.pop()
        if t in out:
            continue
        out.add(t)
        stack.extend(u for u in peirce_transforms(t, conv) if u not in out)
    return frozenset(out)


@dataclass(frozen=True)
class AtomStructure:
    n: int
    converse: tuple[int, ...]
    forbidden: frozenset[Triple]
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.converse) != self.n:
            raise ValueError("converse map must cover every atom")
        if any(self.converse[self.converse[i]] != i for i in range(self.n)):
            raise ValueError("converse is not an involution")
        for t in self.forbidden:
            if any(not 0 <= x < self.n for x in t):
                raise ValueError(f"cycle {t} mentions an unknown atom")
        if peirce_closure(self.forbidden, self.converse) != self.forbidden:
            raise ValueError("forbidden set is not Peirce-closed")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"a{i}" for i in range(self.n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Triple], converse: Sequence[int] | None = None,
                    names: Sequence[str] = ()) -> "AtomStructure":
        conv = tuple(range(n)) if converse is None else tuple(converse)
        return cls(n, conv, peirce_closure(cycles, conv), tuple(names))

    @property
    def symmetric(self) -> bool:
        return all(self.converse[i] == i for i in range(self.n))

    def is_forbidden(self, x: int, y: int, z: int) -> bool:
        return (x, y, z) in self.forbidden


def make_An(n: int, j: int, ell: int) -> AtomStructure:
    """Symmetric structure whose forbidden cycles are a_i a_{i+j} a_{i+ell}."""
    if n < 1:
        raise ValueError("need at least one atom")
    cycles = [(i, (i + j) % n, (i + ell) % n) for i in range(n)]
    return AtomStructure.from_cycles(n, cycles)


@dataclass(frozen=True)
class IndexPermutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images} is not a permutation")

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)

    @property
    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def fixed_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i == x]

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest element."""
        seen, out = set(), []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    @classmethod
    def from_cycle(cls, n: int, cycle: Sequence[int]) -> "IndexPermutation":
        images = list(range(n))
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            images[a] = b
        return cls(tuple(images))


def maps_onto(a: AtomStructure, b: AtomStructure, pi: IndexPermutation) -> bool:
    """Whether ``pi`` carries converse and forbidden cycles of ``a`` exactly onto ``b``."""
    if len(pi) != a.n or a.n != b.n:
        return False
    if any(pi(a.converse[i]) != b.converse[pi(i)] for i in range(a.n)):
        return False
    image = {(pi(x), pi(y), pi(z)) for x, y, z in a.forbidden}
    return image == b.forbidden


def is_automorphism(s: AtomStructure, pi: IndexPermutation) -> bool:
    return maps_onto(s, s, pi)


def _search_maps(a: AtomStructure, b: AtomStructure, first_only: bool) -> list[IndexPermutation]:
    # backtracking: position t is assigned after 0..t-1; any cycle whose atoms
    # are all assigned must keep its forbidden/mandatory status
    n = a.n
    if len(a.forbidden) != len(b.forbidden):
        return []
    images = [-1] * n
    used = [False] * n
    found: list[IndexPermutation] = []

    def consistent(t: int) -> bool:
        y_t = images[t]
        c = a.converse[t]
        if c <= t and images[c] != b.converse[y_t]:
            return False
        for x in range(t + 1):
            for y in range(t + 1):
                for z in (t,) if max(x, y) < t else range(t + 1):
                    if ((x, y, z) in a.forbidden) != ((images[x], images[y], images[z]) in b.forbidden):
                        return False
        return True

    def extend(t: int) -> bool:
        if t == n:
            found.append(IndexPermutation(tuple(images)))
            return first_only
        for v in range(n):
            if used[v]:
                continue
            images[t] = v
            used[v] = True
            if consistent(t) and extend(t + 1):
                return True
            used[v] = False
            images[t] = -1
        return False

    extend(0)
    return found


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(f"{n} atoms exceeds brute-force cap {cap}")


def automorphisms(s: AtomStructure, cap: int = BRUTE_FORCE_CAP) -> list[IndexPermutation]:
    """Every converse-compatible permutation preserving the forbidden cycles, sorted."""
    _check_cap(s.n, cap)
    return sorted(_search_maps(s, s, first_only=False), key=lambda p: p.images)


def cycle_structures_isomorphic(a: AtomStructure, b: AtomStructure, cap: int = BRUTE_FORCE_CAP) -> bool:
    if a.n != b.n:
        raise SizeMismatch(f"{a.n} atoms vs {b.n} atoms")
    _check_cap(a.n, cap)
    return bool(_search_maps(a, b, first_only=True))


def rho_isomorphism(n: int, j: int) -> IndexPermutation:
    """The scaling a_i -> a_{j*i mod n}, checked to carry A_n([i,i,i+1]) onto A_n([i,i,i+j])."""
    if gcd(j, n) != 1:
        raise NotCoprime(f"gcd({j}, {n}) != 1")
    rho = IndexPermutation(tuple(j * i % n for i in range(n)))
    if not maps_onto(make_An(n, 0, 1), make_An(n, 0, j), rho):
        raise AssertionError(f"scaling by {j} is not an isomorphism for n={n}")
    return rho


def fixed_point_automorphism(n: int, j: int) -> IndexPermutation:
    """The cycle (0 x 2x ...) with x = gcd(j, n), an automorphism of A_n([i,i,i+j]) with fixed points."""
    x = gcd(j, n)
    if x == 1:
        raise GcdIsOne(f"gcd({j}, {n}) = 1")
    if j % n == 0:
        raise ValueError("offset j must be nonzero modulo n")
    pi = IndexPermutation.from_cycle(n, list(range(0, n, x)))
    if pi.is_identity or not pi.fixed_points():
        raise AssertionError(f"{pi} is trivial or fixed-point free")
    if not is_automorphism(make_An(n, 0, j), pi):
        raise AssertionError(f"{pi} is not an automorphism of A_{n}([i,i,i+{j}])")
    return pi


def rotation_automorphisms_hold(forbidden_triples: Iterable[Triple], n: int) -> bool:
    """Every rotation s -> s+t preserves the given triple set."""
    trip = set(forbidden_triples)
    return all({((x + t) % n, (y + t) % n, (z + t) % n) for x, y, z in trip} == trip for t in range(n))


def reindex_by_root(part: CosetPartition, j: int) -> CosetPartition:
    """Rebuild ``part`` with a primitive root from X_j as generator.

    When C(p, n) forbids exactly the class [i,i,i+j] with j a unit mod n,
    the new indexing forbids exactly [i,i,i+1].
    """
    n = part.n
    if gcd(j, n) != 1:
        raise NotCoprime(f"gcd({j}, {n}) != 1")
    neg = part.neg_index
    classes = forbidden_classes(compute_spectrum(part))
    if classes != {canonical_class((0, 0, j), n, neg)}:
        raise ValueError(f"C({part.p},{n}) does not forbid exactly [i,i,i+{j}]: {sorted(map(str, classes))}")
    root = root_in_coset(part, j % n)
    if root is None:
        raise NoRootFound(f"X_{j} of C({part.p},{n}) contains no primitive root")
    new = build_partition(part.p, n, root)
    if forbidden_classes(compute_spectrum(new)) != {canonical_class((0, 0, 1), n, neg)}:
        raise AssertionError(f"reindexing by {root} did not produce [i,i,i+1]")
    return new
