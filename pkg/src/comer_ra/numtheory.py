"""Primality, primitive roots and coset partitions of prime fields.

A coset partition splits F_p^x into the ``n`` cosets of the index-``n``
multiplicative subgroup, labelled through a primitive root ``g``:
``X_i = {g^i, g^(n+i), g^(2n+i), ...}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np
from sympy import factorint
from sympy import isprime as _isprime

MAX_MODULUS = 2**32 - 1


class NotPrime(ValueError):
    pass


class DoesNotDivide(ValueError):
    pass


class NotPrimitiveRoot(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


def is_prime(m: int) -> bool:
    """Deterministic primality test (BPSW, exact for every 64-bit integer)."""
    if m < 0:
        raise ValueError(f"is_prime expects m >= 0, got {m}")
    return bool(_isprime(m))


@lru_cache(maxsize=4096)
def _prime_factors(m: int) -> tuple[int, ...]:
    return tuple(sorted(factorint(m)))


def multiplicative_order(a: int, p: int) -> int:
    """Order of ``a`` in F_p^x for prime ``p``."""
    a %= p
    if a == 0:
        raise ValueError("0 has no multiplicative order")
    order = p - 1
    for q in _prime_factors(p - 1):
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


def is_primitive_root(g: int, p: int) -> bool:
    if g % p == 0:
        return False
    return multiplicative_order(g, p) == p - 1


def find_primitive_root(p: int) -> int:
    """Smallest positive primitive root modulo the prime ``p``."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        return 1
    for g in range(2, p):
        if is_primitive_root(g, p):
            return g
    raise AssertionError(f"no primitive root found modulo {p}")  # unreachable for primes


@lru_cache(maxsize=256)
def discrete_log_table(p: int, g: int) -> np.ndarray:
    """Array ``log`` with ``log[g^t mod p] = t`` for 0 <= t <= p-2; ``log[0] = -1``.

    Built in one pass over the powers of ``g``; the returned array is read-only.
    """
    log = np.full(p, -1, dtype=np.int64)
    x = 1
    for t in range(p - 1):
        log[x] = t
        x = x * g % p
    log.setflags(write=False)
    return log


@dataclass(frozen=True)
class CosetPartition:
    """The cosets X_0..X_{n-1} of F_p^x, indexed through the generator ``g``.

    ``ind`` is an integer array of length ``p``: ``ind[x]`` is the coset
    index of the residue ``x`` (``ind[0] == -1``, 0 lies in no coset).
    """

    p: int
    n: int
    g: int
    ind: np.ndarray = field(repr=False, compare=False)

    @property
    def k(self) -> int:
        return (self.p - 1) // self.n

    @property
    def neg_index(self) -> int:
        """Coset index of -1; 0 exactly when every coset is closed under negation."""
        return int(self.ind[self.p - 1])

    @property
    def symmetric(self) -> bool:
        return self.neg_index == 0

    def index_of(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ValueError("0 lies in no coset")
        return int(self.ind[x])

    def __eq__(self, other):
        if not isinstance(other, CosetPartition):
            return NotImplemented
        return (self.p, self.n, self.g) == (other.p, other.n, other.g)

    def __hash__(self):
        return hash((self.p, self.n, self.g))


def build_partition(p: int, n: int, g: int | None = None) -> CosetPartition:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p > MAX_MODULUS:
        raise ValueError(f"modulus {p} exceeds supported width 2^32-1")
    if n < 1 or (p - 1) % n:
        raise DoesNotDivide(f"n={n} does not divide p-1={p - 1}")
    if g is None:
        g = find_primitive_root(p)
    else:
        g %= p
        if not is_primitive_root(g, p):
            raise NotPrimitiveRoot(f"{g} is not a primitive root modulo {p}")
    log = discrete_log_table(p, g)
    ind = np.where(log >= 0, log % n, -1)
    ind.setflags(write=False)
    return CosetPartition(p=p, n=n, g=g, ind=ind)


def coset(part: CosetPartition, i: int) -> frozenset[int]:
    """The residues of X_i (exactly ``k`` of them)."""
    if not 0 <= i < part.n:
        raise IndexOutOfRange(f"coset index {i} outside 0..{part.n - 1}")
    return frozenset(int(x) for x in np.flatnonzero(part.ind == i))


def primitive_roots(p: int) -> list[int]:
    """All primitive roots modulo ``p`` in increasing order."""
    if p == 2:
        return [1]
    g = find_primitive_root(p)
    return sorted(pow(g, e, p) for e in range(1, p - 1) if gcd(e, p - 1) == 1)


def root_in_coset(part: CosetPartition, j: int) -> int | None:
    """Smallest primitive root lying in X_j, or None."""
    for x in sorted(coset(part, j)):
        if is_primitive_root(x, part.p):
            return x
    return None
