from math import gcd

import pytest
from hypothesis import given, strategies as st
from sympy import primerange

from comer_ra.numtheory import (
    DoesNotDivide,
    IndexOutOfRange,
    NotPrime,
    NotPrimitiveRoot,
    build_partition,
    coset,
    find_primitive_root,
    is_prime,
    multiplicative_order,
    primitive_roots,
    root_in_coset,
)

from oracles import cosets_by_powers, order_by_multiplication, smallest_root_by_orders, trial_division_is_prime


@pytest.mark.parametrize("m, expected", [(2, True), (3697, True), (3696, False), (0, False), (1, False)])
def test_is_prime_examples(m, expected):
    assert is_prime(m) is expected


@given(st.integers(min_value=0, max_value=20_000))
def test_is_prime_matches_trial_division(m):
    assert is_prime(m) == trial_division_is_prime(m)


def test_is_prime_large():
    assert is_prime(4294967291)  # largest prime below 2^32
    assert not is_prime(4294967291 * 3)


# oracle values: smallest g with order p-1 by repeated multiplication
@pytest.mark.parametrize("p, g", [(13, 2), (2, 1), (113, 3), (3697, 5), (61, 2), (3221, 10)])
def test_find_primitive_root(p, g):
    assert find_primitive_root(p) == g
    assert smallest_root_by_orders(p) == g


def test_find_primitive_root_rejects_composite():
    with pytest.raises(NotPrime):
        find_primitive_root(12)


def test_eight_is_not_a_primitive_root_mod_113():
    assert order_by_multiplication(8, 113) == 28
    assert multiplicative_order(8, 113) == 28


@pytest.mark.parametrize("p", list(primerange(3, 200)))
def test_order_matches_naive(p):
    for a in range(1, p):
        assert multiplicative_order(a, p) == order_by_multiplication(a, p)


def test_partition_13_3():
    part = build_partition(13, 3, 2)
    assert [coset(part, i) for i in range(3)] == [{1, 8, 12, 5}, {2, 3, 11, 10}, {4, 6, 9, 7}]
    assert part.neg_index == 0 and part.k == 4


def test_partition_5_2():
    part = build_partition(5, 2, 2)
    assert coset(part, 0) == {1, 4} and coset(part, 1) == {2, 3}
    assert part.neg_index == 0


def test_partition_3221_20_has_odd_k():
    part = build_partition(3221, 20)
    assert part.k == 161 and part.neg_index == 10


def test_single_coset_is_everything():
    part = build_partition(31, 1)
    assert coset(part, 0) == set(range(1, 31))


def test_degenerate_p2():
    part = build_partition(2, 1)
    assert part.g == 1 and part.k == 1 and part.neg_index == 0
    assert coset(part, 0) == {1}


@pytest.mark.parametrize(
    "args, exc",
    [((12, 3), NotPrime), ((13, 5), DoesNotDivide), ((13, 3, 3), NotPrimitiveRoot), ((113, 8, 8), NotPrimitiveRoot)],
)
def test_build_partition_errors(args, exc):
    with pytest.raises(exc):
        build_partition(*args)


def test_coset_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        coset(build_partition(13, 3), 3)


def _valid_pn():
    primes = list(primerange(2, 1000))
    return st.sampled_from(primes).flatmap(
        lambda p: st.tuples(st.just(p), st.sampled_from([d for d in range(1, p) if (p - 1) % d == 0] or [1]))
    )


@given(_valid_pn())
def test_partition_invariants(pn):
    p, n = pn
    part = build_partition(p, n)
    cs = [coset(part, i) for i in range(n)]
    assert all(len(c) == part.k for c in cs)
    assert set().union(*cs) == set(range(1, p))
    assert sum(len(c) for c in cs) == p - 1
    assert part.index_of(1) == 0 and part.index_of(part.g) == 1 % n
    assert part.neg_index == (0 if (part.k % 2 == 0 or p == 2) else n // 2)


@given(_valid_pn())
def test_partition_matches_power_enumeration(pn):
    p, n = pn
    part = build_partition(p, n)
    assert [coset(part, i) for i in range(n)] == cosets_by_powers(p, n, part.g)


@given(_valid_pn(), st.data())
def test_generator_change_relabels_cosets(pn, data):
    p, n = pn
    g2 = data.draw(st.sampled_from(primitive_roots(p)))
    a, b = build_partition(p, n), build_partition(p, n, g2)
    assert coset(a, 0) == coset(b, 0)
    assert sorted(map(sorted, (coset(a, i) for i in range(n)))) == sorted(map(sorted, (coset(b, i) for i in range(n))))


def test_primitive_roots_count():
    for p in primerange(3, 300):
        roots = primitive_roots(p)
        assert len(roots) == sum(1 for e in range(1, p) if gcd(e, p - 1) == 1)
        assert roots[0] == find_primitive_root(p)


def test_root_in_coset():
    part = build_partition(61, 5)
    for j in range(1, 5):
        r = root_in_coset(part, j)
        assert part.index_of(r) == j and order_by_multiplication(r, 61) == 60
    assert root_in_coset(part, 0) is None  # X_0 is the subgroup of 5th powers


def test_neg_index_parity_law_exhaustive():
    for p in primerange(2, 1000):
        for n in (d for d in range(1, p) if (p - 1) % d == 0):
            part = build_partition(p, n)
            k = (p - 1) // n
            assert part.neg_index == (0 if k % 2 == 0 or p == 2 else n // 2)
            assert part.index_of(p - 1) == part.neg_index
