from itertools import permutations
from math import gcd

import pytest
from hypothesis import given, strategies as st

from comer_ra.atoms import (
    AtomStructure,
    CapExceeded,
    GcdIsOne,
    IndexPermutation,
    NotCoprime,
    SizeMismatch,
    automorphisms,
    cycle_structures_isomorphic,
    fixed_point_automorphism,
    is_automorphism,
    make_An,
    peirce_closure,
    reindex_by_root,
    rho_isomorphism,
    rotation_automorphisms_hold,
)
from comer_ra.numtheory import build_partition, primitive_roots
from comer_ra.spectrum import compute_spectrum, forbidden_classes


def brute_automorphisms(s):
    """n! enumeration, the reference for the backtracking search."""
    out = []
    for perm in permutations(range(s.n)):
        if any(perm[s.converse[i]] != s.converse[perm[i]] for i in range(s.n)):
            continue
        if {(perm[x], perm[y], perm[z]) for x, y, z in s.forbidden} == s.forbidden:
            out.append(perm)
    return sorted(out)


def test_make_An_42_65():
    s = make_An(3, 0, 1)
    assert {(0, 0, 1), (1, 1, 2), (2, 2, 0)} <= s.forbidden
    # symmetric closure of a_i a_i a_{i+1}
    assert s.forbidden == {(i, i, (i + 1) % 3) for i in range(3)} | {(i, (i + 1) % 3, i) for i in range(3)} | {
        ((i + 1) % 3, i, i) for i in range(3)
    }


def test_make_An_6_2_contains_example_cycles():
    s = make_An(6, 0, 2)
    assert {(0, 0, 2), (2, 2, 4), (4, 4, 0)} <= s.forbidden


def test_make_An_single_atom():
    s = make_An(1, 0, 0)
    assert s.n == 1 and s.forbidden == {(0, 0, 0)}


def test_peirce_closure_idempotent_on_asymmetric():
    conv = (0, 2, 1)
    once = peirce_closure([(1, 1, 1)], conv)
    assert peirce_closure(once, conv) == once
    assert once == {(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 2, 2), (2, 1, 2), (2, 2, 2)}


@given(st.integers(1, 6), st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5)), max_size=6))
def test_peirce_closure_idempotent(n, cycles):
    cycles = [tuple(x % n for x in c) for c in cycles]
    once = peirce_closure(cycles, tuple(range(n)))
    assert peirce_closure(once, tuple(range(n))) == once


def test_structure_validation():
    with pytest.raises(ValueError):
        AtomStructure(2, (0, 1), frozenset({(0, 0, 1)}))  # not closed
    with pytest.raises(ValueError):
        AtomStructure.from_cycles(3, [], converse=(1, 2, 0))


def test_automorphisms_5_1_are_shifts():
    auts = automorphisms(make_An(5, 0, 1))
    assert [a.images for a in auts] == sorted(tuple((x + s) % 5 for s in range(5)) for x in range(5))


def test_automorphisms_6_2_contains_024():
    auts = automorphisms(make_An(6, 0, 2))
    pi = IndexPermutation.from_cycle(6, [0, 2, 4])
    assert pi in auts and pi.fixed_points() == [1, 3, 5]
    assert str(pi) == "(0 2 4)"


def test_automorphisms_single_atom():
    assert [a.images for a in automorphisms(make_An(1, 0, 0))] == [(0,)]


@pytest.mark.parametrize("n, j, ell", [(n, j, ell) for n in range(1, 7) for j in range(n) for ell in range(n)])
def test_backtracking_matches_enumeration(n, j, ell):
    s = make_An(n, j, ell)
    assert [a.images for a in automorphisms(s)] == brute_automorphisms(s)


def test_automorphisms_respect_converse():
    s = AtomStructure.from_cycles(3, [(1, 1, 1)], converse=(0, 2, 1))
    auts = automorphisms(s)
    assert [a.images for a in auts] == brute_automorphisms(s)
    assert all(a(0) == 0 for a in auts)


def test_cap():
    with pytest.raises(CapExceeded):
        automorphisms(make_An(10, 0, 1))
    assert len(automorphisms(make_An(10, 0, 1), cap=10)) == 10


def test_rho_examples():
    rho = rho_isomorphism(5, 2)
    assert rho.images == (0, 2, 4, 1, 3) and str(rho) == "(1 2 4 3)"
    assert (rho(0), rho(0), rho(1)) == (0, 0, 2)
    assert rho_isomorphism(7, 1).is_identity
    assert rho_isomorphism(6, 5).images == tuple(-i % 6 for i in range(6))
    with pytest.raises(NotCoprime):
        rho_isomorphism(6, 2)


@pytest.mark.parametrize("n, j, cycle, fixed", [(6, 2, (0, 2, 4), [1, 3, 5]), (4, 2, (0, 2), [1, 3]),
                                                (9, 3, (0, 3, 6), [1, 2, 4, 5, 7, 8])])
def test_fixed_point_automorphism(n, j, cycle, fixed):
    pi = fixed_point_automorphism(n, j)
    assert pi.cycles() == [cycle] and pi.fixed_points() == fixed
    assert is_automorphism(make_An(n, 0, j), pi)
    assert pi in automorphisms(make_An(n, 0, j))


def test_fixed_point_automorphism_needs_common_factor():
    with pytest.raises(GcdIsOne):
        fixed_point_automorphism(5, 2)


def test_isomorphism_examples():
    assert cycle_structures_isomorphic(make_An(5, 0, 2), make_An(5, 0, 1))
    assert not cycle_structures_isomorphic(make_An(6, 0, 2), make_An(6, 0, 1))
    assert cycle_structures_isomorphic(make_An(3, 0, 0), make_An(3, 0, 0))
    with pytest.raises(SizeMismatch):
        cycle_structures_isomorphic(make_An(3, 0, 0), make_An(4, 0, 0))


@pytest.mark.parametrize("n, j", [(n, j) for n in range(1, 8) for j in range(n)])
def test_isomorphism_matches_enumeration(n, j):
    a, b = make_An(n, 0, j), make_An(n, 0, 1)
    expected = any({(p[x], p[y], p[z]) for x, y, z in a.forbidden} == b.forbidden for p in permutations(range(n)))
    assert cycle_structures_isomorphic(a, b) == expected
    if n > 1 and j % n and gcd(j, n) == 1:
        assert expected


def test_reindex_61_5():
    part = build_partition(61, 5)
    assert {c.triple for c in forbidden_classes(compute_spectrum(part))} == {(0, 0, 2)}
    new = reindex_by_root(part, 2)
    assert new.index_of(new.g) == 1 and part.index_of(new.g) == 2
    assert {c.triple for c in forbidden_classes(compute_spectrum(new))} == {(0, 0, 1)}


def test_reindex_identity_case():
    part = build_partition(61, 5, 2)
    j1 = reindex_by_root(part, 2)
    again = reindex_by_root(j1, 1)
    assert forbidden_classes(compute_spectrum(again)) == forbidden_classes(compute_spectrum(j1))


def test_reindex_rejects_wrong_shape():
    with pytest.raises(ValueError):
        reindex_by_root(build_partition(61, 5), 1)
    with pytest.raises(NotCoprime):
        reindex_by_root(build_partition(13, 3, 2), 0)


def test_ramsey_class_survives_every_generator():
    for g in primitive_roots(13):
        assert {c.triple for c in forbidden_classes(compute_spectrum(build_partition(13, 3, g)))} == {(0, 0, 0)}


@pytest.mark.parametrize("p, n", [(113, 8), (3697, 24), (61, 5), (97, 6), (3221, 20), (257, 8)])
def test_rotations_are_automorphisms_of_concrete_spectra(p, n):
    spec = compute_spectrum(build_partition(p, n))
    trip = {(i, (i + a) % n, (i + b) % n) for i in range(n) for a, b in spec.forbidden_pairs()}
    assert rotation_automorphisms_hold(trip, n)


def test_cycle_notation():
    assert str(IndexPermutation((0, 1, 2))) == "()"
    assert str(IndexPermutation((1, 0, 3, 2))) == "(0 1)(2 3)"
    with pytest.raises(ValueError):
        IndexPermutation((0, 0, 1))
