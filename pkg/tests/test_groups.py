from itertools import permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import naive_subgroup
from skewbrace.catalog import build_catalog, catalog_group, cyclic, dihedral, groups_of_order, identify_group, product
from skewbrace.errors import NoIdentityAtZero, NotAssociative, NotLatinSquare, ValidationError
from skewbrace.groups import (
    automorphisms,
    center,
    find_isomorphism,
    generated_subgroup,
    group_n_isoclinic,
    group_series,
    is_homomorphism,
    is_normal,
    quotient_group,
    validate_group,
    verify_group_n_isoclinism,
)

# number of groups of each order 1..16
GROUP_COUNTS = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]
# |Aut| of the order-8 groups, by tag
AUT8 = {"C8": 4, "C4xC2": 8, "C2xC2xC2": 168, "D8": 8, "Q8": 24}


def test_catalog_counts():
    cat = build_catalog(16)
    assert [len(cat[n]) for n in range(1, 17)] == GROUP_COUNTS


@pytest.mark.parametrize("n", [8, 12, 16])
def test_catalog_pairwise_non_isomorphic(n):
    entries = groups_of_order(n)
    for i, a in enumerate(entries):
        for b in entries[i + 1 :]:
            assert find_isomorphism(a.group, b.group) is None, (a.tag, b.tag)


def test_catalog_rejects_large_order():
    with pytest.raises(ValueError):
        build_catalog(17)


@pytest.mark.parametrize("tag", ["C2xC2", "S3", "C2xC2xC2", "D8", "Q8", "A4", "C4oD8", "C2^4"])
def test_identify_group_after_relabelling(tag):
    G = catalog_group(tag)
    rng = np.random.default_rng(7)
    perm = np.concatenate([[0], 1 + rng.permutation(G.order - 1)])
    inv = np.argsort(perm)
    H = validate_group(perm[G.mul[np.ix_(inv, inv)]])
    assert identify_group(H) == tag


def test_validate_group_errors():
    with pytest.raises(NoIdentityAtZero):
        validate_group([[1, 0], [0, 1]])
    with pytest.raises(NotLatinSquare):
        validate_group([[0, 1, 2], [1, 1, 0], [2, 0, 1]])
    with pytest.raises(ValidationError):
        validate_group([[0, 1], [1]])
    # Latin square with identity 0 that is not associative
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative):
        validate_group(bad)


@pytest.mark.parametrize("tag,size", sorted(AUT8.items()))
def test_automorphism_counts_order_8(tag, size):
    assert len(automorphisms(catalog_group(tag))) == size


def test_automorphisms_brute_force_order_6():
    G = catalog_group("S3")
    brute = set()
    for tail in permutations(range(1, 6)):
        f = (0,) + tail
        if is_homomorphism(G, G, f):
            brute.add(f)
    assert set(automorphisms(G)) == brute


def test_series_of_d8():
    G = dihedral(4)
    lc = group_series(G, "lower_central")
    uc = group_series(G, "upper_central")
    assert [len(s) for s in lc] == [8, 2, 1]
    assert [len(s) for s in uc] == [1, 2, 8]
    assert group_series(G, "derived")[-1] == frozenset({0})
    assert center(G) == lc[1]


def test_quotient_group():
    G = dihedral(4)
    Q, proj = quotient_group(G, center(G))
    assert Q.order == 4 and find_isomorphism(Q, product(cyclic(2), cyclic(2))) is not None
    assert is_homomorphism(G, Q, proj)


def test_group_isoclinism_d8_q8():
    D, Q = catalog_group("D8"), catalog_group("Q8")
    res = group_n_isoclinic(D, Q, 1)
    assert res is not None
    assert verify_group_n_isoclinism(D, Q, 1, *res)
    assert group_n_isoclinic(D, catalog_group("C4xC2"), 1) is None


@given(st.sampled_from([e.group for n in (6, 8, 12) for e in groups_of_order(n)]), st.data())
def test_generated_subgroup_matches_naive_closure(G, data):
    seeds = data.draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    H = generated_subgroup(G, seeds)
    assert H == naive_subgroup(G.mul, seeds)
    N = generated_subgroup(G, seeds, normal_closure=True)
    assert H <= N and is_normal(G, N)


@given(st.sampled_from([e.group for n in (4, 6, 8) for e in groups_of_order(n)]), st.data())
def test_isomorphism_of_relabelled_copy(G, data):
    tail = data.draw(st.permutations(list(range(1, G.order))))
    perm = np.array([0] + list(tail))
    inv = np.argsort(perm)
    H = validate_group(perm[G.mul[np.ix_(inv, inv)]])
    f = find_isomorphism(G, H)
    assert f is not None and is_homomorphism(G, H, f) and len(set(f)) == G.order
