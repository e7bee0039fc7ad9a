import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import braces_of_order, braces_up_to
from oracles import brute_isomorphic
from skewbrace.braces import (
    SkewBrace,
    direct_product,
    is_brace_hom,
    quotient_brace,
    trivial_brace,
)
from skewbrace.catalog import catalog_group
from skewbrace.enumeration import enumerate_over_group
from skewbrace.errors import BadIdeals, NotInClassIn, WitnessInvalid
from skewbrace.groups import GroupTable
from skewbrace.isoclinism import (
    IsoclinismWitness,
    brace_automorphisms,
    brace_isomorphism,
    compose_witness,
    embed_W,
    fiber_product,
    find_isoclinism,
    invert_witness,
    isoclinic_via_ideals,
    isoclinism_classes,
    verify_isoclinism,
)
from skewbrace.series import annihilator, ann_term, gamma_term
from skewbrace.words import fast_i2_witness, skeleton_ideal

SMALL = [B for _, B in braces_up_to(8)]
ORDER8 = [B for _, B in braces_of_order(8)]


def relabel(A: SkewBrace, perm) -> SkewBrace:
    p = np.asarray(perm)
    inv = np.argsort(p)
    ix = np.ix_(inv, inv)
    return SkewBrace(GroupTable(p[A.dot.mul[ix]]), GroupTable(p[A.circ.mul[ix]]))


def perms(n):
    return st.permutations(list(range(1, n))).map(lambda t: [0] + list(t))


@pytest.mark.parametrize("n", [4, 6])
def test_brace_isomorphism_matches_brute_force(n):
    Bs = [B for _, B in braces_of_order(n)]
    for i, A in enumerate(Bs):
        for j, B in enumerate(Bs):
            brute = brute_isomorphic(A.dot.mul, A.circ.mul, B.dot.mul, B.circ.mul)
            assert (brace_isomorphism(A, B) is not None) == brute == (i == j)


@given(st.sampled_from(SMALL), st.data())
def test_isomorphism_found_for_relabelled_copy(A, data):
    B = relabel(A, data.draw(perms(A.order)))
    f = brace_isomorphism(A, B)
    assert f is not None and is_brace_hom(A, B, f) and len(set(f)) == A.order


def test_automorphisms_of_trivial_brace_are_group_automorphisms():
    assert len(brace_automorphisms(trivial_brace(catalog_group("Q8")))) == 24


def test_trivial_d8_q8_isoclinic():
    D, Q = trivial_brace(catalog_group("D8")), trivial_brace(catalog_group("Q8"))
    w = find_isoclinism(D, Q, 1)
    assert w is not None and verify_isoclinism(D, Q, w)
    assert find_isoclinism(D, trivial_brace(catalog_group("C4xC2")), 1) is None


@given(st.sampled_from(SMALL), st.data(), st.integers(1, 2))
def test_isoclinism_with_relabelled_copy(A, data, n):
    B = relabel(A, data.draw(perms(A.order)))
    w = find_isoclinism(A, B, n)
    assert w is not None and verify_isoclinism(A, B, w)
    wi = invert_witness(w)
    assert verify_isoclinism(B, A, wi)
    assert verify_isoclinism(A, A, compose_witness(w, wi))
    assert IsoclinismWitness.from_json(w.to_json()) == w


@given(st.sampled_from(SMALL), st.sampled_from(["C2", "C3", "C2xC2"]))
def test_product_with_abelian_trivial_brace_is_isoclinic(A, tag):
    P = direct_product(A, trivial_brace(catalog_group(tag)))
    w = find_isoclinism(A, P, 1)
    assert w is not None and verify_isoclinism(A, P, w)


def test_witness_json_rejects_garbage():
    with pytest.raises(WitnessInvalid):
        IsoclinismWitness.from_json({"n": 1, "xi": [0]})
    with pytest.raises(WitnessInvalid):
        IsoclinismWitness.from_json({"n": 1, "xi": [0], "theta_domain": [0], "theta_image": []})


def test_tampered_witness_fails_verification():
    D, Q = trivial_brace(catalog_group("D8")), trivial_brace(catalog_group("Q8"))
    w = find_isoclinism(D, Q, 1)
    assert not verify_isoclinism(D, Q, IsoclinismWitness(1, (0,) * len(w.xi), w.theta))
    assert not verify_isoclinism(D, Q, IsoclinismWitness(1, w.xi, {0: 0}))
    with pytest.raises(WitnessInvalid):
        fiber_product(D, Q, IsoclinismWitness(1, w.xi, {0: 0}))


def test_classes_at_order_8():
    classes = isoclinism_classes(ORDER8, 1)
    assert sum(len(c) for c in classes) == 47
    for cls in classes:
        for i in cls[1:]:
            assert find_isoclinism(ORDER8[cls[0]], ORDER8[i], 1) is not None
    reps = [c[0] for c in classes]
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            assert find_isoclinism(ORDER8[reps[a]], ORDER8[reps[b]], 1) is None


def _pairs(n_pairs):
    out = []
    for cls in isoclinism_classes(ORDER8, 1):
        for i in cls[1:]:
            out.append((cls[0], i))
    return out[:n_pairs]


@pytest.mark.parametrize("i,j", _pairs(6))
def test_fiber_product_properties(i, j):
    A, B = ORDER8[i], ORDER8[j]
    w = find_isoclinism(A, B, 1)
    fp = fiber_product(A, B, w)
    C = fp.C
    Q2, _ = quotient_brace(C, fp.N2)
    Q1, _ = quotient_brace(C, fp.N1)
    assert brace_isomorphism(Q2, A) is not None and brace_isomorphism(Q1, B) is not None
    g = gamma_term(C, 2)
    assert g & fp.N1 == {0} and g & fp.N2 == {0}
    assert verify_isoclinism(C, A, fp.witness_CA) and verify_isoclinism(C, B, fp.witness_CB)


@pytest.mark.parametrize("i,j", _pairs(4))
def test_embedding_properties(i, j):
    A, B = ORDER8[i], ORDER8[j]
    res = embed_W(A, B, find_isoclinism(A, B, 1))
    W = res.W
    assert is_brace_hom(A, W, res.rho_A) and len(set(res.rho_A)) == A.order
    assert is_brace_hom(B, W, res.rho_B) and len(set(res.rho_B)) == B.order
    ann = sorted(annihilator(W))
    for rho in (res.rho_A, res.rho_B):
        img = sorted(set(rho))
        assert set(W.dot.mul[np.ix_(img, ann)].ravel().tolist()) == set(range(W.order))
        assert set(W.circ.mul[np.ix_(img, ann)].ravel().tolist()) == set(range(W.order))


def test_embedding_needs_level_one():
    D, Q = trivial_brace(catalog_group("D8")), trivial_brace(catalog_group("Q8"))
    w = find_isoclinism(D, Q, 2)
    with pytest.raises(WitnessInvalid):
        embed_W(D, Q, w)


@given(st.sampled_from(SMALL), st.data())
def test_isoclinic_via_ideals_on_isomorphic_pair(A, data):
    perm = data.draw(perms(A.order))
    B = relabel(A, perm)
    sk = skeleton_ideal(A, 1)
    theta = {a: perm[a] for a in sk}
    ok, w = isoclinic_via_ideals(A, B, {0}, {0}, perm, theta, 1)
    assert ok and verify_isoclinism(A, B, w)


def test_isoclinic_via_ideals_with_annihilators():
    D, Q = trivial_brace(catalog_group("D8")), trivial_brace(catalog_group("Q8"))
    w = find_isoclinism(D, Q, 1)
    ok, w2 = isoclinic_via_ideals(D, Q, ann_term(D, 1), ann_term(Q, 1), w.xi, w.theta, 1)
    assert ok and verify_isoclinism(D, Q, w2)
    with pytest.raises(BadIdeals):
        isoclinic_via_ideals(D, Q, {0, 1}, {0}, w.xi, w.theta, 1)


def test_requires_class_membership():
    A = next(B for B in enumerate_over_group(catalog_group("C8xC2")).braces if fast_i2_witness(B) is not None)
    with pytest.raises(NotInClassIn):
        find_isoclinism(A, A, 2)
    assert find_isoclinism(A, A, 1) is not None
    with pytest.raises(ValueError):
        find_isoclinism(ORDER8[0], ORDER8[0], 0)


@given(st.sampled_from(SMALL), st.data())
def test_isoclinic_via_ideals_accepts_theta_on_gamma(A, data):
    perm = data.draw(perms(A.order))
    B = relabel(A, perm)
    theta = {a: perm[a] for a in gamma_term(A, 2)}
    ok, w = isoclinic_via_ideals(A, B, {0}, {0}, perm, theta, 1)
    assert ok and verify_isoclinism(A, B, w)
