"""Acceptance suite: one test (sometimes two) per criterion.

Run directly with ``python tests/test_acceptance.py`` or through pytest; either
way the terminal summary carries one PASS/FAIL line per criterion. The order-16
checks only run with SKEWBRACE_LONG=1.
"""

from __future__ import annotations

import sys
import time
from functools import lru_cache
from itertools import combinations

import numpy as np
import pytest

from conftest import braces_of_order, braces_up_to
from oracles import brute_classes, exhaustive_circ_tables
from skewbrace.braces import (
    circ_product_set,
    dot_product_set,
    is_brace_hom,
    is_symmetric,
    quotient_brace,
    star,
    sub_brace,
)
from skewbrace.catalog import cyclic, groups_of_order
from skewbrace.census import census
from skewbrace.cohomology import (
    CocyclePair,
    add_cocycles,
    annihilator_extension,
    coboundary_pair,
    h2_group,
    theorem_a_check,
    transgression,
    zero_cocycle,
)
from skewbrace.enumeration import AutData, all_lambda_maps, brace_from_lambda, enumerate_all
from skewbrace.groups import group_n_isoclinic, lower_central, verify_group_n_isoclinism
from skewbrace.isoclinism import (
    brace_isomorphism,
    embed_W,
    fiber_product,
    find_isoclinism,
    isoclinism_classes,
    verify_isoclinism,
)
from skewbrace.semidirect import build_lambda_group, skeleton_condition, theorem_e_check, verify_gamma_decomposition
from skewbrace.series import (
    SeriesKind,
    ann_next_by_elements,
    ann_next_by_quotient,
    ann_term,
    annihilator,
    classify_nilpotency,
    gamma_bar_series,
    gamma_term,
    is_ideal,
    series_at,
)
from skewbrace.words import (
    ann_membership_words,
    fast_i2_witness,
    in_class_In,
    phi_well_defined_bruteforce,
    skeleton_ideal,
)

ZERO = frozenset({0})


def criterion(k: int, title: str):
    return pytest.mark.criterion(k, title)


@lru_cache(maxsize=None)
def order8():
    return [B for _, B in braces_of_order(8)]


def isoclinic_pairs(braces, n=1):
    return [(braces[i], braces[j]) for cls in isoclinism_classes(braces, n) for i, j in combinations(cls, 2)]


@lru_cache(maxsize=None)
def order8_pairs():
    return isoclinic_pairs(order8(), 1)


@lru_cache(maxsize=None)
def order16_census():
    return census(16)


# ----------------------------------------------------------------- 1, 2


@criterion(1, "order-16 census totals")
@pytest.mark.long
def test_criterion_01_order16_census():
    rep = order16_census()
    assert (rep.total, rep.symmetric, rep.non_symmetric, rep.in_I2, rep.not_in_I2) == (1605, 1086, 519, 1557, 48)


@criterion(2, "orders 1-15 lie entirely in I_2, under 5 minutes")
def test_criterion_02_small_orders_in_I2():
    start = time.perf_counter()
    for n in range(1, 16):
        assert census(n).not_in_I2 == 0, n
    assert time.perf_counter() - start < 300


# ----------------------------------------------------------------- 3-6


@criterion(3, "gamma_n(A, circ) inside Gamma_n(A), order <= 8, n <= 4")
def test_criterion_03_circ_lower_central_inside_gamma():
    for _, A in braces_up_to(8):
        for n in range(1, 5):
            assert lower_central(A.circ, n) <= gamma_term(A, n)


@criterion(4, "skeleton vanishing matches Gamma vanishing, with the sandwich")
def test_criterion_04_skeleton_and_gamma():
    for _, A in braces_up_to(8):
        bar = gamma_bar_series(A)
        for t in range(0, 5):
            sk = skeleton_ideal(A, t)
            assert (sk == ZERO) == (gamma_term(A, t + 1) == ZERO)
            n = t + 1
            assert series_at(bar, n, SeriesKind.GammaBar) <= sk <= gamma_term(A, n)


@criterion(5, "Ann_n three ways agree, order <= 8, n <= 4")
def test_criterion_05_annihilator_three_ways():
    for _, A in braces_up_to(8):
        by_q, by_e = ZERO, ZERO
        for n in range(1, 5):
            by_q = ann_next_by_quotient(A, by_q)
            by_e = ann_next_by_elements(A, by_e)
            by_w = frozenset(u for u in range(A.order) if ann_membership_words(A, u, n))
            assert by_q == by_e == by_w == ann_term(A, n)


@criterion(6, "symmetric braces of order <= 8 lie in I_3 with A_(t) = Gamma_{t+1}")
def test_criterion_06_symmetric():
    sym = [A for _, A in braces_up_to(8) if is_symmetric(A)]
    assert sym
    for A in sym:
        assert all(in_class_In(A, n) for n in range(1, 4))
        assert all(skeleton_ideal(A, t) == gamma_term(A, t + 1) for t in range(0, 4))


# ----------------------------------------------------------------- 7


def _check_i2_witness(A, w):
    u, v = w
    assert star(A, v, u) != 0  # u *̄ v = v * u
    assert u in ann_term(A, 2)
    assert v in gamma_term(A, 2)


@criterion(7, "fast and general I_2 tests agree; order-16 failures carry witnesses")
def test_criterion_07_fast_i2_small_orders():
    for n in range(1, 13):
        for _, A in enumerate_all(n):
            w = fast_i2_witness(A)
            general = in_class_In(A, 2)  # raises on disagreement with the fast test
            assert (w is None) == general
            if A.order <= 8:
                assert phi_well_defined_bruteforce(A, 2) == general
            if w is not None:
                _check_i2_witness(A, w)


@criterion(7, "fast and general I_2 tests agree; order-16 failures carry witnesses")
@pytest.mark.long
def test_criterion_07_order16_witnesses():
    from skewbrace.braces import validate_brace

    failures = [r for r in order16_census().rows if not r.in_I2]
    assert len(failures) == 48
    for r in failures:
        assert r.i2_witness is not None
        _check_i2_witness(validate_brace(r.dot, r.circ), r.i2_witness)


# ----------------------------------------------------------------- 8, 9


@lru_cache(maxsize=None)
def symmetric_n2_pairs(limit=6):
    sym = [A for A in order8() if is_symmetric(A)]
    out = []
    for A, B in combinations(sym, 2):
        if find_isoclinism(A, B, 2) is not None:
            out.append((A, B))
            if len(out) == limit:
                break
    return out


def _check_fiber(A, B, n):
    w = find_isoclinism(A, B, n)
    assert w is not None
    fp = fiber_product(A, B, w)
    C = fp.C
    QA, _ = quotient_brace(C, fp.N2)
    QB, _ = quotient_brace(C, fp.N1)
    assert brace_isomorphism(QA, A) is not None
    assert brace_isomorphism(QB, B) is not None
    G = gamma_term(C, n + 1)
    assert fp.N1 & G == ZERO and fp.N2 & G == ZERO
    assert find_isoclinism(C, A, n) is not None
    assert find_isoclinism(C, B, n) is not None


@criterion(8, "fiber product over an isoclinism")
def test_criterion_08_fiber_product():
    pairs = order8_pairs()
    assert len(pairs) >= 5
    for A, B in pairs:
        _check_fiber(A, B, 1)
    sym2 = symmetric_n2_pairs()
    assert len(sym2) >= 2
    for A, B in sym2:
        _check_fiber(A, B, 2)


@criterion(9, "embedding into W with saturated images")
def test_criterion_09_embedding():
    pairs = order8_pairs()
    assert len(pairs) >= 5
    for A, B in pairs:
        res = embed_W(A, B, find_isoclinism(A, B, 1))
        W = res.W
        whole = frozenset(range(W.order))
        annW = annihilator(W)
        for rho, X in ((res.rho_A, A), (res.rho_B, B)):
            assert len(set(rho)) == X.order and is_brace_hom(X, W, rho)
            img = frozenset(rho)
            assert dot_product_set(W, img, annW) == whole
            assert circ_product_set(W, img, annW) == whole
        # structure of K beside the image of A
        K = res.K
        Kb, _ = sub_brace(W, K)
        assert gamma_term(Kb, 2) == ZERO
        imgA = frozenset(res.rho_A)
        for a in imgA:
            for k in K:
                assert W.dot.comm(a, k) == 0 and W.circ.comm(a, k) == 0
        X = dot_product_set(W, imgA, K)
        Xb, emb = sub_brace(W, X)
        back = {v: i for i, v in enumerate(emb)}
        assert is_ideal(Xb, {back[a] for a in imgA})
        assert is_ideal(Xb, {back[k] for k in K})


# ----------------------------------------------------------------- 10, 11


def _extensions(limit_order=16):
    out = []
    for _, K in braces_up_to(8):
        for m in (2, 3, 4):
            if K.order * m > limit_order:
                continue
            H2 = h2_group(K, cyclic(m))
            for p in [zero_cocycle(K, cyclic(m))] + list(H2.generators):
                out.append(annihilator_extension(p))
    return out


@criterion(10, "kernel-order identity and modulus stability for transgression")
def test_criterion_10_transgression_kernel():
    exts = _extensions()
    assert len(exts) >= 10
    for ext in exts:
        G = ext.G
        ideal = frozenset(ext.i)
        assert ideal <= annihilator(G)
        t = transgression(G, ideal)
        meet = len(ideal & gamma_term(G, 2))
        assert t.kernel_order * meet == len(ideal)
        assert t.kernel_order * t.image_order == len(ideal)
        assert transgression(G, ideal, 2 * t.modulus).image_order == t.image_order


def _pushed(p: CocyclePair, m: int, k: int) -> CocyclePair:
    """p with values pushed along Z/m -> Z/(k m), x -> k x."""
    return CocyclePair(p.K, cyclic(k * m), k * p.alpha, k * p.mu)


@criterion(11, "equal transgression images give an isoclinism, unequal ones do not")
def test_criterion_11_transgression_images():
    cases = 0
    for _, K in braces_up_to(4):
        H2 = h2_group(K, cyclic(2))
        for p in H2.generators:
            h = np.arange(K.order) % 2
            variants = [_pushed(p, 2, 2), add_cocycles(p, coboundary_pair(K, cyclic(2), h))]
            for q in variants:
                res = theorem_a_check(p, q)
                assert res.equal_images and res.witness is not None
                G, H = annihilator_extension(p).G, annihilator_extension(q).G
                assert verify_isoclinism(G, H, res.witness)
                w = find_isoclinism(G, H, 1)
                assert w is not None and verify_isoclinism(G, H, w)
                cases += 1
    assert cases > 0
    unequal = 0
    for _, K in braces_up_to(4):
        p = zero_cocycle(K, cyclic(2))
        for q in h2_group(K, cyclic(2)).generators:
            G, H = annihilator_extension(p).G, annihilator_extension(q).G
            if len(gamma_term(H, 2)) > len(gamma_term(G, 2)):
                res = theorem_a_check(p, q)
                assert not res.equal_images and res.witness is None
                assert find_isoclinism(G, H, 1) is None
                unequal += 1
    assert unequal > 0


# ----------------------------------------------------------------- 12-14


@criterion(12, "gamma_n of the semidirect group splits as L_n by gamma_n(A, circ)")
def test_criterion_12_lambda_decomposition():
    for _, A in braces_up_to(6):
        for n in range(1, 4):
            assert verify_gamma_decomposition(A, n)
    for A in order8():
        assert verify_gamma_decomposition(A, 2)


@criterion(13, "isoclinic pairs with the skeleton hypothesis give isoclinic semidirect groups")
def test_criterion_13_lambda_isoclinism():
    checked = 0
    for A, B in order8_pairs():
        if not (skeleton_condition(A, 1) and skeleton_condition(B, 1)):
            continue
        rep = theorem_e_check(A, B, 1)
        assert rep.group_witness is not None and not rep.contradiction
        LA, LB = build_lambda_group(A).group, build_lambda_group(B).group
        alpha, beta = group_n_isoclinic(LA, LB, 1)
        assert verify_group_n_isoclinism(LA, LB, 1, alpha, beta)
        checked += 1
    assert checked > 0


@criterion(14, "nilpotency and solubility flags agree across isoclinic pairs")
def test_criterion_14_nilpotency_invariance():
    braces = [A for _, A in braces_up_to(8)]
    pairs = isoclinic_pairs(braces, 1)
    assert pairs
    for A, B in pairs:
        assert classify_nilpotency(A).flags() == classify_nilpotency(B).flags()


# ----------------------------------------------------------------- 15


def _dedup(braces):
    reps = []
    for B in braces:
        if not any(brace_isomorphism(R, B) is not None for R in reps):
            reps.append(B)
    return reps


@criterion(15, "enumeration matches independent searches up to order 8")
def test_criterion_15_enumeration_oracles():
    for n in range(1, 7):
        for e in groups_of_order(n):
            oracle = brute_classes(e.group.mul, exhaustive_circ_tables(e.group.mul))
            assert len([1 for tag, _ in enumerate_all(n) if tag == e.tag]) == len(oracle), e.tag
    for e in groups_of_order(8):
        aut = AutData(e.group)
        plain = _dedup([brace_from_lambda(e.group, aut, lam) for lam in all_lambda_maps(e.group)])
        assert len([1 for tag, _ in enumerate_all(8) if tag == e.tag]) == len(plain), e.tag
    assert [len(enumerate_all(n)) for n in range(1, 9)] == [1, 1, 1, 4, 1, 6, 1, 47]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", *sys.argv[1:]]))
