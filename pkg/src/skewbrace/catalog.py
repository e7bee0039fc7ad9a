"""Constructive library of all groups of order at most 16."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .groups import (
    GroupTable,
    centralizer_sizes,
    direct_product_groups,
    find_isomorphism,
    group_from_elements,
    semidirect_product_groups,
)


def cyclic(n: int) -> GroupTable:
    return GroupTable([[(i + j) % n for j in range(n)] for i in range(n)])


def metacyclic(m: int, n: int, r: int, s: int = 0) -> GroupTable:
    """<x, y | x^m = 1, y^n = x^s, y x y^-1 = x^r>, elements x^i y^j."""

    def op(p, q):
        i, j = p
        k, l = q
        e = i + k * pow(r, j, m)
        jl = j + l
        if jl >= n:
            e += s
            jl -= n
        return (e % m, jl)

    elems = [(i, j) for j in range(n) for i in range(m)]
    return group_from_elements(elems, op, (0, 0))


def dihedral(n: int) -> GroupTable:
    """Dihedral group of order 2n."""
    return metacyclic(n, 2, n - 1)


def dicyclic(n: int) -> GroupTable:
    """Dicyclic group of order 4n (quaternion for n a power of 2)."""
    return metacyclic(2 * n, 2, 2 * n - 1, n)


def product(*groups: GroupTable) -> GroupTable:
    out = groups[0]
    for g in groups[1:]:
        out = direct_product_groups(out, g)
    return out


def _alternating4() -> GroupTable:
    # (Z2 x Z2) x| Z3 with the generator of Z3 cycling the three involutions
    v = product(cyclic(2), cyclic(2))  # indices: 0, (0,1)=1, (1,0)=2, (1,1)=3
    rot = [0, 2, 3, 1]
    act = [[0, 1, 2, 3], rot, [rot[rot[i]] for i in range(4)]]
    return semidirect_product_groups(v, cyclic(3), act)


def _z4z2_by_z2() -> GroupTable:
    # (Z4 x Z2) x| Z2 with c: (i, j) -> (i, j + i mod 2)
    base = product(cyclic(4), cyclic(2))  # index i*2 + j
    flip = [i * 2 + (j + i) % 2 for i in range(4) for j in range(2)]
    return semidirect_product_groups(base, cyclic(2), [list(range(8)), flip])


def _pauli() -> GroupTable:
    # i^k X^a Z^b with X Z = -Z X
    def op(p, q):
        k1, a1, b1 = p
        k2, a2, b2 = q
        return ((k1 + k2 + 2 * b1 * a2) % 4, (a1 + a2) % 2, (b1 + b2) % 2)

    elems = [(k, a, b) for k in range(4) for a in range(2) for b in range(2)]
    return group_from_elements(elems, op, (0, 0, 0))


@dataclass(frozen=True)
class CatalogEntry:
    tag: str
    group: GroupTable


def _recipes(n: int) -> list[tuple[str, callable]]:
    C = cyclic
    table = {
        1: [("C1", lambda: C(1))],
        2: [("C2", lambda: C(2))],
        3: [("C3", lambda: C(3))],
        4: [("C4", lambda: C(4)), ("C2xC2", lambda: product(C(2), C(2)))],
        5: [("C5", lambda: C(5))],
        6: [("C6", lambda: C(6)), ("S3", lambda: dihedral(3))],
        7: [("C7", lambda: C(7))],
        8: [
            ("C8", lambda: C(8)),
            ("C4xC2", lambda: product(C(4), C(2))),
            ("C2xC2xC2", lambda: product(C(2), C(2), C(2))),
            ("D8", lambda: dihedral(4)),
            ("Q8", lambda: dicyclic(2)),
        ],
        9: [("C9", lambda: C(9)), ("C3xC3", lambda: product(C(3), C(3)))],
        10: [("C10", lambda: C(10)), ("D10", lambda: dihedral(5))],
        11: [("C11", lambda: C(11))],
        12: [
            ("C12", lambda: C(12)),
            ("C6xC2", lambda: product(C(6), C(2))),
            ("D12", lambda: dihedral(6)),
            ("A4", _alternating4),
            ("Dic12", lambda: dicyclic(3)),
        ],
        13: [("C13", lambda: C(13))],
        14: [("C14", lambda: C(14)), ("D14", lambda: dihedral(7))],
        15: [("C15", lambda: C(15))],
        16: [
            ("C16", lambda: C(16)),
            ("C4xC4", lambda: product(C(4), C(4))),
            ("(C4xC2):C2", _z4z2_by_z2),
            ("C4:C4", lambda: metacyclic(4, 4, 3)),
            ("C8xC2", lambda: product(C(8), C(2))),
            ("M16", lambda: metacyclic(8, 2, 5)),
            ("D16", lambda: dihedral(8)),
            ("SD16", lambda: metacyclic(8, 2, 3)),
            ("Q16", lambda: dicyclic(4)),
            ("C4xC2xC2", lambda: product(C(4), C(2), C(2))),
            ("D8xC2", lambda: product(dihedral(4), C(2))),
            ("Q8xC2", lambda: product(dicyclic(2), C(2))),
            ("C4oD8", _pauli),
            ("C2^4", lambda: product(C(2), C(2), C(2), C(2))),
        ],
    }
    if n not in table:
        raise ValueError(f"no group catalog for order {n} (supported: 1..16)")
    return table[n]


@lru_cache(maxsize=None)
def groups_of_order(n: int) -> tuple[CatalogEntry, ...]:
    return tuple(CatalogEntry(tag, make()) for tag, make in _recipes(n))


def build_catalog(max_order: int = 16) -> dict[int, tuple[CatalogEntry, ...]]:
    if max_order > 16:
        raise ValueError("catalog only covers orders up to 16")
    return {n: groups_of_order(n) for n in range(1, max_order + 1)}


def catalog_group(tag: str) -> GroupTable:
    for n in range(1, 17):
        for e in groups_of_order(n):
            if e.tag == tag:
                return e.group
    raise KeyError(tag)


def _invariants(G: GroupTable) -> tuple:
    return tuple(sorted(zip(G.element_orders, centralizer_sizes(G))))


@lru_cache(maxsize=None)
def _catalog_invariants(n: int) -> tuple[tuple[str, GroupTable, tuple], ...]:
    return tuple((e.tag, e.group, _invariants(e.group)) for e in groups_of_order(n))


def identify_group(G: GroupTable) -> str:
    """Catalog tag of the group isomorphic to G."""
    inv = _invariants(G)
    for tag, H, h_inv in _catalog_invariants(G.order):
        if h_inv == inv and find_isomorphism(G, H) is not None:
            return tag
    raise LookupError(f"group of order {G.order} not found in the catalog")
