"""Slow, independent reference implementations used only by the tests.

Nothing here calls the library's search code: braces are found by direct
search over circle tables, and isomorphisms by trying every bijection.
"""

from __future__ import annotations

from itertools import permutations, product

import numpy as np


def _assoc(M: np.ndarray) -> bool:
    n = M.shape[0]
    return all(M[M[x, y], z] == M[x, M[y, z]] for x in range(n) for y in range(n) for z in range(n))


def brace_rows(dot: np.ndarray, a: int) -> list[tuple[int, ...]]:
    """Every permutation p with p[0] = a and p(b·c) = p(b)·a⁻¹·p(c)."""
    n = dot.shape[0]
    ainv = int(np.argmin(dot[a]))
    rest = [x for x in range(n) if x != a]
    out = []
    for tail in permutations(rest):
        p = (a,) + tail
        if all(p[dot[b, c]] == dot[dot[p[b], ainv], p[c]] for b in range(n) for c in range(n)):
            out.append(p)
    return out


def exhaustive_circ_tables(dot: np.ndarray) -> list[np.ndarray]:
    """All circle tables making (dot, circ) a skew brace."""
    n = dot.shape[0]
    rows = [[tuple(range(n))]] + [brace_rows(dot, a) for a in range(1, n)]
    out = []
    for choice in product(*rows):
        C = np.array(choice, dtype=np.int64)
        ar = np.arange(n)
        if not np.all(np.sort(C, axis=0) == ar[:, None]):
            continue
        if not np.array_equal(C[:, 0], ar):
            continue
        if _assoc(C):
            out.append(C)
    return out


def brute_isomorphic(d1, c1, d2, c2) -> bool:
    """Try every bijection fixing 0."""
    n = d1.shape[0]
    for tail in permutations(range(1, n)):
        f = np.array((0,) + tail)
        if np.array_equal(f[d1], d2[f[:, None], f[None, :]]) and np.array_equal(f[c1], c2[f[:, None], f[None, :]]):
            return True
    return False


def brute_classes(dot: np.ndarray, circs: list[np.ndarray]) -> list[np.ndarray]:
    reps: list[np.ndarray] = []
    for C in circs:
        if not any(brute_isomorphic(dot, C, dot, R) for R in reps):
            reps.append(C)
    return reps


def naive_subgroup(mul: np.ndarray, seeds) -> frozenset[int]:
    H = {0} | set(seeds)
    while True:
        new = {int(mul[x, y]) for x in H for y in H} | H
        if new == H:
            return frozenset(H)
        H = new


def naive_annihilator_chain(dot, circ, nmax: int) -> list[frozenset[int]]:
    """Ann_k straight from the definition: x is in Ann_k when λ_x, x·y·x⁻¹
    and x∘y∘x̄ all agree with the identity modulo Ann_{k-1} for every y."""
    n = dot.shape[0]
    dinv = [int(np.argmin(dot[x])) for x in range(n)]
    cinv = [int(np.argmin(circ[x])) for x in range(n)]

    def lam(x, y):
        return int(dot[dinv[x], circ[x, y]])

    out = [frozenset({0})]
    for _ in range(nmax):
        prev = out[-1]

        def same(u, v):
            return int(dot[dinv[v], u]) in prev

        nxt = frozenset(
            x
            for x in range(n)
            if all(
                same(lam(x, y), y)
                and same(int(dot[dot[x, y], dinv[x]]), y)
                and same(int(circ[circ[x, y], cinv[x]]), y)
                for y in range(n)
            )
        )
        out.append(nxt)
    return out


def brute_cocycle_count(K_dot, K_circ, m: int) -> int:
    """|Z²(K, Z/m)| with trivial action by trying every normalized pair (α, μ)."""
    k = K_dot.shape[0]
    dinv = [int(np.argmin(K_dot[x])) for x in range(k)]
    cells = [(x, y) for x in range(1, k) for y in range(1, k)]
    count = 0
    for av in product(range(m), repeat=len(cells)):
        al = np.zeros((k, k), dtype=np.int64)
        for (x, y), v in zip(cells, av):
            al[x, y] = v
        # dot 2-cocycle identity
        if any(
            (al[y, z] - al[K_dot[x, y], z] + al[x, K_dot[y, z]] - al[x, y]) % m
            for x in range(k)
            for y in range(k)
            for z in range(k)
        ):
            continue
        for mv in product(range(m), repeat=len(cells)):
            mu = np.zeros((k, k), dtype=np.int64)
            for (x, y), v in zip(cells, mv):
                mu[x, y] = v
            if any(
                (mu[y, z] - mu[K_circ[x, y], z] + mu[x, K_circ[y, z]] - mu[x, y]) % m
                for x in range(k)
                for y in range(k)
                for z in range(k)
            ):
                continue
            # the brace axiom on A × K, first coordinate:
            # α(y,z) + μ(x,y·z) = μ(x,y) + μ(x,z) - α(x,x⁻¹) + α(x∘y,x⁻¹) + α((x∘y)·x⁻¹, x∘z)
            if any(
                (
                    al[y, z]
                    + mu[x, K_dot[y, z]]
                    - mu[x, y]
                    - mu[x, z]
                    + al[x, dinv[x]]
                    - al[K_circ[x, y], dinv[x]]
                    - al[K_dot[K_circ[x, y], dinv[x]], K_circ[x, z]]
                )
                % m
                for x in range(k)
                for y in range(k)
                for z in range(k)
            ):
                continue
            count += 1
    return count
