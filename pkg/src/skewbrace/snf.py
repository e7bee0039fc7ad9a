"""Smith normal form over the integers and diagonalization over Z/m."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np


@dataclass(frozen=True)
class SNFResult:
    """U @ M @ V == D with U, V unimodular; ``diagonal`` is the divisibility chain."""

    D: list[list[int]]
    U: list[list[int]]
    V: list[list[int]]
    Vinv: list[list[int]]

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M) -> SNFResult:
    """Exact SNF with Python integers."""
    A = [[int(x) for x in row] for row in M]
    r = len(A)
    c = len(A[0]) if r else 0
    U, V, Vi = _identity(r), _identity(c), _identity(c)

    def row_comb(i, j, a, b, cc, d):
        # rows (i, j) <- (a*Ri + b*Rj, cc*Ri + d*Rj) for a unimodular 2x2 block
        for X in (A, U):
            Ri, Rj = X[i], X[j]
            X[i] = [a * x + b * y for x, y in zip(Ri, Rj)]
            X[j] = [cc * x + d * y for x, y in zip(Ri, Rj)]

    def col_comb(i, j, a, b, cc, d):
        # columns (i, j) <- (a*Ci + b*Cj, cc*Ci + d*Cj); inverse applied to Vinv rows
        for X in (A, V):
            for row in X:
                x, y = row[i], row[j]
                row[i], row[j] = a * x + b * y, cc * x + d * y
        det = a * d - b * cc
        # columns transform by E = [[a, cc], [b, d]]; Vinv <- E^-1 Vinv
        Ri, Rj = Vi[i], Vi[j]
        Vi[i] = [det * (d * x - cc * y) for x, y in zip(Ri, Rj)]
        Vi[j] = [det * (-b * x + a * y) for x, y in zip(Ri, Rj)]

    t = 0
    while t < min(r, c):
        nz = [(abs(A[i][j]), i, j) for i in range(t, r) for j in range(t, c) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        if i != t:
            row_comb(t, i, 0, 1, 1, 0)
        if j != t:
            col_comb(t, j, 0, 1, 1, 0)
        while True:
            done = True
            for i in range(t + 1, r):
                if A[i][t]:
                    p, b = A[t][t], A[i][t]
                    if b % p == 0:
                        row_comb(t, i, 1, 0, -(b // p), 1)
                    else:
                        g, s, u = xgcd(p, b)
                        row_comb(t, i, s, u, -b // g, p // g)
                    done = False
            for j in range(t + 1, c):
                if A[t][j]:
                    p, b = A[t][t], A[t][j]
                    if b % p == 0:
                        col_comb(t, j, 1, 0, -(b // p), 1)
                    else:
                        g, s, u = xgcd(p, b)
                        col_comb(t, j, s, u, -b // g, p // g)
                    done = False
            if done:
                p = A[t][t]
                bad = next(
                    ((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                row_comb(t, bad[0], 1, 1, 0, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SNFResult(A, U, V, Vi)


def invariant_factors(M) -> list[int]:
    """Nonzero diagonal entries of the SNF."""
    return [d for d in smith_normal_form(M).diagonal if d]


@dataclass
class ModDiagonalization:
    """U @ M @ V == diag (mod m); V @ Vinv == I (mod m)."""

    modulus: int
    diag: list[int]
    U: np.ndarray | None
    V: np.ndarray
    Vinv: np.ndarray


def diagonalize_mod(M, m: int, track_u: bool = False) -> ModDiagonalization:
    """Diagonalize an integer matrix over Z/m with unimodular row and column
    operations. Entries of the result are reduced mod m; the diagonal is not
    normalized into a divisibility chain."""
    A = np.array(M, dtype=np.int64) % m
    r, c = A.shape
    U = np.eye(r, dtype=np.int64) if track_u else None
    V = np.eye(c, dtype=np.int64)
    Vi = np.eye(c, dtype=np.int64)

    def rows2(i, j, a, b, cc, d):
        for X in (A, U) if track_u else (A,):
            Ri, Rj = X[i].copy(), X[j].copy()
            X[i] = (a * Ri + b * Rj) % m
            X[j] = (cc * Ri + d * Rj) % m

    def cols2(i, j, a, b, cc, d):
        for X in (A, V):
            Ci, Cj = X[:, i].copy(), X[:, j].copy()
            X[:, i] = (a * Ci + b * Cj) % m
            X[:, j] = (cc * Ci + d * Cj) % m
        det = (a * d - b * cc) % m
        Ri, Rj = Vi[i].copy(), Vi[j].copy()
        Vi[i] = (det * (d * Ri - cc * Rj)) % m
        Vi[j] = (det * (-b * Ri + a * Rj)) % m

    diag = []
    t = 0
    k = min(r, c)
    while t < k:
        sub = A[t:, t:]
        nz = np.argwhere(sub != 0)
        if len(nz) == 0:
            break
        g = np.gcd(sub[nz[:, 0], nz[:, 1]], m)
        i, j = nz[int(np.argmin(g))] + t
        if i != t:
            rows2(t, i, 0, 1, 1, 0)
        if j != t:
            cols2(t, j, 0, 1, 1, 0)
        while True:
            p = int(A[t, t])
            g = gcd(p, m)
            colv = A[t + 1 :, t]
            rowv = A[t, t + 1 :]
            bad_i = np.nonzero(colv % g)[0]
            if len(bad_i):
                i = int(bad_i[0]) + t + 1
                b = int(A[i, t])
                gg, s, u = xgcd(p, b)
                rows2(t, i, s, u, -b // gg, p // gg)
                continue
            bad_j = np.nonzero(rowv % g)[0]
            if len(bad_j):
                j = int(bad_j[0]) + t + 1
                b = int(A[t, j])
                gg, s, u = xgcd(p, b)
                cols2(t, j, s, u, -b // gg, p // gg)
                continue
            # every entry in the pivot row and column is a multiple of the pivot
            _, s0, _ = xgcd(p, m)
            q = (colv // g) * s0 % m
            if q.any():
                A[t + 1 :] = (A[t + 1 :] - q[:, None] * A[t]) % m
                if track_u:
                    U[t + 1 :] = (U[t + 1 :] - q[:, None] * U[t]) % m
            q = (A[t, t + 1 :] // g) * s0 % m
            if q.any():
                A[:, t + 1 :] = (A[:, t + 1 :] - A[:, t : t + 1] * q[None, :]) % m
                V[:, t + 1 :] = (V[:, t + 1 :] - V[:, t : t + 1] * q[None, :]) % m
                Vi[t] = (Vi[t] + q @ Vi[t + 1 :]) % m
            break
        diag.append(int(A[t, t]))
        t += 1
    diag += [0] * (k - len(diag))
    return ModDiagonalization(m, diag, U, V, Vi)


def _divide_mod(b: int, p: int, m: int) -> int:
    """Some q with q*p = b (mod m), assuming gcd(p, m) divides b."""
    g, s, _ = xgcd(p, m)
    return (b // g) * s % m


def span_order_mod(vectors, m: int, dim: int) -> int:
    """Order of the subgroup of (Z/m)^dim generated by the given vectors."""
    if len(vectors) == 0:
        return 1
    R = np.array(vectors, dtype=np.int64).reshape(len(vectors), dim) % m
    d = diagonalize_mod(R, m)
    out = 1
    for x in d.diag:
        out *= m // gcd(x, m)
    return out
