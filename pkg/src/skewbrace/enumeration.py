"""Skew braces of small order up to isomorphism.

A brace with additive group G is the same thing as a map λ: G → Aut(G) whose
graph {(g, λ_g)} is a regular subgroup of Hol(G) = G ⋊ Aut(G); the circle
product is a∘b = a·λ_a(b). The search below grows such subgroups one
generator at a time, only trying one value of λ_x per orbit of the
automorphisms that fix the partial subgroup and x. Solutions are then reduced
to one per Aut(G)-orbit by a canonical form.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field

import numpy as np

from .braces import SkewBrace
from .catalog import groups_of_order
from .config import budget
from .errors import BudgetExceeded
from .groups import GroupTable, automorphisms


def _encode_rows(P: np.ndarray) -> np.ndarray:
    """Pack permutations of at most 16 points (last axis) into uint64 codes."""
    n = P.shape[-1]
    if n > 16:
        raise BudgetExceeded("permutation codes support at most 16 points")
    shifts = (4 * np.arange(n)).astype(np.uint64)
    return np.bitwise_or.reduce(P.astype(np.uint64) << shifts, axis=-1)


class AutData:
    """Automorphisms of G as a numpy array, with code lookup and composition."""

    def __init__(self, G: GroupTable, auts: list[tuple[int, ...]] | None = None):
        auts = automorphisms(G) if auts is None else auts
        self.G = G
        self.n = G.order
        self.P = np.array(auts, dtype=np.int64).reshape(len(auts), G.order)
        self.N = len(auts)
        self.Pinv = np.argsort(self.P, axis=1)
        codes = _encode_rows(self.P)
        self.order_by_code = np.argsort(codes)
        self.sorted_codes = codes[self.order_by_code]
        self.codes = codes
        self.tuples = [tuple(r) for r in self.P.tolist()]
        self.index = {t: i for i, t in enumerate(self.tuples)}
        self.identity = self.index[tuple(range(self.n))]
        self._comp = None
        if self.N <= 1024:
            # composition table: comp[i, j] = index of P_i ∘ P_j
            comp = np.empty((self.N, self.N), dtype=np.int64)
            for i in range(self.N):
                comp[i] = self.lookup(self.P[i][self.P])
            self._comp = comp.tolist()

    def lookup(self, perms: np.ndarray) -> np.ndarray:
        """Indices of the given permutations (rows); -1 if not automorphisms."""
        c = _encode_rows(perms)
        pos = np.searchsorted(self.sorted_codes, c)
        pos = np.minimum(pos, self.N - 1)
        idx = self.order_by_code[pos]
        return np.where(self.sorted_codes[pos] == c, idx, -1)

    def compose(self, i: int, j: int) -> int:
        """Index of P_i ∘ P_j (apply P_j first)."""
        if self._comp is not None:
            return self._comp[i][j]
        a, b = self.tuples[i], self.tuples[j]
        return self.index[tuple(a[x] for x in b)]

    def conjugate_many(self, psi: np.ndarray, phis: np.ndarray) -> np.ndarray:
        """Indices of psi ∘ phi ∘ psi^-1 for each index in phis."""
        Q = self.P[phis][:, self.Pinv[psi]]
        return self.lookup(self.P[psi][Q])


def _cyclic_candidates(A: AutData, x: int) -> np.ndarray:
    """Automorphisms φ for which <(x, φ)> ≤ Hol(G) acts semiregularly."""
    G, P = A.G, A.P
    n, N = A.n, A.N
    mul = G.mul
    ident = np.arange(n)
    g = np.full(N, x)
    phi = P.copy()
    ok = np.ones(N, dtype=bool)
    done = np.zeros(N, dtype=bool)
    for _ in range(n):
        active = ok & ~done
        if not active.any():
            break
        at_zero = active & (g == 0)
        fine = np.all(phi == ident, axis=1)
        ok &= ~(at_zero & ~fine)
        done |= at_zero & fine
        active = ok & ~done
        # (x, φ)^{k+1} = (x·φ(g_k)... ) computed as (g_k, φ_k)(x, P) = (g_k·φ_k(x), φ_k ∘ P)
        gx = np.take_along_axis(phi, np.full((N, 1), x), axis=1)[:, 0]
        g = np.where(active, mul[g, gx], g)
        phi = np.where(active[:, None], np.take_along_axis(phi, P, axis=1), phi)
    return np.nonzero(ok & done)[0]


@dataclass
class EnumerationStats:
    nodes: int = 0
    closures: int = 0
    leaves: int = 0
    raw_count_weighted: int = 0
    classes: int = 0
    orbit_sizes: list[int] = field(default_factory=list)


class LambdaSearch:
    """Backtracking over partial regular subgroups of Hol(G)."""

    def __init__(self, G: GroupTable, auts: AutData | None = None, reduce: bool = True):
        self.G = G
        self.A = auts if auts is not None else AutData(G)
        self.n = G.order
        self.reduce = reduce
        self.rows = G.rows
        self.cands = {x: _cyclic_candidates(self.A, x) for x in range(1, self.n)}
        # ok[y, i]: <(y, P_i)> is semiregular
        self.ok = np.zeros((self.n, self.A.N), dtype=bool)
        self.ok[0, self.A.identity] = True
        for y, c in self.cands.items():
            self.ok[y, c] = True
        self.stats = EnumerationStats()

    # ---- closure of a partial subgroup with one extra generator
    def _close(self, lam: dict[int, int], gens: list[tuple[int, int]], x: int, phi: int):
        A, rows, P = self.A, self.rows, self.A.tuples
        new = dict(lam)
        if new.get(x, phi) != phi:
            return None
        allgens = gens + [(x, phi)]
        queue = []
        for g, pg in lam.items():
            y = rows[g][P[pg][x]]
            py = A.compose(pg, phi)
            cur = new.get(y)
            if cur is None:
                new[y] = py
                queue.append(y)
            elif cur != py:
                return None
        while queue:
            g = queue.pop()
            pg = new[g]
            row, perm = rows[g], P[pg]
            for h, ph in allgens:
                y = row[perm[h]]
                py = A.compose(pg, ph)
                cur = new.get(y)
                if cur is None:
                    new[y] = py
                    queue.append(y)
                elif cur != py:
                    return None
        self.stats.closures += 1
        return new

    def _stabilizer(self, lam: dict[int, int], stab: np.ndarray) -> np.ndarray:
        """Elements ψ of stab with ψ λ_g ψ^-1 = λ_{ψ(g)} for all g in the domain."""
        if len(stab) == 0:
            return stab
        A = self.A
        Ps = A.P[stab]
        Psinv = A.Pinv[stab]
        keep = np.ones(len(stab), dtype=bool)
        mask = np.zeros(self.n, dtype=bool)
        mask[list(lam)] = True
        lam_code = np.zeros(self.n, dtype=np.uint64)
        for g, pg in lam.items():
            lam_code[g] = A.codes[pg]
        for g, pg in lam.items():
            img = Ps[:, g]
            keep &= mask[img]
            Q = A.P[pg][Psinv]  # Q[k, j] = λ_g(ψ_k^-1(j))
            conj = np.take_along_axis(Ps, Q, axis=1)
            keep &= _encode_rows(conj) == lam_code[img]
            if not keep.any():
                break
        return stab[keep]

    def _prefilter(self, lam: dict[int, int], x: int, cands: np.ndarray) -> np.ndarray:
        """Drop φ for which some (g, λ_g)(x, φ) or (x, φ)(g, λ_g) is not
        cyclic-semiregular; every element of a regular subgroup must be."""
        A, mul = self.A, self.G.mul
        Pc = A.P[cands]
        for g, pg in lam.items():
            if g == 0 or len(cands) == 0:
                continue
            lg = A.P[pg]
            left = A.lookup(lg[Pc])  # λ_g ∘ φ
            y = mul[g, lg[x]]
            keep = self.ok[y, left]
            right = A.lookup(np.take_along_axis(Pc, np.broadcast_to(lg, Pc.shape), axis=1))  # φ ∘ λ_g
            ys = mul[x, Pc[:, g]]
            keep &= self.ok[ys, right]
            cands, Pc = cands[keep], Pc[keep]
        return cands

    def _generators(self, sub: np.ndarray) -> list[int]:
        """A generating set of the automorphism subgroup listed in sub."""
        A = self.A
        gens: list[int] = []
        span = {A.identity}
        target = len(sub)
        for i in sub.tolist():
            if len(span) == target:
                break
            if i in span:
                continue
            gens.append(i)
            frontier = list(span)
            span = set(span)
            while frontier:
                nxt = []
                for a in frontier:
                    for g in gens:
                        c = A.compose(a, g)
                        if c not in span:
                            span.add(c)
                            nxt.append(c)
                frontier = nxt
        return gens

    def _orbit_reps(self, cands: np.ndarray, stab_x: np.ndarray) -> np.ndarray:
        """Least candidate of each orbit under conjugation by stab_x."""
        if not self.reduce or len(stab_x) <= 1 or len(cands) <= 1:
            return cands
        A = self.A
        pos = np.full(A.N, -1, dtype=np.int64)
        pos[cands] = np.arange(len(cands))
        Pc = A.P[cands]
        perms = []
        for psi in self._generators(stab_x):
            img = pos[A.lookup(A.P[psi][Pc[:, A.Pinv[psi]]])]
            if (img < 0).any():
                raise AssertionError("candidate set not closed under the stabilizer")
            perms.append(img)
        label = np.arange(len(cands))
        while True:
            new = label.copy()
            for img in perms:
                np.minimum.at(new, img, label)
                np.minimum(new, new[img], out=new)
            new = new[new]
            if np.array_equal(new, label):
                break
            label = new
        return cands[np.unique(label)]

    def run(self) -> Iterator[dict[int, int]]:
        A = self.A
        root = {0: A.identity}
        stab = np.arange(A.N) if self.reduce else np.array([A.identity])
        yield from self._rec(root, [], stab)

    def _rec(self, lam, gens, stab):
        self.stats.nodes += 1
        if len(lam) == self.n:
            self.stats.leaves += 1
            yield lam
            return
        x = next(g for g in range(self.n) if g not in lam)
        stab_x = stab[self.A.P[stab, x] == x] if self.reduce else stab
        cands = self._prefilter(lam, x, self.cands[x])
        for phi in self._orbit_reps(cands, stab_x).tolist():
            new = self._close(lam, gens, x, phi)
            if new is None:
                continue
            new_stab = self._stabilizer(new, stab) if self.reduce else stab
            yield from self._rec(new, gens + [(x, phi)], new_stab)


def canonical_form(A: AutData, lam: np.ndarray) -> tuple[bytes, int]:
    """Least code of ψ·λ over ψ in Aut(G), and the size of the stabilizer of λ.

    (ψ·λ)_{ψ(g)} = ψ λ_g ψ^-1.
    """
    n, N = A.n, A.N
    L = A.P[lam]  # (n, n): row g is λ_g
    best_key = None
    stab = 0
    own = _encode_rows(L)
    step = max(1, 2_000_000 // (n * n))
    for start in range(0, N, step):
        Ps = A.P[start : start + step]
        Pi = A.Pinv[start : start + step]
        k = len(Ps)
        # B[k, g, j] = ψ_k(λ_g(ψ_k^-1(j)))
        B = L[np.arange(n)[None, :, None], Pi[:, None, :]]
        B = np.take_along_axis(Ps[:, None, :].repeat(n, axis=1), B, axis=2)
        codes = _encode_rows(B)  # (k, n): code of the conjugate of λ_g
        out = np.empty_like(codes)
        out[np.arange(k)[:, None], Ps] = codes  # position ψ(g)
        stab += int(np.all(out == own[None, :], axis=1).sum())
        # lexicographic minimum over rows
        order = np.lexsort(out.T[::-1])
        cand = out[order[0]]
        key = tuple(cand.tolist())
        if best_key is None or key < best_key:
            best_key = key
    return np.array(best_key, dtype=np.uint64).tobytes(), stab


def brace_from_lambda(G: GroupTable, A: AutData, lam) -> SkewBrace:
    L = A.P[np.asarray(lam)]
    circ = G.mul[np.arange(G.order)[:, None], L]
    return SkewBrace(G, GroupTable(circ))


@dataclass
class GroupEnumeration:
    group: GroupTable
    braces: list[SkewBrace]
    raw_count: int  # number of λ maps, from orbit sizes
    stats: EnumerationStats


def enumerate_over_group(G: GroupTable, reduce: bool = True) -> GroupEnumeration:
    """All braces with additive group G, one per isomorphism class.

    Classes are ordered by canonical code. ``raw_count`` is the total number of
    λ-maps (regular subgroups of Hol(G)), computed as the sum of orbit sizes.
    """
    if G.order > budget().max_order:
        raise BudgetExceeded(f"order {G.order} exceeds SKEWBRACE_MAX_ORDER={budget().max_order}")
    A = AutData(G)
    search = LambdaSearch(G, A, reduce=reduce)
    found: dict[bytes, tuple[np.ndarray, int]] = {}
    for lam in search.run():
        arr = np.array([lam[g] for g in range(G.order)], dtype=np.int64)
        key, stab = canonical_form(A, arr)
        if key not in found:
            found[key] = (arr, stab)
    keys = sorted(found)
    braces = [brace_from_lambda(G, A, found[k][0]) for k in keys]
    orbit_sizes = [A.N // found[k][1] for k in keys]
    search.stats.classes = len(keys)
    search.stats.orbit_sizes = orbit_sizes
    search.stats.raw_count_weighted = sum(orbit_sizes)
    return GroupEnumeration(G, braces, sum(orbit_sizes), search.stats)


def all_lambda_maps(G: GroupTable) -> list[tuple[int, ...]]:
    """Every λ-map on G without symmetry reduction (regular subgroups of Hol(G))."""
    A = AutData(G)
    search = LambdaSearch(G, A, reduce=False)
    return [tuple(lam[g] for g in range(G.order)) for lam in search.run()]


def enumerate_all(order: int, tags: list[str] | None = None) -> list[tuple[str, SkewBrace]]:
    """Every brace of the given order up to isomorphism, tagged by additive group."""
    out = []
    for entry in groups_of_order(order):
        if tags is not None and entry.tag not in tags:
            continue
        res = enumerate_over_group(entry.group)
        out.extend((entry.tag, B) for B in res.braces)
    return out
