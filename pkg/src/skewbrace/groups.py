"""Finite groups given by Cayley tables with the identity at index 0."""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

from .errors import NoIdentityAtZero, NotAssociative, NotLatinSquare, NotNormal, ValidationError

Subset = frozenset
Bijection = tuple


class GroupTable:
    """An immutable Cayley table. Use :func:`validate_group` for untrusted input."""

    __slots__ = ("order", "mul", "rows", "inv", "_orders", "_comm")

    def __init__(self, mul):
        arr = np.array(mul, dtype=np.int64)
        if arr.ndim != 2:
            arr = arr.reshape(len(arr), -1)
        arr.setflags(write=False)
        self.mul = arr
        self.order = arr.shape[0]
        self.rows = arr.tolist()
        inv = [0] * self.order
        for x, row in enumerate(self.rows):
            inv[x] = row.index(0)
        self.inv = inv
        self._orders = None
        self._comm = None

    def __eq__(self, other):
        return isinstance(other, GroupTable) and np.array_equal(self.mul, other.mul)

    def __hash__(self):
        return hash(self.mul.tobytes())

    def __repr__(self):
        return f"GroupTable(order={self.order})"

    def m(self, x: int, y: int) -> int:
        return self.rows[x][y]

    def comm(self, x: int, y: int) -> int:
        """[x, y] = x y x^-1 y^-1."""
        r = self.rows
        return r[r[r[x][y]][self.inv[x]]][self.inv[y]]

    @property
    def comm_table(self) -> np.ndarray:
        if self._comm is None:
            M, inv = self.mul, np.array(self.inv)
            n = self.order
            xy = M
            c = M[M[xy, inv[:, None]], inv[None, :]]
            c.setflags(write=False)
            self._comm = c
        return self._comm

    @property
    def element_orders(self) -> list[int]:
        if self._orders is None:
            out = []
            for x in range(self.order):
                k, y = 1, x
                while y != 0:
                    y = self.rows[y][x]
                    k += 1
                out.append(k)
            self._orders = out
        return self._orders

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))


def _check_associative(M: np.ndarray) -> tuple[int, int, int] | None:
    n = M.shape[0]
    if n <= 512:
        step = max(1, 2_000_000 // (n * n))
        for start in range(0, n, step):
            xs = np.arange(start, min(n, start + step))
            left = M[M[xs]]  # (x y) z
            right = M[xs][:, M]  # x (y z)
            bad = np.argwhere(left != right)
            if len(bad):
                i, y, z = bad[0]
                return int(xs[i]), int(y), int(z)
        return None
    # Light's test: enough to let the middle element run over a generating set
    gens = generating_sequence(GroupTable(M))
    for g in gens:
        left = M[M[:, g]]  # (x g) z
        right = M[:, M[g]]  # x (g z)
        bad = np.argwhere(left != right)
        if len(bad):
            x, z = bad[0]
            return int(x), int(g), int(z)
    return None


def validate_group(table) -> GroupTable:
    """Check a raw table and return a :class:`GroupTable`.

    Associativity is checked on all triples up to order 512 and with Light's
    generator test above that.
    """
    try:
        M = np.array(table, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise ValidationError(f"table is not a rectangular integer array: {exc}") from exc
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ValidationError("table must be a non-empty square array")
    n = M.shape[0]
    if M.min() < 0 or M.max() >= n:
        raise ValidationError("table entries out of range")
    ar = np.arange(n)
    if not (np.array_equal(M[0], ar) and np.array_equal(M[:, 0], ar)):
        raise NoIdentityAtZero()
    if not (np.all(np.sort(M, axis=1) == ar) and np.all(np.sort(M, axis=0) == ar[:, None])):
        raise NotLatinSquare("some row or column is not a permutation")
    bad = _check_associative(M)
    if bad is not None:
        raise NotAssociative(bad)
    return GroupTable(M)


def group_from_elements(elements: Sequence[Hashable], op: Callable, identity: Hashable) -> GroupTable:
    """Tabulate a group given by concrete elements and a product, putting the identity first."""
    elems = [identity] + [e for e in elements if e != identity]
    index = {e: i for i, e in enumerate(elems)}
    if len(index) != len(elems):
        raise ValidationError("duplicate elements")
    table = [[index[op(a, b)] for b in elems] for a in elems]
    return validate_group(table)


def closure_from_generators(gens: Sequence[Hashable], op: Callable, identity: Hashable) -> GroupTable:
    """The group generated by concrete elements under op (e.g. permutations)."""
    elems = [identity]
    seen = {identity}
    i = 0
    while i < len(elems):
        for g in gens:
            y = op(elems[i], g)
            if y not in seen:
                seen.add(y)
                elems.append(y)
        i += 1
    return group_from_elements(elems, op, identity)


# ---------------------------------------------------------------- subgroups


def _span_rows(rows: list[list[int]], seeds: Iterable[int], start: Iterable[int] = (0,)) -> set[int]:
    H = set(start)
    gens: list[int] = []
    for s in seeds:
        if s in H:
            continue
        gens.append(s)
        queue = list(H)
        while queue:
            x = queue.pop()
            row = rows[x]
            for g in gens:
                y = row[g]
                if y not in H:
                    H.add(y)
                    queue.append(y)
    return H


def generated_subgroup(G: GroupTable, seeds: Iterable[int], normal_closure: bool = False) -> Subset:
    seeds = list(dict.fromkeys(seeds))
    if normal_closure:
        r, inv = G.rows, G.inv
        seeds = list(dict.fromkeys(r[r[x][s]][inv[x]] for s in seeds for x in range(G.order)))
    return frozenset(_span_rows(G.rows, seeds))


def is_subgroup(G: GroupTable, S: Iterable[int]) -> bool:
    S = set(S)
    if 0 not in S:
        return False
    r = G.rows
    return all(r[x][y] in S for x in S for y in S)


def is_normal(G: GroupTable, N: Iterable[int]) -> bool:
    N = set(N)
    if not is_subgroup(G, N):
        return False
    r, inv = G.rows, G.inv
    return all(r[r[g][x]][inv[g]] in N for g in range(G.order) for x in N)


def commutator_subgroup(G: GroupTable, H: Iterable[int], K: Iterable[int]) -> Subset:
    """[H, K] = <[h, k] : h in H, k in K>."""
    c = G.comm_table
    H, K = sorted(set(H)), sorted(set(K))
    if not H or not K:
        return frozenset({0})
    vals = np.unique(c[np.ix_(H, K)])
    return frozenset(_span_rows(G.rows, vals.tolist()))


def center(G: GroupTable) -> Subset:
    M = G.mul
    return frozenset(np.nonzero(np.all(M == M.T, axis=1))[0].tolist())


def centralizer_sizes(G: GroupTable) -> list[int]:
    M = G.mul
    return (M == M.T).sum(axis=1).tolist()


def upper_central_term(G: GroupTable, Z: Subset) -> Subset:
    """Next term of the upper central series: {x : [x, g] in Z for all g}."""
    c = G.comm_table
    mask = np.zeros(G.order, dtype=bool)
    mask[list(Z)] = True
    return frozenset(np.nonzero(np.all(mask[c], axis=1))[0].tolist())


def group_series(G: GroupTable, kind: str) -> list[Subset]:
    """Central and derived series, computed until two consecutive terms coincide.

    lower_central and derived start at G; upper_central starts at {0}. The
    stable term appears once at the end of the list.
    """
    whole = frozenset(range(G.order))
    if kind == "lower_central":
        out = [whole]
        while True:
            nxt = commutator_subgroup(G, whole, out[-1])
            if nxt == out[-1]:
                return out
            out.append(nxt)
    if kind == "derived":
        out = [whole]
        while True:
            nxt = commutator_subgroup(G, out[-1], out[-1])
            if nxt == out[-1]:
                return out
            out.append(nxt)
    if kind == "upper_central":
        out = [frozenset({0})]
        while True:
            nxt = upper_central_term(G, out[-1])
            if nxt == out[-1]:
                return out
            out.append(nxt)
    raise ValueError(f"unknown series kind {kind!r}")


def series_term(series: list[Subset], k: int, offset: int) -> Subset:
    """Term number k of a stabilizing series whose first entry has index offset."""
    i = k - offset
    return series[min(i, len(series) - 1)]


def lower_central(G: GroupTable, k: int) -> Subset:
    """gamma_k(G), with gamma_1 = G."""
    return series_term(group_series(G, "lower_central"), k, 1)


def upper_central(G: GroupTable, k: int) -> Subset:
    """Z_k(G), with Z_0 = 1."""
    return series_term(group_series(G, "upper_central"), k, 0)


def cosets(order: int, rows: list[list[int]], N: Iterable[int]) -> tuple[list[int], list[int]]:
    """Left cosets xN in index order. Returns (projection, representatives)."""
    N = sorted(set(N))
    proj = [-1] * order
    reps = []
    for x in range(order):
        if proj[x] >= 0:
            continue
        k = len(reps)
        reps.append(x)
        row = rows[x]
        for u in N:
            proj[row[u]] = k
    return proj, reps


def quotient_group(G: GroupTable, N: Iterable[int]) -> tuple[GroupTable, list[int]]:
    N = frozenset(N)
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    proj, reps = cosets(G.order, G.rows, N)
    r = G.rows
    table = [[proj[r[a][b]] for b in reps] for a in reps]
    return GroupTable(table), proj


def direct_product_groups(G: GroupTable, H: GroupTable) -> GroupTable:
    """Row-major layout: (g, h) has index g*|H| + h."""
    n = H.order
    M = G.mul[:, None, :, None] * n + H.mul[None, :, None, :]
    return GroupTable(M.reshape(G.order * n, G.order * n))


def semidirect_product_groups(N: GroupTable, H: GroupTable, action: Sequence[Sequence[int]]) -> GroupTable:
    """N x| H with (n1, h1)(n2, h2) = (n1 * action[h1](n2), h1 h2); index n*|H| + h."""
    act = np.array(action, dtype=np.int64)
    a, b = N.order, H.order
    n1 = np.arange(a)[:, None, None, None]
    h1 = np.arange(b)[None, :, None, None]
    n2 = np.arange(a)[None, None, :, None]
    h2 = np.arange(b)[None, None, None, :]
    nn = N.mul[n1, act[h1, n2]]
    hh = H.mul[h1, h2]
    M = nn * b + hh
    return validate_group(M.reshape(a * b, a * b))


def subgroup_table(G: GroupTable, S: Iterable[int]) -> tuple[GroupTable, list[int]]:
    """Relabel a subgroup in increasing index order; returns (table, members)."""
    members = sorted(set(S))
    pos = {x: i for i, x in enumerate(members)}
    r = G.rows
    table = [[pos[r[x][y]] for y in members] for x in members]
    return GroupTable(table), members


# ------------------------------------------------------- isomorphism search


def generating_sequence(G: GroupTable, key=None) -> list[int]:
    """Greedy generating sequence: repeatedly add an element of largest order
    (ties by index) outside the current subgroup."""
    orders = G.element_orders
    if key is None:
        ranked = sorted(range(G.order), key=lambda x: (-orders[x], x))
    else:
        ranked = sorted(range(G.order), key=key)
    gens: list[int] = []
    H = {0}
    for x in ranked:
        if len(H) == G.order:
            break
        if x in H:
            continue
        gens.append(x)
        H = _span_rows(G.rows, gens)
    return gens


def _extend_map(rows_a, rows_b, phi: dict, rev: set, gens, imgs):
    new = dict(phi)
    used = set(rev)
    queue = list(new)
    while queue:
        x = queue.pop()
        fx = new[x]
        ra, rb = rows_a[x], rows_b[fx]
        for g, h in zip(gens, imgs):
            y = ra[g]
            fy = rb[h]
            cur = new.get(y)
            if cur is None:
                if fy in used:
                    return None
                new[y] = fy
                used.add(fy)
                queue.append(y)
            elif cur != fy:
                return None
    return new, used


def iter_isomorphisms(
    A: GroupTable,
    B: GroupTable,
    sig_a: Sequence[Hashable] | None = None,
    sig_b: Sequence[Hashable] | None = None,
    gens: Sequence[int] | None = None,
    accept: Callable[[tuple], bool] | None = None,
) -> Iterator[Bijection]:
    """Yield every group isomorphism A -> B (as image tuples) whose element
    signatures match, in a deterministic order. ``accept`` filters complete maps."""
    if A.order != B.order:
        return
    if sig_a is None:
        sig_a = list(zip(A.element_orders, centralizer_sizes(A)))
        sig_b = list(zip(B.element_orders, centralizer_sizes(B)))
    if sorted(sig_a) != sorted(sig_b):
        return
    if gens is None:
        gens = generating_sequence(A)
    by_sig: dict = {}
    for y in range(B.order):
        by_sig.setdefault(sig_b[y], []).append(y)
    cands = [by_sig.get(sig_a[g], []) for g in gens]
    ra, rb = A.rows, B.rows
    n = A.order

    def rec(k, phi, rev, imgs):
        if k == len(gens):
            if len(phi) != n:
                return
            m = tuple(phi[x] for x in range(n))
            if accept is None or accept(m):
                yield m
            return
        for h in cands[k]:
            if h in rev:
                continue
            res = _extend_map(ra, rb, phi, rev, gens[: k + 1], imgs + [h])
            if res is None:
                continue
            yield from rec(k + 1, res[0], res[1], imgs + [h])

    yield from rec(0, {0: 0}, {0}, [])


def find_isomorphism(G: GroupTable, H: GroupTable) -> Bijection | None:
    return next(iter_isomorphisms(G, H), None)


def automorphisms(G: GroupTable) -> list[Bijection]:
    return list(iter_isomorphisms(G, G))


def is_homomorphism(A: GroupTable, B: GroupTable, f: Sequence[int]) -> bool:
    f = np.asarray(f)
    return bool(np.array_equal(f[A.mul], B.mul[f[:, None], f[None, :]]))


def extend_homomorphism(G: GroupTable, H: GroupTable, partial: dict[int, int]) -> dict[int, int] | None:
    """Extend a map given on generators to an injective homomorphism on the
    subgroup they generate, or None if no such extension exists."""
    gens = [g for g in partial if g != 0]
    if partial.get(0, 0) != 0:
        return None
    res = _extend_map(G.rows, H.rows, {0: 0}, {0}, gens, [partial[g] for g in gens])
    if res is None:
        return None
    return res[0]


# ------------------------------------------------------- group isoclinism


def iterated_commutator_tensor(G: GroupTable, reps: Sequence[int], n: int) -> np.ndarray:
    """Values [r1, [r2, ... [rn, r_{n+1}]]] over all rep tuples, shape (q,)*(n+1)."""
    c = G.comm_table
    R = np.asarray(reps, dtype=np.int64)
    V = R.copy()
    for _ in range(n):
        V = c[R[:, None], V.reshape(1, -1)]
    return V.reshape((len(R),) * (n + 1))


def propagate_map(src: np.ndarray, dst: np.ndarray) -> dict[int, int] | None:
    """The map src[i] -> dst[i] if it is well defined."""
    src, dst = src.ravel(), dst.ravel()
    pairs = np.unique(np.stack([src, dst], axis=1), axis=0)
    if len(np.unique(pairs[:, 0])) != len(pairs):
        return None
    return {int(a): int(b) for a, b in pairs}


def group_n_isoclinic(G: GroupTable, H: GroupTable, n: int) -> tuple[Bijection, dict[int, int]] | None:
    """Search for a group n-isoclinism (alpha, beta).

    alpha is a tuple on the coset indices of G/Z_n(G) -> H/Z_n(H) (cosets in
    :func:`cosets` order) and beta a dict gamma_{n+1}(G) -> gamma_{n+1}(H).
    """
    zg, zh = upper_central(G, n), upper_central(H, n)
    cg, ch = lower_central(G, n + 1), lower_central(H, n + 1)
    if G.order // len(zg) != H.order // len(zh) or len(cg) != len(ch):
        return None
    QG, pg = quotient_group(G, zg)
    QH, ph = quotient_group(H, zh)
    _, reps_g = cosets(G.order, G.rows, zg)
    _, reps_h = cosets(H.order, H.rows, zh)
    TG = iterated_commutator_tensor(G, reps_g, n)
    TH = iterated_commutator_tensor(H, reps_h, n)
    for alpha in iter_isomorphisms(QG, QH):
        al = np.asarray(alpha)
        THa = TH[np.ix_(*([al] * (n + 1)))]
        beta = propagate_map(TG, THa)
        if beta is None:
            continue
        full = extend_homomorphism(G, H, beta)
        if full is None or set(full) != set(cg) or set(full.values()) != set(ch):
            continue
        return alpha, full
    return None


def verify_group_n_isoclinism(G: GroupTable, H: GroupTable, n: int, alpha, beta: dict[int, int]) -> bool:
    """Check a claimed n-isoclinism on every tuple of coset representatives,
    plus that beta is an isomorphism gamma_{n+1}(G) -> gamma_{n+1}(H)."""
    zg, zh = upper_central(G, n), upper_central(H, n)
    QG, _ = quotient_group(G, zg)
    QH, _ = quotient_group(H, zh)
    if not is_homomorphism(QG, QH, alpha) or len(set(alpha)) != QG.order or QG.order != QH.order:
        return False
    cg, ch = lower_central(G, n + 1), lower_central(H, n + 1)
    if set(beta) != set(cg) or set(beta.values()) != set(ch) or len(cg) != len(ch):
        return False
    if any(beta[G.rows[x][y]] != H.rows[beta[x]][beta[y]] for x in cg for y in cg):
        return False
    pg, reps_g = cosets(G.order, G.rows, zg)
    _, reps_h = cosets(H.order, H.rows, zh)
    # use every element of G, not only representatives, to test independence
    TG = iterated_commutator_tensor(G, list(range(G.order)), n)
    lifted = [reps_h[alpha[pg[x]]] for x in range(G.order)]
    TH = iterated_commutator_tensor(H, lifted, n)
    b = np.full(G.order, -1)
    for k, v in beta.items():
        b[k] = v
    return bool(np.array_equal(b[TG], TH))
