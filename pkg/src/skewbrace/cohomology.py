"""Brace 2-cocycles with trivial action, H²_b, annihilator extensions and
the transgression map.

Coefficients are finite abelian groups. All linear algebra is done one
invariant factor Z/d at a time: a cocycle with values in A = ⊕ Z/d_j is the
same as a tuple of Z/d_j-valued cocycles. Characters into C^× are replaced by
homomorphisms into Z/m, m a common multiple of every exponent involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm

import numpy as np

from .braces import SkewBrace, coset_reps, direct_product, is_brace_hom, quotient_brace, trivial_brace
from .catalog import cyclic, product
from .errors import (
    BudgetExceeded,
    IdentityFails,
    InternalDisagreement,
    ModulusTooSmall,
    NotAbelianCoefficients,
    NotInsideAnnihilator,
    QuotientMismatch,
)
from .groups import GroupTable, direct_product_groups, generating_sequence, subgroup_table
from .isoclinism import IsoclinismWitness, brace_isomorphism, isoclinic_via_ideals
from .series import annihilator, gamma_term, is_ideal
from .snf import diagonalize_mod, smith_normal_form, span_order_mod, xgcd

MAX_PAIR_UNKNOWNS = 2 * 15 * 15

# ------------------------------------------------------ abelian groups


@dataclass(frozen=True)
class AbelianDecomposition:
    """A ≅ ⊕ Z/factors[j]; coords[x] are the coordinates of element x."""

    group: GroupTable
    factors: tuple[int, ...]
    coords: np.ndarray  # (order, r)
    element_of: dict

    @property
    def exponent(self) -> int:
        return lcm(*self.factors) if self.factors else 1

    def element(self, c) -> int:
        return self.element_of[tuple(int(x) % d for x, d in zip(c, self.factors))]


def abelian_decomposition(A: GroupTable) -> AbelianDecomposition:
    """Invariant-factor coordinates for a finite abelian group table."""
    if not A.is_abelian():
        raise NotAbelianCoefficients("coefficient group must be abelian")
    gens = generating_sequence(A)
    r = len(gens)
    vec = {0: [0] * r}
    rel = []
    for i, g in enumerate(gens):
        e, x = 1, g
        while x not in vec:
            x = A.rows[x][g]
            e += 1
        row = [-c for c in vec[x]]
        row[i] += e
        rel.append(row)
        layer = dict(vec)
        for h, v in vec.items():
            y = h
            for j in range(1, e):
                y = A.rows[y][g]
                w = list(v)
                w[i] = j
                layer[y] = w
        vec = layer
    if len(vec) != A.order:
        raise InternalDisagreement("generating sequence does not cover the group")
    if r == 0:
        return AbelianDecomposition(A, (), np.zeros((A.order, 0), dtype=np.int64), {(): 0})
    snf = smith_normal_form(rel)
    diag = snf.diagonal
    V = np.array(snf.V, dtype=object)
    keep = [i for i, d in enumerate(diag) if d != 1]
    factors = tuple(int(diag[i]) for i in keep)
    coords = np.zeros((A.order, len(keep)), dtype=np.int64)
    for x, v in vec.items():
        y = np.array(v, dtype=object) @ V
        coords[x] = [int(y[i]) % factors[t] for t, i in enumerate(keep)]
    element_of = {tuple(coords[x].tolist()): x for x in range(A.order)}
    if len(element_of) != A.order:
        raise InternalDisagreement("abelian coordinates are not injective")
    return AbelianDecomposition(A, factors, coords, element_of)


def abelian_group(factors) -> GroupTable:
    """⊕ Z/d for the given d (the empty list gives the trivial group)."""
    factors = [d for d in factors if d > 1]
    if not factors:
        return GroupTable([[0]])
    return product(*[cyclic(d) for d in factors])


# ------------------------------------------------------------ cocycles


@dataclass
class CocyclePair:
    """alpha, mu: |K|×|K| tables of A element indices."""

    K: SkewBrace
    A: GroupTable
    alpha: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        self.alpha = np.asarray(self.alpha, dtype=np.int64)
        self.mu = np.asarray(self.mu, dtype=np.int64)

    def to_json(self) -> dict:
        return {"alpha": self.alpha.tolist(), "mu": self.mu.tolist()}


def zero_cocycle(K: SkewBrace, A: GroupTable) -> CocyclePair:
    z = np.zeros((K.order, K.order), dtype=np.int64)
    return CocyclePair(K, A, z, z.copy())


def _identity_residuals(p: CocyclePair) -> dict[str, np.ndarray]:
    """Each family as an (x, y, z)-indexed table of A elements that must be 0."""
    K, A = p.K, p.A
    M = A.mul
    inv = np.array(A.inv)
    al, mu = p.alpha, p.mu
    k = K.order
    x = np.arange(k)[:, None, None]
    y = np.arange(k)[None, :, None]
    z = np.arange(k)[None, None, :]
    kd, kc = K.dot.mul, K.circ.mul
    kinv = np.array(K.dot.inv)

    def add(*terms):
        out = terms[0]
        for t in terms[1:]:
            out = M[out, t]
        return out

    out = {}
    out["dot cocycle"] = add(al[y, z], inv[al[kd[x, y], z]], al[x, kd[y, z]], inv[al[x, y]])
    out["circ cocycle"] = add(mu[y, z], inv[mu[kc[x, y], z]], mu[x, kc[y, z]], inv[mu[x, y]])
    xy = kc[x, y]
    xb = kinv[x]
    lhs_dot = add(al[y, z], al[x, xb], inv[al[xy, xb]], inv[al[kd[xy, xb], kc[x, z]]])
    rhs_dot = add(mu[x, z], inv[mu[x, kd[y, z]]], mu[x, y])
    out["compatibility"] = add(lhs_dot, inv[rhs_dot])
    lz = K.lam[x, z]
    lhs_lam = add(al[y, z], inv[al[xy, lz]], al[x, lz])
    rhs_lam = add(mu[x, y], inv[mu[x, kd[y, z]]], mu[x, z])
    out["lambda compatibility"] = add(lhs_lam, inv[rhs_lam])
    return out


def validate_cocycle(p: CocyclePair) -> CocyclePair:
    """Check normalization, both cocycle identities and compatibility.

    Compatibility is checked in both of its forms; given the dot identity
    they are equivalent, so a disagreement is reported as a bug.
    """
    if not p.A.is_abelian():
        raise NotAbelianCoefficients("coefficient group must be abelian")
    k = p.K.order
    if p.alpha.shape != (k, k) or p.mu.shape != (k, k):
        raise ValueError("cocycle tables must be |K|×|K|")
    for name, t in (("alpha normalized", p.alpha), ("mu normalized", p.mu)):
        bad = np.nonzero(np.concatenate([t[0], t[:, 0]]))[0]
        if len(bad):
            i = int(bad[0])
            raise IdentityFails(name, (0, i) if i < k else (i - k, 0))
    res = _identity_residuals(p)
    for name in ("dot cocycle", "circ cocycle"):
        bad = np.argwhere(res[name] != 0)
        if len(bad):
            raise IdentityFails(name, tuple(int(v) for v in bad[0]))
    ok_dot = not res["compatibility"].any()
    ok_lam = not res["lambda compatibility"].any()
    if ok_dot != ok_lam:
        raise InternalDisagreement("the two forms of the compatibility identity disagree")
    if not ok_lam:
        raise IdentityFails("lambda compatibility", tuple(int(v) for v in np.argwhere(res["lambda compatibility"] != 0)[0]))
    return p


def is_cocycle(p: CocyclePair) -> bool:
    try:
        validate_cocycle(p)
    except IdentityFails:
        return False
    return True


# ------------------------------------------- linear algebra over Z/d


class _Linear:
    """Unknowns α(x,y), μ(x,y) for x, y != 0 as a vector in (Z/d)^(2P)."""

    def __init__(self, K: SkewBrace):
        self.K = K
        k = K.order
        self.k = k
        self.P = (k - 1) ** 2
        self.dim = 2 * self.P
        if self.dim > MAX_PAIR_UNKNOWNS:
            raise BudgetExceeded(f"|K| = {k} gives {self.dim} cocycle unknowns")
        self._eq = None
        self._cob = None

    def idx(self, which: int, x, y):
        """Column of α (which=0) or μ (which=1) at (x, y); -1 if normalized away."""
        x, y = np.asarray(x), np.asarray(y)
        out = which * self.P + (x - 1) * (self.k - 1) + (y - 1)
        return np.where((x == 0) | (y == 0), -1, out)

    def equations(self) -> np.ndarray:
        """Rows of the linearized identities (3.3), (3.4) and (3.6)."""
        if self._eq is not None:
            return self._eq
        K, k = self.K, self.k
        x, y, z = (a.ravel() for a in np.meshgrid(np.arange(k), np.arange(k), np.arange(k), indexing="ij"))
        kd, kc, lam = K.dot.mul, K.circ.mul, K.lam
        fams = []
        for which, op in ((0, kd), (1, kc)):
            fams.append([(which, y, z, 1), (which, op[x, y], z, -1), (which, x, op[y, z], 1), (which, x, y, -1)])
        lz = lam[x, z]
        fams.append(
            [
                (0, y, z, 1),
                (0, kc[x, y], lz, -1),
                (0, x, lz, 1),
                (1, x, y, -1),
                (1, x, kd[y, z], 1),
                (1, x, z, -1),
            ]
        )
        rows = []
        n = len(x)
        for fam in fams:
            R = np.zeros((n, self.dim + 1), dtype=np.int64)  # last column absorbs normalized terms
            for which, a, b, s in fam:
                col = self.idx(which, a, b)
                col = np.where(col < 0, self.dim, col)
                np.add.at(R, (np.arange(n), col), s)
            rows.append(R[:, : self.dim])
        R = np.concatenate(rows)
        R = R[np.any(R != 0, axis=1)]
        self._eq = np.unique(R, axis=0)
        return self._eq

    def coboundary_matrix(self) -> np.ndarray:
        """dim × (k-1): h(1..k-1) -> (δh on ·, δh on ∘)."""
        if self._cob is not None:
            return self._cob
        K, k = self.K, self.k
        D = np.zeros((self.dim + 1, k), dtype=np.int64)
        x, y = (a.ravel() for a in np.meshgrid(np.arange(1, k), np.arange(1, k), indexing="ij"))
        for which, op in ((0, K.dot.mul), (1, K.circ.mul)):
            rows = self.idx(which, x, y)
            np.add.at(D, (rows, x), 1)
            np.add.at(D, (rows, y), 1)
            np.add.at(D, (rows, op[x, y]), -1)
        self._cob = D[: self.dim, 1:]
        return self._cob

    def to_vector(self, alpha: np.ndarray, mu: np.ndarray) -> np.ndarray:
        return np.concatenate([alpha[1:, 1:].ravel(), mu[1:, 1:].ravel()])

    def to_tables(self, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        k = self.k
        al = np.zeros((k, k), dtype=np.int64)
        mu = np.zeros((k, k), dtype=np.int64)
        al[1:, 1:] = v[: self.P].reshape(k - 1, k - 1)
        mu[1:, 1:] = v[self.P :].reshape(k - 1, k - 1)
        return al, mu


@dataclass
class _CyclicH2:
    """Z², B² and H² for coefficients Z/d."""

    d: int
    z_orders: list[int]  # Z² ≅ ⊕ Z/z_orders[i]
    z_gens: np.ndarray  # rows: generators of Z² in (Z/d)^dim
    b_gens: np.ndarray  # rows: generators of B²
    h_factors: list[int]
    h_reps: np.ndarray  # rows: representative cocycle vectors

    @property
    def z_order(self) -> int:
        return int(np.prod(self.z_orders, dtype=object)) if self.z_orders else 1

    @property
    def b_order(self) -> int:
        return span_order_mod(self.b_gens, self.d, self.b_gens.shape[1]) if len(self.b_gens) else 1


def _cyclic_h2(lin: _Linear, d: int) -> _CyclicH2:
    dim = lin.dim
    if d == 1 or dim == 0:
        z = np.zeros((0, dim), dtype=np.int64)
        return _CyclicH2(d, [], z, z, [], z)
    E = lin.equations()
    if len(E) == 0:
        E = np.zeros((1, dim), dtype=np.int64)
    red = diagonalize_mod(E, d)
    V, Vinv = red.V, red.Vinv
    diag = red.diag + [0] * (dim - len(red.diag))
    e = [gcd(x, d) if x % d else d for x in diag]  # Z/e_i summands of Z²
    scale = [d // ei for ei in e]
    keep = [i for i in range(dim) if e[i] > 1]
    z_gens = np.array([(V[:, i] * scale[i]) % d for i in keep], dtype=np.int64).reshape(len(keep), dim)
    z_orders = [e[i] for i in keep]

    B = lin.coboundary_matrix().T % d  # rows: δ of unit functions
    # coordinates of B² in the Z² basis
    Y = (B @ Vinv.T) % d  # y = Vinv x
    W = []
    for row in Y:
        w = []
        for t, i in enumerate(keep):
            if row[i] % scale[i]:
                raise InternalDisagreement("coboundary outside the cocycle group")
            w.append(int(row[i] // scale[i]))
        for i in range(dim):
            if i not in keep and row[i] % d:
                raise InternalDisagreement("coboundary outside the cocycle group")
        W.append(w)
    s = len(keep)
    if s == 0:
        z = np.zeros((0, dim), dtype=np.int64)
        return _CyclicH2(d, [], z, B, [], z)
    R = [[z_orders[i] if j == i else 0 for j in range(s)] for i in range(s)] + W
    snf = smith_normal_form(R)
    reps, factors = [], []
    for j, f in enumerate(snf.diagonal):
        if f == 1:
            continue
        coeff = snf.Vinv[j]
        x = np.zeros(dim, dtype=np.int64)
        for t in range(s):
            x = (x + (int(coeff[t]) % z_orders[t]) * z_gens[t]) % d
        reps.append(x)
        factors.append(int(f))
    return _CyclicH2(d, z_orders, z_gens, B, factors, np.array(reps, dtype=np.int64).reshape(len(reps), dim))


# ---------------------------------------------------------- H² group


@dataclass
class CohomologyGroup:
    K: SkewBrace
    A: GroupTable
    invariant_factors: list[int]
    z2_order: int
    b2_order: int
    generators: list[CocyclePair]
    generator_orders: list[int]
    components: list[_CyclicH2] = field(repr=False)

    @property
    def order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out


def _combine_factors(orders: list[int]) -> list[int]:
    orders = [o for o in orders if o > 1]
    if not orders:
        return []
    n = len(orders)
    snf = smith_normal_form([[orders[i] if i == j else 0 for j in range(n)] for i in range(n)])
    return [f for f in snf.diagonal if f > 1]


def _pair_from_component(K, dec: AbelianDecomposition, j: int, v: np.ndarray, lin: _Linear) -> CocyclePair:
    al_c, mu_c = lin.to_tables(v)
    r = len(dec.factors)

    def lift(t):
        out = np.zeros_like(t)
        for idx, val in np.ndenumerate(t):
            c = [0] * r
            c[j] = int(val)
            out[idx] = dec.element(c)
        return out

    return CocyclePair(K, dec.group, lift(al_c), lift(mu_c))


def h2_group(K: SkewBrace, A: GroupTable) -> CohomologyGroup:
    """H²_b(K, A) with trivial action. |H²| = |Z²| / |B²| is asserted."""
    dec = abelian_decomposition(A)
    lin = _Linear(K)
    comps = [_cyclic_h2(lin, d) for d in dec.factors]
    z2 = 1
    b2 = 1
    gens, orders = [], []
    for j, c in enumerate(comps):
        z2 *= c.z_order
        b2 *= c.b_order
        for v, f in zip(c.h_reps, c.h_factors):
            gens.append(_pair_from_component(K, dec, j, v, lin))
            orders.append(f)
    factors = _combine_factors(orders)
    H = CohomologyGroup(K, A, factors, z2, b2, gens, orders, comps)
    if H.order * b2 != z2:
        raise InternalDisagreement("|H²| != |Z²|/|B²|")
    return H


def _component_vectors(p: CocyclePair, dec: AbelianDecomposition, lin: _Linear) -> list[np.ndarray]:
    out = []
    for j, d in enumerate(dec.factors):
        al = dec.coords[p.alpha][..., j]
        mu = dec.coords[p.mu][..., j]
        out.append(lin.to_vector(al, mu) % d)
    return out


def coboundary_witness(p: CocyclePair) -> list[int] | None:
    """h: K -> A (A element indices, h(0) = 0) with (α, μ) = δh, or None."""
    dec = abelian_decomposition(p.A)
    lin = _Linear(p.K)
    Dm = lin.coboundary_matrix()
    k = p.K.order
    coords = np.zeros((k, len(dec.factors)), dtype=np.int64)
    for j, (d, c) in enumerate(zip(dec.factors, _component_vectors(p, dec, lin))):
        if k == 1:
            if c.any():
                return None
            continue
        red = diagonalize_mod(Dm, d, track_u=True)
        rhs = (red.U @ c) % d
        y = np.zeros(k - 1, dtype=np.int64)
        for i in range(len(rhs)):
            di = red.diag[i] if i < len(red.diag) else 0
            if i < k - 1 and di % d:
                g = gcd(di, d)
                if rhs[i] % g:
                    return None
                _, s, _ = xgcd(di, d)
                y[i] = (rhs[i] // g) * s % d
            elif rhs[i] % d:
                return None
        h = (red.V @ y) % d
        if not np.array_equal((Dm @ h) % d, c):
            raise InternalDisagreement("coboundary solution does not reproduce the cocycle")
        coords[1:, j] = h
    return [dec.element(coords[x]) for x in range(k)]


def coboundary_pair(K: SkewBrace, A: GroupTable, h) -> CocyclePair:
    """(δh on ·, δh on ∘) for h: K -> A with h(0) = 0."""
    h = np.asarray(h, dtype=np.int64)
    M = A.mul
    inv = np.array(A.inv)
    al = M[M[h[:, None], h[None, :]], inv[h[K.dot.mul]]]
    mu = M[M[h[:, None], h[None, :]], inv[h[K.circ.mul]]]
    return CocyclePair(K, A, al, mu)


def add_cocycles(p: CocyclePair, q: CocyclePair) -> CocyclePair:
    M = p.A.mul
    return CocyclePair(p.K, p.A, M[p.alpha, q.alpha], M[p.mu, q.mu])


def negate_cocycle(p: CocyclePair) -> CocyclePair:
    inv = np.array(p.A.inv)
    return CocyclePair(p.K, p.A, inv[p.alpha], inv[p.mu])


# ------------------------------------------------------------ extensions


@dataclass
class Extension:
    G: SkewBrace
    i: list[int]  # A -> G
    pi: list[int]  # G -> K


def annihilator_extension(p: CocyclePair) -> Extension:
    """G = A ×_(α,μ) K with (a, k) at index a·|K| + k."""
    K, A = p.K, p.A
    k, na = K.order, A.order
    a = np.arange(na)[:, None, None, None]
    kk = np.arange(k)[None, :, None, None]
    b = np.arange(na)[None, None, :, None]
    ll = np.arange(k)[None, None, None, :]

    def table(op, coc):
        val = A.mul[A.mul[a, b], coc[kk, ll]]
        return (val * k + op[kk, ll]).reshape(na * k, na * k)

    G = SkewBrace(GroupTable(table(K.dot.mul, p.alpha)), GroupTable(table(K.circ.mul, p.mu)))
    i = [x * k for x in range(na)]
    pi = [x % k for x in range(na * k)]
    if not set(i) <= annihilator(G):
        raise InternalDisagreement("i(A) is not inside Ann(G)")
    if not is_brace_hom(G, K, pi) or {x for x in range(G.order) if pi[x] == 0} != set(i):
        raise InternalDisagreement("projection to K is not a homomorphism with kernel i(A)")
    return Extension(G, i, pi)


def extension_to_cocycle(G: SkewBrace, A_ideal, transversal: str = "least") -> tuple[CocyclePair, list[int]]:
    """The cocycle of G over K = G/A for a transversal t with t(1) = 1.

    Returns the pair and the members of A (coefficient index -> G index).
    ``transversal`` is "least" or "greatest" element of each coset.
    """
    S = frozenset(A_ideal)
    if not is_ideal(G, S) or not S <= annihilator(G):
        raise NotInsideAnnihilator("A must be an ideal inside Ann(G)")
    K, proj = quotient_brace(G, S)
    if transversal == "least":
        t = coset_reps(G, proj)
    elif transversal == "greatest":
        t = [-1] * K.order
        for x, c in enumerate(proj):
            t[c] = x
        t[proj[0]] = 0
    else:
        raise ValueError(f"unknown transversal policy {transversal!r}")
    Agrp, members = subgroup_table(G.dot, S)
    pos = {x: i for i, x in enumerate(members)}
    t = np.array(t)
    dm, cm = G.dot.mul, G.circ.mul
    dinv, cinv = np.array(G.dot.inv), np.array(G.circ.inv)
    al = dm[dm[t[:, None], t[None, :]], dinv[t[K.dot.mul]]]
    mu = cm[cm[t[:, None], t[None, :]], cinv[t[K.circ.mul]]]
    to_a = np.full(G.order, -1, dtype=np.int64)
    to_a[members] = np.arange(len(members))
    if (to_a[al] < 0).any() or (to_a[mu] < 0).any():
        raise InternalDisagreement("cocycle values outside A")
    p = CocyclePair(K, Agrp, to_a[al], to_a[mu])
    validate_cocycle(p)
    return p, members


# ---------------------------------------------------------- transgression


@dataclass
class Transgression:
    """ε: Â -> H²_b(K, Z/m) for an annihilator extension."""

    modulus: int
    K: SkewBrace
    factors: tuple[int, ...]  # Â ≅ A ≅ ⊕ Z/factors
    classes: np.ndarray  # rows: ε(χ_j) as cocycle vectors over Z/m
    coboundaries: np.ndarray
    image_order: int
    kernel_order: int

    @property
    def dual_order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f
        return out


def _transgress_pair(p: CocyclePair, m: int) -> Transgression:
    dec = abelian_decomposition(p.A)
    if m % dec.exponent:
        raise ModulusTooSmall(f"modulus {m} is not a multiple of exp(A) = {dec.exponent}")
    lin = _Linear(p.K)
    B = lin.coboundary_matrix().T % m
    classes = []
    for j, d in enumerate(dec.factors):
        al = dec.coords[p.alpha][..., j] * (m // d) % m
        mu = dec.coords[p.mu][..., j] * (m // d) % m
        classes.append(lin.to_vector(al, mu))
    C = np.array(classes, dtype=np.int64).reshape(len(classes), lin.dim)
    base = span_order_mod(B, m, lin.dim) if len(B) else 1
    both = span_order_mod(np.concatenate([C, B]), m, lin.dim) if len(C) + len(B) else 1
    image = both // base
    dual = 1
    for f in dec.factors:
        dual *= f
    return Transgression(m, p.K, dec.factors, C, B, image, dual // image)


def transgression(G: SkewBrace, A_ideal, m: int | None = None) -> Transgression:
    """ε_G for the extension 1 -> A -> G -> G/A -> 1.

    m defaults to exp(A)·|K|. That is enough: if δh = c with c of exponent e,
    then h^e is a brace homomorphism K -> C^×, so h takes values in μ_{e|K|}.
    """
    p, _ = extension_to_cocycle(G, A_ideal)
    if m is None:
        m = abelian_decomposition(p.A).exponent * p.K.order
    return _transgress_pair(p, m)


def transgression_stable(G: SkewBrace, A_ideal, m: int | None = None) -> tuple[Transgression, bool]:
    """ε_G at m and 2m; the flag says whether the image order agrees."""
    t1 = transgression(G, A_ideal, m)
    t2 = transgression(G, A_ideal, 2 * t1.modulus)
    return t1, t1.image_order == t2.image_order


def kernel_order_identity(G: SkewBrace, A_ideal, m: int | None = None) -> tuple[int, int, int]:
    """(|Ker ε_G|, |A ∩ Γ2(G)|, |Â|); the first two multiply to the third."""
    t = transgression(G, A_ideal, m)
    inter = frozenset(A_ideal) & gamma_term(G, 2)
    return t.kernel_order, len(inter), t.dual_order


# ------------------------------------------------------ isoclinism driver


def _transport(q: CocyclePair, K: SkewBrace, xi) -> CocyclePair:
    """Pull q back along an isomorphism xi: K -> q.K."""
    x = np.asarray(xi)
    return CocyclePair(K, q.A, q.alpha[np.ix_(x, x)], q.mu[np.ix_(x, x)])


@dataclass
class TheoremACheck:
    equal_images: bool
    witness: IsoclinismWitness | None
    modulus: int
    image_orders: tuple[int, int]


def theorem_a_check(p: CocyclePair, q: CocyclePair, xi=None) -> TheoremACheck:
    """Compare ε_G(Â) and ε_H(B̂) inside H²_b(K, Z/m) for G, H the annihilator
    extensions of p and q, with K identified through xi: p.K -> q.K.

    When the images agree, θ: Γ2(G) -> Γ2(H) is built from the extension L of
    K by A × B with cocycle (α, β⁻¹), (μ, ν⁻¹): θ(a, k) = (b, k) exactly when
    ((a, b⁻¹), k) ∈ Γ2(L). The resulting diagram is verified and promoted to
    an isoclinism witness.
    """
    K = p.K
    if xi is None:
        xi = brace_isomorphism(K, q.K)
        if xi is None:
            raise QuotientMismatch("the two quotients are not isomorphic")
    elif not (len(xi) == K.order and is_brace_hom(K, q.K, xi) and len(set(xi)) == K.order):
        raise QuotientMismatch("xi is not a brace isomorphism of the quotients")
    q = _transport(q, K, xi)
    validate_cocycle(p)
    validate_cocycle(q)
    da, db = abelian_decomposition(p.A), abelian_decomposition(q.A)
    m = lcm(da.exponent, db.exponent) * K.order  # see transgression()
    tg, th = _transgress_pair(p, m), _transgress_pair(q, m)
    B = tg.coboundaries
    dim = B.shape[1] if B.ndim == 2 and B.size else _Linear(K).dim

    def span(*blocks):
        rows = [b for b in blocks if len(b)]
        if not rows:
            return 1
        return span_order_mod(np.concatenate(rows), m, dim)

    sg, sh, sgh = span(tg.classes, B), span(th.classes, B), span(tg.classes, th.classes, B)
    equal = sg == sh == sgh
    if not equal:
        return TheoremACheck(False, None, m, (tg.image_order, th.image_order))

    G = annihilator_extension(p).G
    H = annihilator_extension(q).G
    k = K.order
    AB = direct_product_groups(p.A, q.A)
    nb = q.A.order
    binv = np.array(q.A.inv)
    chi = p.alpha * nb + binv[q.alpha]
    zeta = p.mu * nb + binv[q.mu]
    L = annihilator_extension(CocyclePair(K, AB, chi, zeta)).G
    gG, gH, gL = gamma_term(G, 2), gamma_term(H, 2), gamma_term(L, 2)
    theta: dict[int, int] = {}
    for x in gL:
        ab, kk = divmod(x, k)
        a, b_inv = divmod(ab, nb)
        g = a * k + kk
        h = int(binv[b_inv]) * k + kk
        if g in gG:
            if theta.get(g, h) != h:
                raise InternalDisagreement("θ is not well defined")
            theta[g] = h
    if set(theta) != gG or set(theta.values()) != gH:
        raise InternalDisagreement("θ does not map Γ2(G) onto Γ2(H)")
    A_in_G = frozenset(x * k for x in range(p.A.order))
    B_in_H = frozenset(x * k for x in range(q.A.order))
    # quotients G/A and H/B are both numbered by k
    ok, w = isoclinic_via_ideals(G, H, A_in_G, B_in_H, tuple(range(k)), theta, 1)
    if not ok:
        raise InternalDisagreement("equal transgression images but the diagram does not commute")
    return TheoremACheck(True, w, m, (tg.image_order, th.image_order))


def direct_extension(K: SkewBrace, A: GroupTable) -> SkewBrace:
    """A × K as the extension with zero cocycle (same index layout)."""
    return direct_product(trivial_brace(A), K)
