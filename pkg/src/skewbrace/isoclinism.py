"""Brace isomorphism, n-isoclinism witnesses, and the fiber-product and
embedding constructions for isoclinic pairs."""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from .braces import (
    SkewBrace,
    circ_product_set,
    coset_reps,
    direct_product,
    dot_product_set,
    is_brace_hom,
    quotient_brace,
    sub_brace,
)
from .errors import (
    BadIdeals,
    DiagramFails,
    InternalDisagreement,
    NotInClassIn,
    WitnessInvalid,
)
from .groups import (
    Bijection,
    Subset,
    extend_homomorphism,
    generating_sequence,
    group_n_isoclinic,
    propagate_map,
)
from .series import annihilator, ann_term, dot_span, gamma_term, is_ideal
from .words import in_class_In, skeleton_ideal, value_tensor, words_of_degree

# ---------------------------------------------------------------- isomorphism


def _close_brace_map(A: SkewBrace, B: SkewBrace, phi: dict, used: set, fresh: list[int]):
    """Extend phi to everything generated from its domain under both
    operations; None on a clash or loss of injectivity."""
    da, db, ca, cb = A.dot.rows, B.dot.rows, A.circ.rows, B.circ.rows
    queue = list(fresh)
    while queue:
        x = queue.pop()
        fx = phi[x]
        for y in list(phi):
            fy = phi[y]
            for z, fz in (
                (da[x][y], db[fx][fy]),
                (da[y][x], db[fy][fx]),
                (ca[x][y], cb[fx][fy]),
                (ca[y][x], cb[fy][fx]),
            ):
                cur = phi.get(z)
                if cur is None:
                    if fz in used:
                        return None
                    phi[z] = fz
                    used.add(fz)
                    queue.append(z)
                elif cur != fz:
                    return None
    return phi


def iter_brace_isomorphisms(A: SkewBrace, B: SkewBrace) -> Iterator[Bijection]:
    """Every brace isomorphism A -> B, in a deterministic order.

    Images of a dot-generating sequence are chosen among elements with the same
    (dot order, circ order, λ fixed points) signature.
    """
    if A.order != B.order:
        return
    sa, sb = A.signature(), B.signature()
    if sorted(sa) != sorted(sb):
        return
    gens = generating_sequence(A.dot)
    by_sig: dict = {}
    for y in range(B.order):
        by_sig.setdefault(sb[y], []).append(y)
    cands = [by_sig[sa[g]] for g in gens]
    n = A.order

    def rec(k, phi, used):
        if len(phi) == n:
            yield tuple(phi[x] for x in range(n))
            return
        if k == len(gens):
            return
        g = gens[k]
        if g in phi:
            yield from rec(k + 1, phi, used)
            return
        for h in cands[k]:
            if h in used:
                continue
            p2, u2 = dict(phi), set(used)
            p2[g] = h
            u2.add(h)
            if _close_brace_map(A, B, p2, u2, [g]) is not None:
                yield from rec(k + 1, p2, u2)

    yield from rec(0, {0: 0}, {0})


def brace_isomorphism(A: SkewBrace, B: SkewBrace) -> Bijection | None:
    return next(iter_brace_isomorphisms(A, B), None)


def brace_automorphisms(A: SkewBrace) -> list[Bijection]:
    return list(iter_brace_isomorphisms(A, A))


# ----------------------------------------------------------------- witnesses


@dataclass(frozen=True)
class IsoclinismWitness:
    """xi on A/Ann_n(A) -> B/Ann_n(B) (quotient indices as produced by
    quotient_brace) and theta: A_(n) -> B_(n)."""

    n: int
    xi: tuple[int, ...]
    theta: dict[int, int]

    def to_json(self) -> dict:
        dom = sorted(self.theta)
        return {
            "n": self.n,
            "xi": list(self.xi),
            "theta_domain": dom,
            "theta_image": [self.theta[x] for x in dom],
        }

    @classmethod
    def from_json(cls, d: dict) -> IsoclinismWitness:
        try:
            n = int(d["n"])
            xi = tuple(int(x) for x in d["xi"])
            dom, img = d["theta_domain"], d["theta_image"]
        except (KeyError, TypeError, ValueError) as exc:
            raise WitnessInvalid(f"malformed witness: {exc}") from exc
        if len(dom) != len(img):
            raise WitnessInvalid("theta_domain and theta_image differ in length")
        return cls(n, xi, {int(a): int(b) for a, b in zip(dom, img)})


@dataclass
class _Setup:
    ann: Subset
    Q: SkewBrace
    proj: list[int]
    reps: list[int]
    skel: Subset


def _setup(A: SkewBrace, n: int) -> _Setup:
    ann = ann_term(A, n)
    Q, proj = quotient_brace(A, ann)
    return _Setup(ann, Q, proj, coset_reps(A, proj), skeleton_ideal(A, n))


def _require_class(A: SkewBrace, n: int, name: str) -> None:
    if n >= 2 and not in_class_In(A, n):
        raise NotInClassIn(f"{name} is not in I_{n}")


def _word_tensors(A: SkewBrace, n: int, domain: Sequence[int]) -> np.ndarray:
    return np.stack([value_tensor(A, m, [domain] * (n + 1)) for m in words_of_degree(n)])


def _theta_ok(A: SkewBrace, B: SkewBrace, theta: dict[int, int], dom: Subset, img: Subset) -> bool:
    if set(theta) != set(dom) or set(theta.values()) != set(img) or len(dom) != len(img):
        return False
    D = sorted(dom)
    f = np.full(A.order, -1, dtype=np.int64)
    f[D] = [theta[x] for x in D]
    ix = np.ix_(D, D)
    fd = f[D]
    return bool(
        np.array_equal(f[A.dot.mul[ix]], B.dot.mul[np.ix_(fd, fd)])
        and np.array_equal(f[A.circ.mul[ix]], B.circ.mul[np.ix_(fd, fd)])
    )


def find_isoclinism(A: SkewBrace, B: SkewBrace, n: int = 1) -> IsoclinismWitness | None:
    """First n-isoclinism (xi, theta) from A to B, or None.

    theta is not searched: for each candidate xi it is read off the degree-n
    word values on coset representatives, extended multiplicatively, and then
    checked to be a brace isomorphism A_(n) -> B_(n).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    _require_class(A, n, "first brace")
    _require_class(B, n, "second brace")
    sa, sb = _setup(A, n), _setup(B, n)
    if sa.Q.order != sb.Q.order or len(sa.skel) != len(sb.skel):
        return None
    TA = _word_tensors(A, n, sa.reps)
    TB = _word_tensors(B, n, sb.reps)
    for xi in iter_brace_isomorphisms(sa.Q, sb.Q):
        x = np.asarray(xi)
        TBx = TB[(slice(None),) + np.ix_(*([x] * (n + 1)))]
        partial = propagate_map(TA, TBx)
        if partial is None:
            continue
        theta = extend_homomorphism(A.dot, B.dot, partial)
        if theta is None or not _theta_ok(A, B, theta, sa.skel, sb.skel):
            continue
        return IsoclinismWitness(n, tuple(xi), theta)
    return None


def verify_isoclinism(A: SkewBrace, B: SkewBrace, w: IsoclinismWitness) -> bool:
    """Check a witness on every argument tuple of A (not only representatives)."""
    n = w.n
    sa, sb = _setup(A, n), _setup(B, n)
    if len(w.xi) != sa.Q.order or sa.Q.order != sb.Q.order or sorted(w.xi) != list(range(sb.Q.order)):
        return False
    if not is_brace_hom(sa.Q, sb.Q, w.xi):
        return False
    if not _theta_ok(A, B, w.theta, sa.skel, sb.skel):
        return False
    lifted = [sb.reps[w.xi[sa.proj[a]]] for a in range(A.order)]
    t = np.full(A.order, -1, dtype=np.int64)
    for k, v in w.theta.items():
        t[k] = v
    for m in words_of_degree(n):
        VA = value_tensor(A, m, [range(A.order)] * (n + 1))
        VB = value_tensor(B, m, [lifted] * (n + 1))
        if (t[VA] < 0).any() or not np.array_equal(t[VA], VB):
            return False
    return True


def invert_witness(w: IsoclinismWitness) -> IsoclinismWitness:
    xi = [0] * len(w.xi)
    for i, j in enumerate(w.xi):
        xi[j] = i
    return IsoclinismWitness(w.n, tuple(xi), {v: k for k, v in w.theta.items()})


def compose_witness(w1: IsoclinismWitness, w2: IsoclinismWitness) -> IsoclinismWitness:
    """A -> B -> C from w1: A -> B and w2: B -> C."""
    if w1.n != w2.n:
        raise WitnessInvalid("witnesses have different levels")
    return IsoclinismWitness(
        w1.n, tuple(w2.xi[j] for j in w1.xi), {k: w2.theta[v] for k, v in w1.theta.items()}
    )


def isoclinism_invariants(A: SkewBrace, n: int = 1) -> tuple:
    """Cheap invariants shared by n-isoclinic braces."""
    s = _setup(A, n)
    return (s.Q.order, len(s.skel), tuple(sorted(s.Q.signature())))


def isoclinism_classes(braces: Sequence[SkewBrace], n: int = 1) -> list[list[int]]:
    """Partition indices into n-isoclinism classes (pairwise search within
    buckets of equal invariants)."""
    buckets: dict = {}
    for i, A in enumerate(braces):
        buckets.setdefault(isoclinism_invariants(A, n), []).append(i)
    classes: list[list[int]] = []
    for key in sorted(buckets, key=repr):
        reps: list[list[int]] = []
        for i in buckets[key]:
            for cls in reps:
                if find_isoclinism(braces[cls[0]], braces[i], n) is not None:
                    cls.append(i)
                    break
            else:
                reps.append([i])
        classes.extend(reps)
    return sorted(classes)


# ----------------------------------------------------- criterion via ideals


def isoclinic_via_ideals(
    A: SkewBrace,
    B: SkewBrace,
    L: Subset,
    N: Subset,
    xi: Sequence[int],
    theta: dict[int, int],
    n: int = 1,
) -> tuple[bool, IsoclinismWitness | None]:
    """Given ideals L ⊆ Ann_n(A), N ⊆ Ann_n(B), a brace isomorphism
    xi: A/L -> B/N and theta: A_(n) -> B_(n), check the word diagrams over A/L.

    If they commute, xi descends to A/Ann_n(A) -> B/Ann_n(B) and the promoted
    witness is returned. (False, None) if the diagrams do not commute.
    """
    L, N = frozenset(L), frozenset(N)
    annA, annB = ann_term(A, n), ann_term(B, n)
    if not (is_ideal(A, L) and is_ideal(B, N) and L <= annA and N <= annB):
        raise BadIdeals("L and N must be ideals inside Ann_n(A) and Ann_n(B)")
    _require_class(A, n, "first brace")
    _require_class(B, n, "second brace")
    QL, pL = quotient_brace(A, L)
    QN, pN = quotient_brace(B, N)
    xi = tuple(xi)
    if QL.order != QN.order or sorted(xi) != list(range(QN.order)) or not is_brace_hom(QL, QN, xi):
        raise WitnessInvalid("xi is not a brace isomorphism A/L -> B/N")
    skA, skB = skeleton_ideal(A, n), skeleton_ideal(B, n)
    if set(theta) > skA:
        # theta given on a larger ideal such as Γ_{n+1}(A): only A_(n) matters
        theta = {a: theta[a] for a in skA}
    if not _theta_ok(A, B, theta, skA, skB):
        raise WitnessInvalid("theta is not a brace isomorphism of the skeleton ideals")
    repsN = coset_reps(B, pN)
    repsL = coset_reps(A, pL)
    t = np.full(A.order, -1, dtype=np.int64)
    for k, v in theta.items():
        t[k] = v
    lifted = [repsN[xi[c]] for c in range(QL.order)]
    for m in words_of_degree(n):
        VA = value_tensor(A, m, [repsL] * (n + 1))
        VB = value_tensor(B, m, [lifted] * (n + 1))
        if not np.array_equal(t[VA], VB):
            return False, None

    # xi(L a) = N theta(a) on the skeleton, and theta(L ∩ A_(n)) = N ∩ B_(n)
    if any(xi[pL[a]] != pN[theta[a]] for a in skA):
        raise DiagramFails("xi(La) != N theta(a) for some a in the skeleton")
    if {theta[a] for a in L & skA} != N & skB:
        raise DiagramFails("theta does not map L ∩ A_(n) onto N ∩ B_(n)")

    sa, sb = _setup(A, n), _setup(B, n)
    bar = [-1] * sa.Q.order
    for a in range(A.order):
        val = sb.proj[repsN[xi[pL[a]]]]
        k = sa.proj[a]
        if bar[k] == -1:
            bar[k] = val
        elif bar[k] != val:
            raise DiagramFails("xi does not descend to the Ann_n quotients")
    w = IsoclinismWitness(n, tuple(bar), dict(theta))
    if not verify_isoclinism(A, B, w):
        raise DiagramFails("promoted witness fails verification")
    return True, w


# ------------------------------------------------------------ fiber product


@dataclass
class FiberProductResult:
    C: SkewBrace
    embed_into_AxB: list[int]  # C index -> a*|B| + b
    N1: Subset  # {(u, 0) : u in Ann_n(A)} as C indices
    N2: Subset  # {(0, u) : u in Ann_n(B)}
    to_A: list[int]  # first projection C -> A
    to_B: list[int]
    witness_CA: IsoclinismWitness
    witness_CB: IsoclinismWitness


def _kernel(f: Sequence[int]) -> Subset:
    return frozenset(i for i, v in enumerate(f) if v == 0)


def fiber_product(A: SkewBrace, B: SkewBrace, w: IsoclinismWitness) -> FiberProductResult:
    """C = {(a, b) : xi(Ann_n(A) a) = Ann_n(B) b} inside A × B."""
    n = w.n
    if not verify_isoclinism(A, B, w):
        raise WitnessInvalid("witness does not verify")
    sa, sb = _setup(A, n), _setup(B, n)
    P = direct_product(A, B)
    nb = B.order
    members = sorted(a * nb + b for a in range(A.order) for b in range(nb) if w.xi[sa.proj[a]] == sb.proj[b])
    C, emb = sub_brace(P, members)
    to_A = [x // nb for x in emb]
    to_B = [x % nb for x in emb]
    pos = {x: i for i, x in enumerate(emb)}
    N1 = frozenset(pos[u * nb] for u in sa.ann)
    N2 = frozenset(pos[u] for u in sb.ann)

    if len(emb) != A.order * len(sb.ann):
        raise InternalDisagreement("|C| != |A|·|Ann_n(B)|")
    for f, target, ker, name in ((to_A, A, N2, "A"), (to_B, B, N1, "B")):
        if not is_brace_hom(C, target, f) or len(set(f)) != target.order or _kernel(f) != ker:
            raise InternalDisagreement(f"projection C -> {name} is not onto with the expected kernel")
    for ker, target in ((N2, A), (N1, B)):
        Q, _ = quotient_brace(C, ker)
        if brace_isomorphism(Q, target) is None:
            raise InternalDisagreement("quotient of C is not isomorphic to the factor")
    g = gamma_term(C, n + 1)
    if g & N1 != {0} or g & N2 != {0}:
        raise InternalDisagreement("N_i meets Γ_{n+1}(C) nontrivially")
    wa = find_isoclinism(C, A, n)
    wb = find_isoclinism(C, B, n)
    if wa is None or wb is None:
        raise InternalDisagreement("C is not n-isoclinic to both factors")
    return FiberProductResult(C, emb, N1, N2, to_A, to_B, wa, wb)


# ---------------------------------------------------------------- embedding


@dataclass
class EmbeddingResult:
    W: SkewBrace
    rho_A: tuple[int, ...]
    rho_B: tuple[int, ...]
    K: Subset
    fiber: FiberProductResult


def embed_W(A: SkewBrace, B: SkewBrace, w: IsoclinismWitness) -> EmbeddingResult:
    """W = (C/N2 × C/Γ2(C)) / N with A and B embedded so that each image
    times Ann(W) is all of W, in both operations."""
    if w.n != 1:
        raise WitnessInvalid("the embedding needs a 1-isoclinism")
    fp = fiber_product(A, B, w)
    C = fp.C
    Q2, p2 = quotient_brace(C, fp.N2)
    QG, pg = quotient_brace(C, gamma_term(C, 2))
    Y = direct_product(Q2, QG)
    q = QG.order
    N = dot_span(Y, [p2[c] * q + pg[c] for c in fp.N1])
    if not is_ideal(Y, N):
        raise InternalDisagreement("N is not an ideal of Y")
    W, pW = quotient_brace(Y, N)

    rho_A = [-1] * A.order
    rho_B = [-1] * B.order
    for c in range(C.order):
        for rho, key, val in (
            (rho_A, fp.to_A[c], pW[p2[c] * q]),
            (rho_B, fp.to_B[c], pW[p2[c] * q + pg[c]]),
        ):
            if rho[key] == -1:
                rho[key] = val
            elif rho[key] != val:
                raise InternalDisagreement("embedding is not well defined")
    for rho, X in ((rho_A, A), (rho_B, B)):
        if len(set(rho)) != X.order or not is_brace_hom(X, W, rho):
            raise InternalDisagreement("embedding is not an injective brace homomorphism")

    annW = annihilator(W)
    whole = frozenset(range(W.order))
    for rho in (rho_A, rho_B):
        img = frozenset(rho)
        if dot_product_set(W, img, annW) != whole or circ_product_set(W, img, annW) != whole:
            raise InternalDisagreement("image times Ann(W) is not all of W")

    K = frozenset(pW[j] for j in range(q))
    Kb, _ = sub_brace(W, K)
    if len(gamma_term(Kb, 2)) != 1:
        raise InternalDisagreement("Γ2(K) is not trivial")
    for a in set(rho_A):
        for k in K:
            if W.dot.comm(a, k) != 0 or W.circ.comm(a, k) != 0:
                raise InternalDisagreement("ρ_A(A) and K do not commute")
    if group_n_isoclinic(A.circ, B.circ, 1) is None:
        raise InternalDisagreement("circle groups of an isoclinic pair are not isoclinic")
    return EmbeddingResult(W, tuple(rho_A), tuple(rho_B), K, fp)

