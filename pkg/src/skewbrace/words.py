"""Brace commutator words: evaluation, value sets, skeleton ideals and the
I_n membership tests.

A word is a string over "g", "G", "s", "S":

    g(a, b) = [a, b]   G(a, b) = [b, a]   s(a, b) = a*b   S(a, b) = b*a

and is evaluated right-nested: m(a1, ..., a_{r+1}) = e1(a1, e2(a2, ... er(ar, a_{r+1}))).
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from itertools import product

import numpy as np

from .braces import SkewBrace
from .config import budget
from .errors import ArityMismatch, BudgetExceeded, InternalDisagreement
from .groups import Subset, cosets
from .series import ann_series, dot_span, gamma_term

SYMBOLS = "sSgG"  # degree-lexicographic order: * < *̄ < γ· < γ̄·


def op_tables(A: SkewBrace) -> dict[str, np.ndarray]:
    c = A.dot.comm_table
    s = A.star_table
    return {"g": c, "G": c.T, "s": s, "S": s.T}


def check_word(m: str) -> str:
    if not m or any(ch not in SYMBOLS for ch in m):
        raise ValueError(f"invalid word {m!r}: use a nonempty string over g, G, s, S")
    return m


def word_key(m: str) -> tuple:
    return (len(m), tuple(SYMBOLS.index(ch) for ch in m))


def words_of_degree(r: int) -> list[str]:
    """All 4^r words of degree r in degree-lexicographic order."""
    return ["".join(p) for p in product(SYMBOLS, repeat=r)]


def eval_word(A: SkewBrace, m: str, args: Sequence[int]) -> int:
    check_word(m)
    if len(args) != len(m) + 1:
        raise ArityMismatch(f"word of degree {len(m)} needs {len(m) + 1} arguments, got {len(args)}")
    T = op_tables(A)
    v = args[-1]
    for sym, a in zip(reversed(m), reversed(args[:-1])):
        v = int(T[sym][a, v])
    return v


def value_tensor(A: SkewBrace, m: str, domains: Sequence[Sequence[int]]) -> np.ndarray:
    """m evaluated on the product of the given argument domains."""
    T = op_tables(A)
    V = np.asarray(domains[-1], dtype=np.int64)
    for sym, dom in zip(reversed(m), reversed(domains[:-1])):
        d = np.asarray(dom, dtype=np.int64)
        V = T[sym][d.reshape((-1,) + (1,) * V.ndim), V[None]]
    return V


def value_sets(A: SkewBrace, r: int) -> list[Subset]:
    """[S_0 = A, S_1, ..., S_r].

    Computed recursively: S_k = {e(a, v) : e in X, a in A, v in S_{k-1}}, which is
    exactly the set of degree-k word values since the innermost k-1 letters
    form a word of degree k-1.
    """
    T = op_tables(A)
    out = [frozenset(range(A.order))]
    for _ in range(r):
        prev = np.array(sorted(out[-1]), dtype=np.int64)
        vals = np.unique(np.concatenate([T[s][:, prev].ravel() for s in SYMBOLS]))
        out.append(frozenset(vals.tolist()))
    return out


def value_set(A: SkewBrace, r: int) -> Subset:
    if r < 0:
        raise ValueError("degree must be non-negative")
    return value_sets(A, r)[r]


def value_set_direct(A: SkewBrace, r: int) -> Subset:
    """S_r by evaluating every word on every argument tuple (budgeted)."""
    cost = 4**r * A.order ** (r + 1)
    if r > budget().max_degree or cost > budget().eval_cap:
        raise BudgetExceeded(f"direct value set of degree {r} at order {A.order} costs {cost}")
    dom = [range(A.order)] * (r + 1)
    out: set[int] = set()
    for m in words_of_degree(r):
        out.update(np.unique(value_tensor(A, m, dom)).tolist())
    return frozenset(out)


def skeleton_ideal(A: SkewBrace, t: int) -> Subset:
    """A_(t): the dot subgroup generated by all word values of degree >= t.

    Since S_k is contained in S_t for k >= t (fill the last argument of a degree
    t word with a value of degree k - t), this is <S_t>.
    """
    if t <= 0:
        return frozenset(range(A.order))
    return dot_span(A, value_set(A, t))


def skeleton_ideal_closure(A: SkewBrace, t: int) -> Subset:
    """H := <S_t>, then repeatedly adjoin e(a, h) for h in H and re-close.

    Always contains :func:`skeleton_ideal`; kept to compare the two readings.
    """
    if t <= 0:
        return frozenset(range(A.order))
    T = op_tables(A)
    H = dot_span(A, value_set(A, t))
    while True:
        idx = np.array(sorted(H), dtype=np.int64)
        vals = np.unique(np.concatenate([T[s][:, idx].ravel() for s in SYMBOLS]))
        nxt = dot_span(A, list(H) + vals.tolist())
        if nxt == H:
            return H
        H = nxt


def skeleton_chain(A: SkewBrace, tmax: int) -> list[Subset]:
    return [skeleton_ideal(A, t) for t in range(tmax + 1)]


def word_ann_series(A: SkewBrace, tmax: int) -> list[Subset]:
    """[W_0 = {0}, ..., W_tmax] with W_t = {u : e(a, u) in W_{t-1} for all e, a}."""
    T = op_tables(A)
    out = [frozenset({0})]
    for _ in range(tmax):
        mask = np.zeros(A.order, dtype=bool)
        mask[list(out[-1])] = True
        ok = np.ones(A.order, dtype=bool)
        for s in SYMBOLS:
            ok &= mask[T[s]].all(axis=0)
        out.append(frozenset(np.nonzero(ok)[0].tolist()))
    return out


def ann_membership_words(A: SkewBrace, u: int, t: int) -> bool:
    """True iff every degree-t word with last argument u evaluates to 0."""
    return u in word_ann_series(A, t)[t]


def ann_membership_direct(A: SkewBrace, u: int, t: int) -> bool:
    """The same test by enumerating all words and argument tuples."""
    dom = [range(A.order)] * t + [[u]]
    return all(not value_tensor(A, m, dom).any() for m in words_of_degree(t))


def fast_i2_witness(A: SkewBrace) -> tuple[int, int] | None:
    """(u, v) with u in Ann_2, v in Γ_2 and v*u != 0, or None if there is none."""
    ann = ann_series(A)
    U = sorted(ann[min(2, len(ann) - 1)])
    V = sorted(gamma_term(A, 2))
    sub = A.star_table[np.ix_(V, U)]
    bad = np.argwhere(sub != 0)
    if len(bad) == 0:
        return None
    i, j = bad[0]
    return U[j], V[i]


def _general_in_class(A: SkewBrace, n: int, ann: list[Subset]) -> bool:
    T = op_tables(A)
    S = value_sets(A, n - 1)

    def level(k):
        return ann[min(k, len(ann) - 1)]

    for s in range(1, n + 1):
        U = sorted(level(s))
        for r in range(1, s + 1):
            V = sorted(S[r - 1])
            target = np.zeros(A.order, dtype=bool)
            target[list(level(s - r))] = True
            for sym in SYMBOLS:
                if not target[T[sym][np.ix_(U, V)]].all():
                    return False
    return True


def in_class_In(A: SkewBrace, n: int) -> bool:
    """Membership in I_n through the Ann-level criterion; for n = 2 the fast
    *̄ criterion is also evaluated and must agree."""
    if n < 1:
        raise ValueError("n must be at least 1")
    ann = ann_series(A)
    res = _general_in_class(A, n, ann)
    if n == 2:
        fast = fast_i2_witness(A) is None
        if fast != res:
            raise InternalDisagreement("fast I_2 criterion disagrees with the general test")
    return res


def in_class_In_bar(A: SkewBrace, n: int) -> bool:
    """Membership in I_r for every r <= n."""
    return all(in_class_In(A, r) for r in range(1, n + 1))


def phi_well_defined_bruteforce(A: SkewBrace, n: int) -> bool:
    """Check directly that every degree-n word value depends only on the
    Ann_n-cosets of its arguments."""
    ann = ann_series(A)
    N = ann[min(n, len(ann) - 1)]
    if len(N) == A.order:
        return True
    cost = 4**n * A.order ** (n + 1)
    if cost > budget().eval_cap:
        raise BudgetExceeded(f"brute-force I_{n} test at order {A.order} costs {cost}")

    proj, reps = cosets(A.order, A.dot.rows, N)
    rep_of = np.array([reps[p] for p in proj], dtype=np.int64)
    T = op_tables(A)
    full = np.arange(A.order, dtype=np.int64)

    def rec(V: np.ndarray, depth: int) -> bool:
        if depth == n:
            return bool(np.array_equal(V, V[np.ix_(*([rep_of] * (n + 1)))]))
        for sym in SYMBOLS:
            W = T[sym][full.reshape((-1,) + (1,) * V.ndim), V[None]]
            if not rec(W, depth + 1):
                return False
        return True

    return rec(full, 0)


def iter_words(max_degree: int) -> Iterator[str]:
    for r in range(1, max_degree + 1):
        yield from words_of_degree(r)


def values_of(A: SkewBrace, words: Iterable[str], domains) -> set[int]:
    out: set[int] = set()
    for m in words:
        out.update(np.unique(value_tensor(A, m, domains)).tolist())
    return out
