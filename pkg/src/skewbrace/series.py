"""Ideal series of a skew brace and the nilpotency classifications built on them."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .braces import IdealClass, SkewBrace, classify_subset, quotient_brace
from .errors import InternalDisagreement
from .groups import Subset, _span_rows, group_series


class SeriesKind(Enum):
    AnnUpper = "ann"
    GammaLower = "gamma"
    GammaBar = "gamma_bar"
    LeftAn = "left"
    RightAn = "right"
    StrongAn = "strong"
    StarSoluble = "star_soluble"
    LSeries = "L"
    KSeries = "K"


def _mask(n: int, S: Iterable[int]) -> np.ndarray:
    m = np.zeros(n, dtype=bool)
    m[list(S)] = True
    return m


def dot_span(A: SkewBrace, seeds: Iterable[int]) -> Subset:
    """Subgroup of (A,·) generated by the seeds."""
    return frozenset(_span_rows(A.dot.rows, seeds))


def _values(table: np.ndarray, I: Iterable[int], J: Iterable[int]) -> list[int]:
    I, J = sorted(set(I)), sorted(set(J))
    if not I or not J:
        return []
    return np.unique(table[np.ix_(I, J)]).tolist()


def star_ideal(A: SkewBrace, I: Iterable[int], J: Iterable[int]) -> Subset:
    """I*J = <x*y : x in I, y in J> in (A,·)."""
    return dot_span(A, _values(A.star_table, I, J))


def dot_commutator(A: SkewBrace, I: Iterable[int], J: Iterable[int]) -> Subset:
    return dot_span(A, _values(A.dot.comm_table, I, J))


def annihilator(A: SkewBrace) -> Subset:
    """Ker λ ∩ Z(A,·) ∩ Z(A,∘)."""
    n = A.order
    ker = np.all(A.lam == np.arange(n)[None, :], axis=1)
    zd = np.all(A.dot.mul == A.dot.mul.T, axis=1)
    zc = np.all(A.circ.mul == A.circ.mul.T, axis=1)
    return frozenset(np.nonzero(ker & zd & zc)[0].tolist())


def ann_next_by_elements(A: SkewBrace, prev: Subset) -> Subset:
    """{a : a*b, b*a, [a,b] in prev for all b}."""
    m = _mask(A.order, prev)
    s = A.star_table
    ok = m[s].all(axis=1) & m[s.T].all(axis=1) & m[A.dot.comm_table].all(axis=1)
    return frozenset(np.nonzero(ok)[0].tolist())


def ann_next_by_quotient(A: SkewBrace, prev: Subset) -> Subset:
    """Preimage of Ann(A/prev)."""
    Q, proj = quotient_brace(A, prev)
    annq = annihilator(Q)
    return frozenset(x for x in range(A.order) if proj[x] in annq)


def ann_series(A: SkewBrace) -> list[Subset]:
    """[Ann_0 = {0}, Ann_1, ...] until stable; two methods, required to agree."""
    out = [frozenset({0})]
    while True:
        a = ann_next_by_elements(A, out[-1])
        b = ann_next_by_quotient(A, out[-1])
        if a != b:
            raise InternalDisagreement(f"Ann_{len(out)} differs between the two methods")
        if a == out[-1]:
            return out
        out.append(a)


def ann_term(A: SkewBrace, n: int, series: list[Subset] | None = None) -> Subset:
    s = ann_series(A) if series is None else series
    return s[min(n, len(s) - 1)]


def _descend(first: Subset, step) -> list[Subset]:
    out = [first]
    while True:
        nxt = step(out[-1])
        if nxt == out[-1]:
            return out
        out.append(nxt)


def gamma_series(A: SkewBrace) -> list[Subset]:
    """[Γ_1 = A, Γ_2, ...]: Γ_n = <A*Γ_{n-1}, Γ_{n-1}*A, [A, Γ_{n-1}]>."""
    whole = frozenset(range(A.order))

    def step(G):
        seeds = _values(A.star_table, whole, G) + _values(A.star_table, G, whole)
        seeds += _values(A.dot.comm_table, whole, G)
        return dot_span(A, seeds)

    return _descend(whole, step)


def gamma_bar_series(A: SkewBrace) -> list[Subset]:
    """Γ̄_n = <A*Γ̄_{n-1}, [A, Γ̄_{n-1}]>."""
    whole = frozenset(range(A.order))

    def step(G):
        return dot_span(A, _values(A.star_table, whole, G) + _values(A.dot.comm_table, whole, G))

    return _descend(whole, step)


def left_series(A: SkewBrace) -> list[Subset]:
    """A^1 = A, A^n = A*A^{n-1}."""
    whole = frozenset(range(A.order))
    return _descend(whole, lambda X: star_ideal(A, whole, X))


def right_series(A: SkewBrace) -> list[Subset]:
    """A^(1) = A, A^(n) = A^(n-1)*A."""
    whole = frozenset(range(A.order))
    return _descend(whole, lambda X: star_ideal(A, X, whole))


def star_soluble_series(A: SkewBrace) -> list[Subset]:
    """A_1 = A, A_n = A_{n-1}*A_{n-1}."""
    whole = frozenset(range(A.order))
    return _descend(whole, lambda X: star_ideal(A, X, X))


def strong_series(A: SkewBrace) -> list[Subset]:
    """A^[1] = A, A^[n] = <A^[i]*A^[n-i] : 1 <= i < n>.

    The recursion looks at every earlier term, so a single repeat does not
    prove stability. If the terms with indices m..2m coincide then every later
    term equals them (each generating product of the next term is squeezed
    between products of the current one), which is the stopping rule used here.
    """
    whole = frozenset(range(A.order))
    X = [None, whole]  # 1-based
    cache: dict = {}

    def prod(i, j):
        key = (X[i], X[j])
        if key not in cache:
            cache[key] = _values(A.star_table, X[i], X[j])
        return cache[key]

    while True:
        n = len(X)
        seeds: list[int] = []
        for i in range(1, n):
            seeds += prod(i, n - i)
        X.append(dot_span(A, seeds))
        last = len(X) - 1
        if len(X[last]) == 1:
            break
        # stop once X[m] == ... == X[2m] with 2m == last
        if last % 2 == 0 and all(X[k] == X[last] for k in range(last // 2, last + 1)):
            break
    out = X[1:]
    while len(out) > 1 and out[-1] == out[-2]:
        out.pop()
    return out


def circ_lower_central(A: SkewBrace) -> list[Subset]:
    return group_series(A.circ, "lower_central")


def _term(series: list[Subset], k: int) -> Subset:
    """Term k (1-based) of a descending series that stabilizes at its last entry."""
    return series[min(k - 1, len(series) - 1)]


def k_term(A: SkewBrace, n: int, circ_series: list[Subset] | None = None) -> Subset:
    """K_n = <λ_u(b) b⁻¹ : u in γ_{n-1}(A,∘), b in A> for n >= 2."""
    cs = circ_lower_central(A) if circ_series is None else circ_series
    U = _term(cs, n - 1)
    return dot_span(A, _values(A.star_table, U, range(A.order)))


def k_series(A: SkewBrace) -> list[Subset]:
    """[K_1 := A, K_2, K_3, ...]; K_n is constant once γ_{n-1}(A,∘) is."""
    cs = circ_lower_central(A)
    out = [frozenset(range(A.order))]
    out += [k_term(A, n, cs) for n in range(2, len(cs) + 2)]
    while len(out) > 1 and out[-1] == out[-2]:
        out.pop()
    return out


def l_series(A: SkewBrace) -> list[Subset]:
    """L_1 = A, L_n = <K_n, λ_a(v)v⁻¹ (a in A, v in L_{n-1}), [A, L_{n-1}]>.

    Stops when L_n = L_{n-1} and K has stabilized, since then every later term
    is computed from the same data.
    """
    cs = circ_lower_central(A)
    whole = frozenset(range(A.order))
    out = [whole]
    n = 2
    while True:
        prev = out[-1]
        seeds = list(k_term(A, n, cs))
        seeds += _values(A.star_table, whole, prev)
        seeds += _values(A.dot.comm_table, whole, prev)
        nxt = dot_span(A, seeds)
        k_stable = n - 1 >= len(cs)
        if nxt == prev and k_stable:
            return out
        out.append(nxt)
        n += 1


def compute_series(A: SkewBrace, kind: SeriesKind | str) -> list[Subset]:
    """The requested chain, computed until it stabilizes.

    AnnUpper ascends from {0}; every other kind descends from A. For the L
    series the list may contain consecutive equal terms while K is still
    moving; use :func:`series_at` for indexed access.
    """
    kind = SeriesKind(kind) if not isinstance(kind, SeriesKind) else kind
    return {
        SeriesKind.AnnUpper: ann_series,
        SeriesKind.GammaLower: gamma_series,
        SeriesKind.GammaBar: gamma_bar_series,
        SeriesKind.LeftAn: left_series,
        SeriesKind.RightAn: right_series,
        SeriesKind.StrongAn: strong_series,
        SeriesKind.StarSoluble: star_soluble_series,
        SeriesKind.LSeries: l_series,
        SeriesKind.KSeries: k_series,
    }[kind](A)


def series_at(series: list[Subset], k: int, kind: SeriesKind = SeriesKind.GammaLower) -> Subset:
    """Term k: Ann_k for AnnUpper (0-based), otherwise the 1-based term."""
    if kind == SeriesKind.AnnUpper:
        return series[min(k, len(series) - 1)]
    return _term(series, k)


def gamma_term(A: SkewBrace, n: int) -> Subset:
    return _term(gamma_series(A), n)


@dataclass(frozen=True)
class NilpotencyReport:
    left_nilpotent: int | None
    right_nilpotent: int | None
    strongly_nilpotent: int | None
    star_soluble: int | None
    centrally_nilpotent: int | None

    def flags(self) -> tuple[bool, ...]:
        return tuple(
            x is not None
            for x in (
                self.left_nilpotent,
                self.right_nilpotent,
                self.strongly_nilpotent,
                self.star_soluble,
                self.centrally_nilpotent,
            )
        )


def _vanishing_class(series: list[Subset]) -> int | None:
    """c such that term c+1 (1-based) is the first trivial term, or None."""
    for k, t in enumerate(series, start=1):
        if len(t) == 1:
            return k - 1
    return None


def classify_nilpotency(A: SkewBrace) -> NilpotencyReport:
    """Classes follow the group convention: class c means the (c+1)-th term of
    A^n, A^(n), A^[n] or A_n is trivial (and no earlier one), and for central
    nilpotency the least c with Ann_c = A. The order-1 brace has class 0."""
    ann = ann_series(A)
    central = len(ann) - 1 if len(ann[-1]) == A.order else None
    return NilpotencyReport(
        left_nilpotent=_vanishing_class(left_series(A)),
        right_nilpotent=_vanishing_class(right_series(A)),
        strongly_nilpotent=_vanishing_class(strong_series(A)),
        star_soluble=_vanishing_class(star_soluble_series(A)),
        centrally_nilpotent=central,
    )


def is_ideal(A: SkewBrace, S: Iterable[int]) -> bool:
    return classify_subset(A, S) == IdealClass.Ideal
