"""Skew left braces on a common index set, with the identity at 0."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from enum import IntEnum

import numpy as np

from .errors import (
    BraceAxiomFails,
    CircNotGroup,
    DotNotGroup,
    InternalDisagreement,
    NotClosed,
    NotIdeal,
    ValidationError,
)
from .groups import GroupTable, Subset, cosets, direct_product_groups, is_normal, is_subgroup, validate_group


class SkewBrace:
    """Two group tables on range(order) linked by a∘(b·c) = (a∘b)·a⁻¹·(a∘c).

    Construct through :func:`validate_brace`, or directly when the tables are
    known to be correct (internal constructions).
    """

    __slots__ = ("order", "dot", "circ", "lam", "lam_rows", "_star", "_sig")

    def __init__(self, dot: GroupTable, circ: GroupTable):
        if dot.order != circ.order:
            raise ValidationError("dot and circ tables have different orders")
        self.order = dot.order
        self.dot = dot
        self.circ = circ
        inv = np.array(dot.inv)
        lam = dot.mul[inv[:, None], circ.mul]
        lam.setflags(write=False)
        self.lam = lam
        self.lam_rows = lam.tolist()
        self._star = None
        self._sig = None

    def __eq__(self, other):
        return isinstance(other, SkewBrace) and self.dot == other.dot and self.circ == other.circ

    def __hash__(self):
        return hash((self.dot.mul.tobytes(), self.circ.mul.tobytes()))

    def __repr__(self):
        return f"SkewBrace(order={self.order})"

    @property
    def star_table(self) -> np.ndarray:
        """star[a, b] = λ_a(b)·b⁻¹."""
        if self._star is None:
            inv = np.array(self.dot.inv)
            s = self.dot.mul[self.lam, inv[None, :]]
            s.setflags(write=False)
            self._star = s
        return self._star

    def signature(self) -> list[tuple[int, int, int]]:
        """Per-element (dot order, circ order, number of fixed points of λ_a)."""
        if self._sig is None:
            fixed = (self.lam == np.arange(self.order)[None, :]).sum(axis=1).tolist()
            self._sig = list(zip(self.dot.element_orders, self.circ.element_orders, fixed))
        return self._sig

    def circ_inv(self, a: int) -> int:
        return self.circ.inv[a]


class IdealClass(IntEnum):
    NotLeftIdeal = 0
    LeftIdeal = 1
    StrongLeftIdeal = 2
    Ideal = 3


def _axiom_failure(dot: np.ndarray, circ: np.ndarray) -> tuple[int, int, int] | None:
    n = dot.shape[0]
    inv = np.argmin(dot, axis=1)  # position of 0 in each row
    step = max(1, 2_000_000 // (n * n))
    for start in range(0, n, step):
        a = np.arange(start, min(n, start + step))
        left = circ[a[:, None, None], dot[None, :, :]]
        ab_ainv = dot[circ[a], inv[a][:, None]]  # (a∘b)·a⁻¹
        right = dot[ab_ainv[:, :, None], circ[a][:, None, :]]
        bad = np.argwhere(left != right)
        if len(bad):
            i, b, c = bad[0]
            return int(a[i]), int(b), int(c)
    return None


def validate_brace(dot_raw, circ_raw) -> SkewBrace:
    try:
        dot = validate_group(dot_raw)
    except ValidationError as exc:
        raise DotNotGroup(str(exc)) from exc
    try:
        circ = validate_group(circ_raw)
    except ValidationError as exc:
        raise CircNotGroup(str(exc)) from exc
    if dot.order != circ.order:
        raise ValidationError("dot and circ tables have different orders")
    bad = _axiom_failure(dot.mul, circ.mul)
    if bad is not None:
        raise BraceAxiomFails(bad)
    return SkewBrace(dot, circ)


def lambda_of(A: SkewBrace, a: int) -> tuple[int, ...]:
    return tuple(A.lam_rows[a])


def star(A: SkewBrace, a: int, b: int) -> int:
    return A.dot.rows[A.lam_rows[a][b]][A.dot.inv[b]]


def comm(A: SkewBrace, kind: str, a: int, b: int) -> int:
    """[a, b] in the dot group (a b a⁻¹ b⁻¹) or the circ group (a∘b∘ā∘b̄)."""
    if kind == "dot":
        return A.dot.comm(a, b)
    if kind == "circ":
        return A.circ.comm(a, b)
    raise ValueError(f"unknown commutator kind {kind!r}")


def is_symmetric(A: SkewBrace) -> bool:
    """(A, ∘, ·) is a brace, checked two ways that must agree."""
    by_axiom = _axiom_failure(A.circ.mul, A.dot.mul) is None
    # λ_{a·b} = λ_{b∘a}
    by_lambda = bool(np.array_equal(A.lam[A.dot.mul], A.lam[A.circ.mul.T]))
    if by_axiom != by_lambda:
        raise InternalDisagreement("symmetric-brace criteria disagree")
    return by_axiom


def trivial_brace(G: GroupTable) -> SkewBrace:
    return SkewBrace(G, G)


def almost_trivial_brace(G: GroupTable) -> SkewBrace:
    return SkewBrace(G, GroupTable(G.mul.T))


def make_brace(kind: str, G: GroupTable) -> SkewBrace:
    if kind == "trivial":
        return trivial_brace(G)
    if kind == "almost_trivial":
        return almost_trivial_brace(G)
    raise ValueError(f"unknown brace kind {kind!r}")


def order_one_brace() -> SkewBrace:
    g = GroupTable([[0]])
    return SkewBrace(g, g)


def direct_product(A: SkewBrace, B: SkewBrace) -> SkewBrace:
    """Componentwise operations; (a, b) has index a*|B| + b."""
    return SkewBrace(direct_product_groups(A.dot, B.dot), direct_product_groups(A.circ, B.circ))


def is_left_ideal(A: SkewBrace, S: Iterable[int]) -> bool:
    S = frozenset(S)
    if not is_subgroup(A.dot, S):
        return False
    idx = sorted(S)
    mask = np.zeros(A.order, dtype=bool)
    mask[idx] = True
    return bool(mask[A.lam[:, idx]].all())


def classify_subset(A: SkewBrace, S: Iterable[int]) -> IdealClass:
    S = frozenset(S)
    if not is_left_ideal(A, S):
        return IdealClass.NotLeftIdeal
    if not is_normal(A.dot, S):
        return IdealClass.LeftIdeal
    if not is_normal(A.circ, S):
        return IdealClass.StrongLeftIdeal
    return IdealClass.Ideal


def sub_brace(A: SkewBrace, S: Iterable[int]) -> tuple[SkewBrace, list[int]]:
    """Restrict to a sub-brace; element i of the result is members[i]."""
    S = frozenset(S)
    if not (is_subgroup(A.dot, S) and is_subgroup(A.circ, S)):
        raise NotClosed("subset is not closed under both operations")
    members = sorted(S)
    pos = np.full(A.order, -1, dtype=np.int64)
    pos[members] = np.arange(len(members))
    ix = np.ix_(members, members)
    return SkewBrace(GroupTable(pos[A.dot.mul[ix]]), GroupTable(pos[A.circ.mul[ix]])), members


def quotient_brace(A: SkewBrace, I: Iterable[int]) -> tuple[SkewBrace, list[int]]:
    """A/I for an ideal I. Cosets are numbered by their least element; the
    projection maps each element to its coset index."""
    I = frozenset(I)
    if classify_subset(A, I) != IdealClass.Ideal:
        raise NotIdeal("subset is not an ideal")
    proj, reps = cosets(A.order, A.dot.rows, I)
    p = np.array(proj)
    ix = np.ix_(reps, reps)
    return SkewBrace(GroupTable(p[A.dot.mul[ix]]), GroupTable(p[A.circ.mul[ix]])), proj


def coset_reps(A: SkewBrace, proj: Sequence[int]) -> list[int]:
    reps = [-1] * (max(proj) + 1)
    for x, k in enumerate(proj):
        if reps[k] < 0:
            reps[k] = x
    return reps


def is_brace_hom(A: SkewBrace, B: SkewBrace, f: Sequence[int]) -> bool:
    f = np.asarray(f)
    return bool(
        np.array_equal(f[A.dot.mul], B.dot.mul[f[:, None], f[None, :]])
        and np.array_equal(f[A.circ.mul], B.circ.mul[f[:, None], f[None, :]])
    )


def image(f: Sequence[int], S: Iterable[int]) -> Subset:
    return frozenset(f[x] for x in S)


def dot_product_set(A: SkewBrace, X: Iterable[int], Y: Iterable[int]) -> Subset:
    X, Y = sorted(set(X)), sorted(set(Y))
    return frozenset(np.unique(A.dot.mul[np.ix_(X, Y)]).tolist())


def circ_product_set(A: SkewBrace, X: Iterable[int], Y: Iterable[int]) -> Subset:
    X, Y = sorted(set(X)), sorted(set(Y))
    return frozenset(np.unique(A.circ.mul[np.ix_(X, Y)]).tolist())
