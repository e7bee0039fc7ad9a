"""The group Λ_A = (A,·) ⋊ (A,∘) with action λ^op_a = ι_a ∘ λ_a."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .braces import SkewBrace, is_brace_hom
from .config import budget
from .errors import BudgetExceeded, HypothesisUnmet, InternalDisagreement, NotBraceHom
from .groups import (
    Bijection,
    GroupTable,
    group_n_isoclinic,
    is_homomorphism,
    lower_central,
    upper_central,
    validate_group,
)
from .isoclinism import IsoclinismWitness, find_isoclinism
from .series import ann_term, gamma_term, l_series, series_at
from .words import in_class_In, skeleton_ideal


def lambda_op_table(A: SkewBrace) -> np.ndarray:
    """T[a, b] = a·λ_a(b)·a⁻¹."""
    d = A.dot.mul
    inv = np.array(A.dot.inv)
    return d[d[np.arange(A.order)[:, None], A.lam], inv[:, None]]


def lambda_op(A: SkewBrace, a: int) -> Bijection:
    """λ^op_a, checked to be an automorphism of (A,·)."""
    row = lambda_op_table(A)[a]
    if not is_homomorphism(A.dot, A.dot, row) or len(set(row.tolist())) != A.order:
        raise InternalDisagreement(f"λ^op_{a} is not an automorphism of (A,·)")
    return tuple(row.tolist())


@dataclass
class LambdaGroup:
    """(a, b) is stored at index a·|A| + b."""

    base: SkewBrace
    group: GroupTable

    def pair(self, x: int) -> tuple[int, int]:
        return divmod(x, self.base.order)

    def index(self, a: int, b: int) -> int:
        return a * self.base.order + b

    def embed_dot(self) -> list[int]:
        return [a * self.base.order for a in range(self.base.order)]

    def embed_circ(self) -> list[int]:
        return list(range(self.base.order))

    def subset(self, X, Y) -> frozenset[int]:
        """{(x, y) : x in X, y in Y}."""
        n = self.base.order
        return frozenset(x * n + y for x in X for y in Y)


def build_lambda_group(A: SkewBrace) -> LambdaGroup:
    """Λ_A with (a1, b1)(a2, b2) = (a1·λ^op_{b1}(a2), b1∘b2)."""
    n = A.order
    if n > budget().lambda_max:
        raise BudgetExceeded(f"Λ_A for |A| = {n} exceeds SKEWBRACE_LAMBDA_MAX={budget().lambda_max}")
    T = lambda_op_table(A)
    # a ↦ λ^op_a is a homomorphism (A,∘) -> Aut(A,·)
    if not np.array_equal(T[A.circ.mul], T[np.arange(n)[:, None, None], T[None, :, :]]):
        raise InternalDisagreement("a ↦ λ^op_a is not a homomorphism from (A,∘)")
    a1 = np.arange(n)[:, None, None, None]
    b1 = np.arange(n)[None, :, None, None]
    a2 = np.arange(n)[None, None, :, None]
    b2 = np.arange(n)[None, None, None, :]
    first = A.dot.mul[a1, T[b1, a2]]
    second = A.circ.mul[b1, b2]
    mul = (first * n + second).reshape(n * n, n * n)
    G = validate_group(mul)
    L = LambdaGroup(A, G)
    if not is_homomorphism(A.dot, G, L.embed_dot()) or not is_homomorphism(A.circ, G, L.embed_circ()):
        raise InternalDisagreement("the factor embeddings are not homomorphisms")
    return L


def gamma_decomposition_sets(A: SkewBrace, n: int, Lam: LambdaGroup | None = None):
    """(γ_n(Λ_A), L_n(A) ⋊ γ_n(A,∘)) as sets of Λ indices."""
    Lam = build_lambda_group(A) if Lam is None else Lam
    left = lower_central(Lam.group, n)
    right = Lam.subset(series_at(l_series(A), n), lower_central(A.circ, n))
    return left, right


def verify_gamma_decomposition(A: SkewBrace, n: int) -> bool:
    """γ_n(Λ_A) = L_n(A) ⋊ γ_n(A,∘); also asserts Λ_{Ann_n(A)} ⊆ Z_n(Λ_A)."""
    Lam = build_lambda_group(A)
    left, right = gamma_decomposition_sets(A, n, Lam)
    ann = ann_term(A, n)
    if not Lam.subset(ann, ann) <= upper_central(Lam.group, n):
        raise InternalDisagreement(f"Λ of Ann_{n}(A) is not inside Z_{n}(Λ_A)")
    return left == right


def lambda_functor_map(A: SkewBrace, B: SkewBrace, f: Sequence[int]) -> list[int]:
    """Λ_f: (a, b) ↦ (f(a), f(b)), checked to be a group homomorphism."""
    if len(f) != A.order or not is_brace_hom(A, B, f):
        raise NotBraceHom("map is not a brace homomorphism")
    LA, LB = build_lambda_group(A), build_lambda_group(B)
    n, m = A.order, B.order
    out = [f[x // n] * m + f[x % n] for x in range(n * n)]
    if not is_homomorphism(LA.group, LB.group, out):
        raise InternalDisagreement("Λ_f is not a group homomorphism")
    return out


@dataclass
class TheoremEReport:
    n: int
    skeleton_condition: tuple[bool, bool]
    brace_witness: IsoclinismWitness | None
    group_witness: tuple | None
    contradiction: bool


def skeleton_condition(A: SkewBrace, n: int) -> bool:
    """A_(n) = Γ_{n+1}(A)."""
    return skeleton_ideal(A, n) == gamma_term(A, n + 1)


def theorem_e_check(A: SkewBrace, B: SkewBrace, n: int = 1, override: bool = False) -> TheoremEReport:
    """For n-isoclinic A, B in I_n with A_(n) = Γ_{n+1} on both sides, search
    for an n-isoclinism of Λ_A and Λ_B.

    ``override`` skips the skeleton condition (for probing); a failed search
    is only flagged as a contradiction when every hypothesis holds.
    """
    for X, name in ((A, "A"), (B, "B")):
        if not in_class_In(X, n):
            raise HypothesisUnmet(f"{name} is not in I_{n}")
    cond = (skeleton_condition(A, n), skeleton_condition(B, n))
    if not all(cond) and not override:
        raise HypothesisUnmet("skeleton condition A_(n) = Γ_{n+1}(A) fails for " + ("A" if not cond[0] else "B"))
    w = find_isoclinism(A, B, n)
    if w is None:
        raise HypothesisUnmet("A and B are not n-isoclinic")
    gw = group_n_isoclinic(build_lambda_group(A).group, build_lambda_group(B).group, n)
    return TheoremEReport(n, cond, w, gw, gw is None and all(cond))
