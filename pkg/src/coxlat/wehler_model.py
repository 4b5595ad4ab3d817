"""Néron-Severi lattice of a generic Wehler variety in the h-basis.

A Wehler variety of dimension n sits in (P^1)^{n+1}; its Néron-Severi group
has basis h_1..h_{n+1} and the n+1 covering involutions act on it by the
dual generator matrices M_{n+1,j}. The nef cone is the nonnegative orthant,
and the chamber vertex c_j corresponds to h_j.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .coxeter_rep import DUAL, ReducedWord, apply_generator
from .errors import InvalidInput, NotEffectiveLike
from .exact_linalg import IntegerMatrix
from .tits_cone import NotReducible, ReductionCertificate


@dataclass(frozen=True)
class WehlerContext:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInput(f"Wehler dimension must be >= 2, got {self.n}")

    @property
    def rank(self) -> int:
        return self.n + 1


@dataclass(frozen=True)
class NSClass:
    n: int
    coeffs: tuple[int, ...]
    s: int = field(init=False)

    def __post_init__(self):
        coeffs = tuple(int(x) for x in self.coeffs)
        if len(coeffs) != self.n + 1:
            raise InvalidInput(f"{len(coeffs)} coefficients for dimension {self.n}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "s", sum(coeffs))

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> "NSClass":
        return cls(int(data["n"]), tuple(data["coeffs"]))


class Verdict(enum.Enum):
    MEMBER = "Member"
    NON_MEMBER = "NonMember"


@dataclass(frozen=True)
class Membership:
    verdict: Verdict
    certificate: ReductionCertificate | None = None
    reason: str = ""

    @property
    def is_member(self) -> bool:
        return self.verdict is Verdict.MEMBER

    def to_json(self) -> dict:
        out = {"verdict": self.verdict.value}
        if self.certificate is not None:
            out.update(self.certificate.to_json())
        if self.reason:
            out["reason"] = self.reason
        return out


def _as_class(ctx: WehlerContext, D) -> NSClass:
    if isinstance(D, NSClass):
        if D.n != ctx.n:
            raise InvalidInput(f"class of dimension {D.n} in context of dimension {ctx.n}")
        return D
    return NSClass(ctx.n, tuple(D))


def involution_action(ctx: WehlerContext, j: int, D) -> NSClass:
    """iota_j^*: a_j -> -a_j and a_k -> a_k + 2 a_j for k != j."""
    D = _as_class(ctx, D)
    if not 1 <= j <= ctx.rank:
        raise IndexError(f"involution index {j} out of range 1..{ctx.rank}")
    return NSClass(ctx.n, apply_generator(j, D.coeffs, DUAL))


def is_nef(ctx: WehlerContext, D) -> bool:
    return all(a >= 0 for a in _as_class(ctx, D).coeffs)


@dataclass(frozen=True)
class Violation:
    i: int
    j: int

    def __bool__(self):
        return False


def effective_pairwise_check(ctx: WehlerContext, D):
    """``True`` if a_i + a_j >= 0 for all i != j, else the first failing pair."""
    a = _as_class(ctx, D).coeffs
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if a[i] + a[j] < 0:
                return Violation(i + 1, j + 1)
    return True


def make_nef(ctx: WehlerContext, D, max_steps: int | None = None):
    """Descend D into the nef cone by the involution with the negative coefficient.

    Returns a certificate whose word w satisfies rep_matrix(w, DUAL) @ terminal == D,
    or :class:`NotReducible`. Raises :class:`NotEffectiveLike` if D fails the
    pairwise test up front.
    """
    D = _as_class(ctx, D)
    bad = effective_pairwise_check(ctx, D)
    if not bad:
        raise NotEffectiveLike(bad.i, bad.j, D.coeffs)
    if max_steps is None:
        max_steps = 10 * (1 + abs(D.s))
    cur = D.coeffs
    letters: list[int] = []
    ledger: list[tuple[int, int, int]] = []
    step = 0
    while True:
        neg = [i for i, a in enumerate(cur, 1) if a < 0]
        if not neg:
            break
        if len(neg) > 1 or not effective_pairwise_check(ctx, cur):
            return NotReducible(f"pairwise condition broke at step {step}: {list(cur)}")
        if step >= max_steps:
            return NotReducible("step budget exhausted")
        i = neg[0]
        ledger.append((step, i, sum(cur)))
        cur = apply_generator(i, cur, DUAL)
        letters.append(i)
        step += 1
    return ReductionCertificate(ReducedWord(ctx.rank, letters), cur, tuple(ledger), DUAL)


def movable_effective_member(ctx: WehlerContext, D) -> Membership:
    """Membership of an integer class in the image of the Tits cone."""
    D = _as_class(ctx, D)
    bad = effective_pairwise_check(ctx, D)
    if not bad:
        return Membership(Verdict.NON_MEMBER,
                          reason=f"pairwise violation: a_{bad.i} + a_{bad.j} < 0")
    res = make_nef(ctx, D)
    if isinstance(res, NotReducible):
        return Membership(Verdict.NON_MEMBER, reason=res.reason)
    return Membership(Verdict.MEMBER, res)


def s_decrement(n: int, a_i: int) -> int:
    """s(iota_i^* D) - s(D) when a_i(D) is the reflected coefficient.

    -a_i replaces a_i and each of the other n coefficients gains 2 a_i,
    so the sum moves by -2 a_i + 2 n a_i = (2n - 2) a_i.
    """
    return (2 * n - 2) * a_i


SURFACE_GRAM = IntegerMatrix(((0, 2, 2), (2, 0, 2), (2, 2, 0)))


def surface_gram() -> IntegerMatrix:
    """Intersection form on Z h_1 + Z h_2 + Z h_3 of a Wehler surface."""
    return SURFACE_GRAM


def surface_product(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * g * y for x, row in zip(u, SURFACE_GRAM.rows) for g, y in zip(row, v))


def surface_positive_cone_contains(u: Sequence[int]) -> bool:
    """u.u > 0 and u.h_1 > 0."""
    if len(u) != 3:
        raise InvalidInput("surface classes have 3 coordinates")
    return surface_product(u, u) > 0 and surface_product(u, (1, 0, 0)) > 0


def transported_gram(ctx: WehlerContext) -> IntegerMatrix:
    """Gram matrix of b_{n+1} carried to the h-basis by c_j -> h_j.

    Entries are b(c_i, c_j): -2(N-2)(N-3) on the diagonal and 2(N-2) off it,
    N = n + 1. The involutions preserve it; it has no known geometric
    meaning for n >= 3 and is exposed as a formal invariant only.
    """
    N = ctx.rank
    return IntegerMatrix(tuple(
        tuple(-2 * (N - 2) * (N - 3) if i == j else 2 * (N - 2) for j in range(N))
        for i in range(N)
    ))


def formal_form(ctx: WehlerContext, D, E) -> int:
    x, y = _as_class(ctx, D).coeffs, _as_class(ctx, E).coeffs
    G = transported_gram(ctx)
    return sum(a * g * b for a, row in zip(x, G.rows) for g, b in zip(row, y))
