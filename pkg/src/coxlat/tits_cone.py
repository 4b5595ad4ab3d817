"""Fundamental chamber, Tits cone membership and sigma-descent for UC(N).

Classes are integer vectors in the alpha-basis (primal side) unless stated
otherwise. The chamber D_N is cut out by b_N(v, alpha_i) >= 0, and
b_N(v, alpha_i) = sigma(v) - 2 a_i where sigma is the coordinate sum.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .coxeter_rep import PRIMAL, ReducedWord, apply_generator, apply_word
from .errors import InvalidInput, InvalidRank
from .exact_linalg import ucn_pairing, vector_gcd


class Basis(enum.Enum):
    ALPHA = "alpha"
    CHAMBER = "chamber"


@dataclass(frozen=True)
class LatticeClass:
    n: int
    coords: tuple[int, ...]
    basis: Basis = Basis.ALPHA
    gcd: int = field(init=False)

    def __post_init__(self):
        coords = tuple(int(x) for x in self.coords)
        if len(coords) != self.n:
            raise InvalidInput(f"{len(coords)} coordinates for rank {self.n}")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "basis", Basis(self.basis))
        object.__setattr__(self, "gcd", vector_gcd(coords))

    @classmethod
    def alpha(cls, coords: Sequence[int]) -> "LatticeClass":
        return cls(len(coords), tuple(coords), Basis.ALPHA)

    @property
    def sigma(self) -> int:
        return sum(self.coords)

    def is_zero(self) -> bool:
        return self.gcd == 0

    def primitive(self) -> "LatticeClass":
        if self.gcd in (0, 1):
            return self
        return LatticeClass(self.n, tuple(x // self.gcd for x in self.coords), self.basis)

    def to_json(self) -> list[int]:
        return list(self.coords)


@dataclass(frozen=True)
class FundamentalFace:
    """Face D(J) of the chamber; J is the set of walls the face lies on."""

    J: frozenset

    def __post_init__(self):
        object.__setattr__(self, "J", frozenset(self.J))

    @property
    def is_interior(self) -> bool:
        return not self.J

    def to_json(self) -> list[int]:
        return sorted(self.J)


@dataclass(frozen=True)
class ReductionCertificate:
    """``word`` maps ``terminal`` back to the input class.

    Each ledger row is (step, generator, potential before the step), the
    potential being sigma for alpha-basis descent and s for Wehler classes.
    """

    word: ReducedWord
    terminal: tuple[int, ...]
    ledger: tuple[tuple[int, int, int], ...]
    side: object = PRIMAL

    def replay(self) -> tuple[int, ...]:
        return apply_word(self.word, self.terminal, self.side)

    def to_json(self) -> dict:
        return {
            "word": self.word.to_json(),
            "terminal": list(self.terminal),
            "ledger": [list(row) for row in self.ledger],
        }


@dataclass(frozen=True)
class NotInCone:
    reason: str
    steps: int
    last: tuple[int, ...]

    def to_json(self) -> dict:
        return {"verdict": "NotInCone", "reason": self.reason, "steps": self.steps,
                "last": list(self.last)}


@dataclass(frozen=True)
class NotReducible:
    reason: str
    index: int | None = None

    def to_json(self) -> dict:
        return {"verdict": "NotReducible", "reason": self.reason, "index": self.index}


@dataclass(frozen=True)
class FlatReduction:
    word: ReducedWord
    face: FundamentalFace
    images: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"word": self.word.to_json(), "face": self.face.to_json(),
                "images": [list(p) for p in self.images]}


class SphereSide(enum.Enum):
    INSIDE = "Inside"
    ON_SPHERE = "OnSphere"
    OUTSIDE = "Outside"


class LineSphere(enum.Enum):
    TRANSVERSAL = "Transversal"
    TANGENT = "Tangent"
    EMPTY = "Empty"


def _coords(v) -> tuple[int, ...]:
    if isinstance(v, LatticeClass):
        if v.basis is not Basis.ALPHA:
            raise InvalidInput("expected an alpha-basis class")
        return v.coords
    return tuple(int(x) for x in v)


def vertex(N: int, j: int) -> LatticeClass:
    """Extremal ray c_j of the chamber: all ones except -(N-3) at slot j."""
    if N < 3:
        raise InvalidRank(f"vertices need N >= 3, got {N}")
    if not 1 <= j <= N:
        raise IndexError(f"vertex index {j} out of range 1..{N}")
    return LatticeClass.alpha(tuple(-(N - 3) if i == j else 1 for i in range(1, N + 1)))


def u_vector(N: int) -> LatticeClass:
    return LatticeClass.alpha((1,) * N)


def simple_root(N: int, i: int) -> LatticeClass:
    return LatticeClass.alpha(tuple(int(k == i) for k in range(1, N + 1)))


def pairing_profile(v) -> tuple[int, ...]:
    """(b_N(v, alpha_i))_i = (sigma(v) - 2 a_i)_i."""
    a = _coords(v)
    s = sum(a)
    return tuple(s - 2 * x for x in a)


def in_chamber(v) -> bool:
    return all(p >= 0 for p in pairing_profile(v))


def face_of(v) -> FundamentalFace | None:
    """Face D(J) containing v, or None if v is outside the chamber."""
    prof = pairing_profile(v)
    if any(p < 0 for p in prof):
        return None
    return FundamentalFace(frozenset(i for i, p in enumerate(prof, 1) if p == 0))


def default_max_steps(sigma: int) -> int:
    return 10 * (1 + abs(sigma))


def reduce_boundary_point(v, max_steps: int | None = None):
    """Greedy sigma-descent of an integer class into the chamber.

    While some pairing b_N(v, alpha_i) is negative, reflect in the most
    negative one (smallest index on ties). Each step replaces a_i by
    2 sigma - 3 a_i and lowers sigma by 2 |b_N(v, alpha_i)|.

    Returns a :class:`ReductionCertificate` or a :class:`NotInCone` verdict.
    """
    a = _coords(v)
    if not any(a):
        raise InvalidInput("zero vector")
    N = len(a)
    if max_steps is None:
        max_steps = default_max_steps(sum(a))
    letters: list[int] = []
    ledger: list[tuple[int, int, int]] = []
    cur = a
    step = 0
    while True:
        s = sum(cur)
        if s <= 0:
            return NotInCone("sigma reached a non-positive value", step, cur)
        prof = [s - 2 * x for x in cur]
        worst = min(prof)
        if worst >= 0:
            break
        if step >= max_steps:
            return NotInCone("step budget exhausted", step, cur)
        i = prof.index(worst) + 1
        ledger.append((step, i, s))
        cur = apply_generator(i, cur, PRIMAL)
        letters.append(i)
        step += 1
    return ReductionCertificate(ReducedWord(N, letters), cur, tuple(ledger), PRIMAL)


def reduce_flat(points):
    """Move a rational boundary flat into a face of the chamber.

    The coordinate sum of the points serves as the generic point; its
    descent word is applied (inverted) to every point, and all images must
    lie in D_N. Returns a :class:`FlatReduction` or :class:`NotReducible`.
    """
    pts = [_coords(p) for p in points]
    if not pts:
        raise InvalidInput("empty point list")
    N = len(pts[0])
    if any(len(p) != N for p in pts):
        raise InvalidInput("points of different rank")
    generic = tuple(map(sum, zip(*pts)))
    if not any(generic):
        return NotReducible("generic point is zero")
    cert = reduce_boundary_point(generic)
    if isinstance(cert, NotInCone):
        return NotReducible(f"generic point not in the cone: {cert.reason}")
    back = cert.word.inverse()
    images = tuple(apply_word(back, p, PRIMAL) for p in pts)
    J = set(range(1, N + 1))
    for k, img in enumerate(images):
        face = face_of(img)
        if face is None:
            return NotReducible(f"point {k} escaped the chamber: {list(img)}", k)
        J &= face.J
    return FlatReduction(cert.word, FundamentalFace(frozenset(J)), images)


def sphere_membership(v) -> SphereSide:
    a = _coords(v)
    q = ucn_pairing(a, a)
    if q > 0:
        return SphereSide.INSIDE
    if q == 0:
        return SphereSide.ON_SPHERE
    return SphereSide.OUTSIDE


def line_sphere_type(N: int) -> LineSphere:
    """Intersection of the line [c_{N-1}][c_N] with the isotropic sphere.

    On s c_{N-1} + t c_N the form is a binary quadratic; the sign of
    b(c, c')^2 - b(c, c) b(c', c') decides two, one or no real points.
    """
    if N < 3:
        raise InvalidRank(f"need N >= 3, got {N}")
    c, d = vertex(N, N - 1).coords, vertex(N, N).coords
    disc = ucn_pairing(c, d) ** 2 - ucn_pairing(c, c) * ucn_pairing(d, d)
    if disc > 0:
        return LineSphere.TRANSVERSAL
    if disc == 0:
        return LineSphere.TANGENT
    return LineSphere.EMPTY
