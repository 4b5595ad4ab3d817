"""The Enriques lattice U + E8(-1) and three involutions generating UC(3).

Basis: e1, e2 span U (e1^2 = e2^2 = 0, e1.e2 = 1); the last eight vectors are
simple roots of E8(-1). With e3 = e1 + e2 + v for a root v of norm -2, the
planes U_3 = <e1, e2>, U_2 = <e1, e3>, U_1 = <e2, e3> are copies of U, and
iota_j^* is +1 on U_j and -1 on its orthogonal complement.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .errors import InternalError, InvalidNormVector, ShapeError
from .exact_linalg import IntegerMatrix, determinant, signature, solve_rational, spectral_radius

# E8 Dynkin diagram: chain 1-2-3-4-5-6-7 with node 8 hung on node 5.
E8_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8))
RANK = 10


def e8_gram() -> IntegerMatrix:
    g = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for a, b in E8_EDGES:
        g[a - 1][b - 1] = g[b - 1][a - 1] = -1
    return IntegerMatrix(tuple(map(tuple, g)))


@dataclass(frozen=True)
class HyperbolicLattice:
    gram: IntegerMatrix
    labels: tuple[str, ...]

    def dot(self, x: Sequence[int], y: Sequence[int]) -> int:
        if len(x) != RANK or len(y) != RANK:
            raise ShapeError("Enriques lattice vectors have 10 coordinates")
        return sum(a * g * b for a, row in zip(x, self.gram.rows) for g, b in zip(row, y))

    def norm(self, x: Sequence[int]) -> int:
        return self.dot(x, x)

    def is_even(self) -> bool:
        return all(self.gram[i, i] % 2 == 0 for i in range(RANK))

    def determinant(self) -> int:
        return determinant(self.gram)

    def signature(self) -> tuple[int, int, int]:
        return signature(self.gram)

    def preserves(self, M: IntegerMatrix) -> bool:
        return M.T @ self.gram @ M == self.gram


def build_lattice() -> HyperbolicLattice:
    e8 = e8_gram()
    g = [[0] * RANK for _ in range(RANK)]
    g[0][1] = g[1][0] = 1
    for i in range(8):
        for j in range(8):
            g[2 + i][2 + j] = -e8[i, j]
    labels = ("e1", "e2") + tuple(f"r{k}" for k in range(1, 9))
    return HyperbolicLattice(IntegerMatrix(tuple(map(tuple, g))), labels)


def basis_vector(k: int) -> tuple[int, ...]:
    return tuple(int(i == k) for i in range(RANK))


def simple_root(k: int) -> tuple[int, ...]:
    """k-th simple root of E8(-1), k in 1..8."""
    return basis_vector(1 + k)


@dataclass(frozen=True)
class IsotropicTriple:
    e1: tuple[int, ...]
    e2: tuple[int, ...]
    e3: tuple[int, ...]
    v: tuple[int, ...]

    def sublattice(self, j: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Basis of U_j: U_1 = <e2, e3>, U_2 = <e1, e3>, U_3 = <e1, e2>."""
        return {1: (self.e2, self.e3), 2: (self.e1, self.e3), 3: (self.e1, self.e2)}[j]

    @property
    def basis(self):
        return (self.e1, self.e2, self.e3)


def build_triple(lattice: HyperbolicLattice | None = None, v: Sequence[int] | int = 1) -> IsotropicTriple:
    """Triple (e1, e2, e3 = e1 + e2 + v) for a norm -2 vector v of E8(-1).

    ``v`` is either a full 10-vector supported on the E8 part or the index of
    a simple root.
    """
    L = lattice or build_lattice()
    if isinstance(v, int):
        v = simple_root(v)
    v = tuple(int(x) for x in v)
    if len(v) != RANK or v[0] or v[1]:
        raise InvalidNormVector("v must be a 10-vector supported on the E8(-1) part")
    if L.norm(v) != -2:
        raise InvalidNormVector(f"v^2 = {L.norm(v)}, expected -2")
    e1, e2 = basis_vector(0), basis_vector(1)
    e3 = tuple(a + b + c for a, b, c in zip(e1, e2, v))
    t = IsotropicTriple(e1, e2, e3, v)
    checks = (L.norm(e1), L.norm(e2), L.norm(e3), L.dot(e1, e2), L.dot(e3, e1), L.dot(e3, e2))
    if checks != (0, 0, 0, 1, 1, 1):
        raise InternalError(f"triple identities fail: {checks}")
    return t


def involution_matrix(j: int, lattice: HyperbolicLattice | None = None,
                      triple: IsotropicTriple | None = None) -> IntegerMatrix:
    """Matrix of id on U_j and -id on its orthogonal complement: 2P - I.

    P x = a f + b g where (a, b) solves the 2x2 Gram system of U_j = <f, g>.
    """
    if j not in (1, 2, 3):
        raise IndexError(f"involution index {j} out of range 1..3")
    L = lattice or build_lattice()
    t = triple or build_triple(L)
    f, g = t.sublattice(j)
    G = ((L.dot(f, f), L.dot(f, g)), (L.dot(g, f), L.dot(g, g)))
    cols = []
    for k in range(RANK):
        x = basis_vector(k)
        a, b = solve_rational(G, (L.dot(x, f), L.dot(x, g)))
        img = [2 * (a * fi + b * gi) - xi for fi, gi, xi in zip(f, g, x)]
        if any(Fraction(c).denominator != 1 for c in img):
            raise InternalError(f"projection onto U_{j} is not integral")
        cols.append([int(c) for c in img])
    return IntegerMatrix(tuple(zip(*cols)))


def involutions(lattice=None, triple=None) -> dict[int, IntegerMatrix]:
    L = lattice or build_lattice()
    t = triple or build_triple(L)
    return {j: involution_matrix(j, L, t) for j in (1, 2, 3)}


def word_matrix(word: Sequence[int], lattice=None, triple=None) -> IntegerMatrix:
    mats = involutions(lattice, triple)
    return reduce(lambda a, b: a @ b, (mats[j] for j in word), IntegerMatrix.identity(RANK))


def is_identity_mod2(M: IntegerMatrix) -> bool:
    return all((M[i, j] - (i == j)) % 2 == 0 for i in range(M.n_rows) for j in range(M.n_cols))


def preserves_positive_cone(M: IntegerMatrix, lattice: HyperbolicLattice | None = None) -> bool:
    """Orientation test with the reference vector e1 + e2 (norm 2)."""
    L = lattice or build_lattice()
    ref = tuple(a + b for a, b in zip(basis_vector(0), basis_vector(1)))
    return L.dot(ref, M.apply(ref)) > 0


def restrict_to_L(M: IntegerMatrix, triple: IsotropicTriple) -> IntegerMatrix:
    """Matrix of M on span(e1, e2, e3) in that basis, or ShapeError if the
    span is not invariant."""
    basis = triple.basis
    # coordinates in (e1, e2, e3) are read off from (e1-part, e2-part, v-part)
    cols = []
    for b in basis:
        img = M.apply(b)
        c3 = _multiple_of(img[2:], triple.v[2:])
        if c3 is None:
            raise ShapeError("span(e1, e2, e3) is not invariant")
        c1, c2 = img[0] - c3, img[1] - c3
        cols.append((c1, c2, c3))
    return IntegerMatrix(tuple(zip(*cols)))


def _multiple_of(x, v):
    k = next(i for i, vi in enumerate(v) if vi)
    q, r = divmod(x[k], v[k])
    if r or any(xi != q * vi for xi, vi in zip(x, v)):
        return None
    return q


def entropy_of_word(word: Sequence[int], tol: float = 1e-12, lattice=None, triple=None) -> float:
    """log of the spectral radius of the ordered product of involutions."""
    if not word:
        return 0.0
    r = spectral_radius(word_matrix(word, lattice, triple), tol)
    return max(0.0, math.log(r))


def entropy_payload(word: Sequence[int], tol: float = 1e-12) -> dict:
    M = word_matrix(word) if word else IntegerMatrix.identity(RANK)
    radius = spectral_radius(M, tol)
    return {"word": list(word), "log_radius": max(0.0, math.log(radius)), "radius": radius}
