"""Exact integer/rational linear algebra.

Everything here works on Python ints and ``fractions.Fraction``; floats appear
only in the final bisection of :func:`spectral_radius`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidRank, ShapeError

RationalScalar = Fraction


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable integer matrix stored row-major as a tuple of tuples."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if not rows or not rows[0]:
            raise ShapeError("matrix must have at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ShapeError("ragged rows")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_json(cls, data) -> "IntegerMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in data))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def T(self) -> "IntegerMatrix":
        return IntegerMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.n_cols != other.n_rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = tuple(zip(*other.rows))
        return IntegerMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
        )

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix(tuple(tuple(-x for x in r) for r in self.rows))

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return IntegerMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return self + (-other)

    def scale(self, k: int) -> "IntegerMatrix":
        return IntegerMatrix(tuple(tuple(k * x for x in r) for r in self.rows))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(v) != self.n_cols:
            raise ShapeError(f"vector of length {len(v)} for matrix {self.shape}")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(min(self.shape)))

    def to_json(self) -> list[list[str]]:
        # decimal strings: entries can outgrow IEEE doubles in consumers
        return [[str(x) for x in r] for r in self.rows]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class GramForm:
    n: int
    matrix: IntegerMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.n, self.n):
            raise ShapeError(f"Gram matrix shape {self.matrix.shape} for rank {self.n}")
        if not self.matrix.is_symmetric():
            raise ShapeError("Gram matrix must be symmetric")


def gram_form_ucn(N: int) -> GramForm:
    """Gram matrix of b_N: -1 on the diagonal, +1 elsewhere."""
    if N < 1:
        raise InvalidRank(f"rank must be >= 1, got {N}")
    return GramForm(N, IntegerMatrix(tuple(
        tuple(-1 if i == j else 1 for j in range(N)) for i in range(N)
    )))


def eval_form(B: GramForm, x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != B.n or len(y) != B.n:
        raise ShapeError(f"vectors of length {len(x)}, {len(y)} for rank {B.n}")
    return sum(xi * bij * yj for xi, row in zip(x, B.matrix.rows) for bij, yj in zip(row, y))


def ucn_pairing(x: Sequence[int], y: Sequence[int]) -> int:
    """b_N(x, y) via the closed form sigma(x) sigma(y) - 2 <x, y>."""
    if len(x) != len(y):
        raise ShapeError("vectors of different length")
    return sum(x) * sum(y) - 2 * sum(a * b for a, b in zip(x, y))


def rational_matrix(M) -> list[list[Fraction]]:
    rows = M.rows if isinstance(M, IntegerMatrix) else M
    return [[Fraction(x) for x in r] for r in rows]


def congruence_diagonal(A) -> list[Fraction]:
    """Diagonal entries of a rational diagonalization P^T A P of a symmetric matrix.

    Symmetric Gaussian elimination; a zero pivot with a nonzero entry in its
    row is repaired by adding a later row/column to it.
    """
    a = rational_matrix(A)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ShapeError("matrix must be square")
    diag = []
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for r in a:
                    r[k], r[j] = r[j], r[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is not None:
                    # e_k <- e_k + e_j makes the pivot 2 a_kj != 0
                    for c in range(n):
                        a[k][c] += a[j][c]
                    for r in range(n):
                        a[r][k] += a[r][j]
        p = a[k][k]
        diag.append(p)
        if p == 0:
            continue
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for c in range(k, n):
                    a[i][c] -= f * a[k][c]
                for r in range(k, n):
                    a[r][i] -= f * a[r][k]
    return diag


def signature(B) -> tuple[int, int, int]:
    """(positive, negative, zero) counts by exact congruence diagonalization."""
    M = B.matrix if isinstance(B, GramForm) else B
    d = congruence_diagonal(M)
    return (sum(1 for x in d if x > 0), sum(1 for x in d if x < 0), sum(1 for x in d if x == 0))


def determinant(M: IntegerMatrix) -> int:
    """Bareiss fraction-free elimination."""
    if not M.is_square():
        raise ShapeError("determinant of non-square matrix")
    a = [list(r) for r in M.rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def char_poly(M: IntegerMatrix) -> list[int]:
    """Coefficients of det(xI - M), highest degree first (Faddeev-LeVerrier).

    Each division by k is exact over the integers.
    """
    if not M.is_square():
        raise ShapeError("characteristic polynomial of non-square matrix")
    n = M.n_rows
    coeffs = [1]
    A = M
    for k in range(1, n + 1):
        ck, r = divmod(-A.trace(), k)
        if r:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs.append(ck)
        if k < n:
            A = M @ (A + IntegerMatrix.identity(n).scale(ck))
    return coeffs


# -- univariate polynomials, highest degree first -------------------------

def _strip(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def poly_eval(p: Sequence, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def _poly_rem(a, b):
    a = [Fraction(c) for c in _strip(list(a))]
    b = [Fraction(c) for c in _strip(list(b))]
    while len(a) >= len(b) and any(a):
        f = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= f * b[i]
        a = _strip(a[1:]) if len(a) > 1 else [Fraction(0)]
    return a


def _poly_quo(a, b):
    a = [Fraction(c) for c in _strip(list(a))]
    b = [Fraction(c) for c in _strip(list(b))]
    q = []
    while len(a) >= len(b):
        f = a[0] / b[0]
        q.append(f)
        for i in range(len(b)):
            a[i] -= f * b[i]
        a = a[1:]
    return q or [Fraction(0)]


def _derivative(p):
    d = len(p) - 1
    return [c * (d - i) for i, c in enumerate(p[:-1])] or [0]


def _poly_gcd(a, b):
    a, b = _strip(list(a)), _strip(list(b))
    while any(b):
        a, b = b, _poly_rem(a, b)
    return [c / a[0] for c in a]


def squarefree_part(p: Sequence[int]) -> list[Fraction]:
    p = _strip(list(p))
    if len(p) <= 1:
        return [Fraction(c) for c in p]
    g = _poly_gcd(p, _derivative(p))
    return _poly_quo(p, g)


def sturm_sequence(p) -> list[list[Fraction]]:
    seq = [[Fraction(c) for c in p], [Fraction(c) for c in _derivative(list(p))]]
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        r = _poly_rem(seq[-2], seq[-1])
        if not any(r):
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(seq, x) -> int:
    signs = [s for s in (poly_eval(q, x) for q in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_real_roots(seq, lo, hi) -> int:
    """Distinct real roots in (lo, hi] of a squarefree polynomial."""
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def _largest_root_above_one(p, bound, tol):
    """Largest real root of squarefree p in (1, bound], or None."""
    seq = sturm_sequence(p)
    lo, hi = Fraction(1), Fraction(bound)
    if count_real_roots(seq, lo, hi) == 0:
        return None
    # shrink to an interval holding exactly the largest root
    while hi - lo > Fraction(tol) / 4:
        mid = (lo + hi) / 2
        if count_real_roots(seq, mid, hi) > 0:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def spectral_radius(M: IntegerMatrix, tol: float = 1e-12) -> float:
    """Largest modulus of a root of char_poly(M).

    Real roots of modulus > 1 are isolated exactly with Sturm sequences on
    [1, 1 + max row sum] and bisected to ``tol``; roots +-1 are detected
    exactly. Non-real roots (never dominant for isometries of a Lorentzian
    lattice) are taken from the squarefree part with numpy as a fallback.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    p = squarefree_part(char_poly(M))
    bound = 1 + max(sum(abs(x) for x in r) for r in M.rows)
    best = 0.0
    if poly_eval(p, 1) == 0 or poly_eval(p, -1) == 0:
        best = 1.0
    p_neg = [c * (-1) ** (len(p) - 1 - i) for i, c in enumerate(p)]  # p(-x) up to sign
    for q in (p, p_neg):
        r = _largest_root_above_one(q, bound, tol)
        if r is not None:
            best = max(best, r)
    if len(p) > 1:
        roots = np.roots([float(c) for c in p])
        nonreal = [abs(z) for z in roots if abs(z.imag) > 1e-9]
        if nonreal:
            best = max(best, max(nonreal))
        if best == 0.0:
            best = max(abs(z) for z in roots)
    return best


def solve_rational(A, b) -> list[Fraction]:
    """Solve A x = b exactly for square nonsingular A."""
    a = rational_matrix(A)
    n = len(a)
    aug = [row + [Fraction(bi)] for row, bi in zip(a, b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise ArithmeticError("singular system")
        aug[k], aug[piv] = aug[piv], aug[k]
        for i in range(n):
            if i != k and aug[i][k]:
                f = aug[i][k] / aug[k][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def vector_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = math.gcd(g, int(x))
    return g


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = vector_gcd(v)
    return tuple(v) if g in (0, 1) else tuple(x // g for x in v)
