"""Words in the universal Coxeter group UC(N) and its geometric representation.

UC(N) is the free product of N copies of Z/2Z, so every element has a unique
reduced word: a sequence of generator indices in 1..N with no two equal
neighbours. Multiplication is concatenation followed by cancellation.

Two matrix realizations are exposed:

* ``DUAL``: the integer matrix M_{N,j} (identity, except column j is all 2's
  with -1 on the diagonal). This is the action on dual / chamber
  coordinates, e.g. on classes written in the h-basis of a Wehler variety.
* ``PRIMAL``: its transpose, the action of the reflection t_j on
  alpha-coordinates: alpha_i -> alpha_i + 2 alpha_j (i != j), alpha_j -> -alpha_j.

The primal matrices preserve b_N; the dual matrices preserve the inverse form.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterator, Sequence

from .errors import InvalidRank, RankError
from .exact_linalg import IntegerMatrix


class RepSide(enum.Enum):
    PRIMAL = "primal"
    DUAL = "dual"


PRIMAL = RepSide.PRIMAL
DUAL = RepSide.DUAL


def _reduce_letters(letters: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True, order=True)
class ReducedWord:
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise InvalidRank(f"rank must be >= 1, got {self.n}")
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if not 1 <= x <= self.n:
                raise IndexError(f"generator {x} out of range 1..{self.n}")
        object.__setattr__(self, "letters", _reduce_letters(letters))

    @classmethod
    def identity(cls, n: int) -> "ReducedWord":
        return cls(n, ())

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        return word_multiply(self, other)

    def inverse(self) -> "ReducedWord":
        return ReducedWord(self.n, self.letters[::-1])

    def reversed(self) -> "ReducedWord":
        return self.inverse()

    def sort_key(self):
        return (len(self.letters), self.letters)

    def to_json(self) -> list[int]:
        return list(self.letters)

    def __str__(self) -> str:
        return "-".join(map(str, self.letters))


def word_multiply(w1: ReducedWord, w2: ReducedWord) -> ReducedWord:
    if w1.n != w2.n:
        raise RankError(f"cannot multiply words of rank {w1.n} and {w2.n}")
    return ReducedWord(w1.n, w1.letters + w2.letters)


def enumerate_words(N: int, max_length: int, min_length: int = 0) -> Iterator[ReducedWord]:
    """All reduced words with length in [min_length, max_length], ordered by
    length then lexicographically."""
    for length in range(min_length, max_length + 1):
        for letters in _words_of_length(N, length):
            yield ReducedWord(N, letters)


def _words_of_length(N: int, length: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for prefix in _words_of_length(N, length - 1):
        for x in range(1, N + 1):
            if not prefix or prefix[-1] != x:
                yield prefix + (x,)


def count_words(N: int, length: int) -> int:
    return 1 if length == 0 else N * (N - 1) ** (length - 1)


@lru_cache(maxsize=None)
def _dual_generator(N: int, j: int) -> IntegerMatrix:
    rows = []
    for i in range(N):
        row = [int(i == k) for k in range(N)]
        row[j - 1] = -1 if i == j - 1 else 2
        rows.append(tuple(row))
    return IntegerMatrix(tuple(rows))


def generator_matrix(N: int, j: int, side: RepSide = DUAL) -> IntegerMatrix:
    if N < 1:
        raise InvalidRank(f"rank must be >= 1, got {N}")
    if not 1 <= j <= N:
        raise IndexError(f"generator index {j} out of range 1..{N}")
    M = _dual_generator(N, j)
    return M if RepSide(side) is DUAL else M.T


def rep_matrix(w: ReducedWord, side: RepSide = DUAL) -> IntegerMatrix:
    """Ordered product of generator matrices of ``w``."""
    side = RepSide(side)
    mats = [generator_matrix(w.n, j, side) for j in w.letters]
    return reduce(lambda a, b: a @ b, mats, IntegerMatrix.identity(w.n))


def apply_word(w: ReducedWord, v: Sequence[int], side: RepSide = DUAL) -> tuple[int, ...]:
    """rep_matrix(w, side) applied to ``v`` without forming the matrix."""
    v = tuple(v)
    for j in reversed(w.letters):
        v = apply_generator(j, v, side)
    return v


def apply_generator(j: int, v: Sequence[int], side: RepSide = DUAL) -> tuple[int, ...]:
    k = j - 1
    if RepSide(side) is PRIMAL:
        # coordinate j becomes 2 sigma - 3 a_j, the rest are unchanged
        s = sum(v)
        return tuple(2 * s - 3 * x if i == k else x for i, x in enumerate(v))
    a = v[k]
    return tuple(-x if i == k else x + 2 * a for i, x in enumerate(v))
