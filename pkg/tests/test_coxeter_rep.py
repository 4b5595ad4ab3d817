import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxlat.coxeter_rep import (DUAL, PRIMAL, RepSide, ReducedWord, apply_word, count_words,
                                enumerate_words, generator_matrix, rep_matrix, word_multiply)
from coxlat.errors import InvalidRank, RankError
from coxlat.exact_linalg import IntegerMatrix, gram_form_ucn

from conftest import int_vectors, words


def W(*letters, n=4):
    return ReducedWord(n, letters)


def dual_invariant_form(N):
    # 2(N-2) B_N^{-1}
    return IntegerMatrix(tuple(tuple(-(N - 3) if i == j else 1 for j in range(N)) for i in range(N)))


def test_word_multiply_examples():
    assert W(1) * W(1) == W()
    assert W(1, 2) * W(2, 1) == W()
    assert W(1, 2) * W(1) == W(1, 2, 1)


def test_words_are_reduced_on_construction():
    assert W(1, 2, 2, 3, 3, 2).letters == (1, 2)
    assert W(1, 2, 3, 3, 2).letters == (1,)
    assert str(W(3, 1, 2)) == "3-1-2"
    assert W(3, 1).inverse() == W(1, 3)


def test_word_validation():
    with pytest.raises(IndexError):
        ReducedWord(3, (4,))
    with pytest.raises(InvalidRank):
        ReducedWord(0, ())
    with pytest.raises(RankError):
        word_multiply(ReducedWord(3, (1,)), ReducedWord(4, (1,)))


@given(st.integers(2, 6).flatmap(lambda N: st.tuples(words(N), words(N), words(N))))
def test_multiplication_is_associative_with_inverses(ws):
    a, b, c = ws
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == ReducedWord(a.n, ())


def test_enumeration_counts_and_order():
    for N in (3, 4, 5):
        for length in range(5):
            ws = list(enumerate_words(N, length, length))
            assert len(ws) == count_words(N, length)
    ws = list(enumerate_words(3, 2))
    assert len(ws) == 1 + 3 + 6
    assert ws == sorted(ws, key=lambda w: w.sort_key())
    assert [w.letters for w in ws[:5]] == [(), (1,), (2,), (3,), (1, 2)]


def test_generator_matrix_examples():
    assert generator_matrix(3, 1, DUAL).tolist() == [[-1, 0, 0], [2, 1, 0], [2, 0, 1]]
    assert generator_matrix(3, 2, DUAL).tolist() == [[1, 2, 0], [0, -1, 0], [0, 2, 1]]
    assert generator_matrix(3, 1, PRIMAL) == generator_matrix(3, 1, DUAL).T
    assert generator_matrix(4, 2, "primal") == generator_matrix(4, 2, RepSide.DUAL).T


def test_generator_matrix_errors():
    with pytest.raises(IndexError):
        generator_matrix(3, 9)
    with pytest.raises(InvalidRank):
        generator_matrix(0, 1)


def test_rep_matrix_examples():
    assert rep_matrix(ReducedWord(5, ())) == IntegerMatrix.identity(5)
    for j in range(1, 6):
        for side in (PRIMAL, DUAL):
            assert rep_matrix(ReducedWord(5, (j,)), side) == generator_matrix(5, j, side)
    P = rep_matrix(ReducedWord(3, (1, 2, 3)), DUAL)
    assert P == generator_matrix(3, 1) @ generator_matrix(3, 2) @ generator_matrix(3, 3)


@given(st.integers(3, 7).flatmap(lambda N: st.tuples(words(N), words(N))))
def test_homomorphism(pair):
    a, b = pair
    for side in (PRIMAL, DUAL):
        assert rep_matrix(a * b, side) == rep_matrix(a, side) @ rep_matrix(b, side)


@given(st.integers(3, 7).flatmap(lambda N: words(N)))
def test_primal_dual_duality(w):
    assert rep_matrix(w, PRIMAL) == rep_matrix(w.reversed(), DUAL).T


@given(st.integers(3, 8).flatmap(lambda N: words(N)))
def test_form_invariance(w):
    N = w.n
    B = gram_form_ucn(N).matrix
    P = rep_matrix(w, PRIMAL)
    assert P.T @ B @ P == B
    M, G = rep_matrix(w, DUAL), dual_invariant_form(N)
    assert M.T @ G @ M == G


def test_dual_matrices_preserve_b_only_at_rank_four():
    for N in range(3, 9):
        B = gram_form_ucn(N).matrix
        preserved = all(generator_matrix(N, j).T @ B @ generator_matrix(N, j) == B for j in range(1, N + 1))
        assert preserved == (N == 4)


@given(st.integers(2, 6).flatmap(lambda N: st.tuples(words(N, 8), int_vectors(N))))
def test_apply_word_matches_matrix(pair):
    w, v = pair
    for side in (PRIMAL, DUAL):
        assert apply_word(w, v, side) == rep_matrix(w, side).apply(v)


def test_generators_are_involutions():
    for N in range(1, 11):
        for j in range(1, N + 1):
            M = generator_matrix(N, j)
            assert M @ M == IntegerMatrix.identity(N)


@pytest.mark.parametrize("N,max_len", [(3, 8), (4, 8)])
def test_faithful_at_desk_scale(N, max_len):
    identity = IntegerMatrix.identity(N)
    mats = {(): identity}
    for w in enumerate_words(N, max_len, 1):
        M = generator_matrix(N, w.letters[0]) @ mats[w.letters[1:]]
        mats[w.letters] = M
        assert M != identity, w
