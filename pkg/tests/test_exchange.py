"""Exchange matrices, mutation, rank and quivers."""

import random

import pytest

from clusteralg import (
    ExchangeMatrix,
    IceQuiver,
    is_acyclic,
    matrix_rank,
    matrix_to_quiver,
    mutate_matrix,
    quiver_to_matrix,
    random_exchange_matrix,
    skew_symmetrizer,
)
from clusteralg.errors import (
    InvalidIndexError,
    InvalidQuiverError,
    MalformedInputError,
    NotSkewSymmetricError,
    NotSkewSymmetrizableError,
)

B_RANK4 = [[0, -1, 0, 4], [2, 0, 3, 6], [0, -3, 0, 0], [-4, -3, 0, 0]]
MARKOV = [[0, 2, -2], [-2, 0, 2], [2, -2, 0]]


def test_symmetrizer_known():
    m = ExchangeMatrix(4, 0, B_RANK4)
    assert m.symmetrizer == (2, 1, 1, 2)
    d = m.symmetrizer
    for i in range(4):
        for j in range(4):
            assert d[i] * m.rows[i][j] == -d[j] * m.rows[j][i]


def test_symmetrizer_skew_symmetric_is_ones():
    m = ExchangeMatrix(3, 0, MARKOV)
    assert m.symmetrizer == (1, 1, 1)


def test_symmetrizer_rejects_bad_matrices():
    with pytest.raises(NotSkewSymmetrizableError):
        ExchangeMatrix(2, 0, [[0, 1], [1, 0]])
    with pytest.raises(NotSkewSymmetrizableError):
        ExchangeMatrix(2, 0, [[1, 1], [-1, 0]])
    with pytest.raises(NotSkewSymmetrizableError):
        ExchangeMatrix(2, 0, [[0, 1], [0, 0]])
    # ratios around the 3-cycle are inconsistent
    with pytest.raises(NotSkewSymmetrizableError):
        ExchangeMatrix(3, 0, [[0, 1, 2], [-1, 0, 1], [-1, -1, 0]])


def test_matrix_validation():
    with pytest.raises(MalformedInputError):
        ExchangeMatrix(2, 0, [[0, 1]])
    with pytest.raises(MalformedInputError):
        ExchangeMatrix(2, 0, [[0, 1], [-1, 0], [1, 1]])
    with pytest.raises(MalformedInputError):
        ExchangeMatrix(2, 0, [[0, True], [-1, 0]])
    with pytest.raises(MalformedInputError):
        ExchangeMatrix(0, 1, [[]])


def test_mutation_markov():
    m = ExchangeMatrix(3, 0, MARKOV)
    m1 = mutate_matrix(m, 1)
    assert m1.rows == ((0, -2, 2), (2, 0, -2), (-2, 2, 0))
    assert mutate_matrix(m1, 1) == m


def test_mutation_with_frozen_rows():
    m = ExchangeMatrix(2, 1, [[0, 1], [-1, 0], [1, -2]])
    m2 = mutate_matrix(m, 1)
    # row and column 1 negate, entry (3,2) picks up the correction
    assert m2.rows[0] == (0, -1)
    assert m2.rows[1] == (1, 0)
    assert m2.rows[2][0] == -1
    assert mutate_matrix(m2, 1) == m


def test_mutation_bad_direction():
    m = ExchangeMatrix(2, 1, [[0, 1], [-1, 0], [1, -2]])
    with pytest.raises(InvalidIndexError):
        mutate_matrix(m, 0)
    with pytest.raises(InvalidIndexError):
        mutate_matrix(m, 3)


def test_mutation_properties_random():
    rng = random.Random(23)
    for _ in range(120):
        n = rng.randint(1, 5)
        m = rng.randint(0, 2)
        mat = random_exchange_matrix(rng, n, m)
        i = rng.randint(1, n)
        mutated = mutate_matrix(mat, i)
        assert mutate_matrix(mutated, i) == mat
        assert matrix_rank(mutated) == matrix_rank(mat)
        assert mutated.symmetrizer == mat.symmetrizer


def test_rank_known():
    assert matrix_rank(ExchangeMatrix(4, 0, B_RANK4)) == 4
    assert matrix_rank(ExchangeMatrix(3, 0, MARKOV)) == 2
    assert matrix_rank(ExchangeMatrix(3, 0, [[0, 1, 0], [-1, 0, 1], [0, -1, 0]])) == 2
    full = ExchangeMatrix(4, 0, [[0, 0, 1, -1], [0, 0, -1, -1], [-1, 1, 0, 1], [1, 1, -1, 0]])
    assert matrix_rank(full) == 4
    tall = ExchangeMatrix(3, 1, [[0, 2, -2], [-2, 0, 2], [2, -2, 0], [2, 0, 0]])
    assert matrix_rank(tall) == 3


def test_rank_against_fraction_gauss():
    from fractions import Fraction

    def gauss_rank(rows):
        a = [[Fraction(v) for v in r] for r in rows]
        rank = 0
        cols = len(a[0]) if a else 0
        for c in range(cols):
            piv = next((r for r in range(rank, len(a)) if a[r][c]), None)
            if piv is None:
                continue
            a[rank], a[piv] = a[piv], a[rank]
            for r in range(len(a)):
                if r != rank and a[r][c]:
                    f = a[r][c] / a[rank][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
            rank += 1
        return rank

    rng = random.Random(31)
    for _ in range(80):
        n = rng.randint(1, 5)
        m = rng.randint(0, 3)
        mat = random_exchange_matrix(rng, n, m)
        assert matrix_rank(mat) == gauss_rank(mat.rows)


def test_quiver_matrix_roundtrip():
    q = IceQuiver(4, 0, [(1, 3, 1), (3, 2, 1), (3, 4, 1), (4, 1, 1), (4, 2, 1)])
    m = quiver_to_matrix(q)
    assert m.rows == ((0, 0, 1, -1), (0, 0, -1, -1), (-1, 1, 0, 1), (1, 1, -1, 0))
    assert matrix_to_quiver(m) == q


def test_quiver_roundtrip_random():
    rng = random.Random(37)
    for _ in range(60):
        n = rng.randint(1, 5)
        m = rng.randint(0, 2)
        mat = random_exchange_matrix(rng, n, m, symmetrizer_choices=(1,))
        assert quiver_to_matrix(matrix_to_quiver(mat)) == mat


def test_quiver_validation():
    with pytest.raises(InvalidQuiverError):
        IceQuiver(2, 0, [(1, 1, 1)])
    with pytest.raises(InvalidQuiverError):
        IceQuiver(2, 0, [(1, 2, 1), (2, 1, 1)])
    with pytest.raises(InvalidQuiverError):
        IceQuiver(1, 2, [(2, 3, 1)])
    with pytest.raises(InvalidQuiverError):
        IceQuiver(2, 0, [(1, 2, 0)])
    with pytest.raises(InvalidQuiverError):
        IceQuiver(2, 0, [(1, 3, 1)])
    # parallel arrows merge
    q = IceQuiver(2, 0, [(1, 2, 1), (1, 2, 2)])
    assert q.arrows == ((1, 2, 3),)


def test_matrix_to_quiver_needs_skew_symmetric():
    with pytest.raises(NotSkewSymmetricError):
        matrix_to_quiver(ExchangeMatrix(4, 0, B_RANK4))


def test_is_acyclic():
    assert is_acyclic(ExchangeMatrix(2, 0, [[0, 1], [-1, 0]]))
    assert not is_acyclic(ExchangeMatrix(3, 0, MARKOV))
    line = ExchangeMatrix(3, 0, [[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
    assert is_acyclic(line)


def test_random_matrices_are_valid():
    rng = random.Random(41)
    for _ in range(100):
        n = rng.randint(1, 6)
        mat = random_exchange_matrix(rng, n, rng.randint(0, 2))
        # constructor re-validates; also check the entry bound
        assert all(abs(v) <= 3 for row in mat.rows for v in row)
