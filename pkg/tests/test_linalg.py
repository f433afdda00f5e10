import random
from fractions import Fraction

import numpy as np
import pytest

from bcmk import E, E_DAG, ONE, BCMatrix, Bicomplex, NotInvertibleError, ShapeError, det, embed, rank_pair, split, try_invert
from bcmk.bicomplex import K, is_zero_divisor
from bcmk.linalg import matmul

from conftest import rand_exact, rand_float


def rand_matrix(rng, n, exact=True):
    gen = rand_exact if exact else rand_float
    return BCMatrix.from_rows([[gen(rng) for _ in range(n)] for _ in range(n)])


@pytest.mark.parametrize("n", [2, 3])
def test_det_multiplicative_exact(n):
    rng = random.Random(n)
    for _ in range(40):
        A, B = rand_matrix(rng, n), rand_matrix(rng, n)
        assert det(A @ B) == det(A) * det(B)


def test_split_and_blocks_round_trip():
    rng = random.Random(1)
    A = rand_matrix(rng, 3)
    A1, A2 = split(A)
    assert BCMatrix.from_blocks(A1, A2) == A


def test_embed_is_homomorphism():
    rng = random.Random(2)
    for _ in range(30):
        A, B = rand_matrix(rng, 2), rand_matrix(rng, 2)
        EA, EB, EAB = embed(A), embed(B), embed(A @ B)
        assert np.array_equal(np.asarray(EA, dtype=object) @ np.asarray(EB, dtype=object), np.asarray(EAB, dtype=object))


def test_idempotent_rank_pairs():
    I2 = BCMatrix.identity(2)
    assert tuple(rank_pair(BCMatrix.diag([E, E]))) == (2, 0)
    assert tuple(rank_pair(BCMatrix.diag([E_DAG, 1]))) == (1, 2)
    assert tuple(rank_pair(I2)) == (2, 2)
    assert det(BCMatrix.diag([E, 1])) == E


def test_inverse_exact():
    A = BCMatrix.from_rows([[2 * E + 4 * E_DAG]])
    inv = try_invert(A)
    assert inv[0, 0] == Bicomplex(Fraction(3, 8), 0, 0, Fraction(1, 8))
    rng = random.Random(3)
    for _ in range(20):
        M = rand_matrix(rng, 3)
        if is_zero_divisor(det(M)) or not det(M):
            continue
        assert M @ try_invert(M) == BCMatrix.identity(3)


def test_invertibility_matches_det():
    rng = random.Random(4)
    cases = [rand_matrix(rng, 2) for _ in range(20)]
    cases += [BCMatrix.from_rows([[E, K], [E, K]]), BCMatrix.diag([E, E_DAG]), BCMatrix.diag([ONE, E])]
    for M in cases:
        d = det(M)
        invertible = bool(d) and not is_zero_divisor(d)
        if invertible:
            try_invert(M)
        else:
            with pytest.raises(NotInvertibleError):
                try_invert(M)


def test_float_rank_threshold():
    rng = random.Random(5)
    M = rand_matrix(rng, 3, exact=False)
    assert tuple(rank_pair(M)) == (3, 3)
    near = BCMatrix.from_rows([[1.0, 2.0], [1.0, 2.0 + 1e-12]])
    assert tuple(rank_pair(near)) == (1, 1)


def test_shape_errors():
    A = BCMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(ShapeError):
        det(A)
    with pytest.raises(ShapeError):
        matmul(A, A)


def test_json_round_trip():
    rng = random.Random(6)
    A = rand_matrix(rng, 2)
    assert BCMatrix.from_json(A.to_json()) == A
