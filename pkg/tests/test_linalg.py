import random

import pytest

from helpers import (
    cofactor_expansion_det,
    rand_matrix,
    rand_pd_matrix,
    rand_rat,
    rand_symmetric,
)
from qdist.errors import SingularMatrixError
from qdist.linalg import (
    INDEFINITE,
    MatrixQ,
    NEGATIVE_DEFINITE,
    POSITIVE_DEFINITE,
    SEMIDEFINITE_DEGENERATE,
    VectorQ,
    adjugate,
    block_matrix,
    char_poly,
    definiteness,
    det_bipoly_matrix,
    det_unipoly_matrix,
    determinant,
    eigenvalue_sign_counts,
    inverse,
    rank,
    solve_linear,
)
from qdist.poly import BiPoly, UniPoly
from qdist.scalar import QQ


def test_determinant_identity():
    assert determinant(MatrixQ.identity(5)) == 1


def test_determinant_2x2():
    assert determinant(MatrixQ([[1, 2], [3, 4]])) == -2


def test_determinant_hilbert_vs_cofactor_oracle():
    h = MatrixQ([[QQ(1, 1 + i + j) for j in range(3)] for i in range(3)])
    assert determinant(h) == QQ(1, 2160)
    assert cofactor_expansion_det(h) == QQ(1, 2160)


def test_determinant_requires_square():
    with pytest.raises(ValueError):
        determinant(MatrixQ([[1, 2, 3], [4, 5, 6]]))


def test_determinant_multiplicative():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 5)
        a = rand_matrix(rng, n, n)
        b = rand_matrix(rng, n, n)
        assert determinant(a * b) == determinant(a) * determinant(b)


def test_adjugate_small_examples():
    m = MatrixQ([[1, 2], [3, 4]])
    assert adjugate(m) == MatrixQ([[4, -2], [-3, 1]])
    assert adjugate(MatrixQ.identity(4)) == MatrixQ.identity(4)
    assert adjugate(MatrixQ.diag([QQ(2), QQ(3)])) == MatrixQ.diag([QQ(3), QQ(2)])


def test_adjugate_identity_including_singular():
    rng = random.Random(17)
    for _ in range(60):
        n = rng.randint(1, 8)
        m = rand_matrix(rng, n, n, -4, 4, 2)
        if n > 1 and rng.random() < 0.4:
            # force rank deficiency: duplicate a scaled row
            rows = [list(r) for r in m.entries]
            i, j = rng.sample(range(n), 2)
            f = rand_rat(rng, -3, 3, 2)
            rows[i] = [f * c for c in rows[j]]
            m = MatrixQ(rows)
        adj = adjugate(m)
        d = determinant(m)
        prod = m * adj
        for i in range(n):
            for j in range(n):
                assert prod.entry(i, j) == (d if i == j else 0)


def test_schur_block_determinant():
    rng = random.Random(23)
    done = 0
    while done < 40:
        nu = rng.randint(1, 3)
        nt = rng.randint(1, 3)
        u = rand_matrix(rng, nu, nu)
        if not determinant(u):
            continue
        v = rand_matrix(rng, nu, nt)
        s = rand_matrix(rng, nt, nu)
        t = rand_matrix(rng, nt, nt)
        whole = block_matrix([[u, v], [s, t]])
        schur = t - s * inverse(u) * v
        assert determinant(whole) == determinant(u) * determinant(schur)
        done += 1


def test_definiteness_examples():
    assert definiteness(MatrixQ.identity(3)) == POSITIVE_DEFINITE
    assert definiteness(MatrixQ.diag([QQ(1), QQ(-1)])) == INDEFINITE
    assert definiteness(MatrixQ([[9, QQ(-13, 2)], [QQ(-13, 2), 7]])) == POSITIVE_DEFINITE
    assert definiteness(MatrixQ.diag([QQ(-1), QQ(-2)])) == NEGATIVE_DEFINITE
    assert definiteness(MatrixQ.diag([QQ(1), QQ(0)])) == SEMIDEFINITE_DEGENERATE
    assert definiteness(MatrixQ([[0, 1], [1, 0]])) == INDEFINITE
    with pytest.raises(ValueError):
        definiteness(MatrixQ([[1, 2], [3, 4]]))


def test_definiteness_agrees_with_eigen_sign_counts():
    rng = random.Random(31)
    for _ in range(60):
        n = rng.randint(1, 6)
        m = rand_symmetric(rng, n, -4, 4, 2)
        neg, zero, pos = eigenvalue_sign_counts(m)
        cls = definiteness(m)
        if pos and neg:
            assert cls == INDEFINITE
        elif zero:
            assert cls == SEMIDEFINITE_DEGENERATE
        elif pos:
            assert cls == POSITIVE_DEFINITE
        else:
            assert cls == NEGATIVE_DEFINITE


def test_solve_linear_examples():
    rhs = VectorQ([QQ(1), QQ(1)])
    assert solve_linear(MatrixQ.identity(2), rhs) == rhs
    assert solve_linear(MatrixQ.diag([QQ(2), QQ(4)]), rhs) == VectorQ([QQ(1, 2), QQ(1, 4)])


def test_solve_linear_roundtrip():
    rng = random.Random(3)
    done = 0
    while done < 25:
        m = rand_matrix(rng, 4, 4)
        if not determinant(m):
            continue
        x = VectorQ([rand_rat(rng) for _ in range(4)])
        assert solve_linear(m, m * x) == x
        done += 1


def test_solve_linear_singular_raises():
    m = MatrixQ([[1, 2], [2, 4]])
    with pytest.raises(SingularMatrixError):
        solve_linear(m, VectorQ([1, 1]))


def test_rank():
    assert rank(MatrixQ([[1, 2], [2, 4]])) == 1
    assert rank(MatrixQ.identity(3)) == 3
    assert rank(MatrixQ([[0, 0], [0, 0]])) == 0


def test_char_poly_matches_eigen_structure():
    m = MatrixQ.diag([QQ(2), QQ(-1), QQ(2)])
    p = char_poly(m)
    x = UniPoly.x("x")
    assert p == (x - 2) ** 2 * (x + 1)


def test_det_unipoly_matrix():
    x = UniPoly.x("m")
    rows = [[x + 1, UniPoly.const(2, "m")], [UniPoly.const(3, "m"), x - 1]]
    assert det_unipoly_matrix(rows, "m") == x * x - 7


def test_det_bipoly_matrix():
    a = BiPoly.variable(0, ("s", "t"))
    b = BiPoly.variable(1, ("s", "t"))
    rows = [[a, b], [b, a]]
    assert det_bipoly_matrix(rows, ("s", "t")) == a * a - b * b
