import random
from fractions import Fraction

import pytest
import sympy

from _helpers import derived
from gllimits import NotQuadratic, P, gram_matrix, matrix_rank
from gllimits.linalg import (
    determinant,
    diagonalize,
    hyperbolic_split,
    identity,
    inverse,
    mat_mul,
    nonzero_minor,
    quadratic_from_gram,
    transpose,
)
from gllimits.sampling import random_form, random_gl, random_product_quadric, random_rational


def test_gram_examples():
    assert gram_matrix(P("x1^2"), 3).rows() == [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
    h = Fraction(1, 2)
    assert gram_matrix(P("x1*x2")).rows() == [[0, h], [h, 0]]
    want = [[Fraction(c) for c in row] for row in derived()["gram_x1x2_x3x4"]]
    assert gram_matrix(P("x1*x2 + x3*x4")).rows() == want


@pytest.mark.parametrize("bad", ["x1", "x1^2 + x2", "x1^3", "x1*y", "1"])
def test_gram_rejects(bad):
    with pytest.raises(NotQuadratic):
        gram_matrix(P(bad))


def test_rank_examples():
    assert matrix_rank([[0, 0], [0, 0]]) == 0
    assert matrix_rank(identity(5)) == 5
    assert matrix_rank(gram_matrix(P("x1*x2 + x3*x4"))) == derived()["rank_x1x2_x3x4"]
    assert matrix_rank([]) == 0


def test_rank_matches_sympy():
    rng = random.Random(11)
    for _ in range(60):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        k = rng.randint(0, min(r, c))
        A = [[random_rational(rng) for _ in range(k)] for _ in range(r)]
        B = [[random_rational(rng) for _ in range(c)] for _ in range(k)]
        M = mat_mul(A, B) if k else [[Fraction(0)] * c for _ in range(r)]
        assert matrix_rank(M) == sympy.Matrix(M).rank()


def test_gram_evaluation_consistency():
    rng = random.Random(3)
    for _ in range(40):
        N = rng.randint(1, 5)
        f = random_form(rng, 2, N)
        if f.is_zero:
            continue
        G = gram_matrix(f, N)
        v = [random_rational(rng) for _ in range(N)]
        assert G.quadratic_value(v) == f.evaluate({f"x{i + 1}": v[i] for i in range(N)})
        assert quadratic_from_gram(G) == f


def test_rank_congruence_invariant():
    rng = random.Random(5)
    for _ in range(40):
        N = rng.randint(1, 5)
        f = random_product_quadric(rng, rng.randint(1, 3), N)
        if f.is_zero:
            continue
        M = gram_matrix(f, N).rows()
        A = random_gl(rng, N)
        assert matrix_rank(mat_mul(transpose(A), mat_mul(M, A))) == matrix_rank(M)


def test_inverse_and_determinant():
    rng = random.Random(2)
    for _ in range(20):
        N = rng.randint(1, 4)
        g = random_gl(rng, N)
        assert mat_mul(g, inverse(g)) == identity(N)
        assert determinant(g) == sympy.Matrix(g).det()


def test_nonzero_minor():
    M = gram_matrix(P("x1*x2 + x3*x4")).rows()
    rows, cols, det = nonzero_minor(M, 3)
    assert det != 0 and determinant([[M[i][j] for j in cols] for i in rows]) == det
    assert nonzero_minor(M, 5) is None


def test_diagonalize_and_split():
    rng = random.Random(9)
    for _ in range(30):
        N = rng.randint(1, 5)
        f = random_form(rng, 2, N)
        if f.is_zero:
            continue
        M = gram_matrix(f, N).rows()
        xs = [P(f"x{i + 1}") for i in range(N)]

        def lin(w):
            return sum((xs[i].scale(w[i]) for i in range(N)), P("0"))

        diag = diagonalize(M)
        assert len(diag) == matrix_rank(M)
        assert sum((lin(w) ** 2 * c for c, w in diag), P("0")) == f
        pairs, rest = hyperbolic_split(M)
        back = sum((lin(a) * lin(b) * 2 for a, b in pairs), P("0")) + quadratic_from_gram(rest)
        assert back == f
        assert matrix_rank(rest) == matrix_rank(M) - 2 * len(pairs)


def test_isotropic_vector_large_entries():
    from gllimits.linalg import bilinear, isotropic_vector

    # (x1 + 7 x2 - 9 x3)(5 x1 - 11 x3 + 13 x4) + (3 x2 + 17 x4)(x1 - 8 x3): no tiny isotropic vectors
    f = P("(x1 + 7*x2 - 9*x3)*(5*x1 - 11*x3 + 13*x4) + (3*x2 + 17*x4)*(x1 - 8*x3)")
    M = gram_matrix(f).rows()
    v = isotropic_vector(M)
    assert v is not None and bilinear(M, v, v) == 0
    assert any(sum(a * b for a, b in zip(row, v)) for row in M)


def test_isotropic_vector_anisotropic_binary():
    from gllimits.linalg import isotropic_vector

    assert isotropic_vector(gram_matrix(P("x1^2 + x2^2")).rows()) is None
    assert isotropic_vector(gram_matrix(P("x1^2 - 2*x2^2 + 0*x3^2")).rows()) is None
