"""Exact linear algebra over Q: Gram matrices of quadrics and matrix rank."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Sequence

from .errors import NonInvertible, NotQuadratic
from .poly import Poly, base_index, base_var, is_base_var

Matrix = list  # list[list[Fraction]]


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric matrix ``M`` with ``f(v) = v^T M v``."""

    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def quadratic_value(self, v: Sequence) -> Fraction:
        n = self.size
        return sum(
            (Fraction(v[i]) * self.entries[i][j] * Fraction(v[j]) for i in range(n) for j in range(n)),
            Fraction(0),
        )


def max_base_index(p: Poly) -> int:
    idx = [base_index(v) for v in p.variables() if is_base_var(v)]
    return max(idx, default=0)


def gram_matrix(f: Poly, level: int | None = None) -> GramMatrix:
    """Gram matrix of a quadratic form in ``x1..x_level``.

    ``level`` defaults to the largest variable index occurring in ``f``.
    """
    if not f.is_homogeneous(2):
        raise NotQuadratic(f"not a homogeneous quadratic: {f}")
    bad = [v for v in f.variables() if not is_base_var(v)]
    if bad:
        raise NotQuadratic(f"quadratic must be in x1..xN, found {sorted(bad)}")
    n = max_base_index(f) if level is None else level
    if max_base_index(f) > n:
        raise NotQuadratic(f"form uses variables beyond level {n}")
    M = [[Fraction(0)] * n for _ in range(n)]
    for mono, c in f.items():
        if len(mono) == 1:
            i = base_index(mono[0][0]) - 1
            M[i][i] = c
        else:
            i, j = (base_index(v) - 1 for v, _ in mono)
            M[i][j] = M[j][i] = c / 2
    return GramMatrix(tuple(tuple(r) for r in M))


def matrix_rank(M) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Rows are first scaled to integers; all pivoting then stays in Z.
    """
    rows = M.rows() if isinstance(M, GramMatrix) else [list(r) for r in M]
    if not rows or not rows[0]:
        return 0
    A = []
    for r in rows:
        r = [Fraction(x) for x in r]
        den = lcm(*(x.denominator for x in r)) if r else 1
        A.append([int(x * den) for x in r])
    nrows, ncols = len(A), len(A[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][col]
        for i in range(rank + 1, nrows):
            a = A[i][col]
            row_i, row_r = A[i], A[rank]
            for j in range(col, ncols):
                # Bareiss: the division is exact
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def mat_mul(A, B) -> Matrix:
    return [[sum((Fraction(A[i][k]) * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(len(B[0]))] for i in range(len(A))]


def transpose(A) -> Matrix:
    return [list(r) for r in zip(*A)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def inverse(A) -> Matrix:
    """Gauss-Jordan inverse over Q."""
    n = len(A)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            raise NonInvertible("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                a = aug[i][col]
                aug[i] = [x - a * y for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def quadratic_from_gram(M) -> Poly:
    """Inverse of :func:`gram_matrix`: the form ``v^T M v``."""
    rows = M.rows() if isinstance(M, GramMatrix) else M
    terms = []
    for i, row in enumerate(rows):
        for j, a in enumerate(row):
            if a:
                terms.append(({base_var(i + 1): 1, base_var(j + 1): 1} if i != j else {base_var(i + 1): 2}, Fraction(a)))
    return Poly.from_terms(terms)


def determinant(M) -> Fraction:
    """Exact determinant of a square matrix (Gaussian elimination over Q)."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("determinant needs a square matrix")
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        p = A[col][col]
        det *= p
        for i in range(col + 1, n):
            a = A[i][col] / p
            if a:
                A[i] = [x - a * y for x, y in zip(A[i], A[col])]
    return det


def _independent(rows) -> list[int]:
    chosen: list[int] = []
    for i in range(len(rows)):
        if matrix_rank([rows[j] for j in chosen + [i]]) > len(chosen):
            chosen.append(i)
    return chosen


def nonzero_minor(M, k: int) -> tuple[list[int], list[int], Fraction] | None:
    """Row and column indices of a nonzero ``k x k`` minor and its value, or
    ``None`` when every ``k``-minor vanishes (rank below ``k``)."""
    rows = M.rows() if isinstance(M, GramMatrix) else [list(r) for r in M]
    if k <= 0:
        return [], [], Fraction(1)
    R = _independent(rows)[:k]
    if len(R) < k:
        return None
    sub = [rows[i] for i in R]
    C = _independent(transpose(sub))[:k]
    det = determinant([[sub[a][c] for c in C] for a in range(k)])
    return R, C, det


def diagonalize(M) -> list[tuple[Fraction, list[Fraction]]]:
    """Write ``v^T M v`` as ``sum c * (w . v)^2`` over Q.

    Returns one ``(c, w)`` per unit of rank. Each step picks ``u`` with
    ``q = u^T M u != 0`` and subtracts ``(M u)(M u)^T / q``, which lowers
    the rank by one.
    """
    A = [[Fraction(x) for x in row] for row in (M.rows() if isinstance(M, GramMatrix) else M)]
    n = len(A)
    out = []
    while True:
        u = None
        for i in range(n):
            if A[i][i]:
                u = [Fraction(int(k == i)) for k in range(n)]
                break
        if u is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if A[i][j]), None)
            if pair is None:
                return out
            u = [Fraction(int(k in pair)) for k in range(n)]
        w = [sum((A[i][k] * u[k] for k in range(n)), Fraction(0)) for i in range(n)]
        q = sum((u[i] * w[i] for i in range(n)), Fraction(0))
        out.append((1 / q, w))
        A = [[A[i][j] - w[i] * w[j] / q for j in range(n)] for i in range(n)]


def bilinear(M, u, v) -> Fraction:
    n = len(M)
    return sum((Fraction(u[i]) * M[i][j] * v[j] for i in range(n) for j in range(n) if u[i] and v[j]), Fraction(0))


def _box_isotropic(Z, max_count: int):
    n = len(Z)
    bound = 1
    while (2 * bound + 3) ** n <= max_count:
        bound += 1
    # q(v) = sum_i v_i (Z v)_i; only the upper triangle is needed
    terms = [(i, j, Z[i][j] * (1 if i == j else 2)) for i in range(n) for j in range(i, n) if Z[i][j]]
    for seen, v in enumerate(itertools.product(range(-bound, bound + 1), repeat=n)):
        if seen >= max_count:
            break
        # first nonzero entry positive: v and -v are the same line
        if next((x for x in v if x), 0) <= 0:
            continue
        if sum(c * v[i] * v[j] for i, j, c in terms) == 0 and any(sum(a * b for a, b in zip(row, v)) for row in Z):
            return list(v)
    return None


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def _restricted_isotropic(Z, k: int, rng: random.Random, tries: int):
    """Restrict to random ``k``-dimensional integer subspaces (``k`` = 2 or 3)
    and solve the small form exactly."""
    import sympy
    from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic

    n = len(Z)
    zs = sympy.symbols("z0:3")
    for attempt in range(tries):
        span = 1 + attempt // 8
        basis = [[rng.randint(-span, span) for _ in range(n)] for _ in range(k)]
        Zb = [[sum(a * b for a, b in zip(row, p)) for row in Z] for p in basis]
        T = [[sum(a * b for a, b in zip(p, zq)) for zq in Zb] for p in basis]
        if determinant(T) == 0:
            continue
        if k == 2:
            a, b, c = T[0][0], T[0][1], T[1][1]
            root = _isqrt_exact(b * b - a * c)
            if root is None:
                continue
            # a z0^2 + 2 b z0 z1 + c z1^2 = 0
            z = (-b + root, a) if a else (1, 0)
        else:
            expr = sum(T[i][j] * zs[i] * zs[j] for i in range(3) for j in range(3))
            sol = diop_ternary_quadratic(expr)
            if sol is None or sol[0] is None:
                continue
            z = [int(x) for x in sol]
            # the solver is occasionally wrong; only checked answers count
            if not any(z) or sum(T[i][j] * z[i] * z[j] for i in range(3) for j in range(3)):
                continue
        v = [sum(z[i] * basis[i][j] for i in range(k)) for j in range(n)]
        g = gcd(*v)
        return [x // g for x in v]
    return None


def isotropic_vector(M, max_count: int = 2000, rng: random.Random | None = None, tries: int = 60):
    """A rational ``v`` with ``v^T M v = 0`` and ``M v != 0``, or ``None``.

    Small integer vectors are tried first. After that the form is restricted
    to random planes (rank 2) or 3-spaces (rank 3 and up) where the question
    is a ternary equation sympy solves exactly. ``None`` means the search
    found nothing, which is a proof of anisotropy only in rank <= 2.
    """
    n = len(M)
    if n == 0:
        return None
    den = lcm(*(Fraction(x).denominator for row in M for x in row))
    Z = [[int(Fraction(x) * den) for x in row] for row in M]
    v = _box_isotropic(Z, max_count)
    if v is None:
        rank = matrix_rank(Z)
        if rank >= 2:
            v = _restricted_isotropic(Z, 2 if rank == 2 else 3, rng or random.Random(0), tries)
    return None if v is None else [Fraction(x) for x in v]


def hyperbolic_split(M, max_count: int = 2000):
    """Split off hyperbolic planes over Q.

    Returns ``(pairs, rest)`` where ``pairs`` lists ``(a, b)`` coefficient
    vectors with ``v^T M v = sum 2 (a.v)(b.v) + v^T R v``, ``R = rest`` having
    no isotropic vector that the search could find.
    """
    A = [[Fraction(x) for x in row] for row in (M.rows() if isinstance(M, GramMatrix) else M)]
    n = len(A)
    pairs = []
    while True:
        v = isotropic_vector(A, max_count)
        if v is None:
            return pairs, A
        w = [sum((A[i][j] * v[j] for j in range(n)), Fraction(0)) for i in range(n)]
        k = next(i for i in range(n) if w[i])
        u = [Fraction(int(i == k)) / w[k] for i in range(n)]  # B(v, u) = 1
        qu = bilinear(A, u, u)
        u = [a - qu / 2 * b for a, b in zip(u, v)]  # now isotropic
        bu = [sum((A[i][j] * u[j] for j in range(n)), Fraction(0)) for i in range(n)]
        # x = B(u,x) v + B(v,x) u + (projection onto the orthogonal complement)
        pairs.append((bu, w))
        P = [[Fraction(int(i == j)) - v[i] * bu[j] - u[i] * w[j] for j in range(n)] for i in range(n)]
        A = mat_mul(transpose(P), mat_mul(A, P))
