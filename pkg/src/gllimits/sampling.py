"""Seeded random instances: rationals, forms, points, maps, Laurent points,
invertible matrices. Every function takes an explicit ``random.Random``."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Sequence

from .laurent import LaurentPoint
from .linalg import matrix_rank
from .maps import PolyMap
from .poly import Poly, base_var
from .repspace import CoordSpace, Point, monomial_basis


def random_rational(rng: random.Random, span: int = 5, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_nonzero(rng: random.Random, span: int = 5, den: int = 3) -> Fraction:
    while True:
        c = random_rational(rng, span, den)
        if c:
            return c


def random_form(rng: random.Random, d: int, N: int, density: float = 0.6, span: int = 5) -> Poly:
    """Random degree-``d`` form in ``x1..xN``; each monomial kept with probability ``density``."""
    terms = [(m, random_nonzero(rng, span)) for m in monomial_basis(d, N) if rng.random() < density]
    return Poly(dict(terms))


def random_linear_form(rng: random.Random, N: int, span: int = 5) -> Poly:
    return Poly.from_terms(({base_var(i + 1): 1}, Fraction(rng.randint(-span, span))) for i in range(N))


def random_point(rng: random.Random, space: CoordSpace, density: float = 0.6) -> Point:
    return Point(space, [random_form(rng, space.degree(i), space.level, density) for i in range(space.slots)])


def random_laurent_point(
    rng: random.Random, space: CoordSpace, n: int, m: int, density: float = 0.5
) -> LaurentPoint:
    return LaurentPoint(space, {k: random_point(rng, space, density) for k in range(-n, m + 1)})


def random_gl(rng: random.Random, N: int, span: int = 3) -> list[list[Fraction]]:
    """Random invertible ``N x N`` rational matrix."""
    while True:
        g = [[random_rational(rng, span, 2) for _ in range(N)] for _ in range(N)]
        if matrix_rank(g) == N:
            return g


def slot_monomials(degrees: Sequence[int], names: Sequence[str], weight: int, max_degree: int) -> list[dict]:
    """Monomials in the slot symbols of central weight ``weight`` and total degree ``<= max_degree``."""
    out = []
    for exps in itertools.product(*(range(weight // d + 1) for d in degrees)):
        if sum(e * d for e, d in zip(exps, degrees)) == weight and 0 < sum(exps) <= max_degree:
            out.append({nm: e for nm, e in zip(names, exps) if e})
    return out


def random_map(
    rng: random.Random,
    source_degrees: Sequence[int],
    target_degrees: Sequence[int],
    level: int,
    max_degree: int,
    density: float = 0.7,
) -> PolyMap:
    """Random equivariant map; each target slot a random combination of the
    slot monomials of the right central weight. Empty choices give a zero slot."""
    names = [f"s{i + 1}" for i in range(len(source_degrees))]
    exprs = []
    for D in target_degrees:
        monos = slot_monomials(source_degrees, names, D, max_degree)
        picked = [m for m in monos if rng.random() < density] or monos[:1]
        exprs.append(Poly.from_terms((m, random_nonzero(rng)) for m in picked))
    tnames = [f"w{i + 1}" for i in range(len(target_degrees))]
    return PolyMap.forms(source_degrees, target_degrees, exprs, level, names, tnames)


def random_product_quadric(rng: random.Random, k: int, N: int) -> Poly:
    """``sum_{i<=k} l_{2i-1} l_{2i}`` with random linear forms in ``x1..xN``."""
    f = Poly()
    for _ in range(k):
        f = f + random_linear_form(rng, N) * random_linear_form(rng, N)
    return f
