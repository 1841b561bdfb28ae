"""Partitions, coordinate spaces at finite level and their points.

A :class:`CoordSpace` is the level-``N`` specialization of a product of
spaces indexed by a tuple of partitions. Slots indexed by one-row partitions
``(d)`` are spaces of degree-``d`` forms in ``x1..xN``; their points are
stored as homogeneous :class:`~gllimits.poly.Poly` objects. Other partitions
carry dimensions only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .errors import LevelMismatch, NonInvertible, SpaceMismatch, UnsupportedSlot
from .linalg import matrix_rank
from .poly import Poly, base_index, base_var, coord_var, is_base_var, mono_from_dict


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def is_one_row(self) -> bool:
        return len(self.parts) == 1

    @property
    def is_empty(self) -> bool:
        return not self.parts

    def __len__(self):
        return len(self.parts)

    def to_list(self) -> list[int]:
        return list(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class PartitionTuple:
    partitions: tuple[Partition, ...]

    def __init__(self, partitions: Iterable):
        ps = tuple(p if isinstance(p, Partition) else Partition(p) for p in partitions)
        object.__setattr__(self, "partitions", ps)

    @property
    def pure(self) -> bool:
        return all(not p.is_empty for p in self.partitions)

    def __len__(self):
        return len(self.partitions)

    def __iter__(self):
        return iter(self.partitions)

    def __getitem__(self, i):
        return self.partitions[i]

    def to_list(self) -> list[list[int]]:
        return [p.to_list() for p in self.partitions]

    @classmethod
    def one_row(cls, degrees: Iterable[int]) -> PartitionTuple:
        return cls([[d] for d in degrees])


def schur_dim(lam, N: int) -> int:
    """dim S_lambda(K^N) by the hook-content formula."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    if len(lam.parts) > N:
        return 0
    conj = [sum(1 for p in lam.parts if p > j) for j in range(lam.parts[0])] if lam.parts else []
    num = den = 1
    for i, row in enumerate(lam.parts):
        for j in range(row):
            hook = (row - j) + (conj[j] - i) - 1
            num *= N + j - i
            den *= hook
    return num // den


@lru_cache(maxsize=None)
def monomial_basis(d: int, N: int) -> tuple:
    """Degree-``d`` monomials in ``x1..xN``, lex-descending (``x1^d`` first)."""
    out = []

    def rec(i, left, acc):
        if i == N - 1:
            out.append(tuple(acc + [left]))
            return
        for e in range(left, -1, -1):
            rec(i + 1, left - e, acc + [e])

    if N == 0:
        return ((),) if d == 0 else ()
    rec(0, d, [])
    return tuple(mono_from_dict({base_var(i + 1): e for i, e in enumerate(exps)}) for exps in out)


@dataclass(frozen=True)
class CoordSpace:
    """Level-``N`` coordinate space of a partition tuple.

    ``names`` label the slots (used as symbols by polynomial maps); they do
    not take part in equality.
    """

    tuple: PartitionTuple
    level: int
    names: tuple[str, ...] = field(default=(), compare=False)

    def __init__(self, tuple_, level: int, names: Sequence[str] | None = None):
        tp = tuple_ if isinstance(tuple_, PartitionTuple) else PartitionTuple(tuple_)
        if level < 0:
            raise ValueError("level must be nonnegative")
        if names is None:
            names = tuple(f"u{i + 1}" for i in range(len(tp)))
        names = tuple(names)
        if len(names) != len(tp):
            raise ValueError("one name per slot required")
        object.__setattr__(self, "tuple", tp)
        object.__setattr__(self, "level", int(level))
        object.__setattr__(self, "names", names)

    @classmethod
    def forms(cls, degrees: Sequence[int], level: int, names=None) -> CoordSpace:
        return cls(PartitionTuple.one_row(degrees), level, names)

    @property
    def slots(self) -> int:
        return len(self.tuple)

    def degree(self, i: int) -> int:
        return self.tuple[i].size

    @property
    def degrees(self) -> list[int]:
        return [p.size for p in self.tuple]

    @property
    def one_row(self) -> bool:
        return all(p.is_one_row for p in self.tuple)

    def slot_dim(self, i: int) -> int:
        return schur_dim(self.tuple[i], self.level)

    @property
    def coordinate_count(self) -> int:
        return sum(self.slot_dim(i) for i in range(self.slots))

    def require_one_row(self):
        if not self.one_row:
            bad = [str(p) for p in self.tuple if not p.is_one_row]
            raise UnsupportedSlot(f"forms are only available for one-row partitions, got {bad}")

    def basis(self, i: int) -> tuple:
        self.require_one_row()
        return monomial_basis(self.degree(i), self.level)

    def coordinate_vars(self, i: int, k: int | None = None) -> list[str]:
        return [coord_var(self.names[i], c + 1, k) for c in range(self.slot_dim(i))]

    def all_coordinate_vars(self, k: int | None = None) -> list[str]:
        return [v for i in range(self.slots) for v in self.coordinate_vars(i, k)]

    def generic_form(self, i: int, k: int | None = None) -> Poly:
        """Sum of coordinate variable times basis monomial for slot ``i``."""
        return Poly.from_terms(
            (dict(m) | {v: 1}, 1) for m, v in zip(self.basis(i), self.coordinate_vars(i, k))
        )

    def at_level(self, level: int) -> CoordSpace:
        return CoordSpace(self.tuple, level, self.names)

    def with_names(self, names) -> CoordSpace:
        return CoordSpace(self.tuple, self.level, names)

    def zero(self) -> Point:
        self.require_one_row()
        return Point(self, [Poly()] * self.slots)

    def check_same(self, other: CoordSpace, what="space"):
        if self != other:
            raise SpaceMismatch(f"{what}: {describe(self)} vs {describe(other)}")

    def __str__(self):
        return describe(self)


def describe(space: CoordSpace) -> str:
    return f"{space.tuple.to_list()}@N={space.level}"


class Point:
    """An exact point of a one-row coordinate space: one form per slot."""

    __slots__ = ("space", "forms")

    def __init__(self, space: CoordSpace, forms: Sequence):
        space.require_one_row()
        forms = tuple(Poly.coerce(f) if not isinstance(f, str) else _parse(f) for f in forms)
        if len(forms) != space.slots:
            raise SpaceMismatch(f"expected {space.slots} slot forms, got {len(forms)}")
        for i, f in enumerate(forms):
            if f.is_zero:
                continue
            if not f.is_homogeneous(space.degree(i)):
                raise SpaceMismatch(f"slot {i} needs a form of degree {space.degree(i)}, got {f}")
            for v in f.variables():
                if not is_base_var(v) or base_index(v) > space.level:
                    raise SpaceMismatch(f"slot {i}: variable {v} is not among x1..x{space.level}")
        self.space = space
        self.forms = forms

    @classmethod
    def from_coordinates(cls, space: CoordSpace, vectors: Sequence[Sequence]) -> Point:
        forms = []
        for i, vec in enumerate(vectors):
            basis = space.basis(i)
            if len(vec) != len(basis):
                raise SpaceMismatch(f"slot {i} has {len(basis)} coordinates, got {len(vec)}")
            forms.append(Poly({m: Fraction(c) for m, c in zip(basis, vec) if c}))
        return cls(space, forms)

    def coordinates(self) -> list[list[Fraction]]:
        return [[f.coefficient(m) for m in self.space.basis(i)] for i, f in enumerate(self.forms)]

    def flat_coordinates(self) -> list[Fraction]:
        return [c for vec in self.coordinates() for c in vec]

    def coordinate_assignment(self, k: int | None = None) -> dict[str, Fraction]:
        """Map coordinate variable names to this point's values."""
        out = {}
        for i, vec in enumerate(self.coordinates()):
            out.update(zip(self.space.coordinate_vars(i, k), vec))
        return out

    @property
    def is_zero(self) -> bool:
        return all(f.is_zero for f in self.forms)

    def __getitem__(self, i):
        return self.forms[i]

    def __iter__(self):
        return iter(self.forms)

    def __len__(self):
        return len(self.forms)

    def __add__(self, other: Point) -> Point:
        self.space.check_same(other.space)
        return Point(self.space, [a + b for a, b in zip(self.forms, other.forms)])

    def __sub__(self, other: Point) -> Point:
        self.space.check_same(other.space)
        return Point(self.space, [a - b for a, b in zip(self.forms, other.forms)])

    def __neg__(self):
        return Point(self.space, [-a for a in self.forms])

    def scale(self, c) -> Point:
        return Point(self.space, [a.scale(c) for a in self.forms])

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Point) and self.space == other.space and self.forms == other.forms

    def __hash__(self):
        return hash((self.space, self.forms))

    def to_strings(self) -> list[str]:
        return [str(f) for f in self.forms]

    def __repr__(self):
        return f"Point({describe(self.space)}, {self.to_strings()})"


def _parse(text):
    from .poly import parse_poly

    return parse_poly(text)


def _substitution_for(g, N: int) -> dict[str, Poly]:
    # x_j -> sum_i g[i][j] x_i
    return {
        base_var(j + 1): Poly.from_terms(({base_var(i + 1): 1}, Fraction(g[i][j])) for i in range(N) if g[i][j])
        for j in range(N)
    }


def gl_act(g: Sequence[Sequence], p: Point) -> Point:
    """Act by an invertible ``N x N`` matrix: every form ``f`` becomes ``f``
    after the substitution ``x_j -> sum_i g[i][j] x_i``.

    With this convention ``gl_act(g @ h, p) == gl_act(g, gl_act(h, p))``.
    """
    p.space.require_one_row()
    N = p.space.level
    if len(g) != N or any(len(row) != N for row in g):
        raise SpaceMismatch(f"matrix must be {N}x{N}")
    if matrix_rank(g) != N:
        raise NonInvertible("group element must be invertible")
    sub = _substitution_for(g, N)
    return Point(p.space, [f.subs(sub) for f in p.forms])


def act_on_form(g: Sequence[Sequence], f: Poly) -> Poly:
    """Same change of variables applied to a bare form in ``x1..xN``."""
    N = len(g)
    if matrix_rank(g) != N:
        raise NonInvertible("group element must be invertible")
    return f.subs(_substitution_for(g, N))


def specialize_point(p: Point, M: int) -> Point:
    """Project from level ``N`` to level ``M <= N`` by killing ``x_{M+1..N}``."""
    N = p.space.level
    if M > N or M < 0:
        raise LevelMismatch(f"cannot specialize level {N} to level {M}")
    kill = {base_var(j): Poly() for j in range(M + 1, N + 1)}
    return Point(p.space.at_level(M), [f.subs(kill) for f in p.forms])


def embed_point(p: Point, N: int) -> Point:
    """View a level-``M`` point at level ``N >= M`` (section of the projection)."""
    M = p.space.level
    if N < M:
        raise LevelMismatch(f"cannot embed level {M} into level {N}")
    return Point(p.space.at_level(N), p.forms)
