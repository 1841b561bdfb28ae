"""Bounded Laurent points and their limits at ``t = 0``.

Only Laurent *polynomials* are represented: every point has finite support
``[-n, m]`` in the exponent of ``t``, so boundedness holds by construction
and ``n = pole_order`` is the witness that the point lies in
``t^-n`` times the power-series points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import PoleAtZero, SpaceMismatch
from .maps import PolyMap
from .poly import Poly, _coerce
from .repspace import CoordSpace, Point, gl_act


class LaurentPoly:
    """Finite sum ``sum_k c_k t^k`` with ``k`` in Z and polynomial coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        out = {}
        for k, c in (coeffs or {}).items():
            c = Poly.coerce(c)
            if c:
                out[int(k)] = c
        self.coeffs = out

    @classmethod
    def monomial(cls, c, k: int = 0) -> LaurentPoly:
        return cls({k: c})

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def valuation(self) -> int | None:
        return min(self.coeffs, default=None)

    @property
    def max_exponent(self) -> int | None:
        return max(self.coeffs, default=None)

    def coefficient(self, k: int) -> Poly:
        return self.coeffs.get(k, Poly())

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly({0: other})
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentPoly) else -Poly.coerce(other))

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, Poly):
                return LaurentPoly({k: c * other for k, c in self.coeffs.items()})
            try:
                c = _coerce(other)
            except TypeError:
                return NotImplemented
            return LaurentPoly({k: v.scale(c) for k, v in self.coeffs.items()})
        out: dict = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                prod = ca * cb
                out[a + b] = out[a + b] + prod if a + b in out else prod
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = LaurentPoly({0: 1})
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def times_t(self, s: int) -> LaurentPoly:
        """Multiply by ``t^s``."""
        return LaurentPoly({k + s: c for k, c in self.coeffs.items()})

    def truncate(self, upto: int) -> LaurentPoly:
        return LaurentPoly({k: c for k, c in self.coeffs.items() if k <= upto})

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly({0: other})
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            tt = "" if k == 0 else ("t" if k == 1 else f"t^{k}" if k > 0 else f"t^({k})")
            parts.append(f"({c})" + (f"*{tt}" if tt else ""))
        return " + ".join(parts)

    __repr__ = __str__


class LaurentPoint:
    """A bounded Laurent point: finitely many :class:`Point` coefficients."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: CoordSpace, coeffs: Mapping[int, Point | Sequence]):
        space.require_one_row()
        out = {}
        for k, p in coeffs.items():
            if not isinstance(p, Point):
                p = Point(space, p)
            space.check_same(p.space, f"coefficient t^{k}")
            if not p.is_zero:
                out[int(k)] = p
        self.space = space
        self.coeffs = dict(sorted(out.items()))

    @classmethod
    def constant(cls, p: Point) -> LaurentPoint:
        return cls(p.space, {0: p})

    @classmethod
    def from_slot_series(cls, space: CoordSpace, series: Sequence[LaurentPoly]) -> LaurentPoint:
        exps = sorted({k for s in series for k in s.coeffs})
        return cls(space, {k: Point(space, [s.coefficient(k) for s in series]) for k in exps})

    def slot_series(self, i: int) -> LaurentPoly:
        return LaurentPoly({k: p.forms[i] for k, p in self.coeffs.items()})

    def coefficient(self, k: int) -> Point:
        return self.coeffs.get(k) or self.space.zero()

    @property
    def min_exponent(self) -> int | None:
        return next(iter(self.coeffs), None)

    @property
    def max_exponent(self) -> int | None:
        return next(reversed(self.coeffs), None) if self.coeffs else None

    @property
    def pole_order(self) -> int:
        """Smallest ``n >= 0`` with ``t^n * self`` free of negative exponents."""
        lo = self.min_exponent
        return 0 if lo is None or lo >= 0 else -lo

    def slot_pole_order(self, i: int) -> int:
        v = self.slot_series(i).valuation
        return 0 if v is None or v >= 0 else -v

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def map_points(self, fn) -> LaurentPoint:
        return LaurentPoint(self.space, {k: fn(p) for k, p in self.coeffs.items()})

    def __add__(self, other: LaurentPoint) -> LaurentPoint:
        self.space.check_same(other.space)
        keys = set(self.coeffs) | set(other.coeffs)
        return LaurentPoint(self.space, {k: self.coefficient(k) + other.coefficient(k) for k in keys})

    def __eq__(self, other):
        return isinstance(other, LaurentPoint) and self.space == other.space and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.space, tuple(self.coeffs.items())))

    def __repr__(self):
        inner = ", ".join(f"{k}: {p.to_strings()}" for k, p in self.coeffs.items())
        return f"LaurentPoint({self.space}, {{{inner}}})"


def substitute_laurent(phi: PolyMap, y: LaurentPoint) -> LaurentPoint:
    """Plug the Laurent polynomials of ``y`` into ``phi`` and expand exactly."""
    if phi.source != y.space:
        raise SpaceMismatch(f"map source {phi.source} vs point space {y.space}")
    values = {nm: y.slot_series(i) for i, nm in enumerate(phi.source.names)}
    series = [e.evaluate(values, zero=LaurentPoly()) for e in phi.exprs]
    series = [s if isinstance(s, LaurentPoly) else LaurentPoly({0: s}) for s in series]
    return LaurentPoint.from_slot_series(phi.target, series)


def limit_at_zero(y: LaurentPoint) -> Point:
    """Value at ``t = 0``; raises :class:`PoleAtZero` if the limit does not exist."""
    lo = y.min_exponent
    if lo is not None and lo < 0:
        raise PoleAtZero(lo)
    return y.coefficient(0)


def shift_exponent(y: LaurentPoint, s: int) -> LaurentPoint:
    """Multiply by ``t^-s``: the coefficient at ``k + s`` moves to ``k``."""
    return LaurentPoint(y.space, {k - s: p for k, p in y.coeffs.items()})


def reparametrize(y: LaurentPoint, k: int) -> LaurentPoint:
    """Substitute ``t -> t^k``."""
    if k < 1:
        raise ValueError("reparametrization exponent must be positive")
    return LaurentPoint(y.space, {e * k: p for e, p in y.coeffs.items()})


def gl_act_laurent(g, y: LaurentPoint) -> LaurentPoint:
    return y.map_points(lambda p: gl_act(g, p))


@dataclass(frozen=True)
class LineCurve:
    """The curve ``c(t) = (1 - t) x + t y``, optionally carrying a constant
    point ``b`` of an auxiliary finite-dimensional factor."""

    x: Point
    y: Point
    b: tuple[Fraction, ...] | None = None

    def __call__(self, t0) -> Point:
        t0 = Fraction(t0)
        return self.x.scale(1 - t0) + self.y.scale(t0)

    def expand_at(self, t0) -> LaurentPoint:
        """The Laurent point ``c(t0 + t)``; its limit at 0 is ``c(t0)``."""
        return LaurentPoint(self.x.space, {0: self(t0), 1: self.y - self.x})


def line_curve(x: Point, y: Point, B_component: Sequence | None = None) -> LineCurve:
    x.space.check_same(y.space, "line endpoints")
    b = None if B_component is None else tuple(Fraction(c) for c in B_component)
    return LineCurve(x, y, b)


def expand_at(curve: LineCurve, t0) -> LaurentPoint:
    return curve.expand_at(t0)
