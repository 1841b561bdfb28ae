"""Equivariant polynomial maps between one-row coordinate spaces.

A map is given slotwise: each target slot is a polynomial in the source slot
symbols, read as an identity of forms (``f*g - h^2`` multiplies quadrics).
Such a map commutes with the change-of-variables action at every level, and
its coordinate components at level ``N`` are obtained by expanding generic
forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NotEquivariant, SpaceMismatch
from .poly import Poly, is_base_var, parse_poly
from .repspace import CoordSpace, Point


class PolyMap:
    __slots__ = ("source", "target", "exprs", "degree", "_coord_cache")

    def __init__(self, source: CoordSpace, target: CoordSpace, exprs: Sequence):
        source.require_one_row()
        target.require_one_row()
        if source.level != target.level:
            raise SpaceMismatch("source and target must have the same level")
        exprs = tuple(parse_poly(e) if isinstance(e, str) else e for e in exprs)
        if len(exprs) != target.slots:
            raise SpaceMismatch(f"need one expression per target slot ({target.slots}), got {len(exprs)}")
        names = set(source.names)
        if len(names) != source.slots:
            raise ValueError("source slot names must be distinct")
        for nm in list(source.names) + list(target.names):
            if nm == "t" or is_base_var(nm):
                raise ValueError(f"slot name {nm!r} is reserved")
        weight = dict(zip(source.names, source.degrees))
        for j, e in enumerate(exprs):
            extra = e.variables() - names
            if extra:
                raise SpaceMismatch(f"target slot {j} uses unknown symbols {sorted(extra)}")
            for mono, _ in e.items():
                w = sum(weight[v] * k for v, k in mono)
                if w != target.degree(j):
                    raise NotEquivariant(
                        f"term of central degree {w} in a slot of degree {target.degree(j)}: {e}"
                    )
        self.source = source
        self.target = target
        self.exprs = exprs
        self.degree = max((e.degree() for e in exprs), default=0)
        self._coord_cache = None

    @classmethod
    def forms(cls, source_degrees, target_degrees, exprs, level: int, source_names=None, target_names=None):
        return cls(
            CoordSpace.forms(source_degrees, level, source_names),
            CoordSpace.forms(target_degrees, level, target_names or [f"w{i + 1}" for i in range(len(target_degrees))]),
            exprs,
        )

    def at_level(self, level: int) -> PolyMap:
        return PolyMap(self.source.at_level(level), self.target.at_level(level), self.exprs)

    @property
    def level(self) -> int:
        return self.source.level

    def __call__(self, p: Point) -> Point:
        self.source.check_same(p.space, "map source")
        vals = dict(zip(self.source.names, p.forms))
        return Point(self.target, [Poly.coerce(e.evaluate(vals, zero=Poly())) for e in self.exprs])

    def coordinate_components(self) -> list[tuple[str, Poly]]:
        """``(target coordinate variable, polynomial in source coordinates)`` pairs."""
        if self._coord_cache is None:
            generic = {nm: self.source.generic_form(i) for i, nm in enumerate(self.source.names)}
            out = []
            for j, e in enumerate(self.exprs):
                expanded = Poly.coerce(e.evaluate(generic, zero=Poly()))
                xs = {v for v in expanded.variables() if is_base_var(v)}
                split = expanded.coefficients_in(xs)
                for mono, var in zip(self.target.basis(j), self.target.coordinate_vars(j)):
                    out.append((var, split.get(mono, Poly())))
            self._coord_cache = out
        return list(self._coord_cache)

    def jacobian_at(self, values: dict[str, Fraction]) -> list[list[Fraction]]:
        """Jacobian of the coordinate components at a source coordinate assignment."""
        comps = self.coordinate_components()
        svars = self.source.all_coordinate_vars()
        rows = []
        for _, c in comps:
            rows.append([_partial(c, v).evaluate(values) for v in svars])
        return rows

    def __repr__(self):
        return (
            f"PolyMap({self.source.tuple.to_list()} -> {self.target.tuple.to_list()} @N={self.level}: "
            + ", ".join(str(e) for e in self.exprs)
            + ")"
        )


def _partial(p: Poly, v: str) -> Poly:
    out = {}
    for mono, c in p.items():
        for i, (w, e) in enumerate(mono):
            if w == v:
                m2 = mono[:i] + (((w, e - 1),) if e > 1 else ()) + mono[i + 1 :]
                out[m2] = out.get(m2, 0) + c * e
    return Poly({m: c for m, c in out.items() if c})


def identity_map(space: CoordSpace) -> PolyMap:
    target = space.with_names([f"w{i + 1}" for i in range(space.slots)])
    return PolyMap(space, target, [Poly.var(n) for n in space.names])
