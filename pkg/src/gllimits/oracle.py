"""Brute-force verifier at finite level: Groebner bases over Q.

Buchberger's algorithm with the Gebauer-Moeller pair criteria and the sugar
selection strategy, a hard step budget, elimination ideals, implicitization
of polynomial maps and a small rational point finder for zero- and
positive-dimensional systems.
"""

from __future__ import annotations

import heapq
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BasisMissing, OracleTimeout, ResourceLimit
from .linalg import matrix_rank
from .maps import PolyMap
from .poly import Poly, var_key
from .repspace import Point

DEFAULT_STEP_BUDGET = 2_000_000
BUDGET_ENV = "GLLIMITS_STEP_BUDGET"


def default_budget() -> int:
    val = os.environ.get(BUDGET_ENV)
    return int(val) if val else DEFAULT_STEP_BUDGET


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex`` or ``block``; a block order compares the
    ``eliminate`` variables first (grevlex within each block)."""

    kind: str = "grevlex"
    eliminate: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        object.__setattr__(self, "eliminate", tuple(self.eliminate))

    def arrange(self, variables: Iterable[str]) -> list[str]:
        vs = sorted(set(variables), key=var_key)
        if self.kind != "block":
            return vs
        elim = set(self.eliminate)
        return [v for v in vs if v in elim] + [v for v in vs if v not in elim]

    def __str__(self):
        if self.kind == "block":
            return f"block({', '.join(sorted(self.eliminate, key=var_key))})"
        return self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def _grevlex_neg(e):
    return (-sum(e),) + tuple(reversed(e))


class _Ring:
    """Dense exponent tuples over a fixed variable list; ``key`` sorts larger monomials first."""

    def __init__(self, variables: list[str], order: MonomialOrder):
        self.vars = variables
        self.pos = {v: i for i, v in enumerate(variables)}
        self.n = len(variables)
        if order.kind == "lex":
            self.key = lambda e: tuple(-x for x in e)
        elif order.kind == "grevlex":
            self.key = _grevlex_neg
        else:
            k = sum(1 for v in variables if v in set(order.eliminate))
            self.key = lambda e: _grevlex_neg(e[:k]) + _grevlex_neg(e[k:])

    def to_internal(self, p: Poly) -> dict:
        out = {}
        for mono, c in p.items():
            e = [0] * self.n
            for v, k in mono:
                e[self.pos[v]] = k
            out[tuple(e)] = c
        return out

    def to_poly(self, d: dict) -> Poly:
        terms = {}
        for e, c in d.items():
            terms[tuple((self.vars[i], k) for i, k in enumerate(e) if k)] = c
        return Poly(terms)

    def sorted_items(self, d: dict) -> list:
        return sorted(d.items(), key=lambda ec: self.key(ec[0]))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Budget:
    def __init__(self, limit: int, what: str):
        self.limit = limit
        self.used = 0
        self.what = what

    def tick(self, k: int = 1):
        self.used += k
        if self.used > self.limit:
            raise OracleTimeout(self.what, self.limit)


# Exponent vectors are also packed into one int (W bits per variable, top bit
# of each field a guard) so divisibility is a single subtraction.
_W = 16


def _pack(e) -> int:
    v = 0
    for x in reversed(e):
        v = (v << _W) | x
    return v


def _guard(n: int) -> int:
    g = 0
    for _ in range(n):
        g = (g << _W) | (1 << (_W - 1))
    return g


class _Elem:
    __slots__ = ("items", "lm", "pk", "sugar")

    def __init__(self, items, sugar):
        self.items = items  # [(exp, coeff)], sorted, monic
        self.lm = items[0][0]
        self.pk = _pack(self.lm)
        self.sugar = sugar


def _reduce(ring: _Ring, f: dict, basis: list[_Elem], budget: _Budget, full: bool = True) -> dict:
    key = ring.key
    G = _guard(ring.n)
    p = dict(f)
    heap = [(key(e), e) for e in p]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = p.pop(e, None)
        if c is None:
            continue
        pe = _pack(e) | G
        g = None
        for cand in basis:
            if (pe - cand.pk) & G == G:
                g = cand
                break
        if g is None:
            rem[e] = c
            if not full:
                rem.update(p)
                return rem
            continue
        budget.tick()
        shift = tuple(x - y for x, y in zip(e, g.lm))
        for ge, gc in g.items[1:]:
            ne = tuple(x + y for x, y in zip(ge, shift))
            nc = p.get(ne)
            if nc is None:
                p[ne] = -c * gc
                heapq.heappush(heap, (key(ne), ne))
            else:
                nc -= c * gc
                if nc:
                    p[ne] = nc
                else:
                    del p[ne]
    return rem


def _make_elem(ring: _Ring, d: dict, sugar: int) -> _Elem:
    items = ring.sorted_items(d)
    lc = items[0][1]
    if lc != 1:
        items = [(e, c / lc) for e, c in items]
    return _Elem(items, sugar)


def _spoly(a: _Elem, b: _Elem) -> tuple[dict, int]:
    L = _lcm(a.lm, b.lm)
    sa = tuple(x - y for x, y in zip(L, a.lm))
    sb = tuple(x - y for x, y in zip(L, b.lm))
    out: dict = {}
    for e, c in a.items[1:]:
        ne = tuple(x + y for x, y in zip(e, sa))
        out[ne] = out.get(ne, 0) + c
    for e, c in b.items[1:]:
        ne = tuple(x + y for x, y in zip(e, sb))
        v = out.get(ne, 0) - c
        if v:
            out[ne] = v
        else:
            out.pop(ne, None)
    sugar = max(a.sugar + sum(sa), b.sugar + sum(sb))
    return {e: c for e, c in out.items() if c}, sugar


def _groebner_internal(ring: _Ring, polys: list[dict], budget: _Budget) -> list[_Elem]:
    GM = _guard(ring.n)
    elems: list[_Elem] = []
    G: list[int] = []
    # pair records: (sugar, key(lcm), i, j, packed lcm)
    B: list[tuple] = []

    def pdiv(a: int, b: int) -> bool:
        return ((b | GM) - a) & GM == GM

    def record(i: int, j: int, L) -> tuple:
        a, b = elems[i], elems[j]
        dl = sum(L)
        sugar = max(a.sugar + dl - sum(a.lm), b.sugar + dl - sum(b.lm))
        return (sugar, ring.key(L), i, j, _pack(L))

    def update(h: int):
        nonlocal G, B
        hl = elems[h].lm
        hp = elems[h].pk
        lc = {g: _lcm(elems[g].lm, hl) for g in G}
        lp = {g: _pack(L) for g, L in lc.items()}
        C = list(G)
        D = []
        while C:
            g1 = C.pop()
            l1 = lp[g1]
            if _coprime(elems[g1].lm, hl) or not any(pdiv(lp[g2], l1) for g2 in C) and not any(
                pdiv(lp[g2], l1) for g2 in D
            ):
                D.append(g1)
        E = [record(g, h, lc[g]) for g in D if not _coprime(elems[g].lm, hl)]
        Bn = []
        for rec in B:
            _, _, g1, g2, L = rec
            if pdiv(hp, L):
                l1 = lp.get(g1)
                if l1 is None:
                    l1 = _pack(_lcm(elems[g1].lm, hl))
                l2 = lp.get(g2)
                if l2 is None:
                    l2 = _pack(_lcm(elems[g2].lm, hl))
                if l1 != L and l2 != L:
                    continue
            Bn.append(rec)
        B = Bn + E
        heapq.heapify(B)
        G = [g for g in G if not pdiv(hp, elems[g].pk)] + [h]

    # Seed with the inputs, reducing each against what is already there.
    seeds = [p for p in polys if p]
    seeds.sort(key=lambda d: ring.key(min(d, key=ring.key)), reverse=True)
    for d in seeds:
        r = _reduce(ring, d, [elems[g] for g in G], budget)
        if not r:
            continue
        elems.append(_make_elem(ring, r, max(sum(e) for e in r)))
        if all(x == 0 for x in elems[-1].lm):
            return [elems[-1]]
        update(len(elems) - 1)

    while B:
        _, _, i, j, _ = heapq.heappop(B)
        budget.tick()
        s, sugar = _spoly(elems[i], elems[j])
        if not s:
            continue
        r = _reduce(ring, s, [elems[g] for g in G], budget)
        if not r:
            continue
        elems.append(_make_elem(ring, r, sugar))
        if all(x == 0 for x in elems[-1].lm):
            return [elems[-1]]
        update(len(elems) - 1)

    # Reduced basis: drop redundant leading terms, then tail-reduce.
    basis = [elems[g] for g in G]
    basis = [b for b in basis if not any(o is not b and pdiv(o.pk, b.pk) for o in basis)]
    out = []
    for b in basis:
        others = [o for o in basis if o is not b]
        r = _reduce(ring, dict(b.items), others, budget)
        out.append(_make_elem(ring, r, b.sugar))
    out.sort(key=lambda g: ring.key(g.lm))
    return out


@dataclass
class Ideal:
    """Polynomial ideal with an optional reduced Groebner basis."""

    generators: list[Poly]
    order: MonomialOrder = GREVLEX
    variables: list[str] | None = None
    basis: list[Poly] | None = None
    reduced: bool = False
    _ring: _Ring | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.generators = [Poly.coerce(g) for g in self.generators]
        vs = set(self.variables or ())
        for g in self.generators:
            vs |= g.variables()
        self.variables = self.order.arrange(vs)

    @property
    def ring(self) -> _Ring:
        if self._ring is None:
            self._ring = _Ring(self.variables, self.order)
        return self._ring

    @property
    def is_unit(self) -> bool:
        return self.basis is not None and len(self.basis) == 1 and self.basis[0] == 1

    @property
    def is_zero_ideal(self) -> bool:
        return all(g.is_zero for g in self.generators)

    def leading_monomial(self, p: Poly) -> Poly:
        d = self.ring.to_internal(p)
        e = min(d, key=self.ring.key)
        return self.ring.to_poly({e: Fraction(1)})

    def __str__(self):
        gens = self.basis if self.basis is not None else self.generators
        return f"<{', '.join(str(g) for g in gens)}> [{self.order}]"


def buchberger(I: Ideal, budget: int | None = None) -> Ideal:
    """Return a copy of ``I`` carrying its reduced Groebner basis."""
    ring = I.ring
    b = _Budget(budget or default_budget(), "buchberger")
    elems = _groebner_internal(ring, [ring.to_internal(g) for g in I.generators], b)
    basis = [ring.to_poly(dict(e.items)) for e in elems]
    return Ideal(list(I.generators), I.order, list(I.variables), basis, True, ring)


def groebner(generators: Sequence, order: MonomialOrder = GREVLEX, variables=None, budget: int | None = None) -> Ideal:
    return buchberger(Ideal(list(generators), order, list(variables or [])), budget)


def normal_form(f: Poly, I: Ideal, budget: int | None = None) -> Poly:
    """Remainder of ``f`` modulo the Groebner basis of ``I``; zero iff ``f`` is in ``I``."""
    if I.basis is None:
        raise BasisMissing("compute the Groebner basis first")
    f = Poly.coerce(f)
    extra = f.variables() - set(I.variables)
    ring = I.ring if not extra else _Ring(I.order.arrange(set(I.variables) | extra), I.order)
    elems = []
    for g in I.basis:
        d = ring.to_internal(g)
        elems.append(_Elem(ring.sorted_items(d), 0))
    b = _Budget(budget or default_budget(), "normal_form")
    return ring.to_poly(_reduce(ring, ring.to_internal(f), elems, b))


def s_polynomial(f: Poly, g: Poly, I: Ideal) -> Poly:
    ring = I.ring
    a = _make_elem(ring, ring.to_internal(f), 0)
    b = _make_elem(ring, ring.to_internal(g), 0)
    s, _ = _spoly(a, b)
    return ring.to_poly(s)


def eliminate(generators: Sequence[Poly], variables: Iterable[str], budget: int | None = None) -> Ideal:
    """Elimination ideal: generators of ``<generators>`` free of ``variables``."""
    elim = tuple(sorted(set(variables), key=var_key))
    I = groebner(generators, MonomialOrder("block", elim), budget=budget)
    keep = [g for g in I.basis if not (g.variables() & set(elim))]
    rest = [v for v in I.variables if v not in set(elim)]
    return Ideal(keep, GREVLEX, rest, keep, True)


def _random_assignment(variables, rng: random.Random, span: int = 50) -> dict[str, Fraction]:
    return {v: Fraction(rng.randint(-span, span)) for v in variables}


def is_dominant(phi: PolyMap, rng: random.Random | None = None, tries: int = 3) -> bool:
    """Full-rank Jacobian at some rational point proves the image is dense."""
    rng = rng or random.Random(0)
    svars = phi.source.all_coordinate_vars()
    ntarget = phi.target.coordinate_count
    for _ in range(tries):
        J = phi.jacobian_at(_random_assignment(svars, rng))
        if matrix_rank(J) == ntarget:
            return True
    return False


def implicitize_polys(components: Sequence[tuple[str, Poly]], source_vars: Sequence[str], budget: int | None = None) -> Ideal:
    """Ideal of the image closure of ``source -> (target_var = component)``."""
    gens = [Poly.var(t) - c for t, c in components]
    I = eliminate(gens, source_vars, budget)
    targets = [t for t, _ in components]
    return Ideal(I.basis, GREVLEX, targets, I.basis, True)


def implicitize(phi: PolyMap, N: int | None = None, budget: int | None = None, shortcut: bool = True) -> Ideal:
    """Ideal in the target coordinates whose zero set is the image closure of ``phi`` at level ``N``."""
    if N is not None and N != phi.level:
        phi = phi.at_level(N)
    comps = phi.coordinate_components()
    targets = [t for t, _ in comps]
    if shortcut and is_dominant(phi):
        return Ideal([], GREVLEX, targets, [], True)
    return implicitize_polys(comps, phi.source.all_coordinate_vars(), budget)


def border_membership(f: Point, phi: PolyMap, N: int | None = None, ideal: Ideal | None = None, budget: int | None = None) -> bool:
    """Whether ``f`` lies in the closure of the image of ``phi`` at level ``N``."""
    if N is not None and N != phi.level:
        phi = phi.at_level(N)
    phi.target.check_same(f.space, "membership point")
    I = ideal if ideal is not None else implicitize(phi, budget=budget)
    assignment = Point(phi.target, f.forms).coordinate_assignment()
    return all(Poly.coerce(g).evaluate(assignment) == 0 for g in I.basis)


# ---------------------------------------------------------------------------
# rational points


@dataclass
class SolveResult:
    status: str  # "found" | "inconsistent" | "no_rational_witness"
    solution: dict[str, Fraction] | None = None


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Rational roots of ``sum coeffs[i] v^i`` (sympy factorization over Q)."""
    import sympy

    v = sympy.Symbol("v")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * v**i for i, c in enumerate(coeffs))
    if expr == 0:
        raise ValueError("zero polynomial has no finite root set")
    roots = []
    for fac, _ in sympy.factor_list(sympy.Poly(expr, v, domain="QQ"))[1]:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = -b / a
            roots.append(Fraction(int(r.p), int(r.q)))
    return sorted(set(roots))


def _min_poly(v: str, I: Ideal, budget: int) -> list[Fraction]:
    """Coefficients (low to high) of the minimal polynomial of ``v`` modulo a
    zero-dimensional ``I``: the first linear dependence among normal forms
    of ``1, v, v^2, ...``."""
    ring = I.ring
    elems = [_Elem(ring.sorted_items(ring.to_internal(g)), 0) for g in I.basis]
    b = _Budget(budget, "minimal polynomial")
    vi = ring.pos[v]
    unit = tuple(1 if i == vi else 0 for i in range(ring.n))
    power = {tuple([0] * ring.n): Fraction(1)}
    rows: list[tuple[dict, tuple, list[Fraction]]] = []
    for k in range(65):
        nf = _reduce(ring, power, elems, b)
        vec = dict(nf)
        comb = [Fraction(0)] * k + [Fraction(1)]
        for pvec, piv, pcomb in rows:
            a = vec.get(piv)
            if not a:
                continue
            scale = a / pvec[piv]
            for e, c in pvec.items():
                nv = vec.get(e, 0) - scale * c
                if nv:
                    vec[e] = nv
                else:
                    vec.pop(e, None)
            for idx, c in enumerate(pcomb):
                comb[idx] -= scale * c
        if not vec:
            return comb
        rows.append((vec, min(vec, key=ring.key), comb))
        power = {tuple(x + y for x, y in zip(e, unit)): c for e, c in nf.items()}
    raise ResourceLimit("minimal polynomial degree", 64)


def find_rational_point(
    equations: Sequence[Poly],
    variables: Sequence[str],
    rng: random.Random | None = None,
    budget: int | None = None,
    attempts: int = 3,
    value_span: int = 5,
) -> SolveResult:
    """Search for a rational zero of ``equations`` in ``variables``.

    Free directions (variables independent modulo the ideal) are specialized,
    zero first and then small random integers; zero-dimensional slices are
    solved by rational roots of minimal polynomials with backtracking.
    ``inconsistent`` is a proof that no solution exists over the algebraic
    closure; ``no_rational_witness`` only reports that the heuristic failed.
    """
    rng = rng or random.Random(0)
    budget = budget or default_budget()
    eqs = [Poly.coerce(e) for e in equations if not Poly.coerce(e).is_zero]
    vars_all = sorted(set(variables), key=var_key)
    I = groebner(eqs, GREVLEX, vars_all, budget) if eqs else Ideal([], GREVLEX, vars_all, [], True)
    if I.is_unit:
        return SolveResult("inconsistent")
    for attempt in range(attempts):
        sol = _descend(I, {}, rng, budget, zero_first=(attempt == 0), span=value_span)
        if sol is not None:
            full = {v: sol.get(v, Fraction(0)) for v in vars_all}
            if all(e.evaluate(full) == 0 for e in eqs):
                return SolveResult("found", full)
    return SolveResult("no_rational_witness")


def _specialize(I: Ideal, v: str, value: Fraction, budget: int) -> Ideal:
    gens = [g.subs({v: Poly.const(value)}) for g in I.basis]
    rest = [w for w in I.variables if w != v]
    gens = [g for g in gens if not g.is_zero]
    return groebner(gens, GREVLEX, rest, budget) if gens else Ideal([], GREVLEX, rest, [], True)


def _descend(I: Ideal, assigned: dict, rng, budget, zero_first: bool, span: int, depth: int = 0):
    if I.is_unit:
        return None
    basis = I.basis
    if not basis:
        out = dict(assigned)
        for v in I.variables:
            out[v] = Fraction(0)
        return out
    ring = I.ring
    lms = [min(ring.to_internal(g), key=ring.key) for g in basis]
    pure = set()
    for e in lms:
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            pure.add(nz[0])
    used = set().union(*(g.variables() for g in basis))
    free = [v for v in I.variables if v not in used]
    if free:
        assigned = dict(assigned)
        for v in free:
            assigned[v] = Fraction(0)
        I = Ideal(I.basis, GREVLEX, [v for v in I.variables if v not in free], I.basis, True)
        ring = I.ring
    undetermined = [v for v in I.variables if ring.pos[v] not in pure]
    if undetermined:
        # last variable in the order: cheapest to specialize in grevlex
        v = undetermined[-1]
        values = ([Fraction(0)] if zero_first else []) + [
            Fraction(rng.randint(-span, span) or 1) for _ in range(2)
        ]
        for val in values:
            J = _specialize(I, v, val, budget)
            if J.is_unit:
                continue
            sol = _descend(J, {**assigned, v: val}, rng, budget, zero_first, span, depth + 1)
            if sol is not None:
                return sol
        return None
    # zero-dimensional: a linear element with constant tail gives a value directly
    for g in basis:
        if g.degree() == 1 and len(g.variables()) == 1:
            (v,) = g.variables()
            c1 = g.coefficient({v: 1})
            val = -g.constant_term() / c1
            J = _specialize(I, v, val, budget)
            return _descend(J, {**assigned, v: val}, rng, budget, zero_first, span, depth + 1)
    v = I.variables[-1]
    for root in rational_roots(_min_poly(v, I, budget)):
        J = _specialize(I, v, root, budget)
        sol = _descend(J, {**assigned, v: root}, rng, budget, zero_first, span, depth + 1)
        if sol is not None:
            return sol
    return None
