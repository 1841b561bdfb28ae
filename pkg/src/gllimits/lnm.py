"""Laurent truncations of a polynomial map and their value at ``t = 0``.

For a map ``phi`` of degree ``d`` and bounds ``n, m >= 0``, substituting
``v = sum_{k=-n}^{m} v_k t^k`` into ``phi`` and asking for the coefficients
of ``t^-1 .. t^-dn`` to vanish cuts out the locus of pole-free images; the
``t^0`` coefficient is its evaluation map. Constraints are first produced as
identities of forms in the Laurent-tagged slot symbols (``f[-1]*g[0] + ...``),
which do not depend on the level, and expanded into scalar equations in
coordinate variables on demand.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ResourceLimit, SpaceMismatch
from .laurent import LaurentPoint, LaurentPoly, limit_at_zero, substitute_laurent
from .maps import PolyMap
from .poly import Poly, is_base_var, laurent_var
from .repspace import Point


@dataclass(frozen=True)
class Constraint:
    target: int
    exponent: int
    poly: Poly


@dataclass(frozen=True)
class ScalarConstraint:
    coordinate: str
    exponent: int
    poly: Poly


@dataclass
class ScalarSystem:
    variables: list[str]
    constraints: list[ScalarConstraint]
    evaluation: list[tuple[str, Poly]]


@dataclass
class ConstraintSystem:
    phi: PolyMap
    n: int
    m: int
    constraints: list[Constraint]
    evaluation: list[Poly]
    _scalar: ScalarSystem | None = field(default=None, repr=False, compare=False)

    @property
    def exponents(self) -> range:
        return range(-self.n, self.m + 1)

    def variables(self) -> list[str]:
        return [laurent_var(nm, k) for nm in self.phi.source.names for k in self.exponents]

    def _assignment(self, y: LaurentPoint) -> dict[str, Poly]:
        if y.space != self.phi.source:
            raise SpaceMismatch(f"point on {y.space}, map source {self.phi.source}")
        if y.coeffs and (y.min_exponent < -self.n or y.max_exponent > self.m):
            raise ValueError(
                f"point supported on [{y.min_exponent}, {y.max_exponent}], outside [{-self.n}, {self.m}]"
            )
        out = {}
        for k in self.exponents:
            p = y.coefficient(k)
            for i, nm in enumerate(self.phi.source.names):
                out[laurent_var(nm, k)] = p.forms[i]
        return out

    def satisfied_by(self, y: LaurentPoint) -> bool:
        """All constraint identities hold for the forms of ``y``."""
        a = self._assignment(y)
        return all(c.poly.substitute(a).is_zero for c in self.constraints)

    def evaluate(self, y: LaurentPoint) -> Point:
        a = self._assignment(y)
        return Point(self.phi.target, [e.substitute(a) for e in self.evaluation])

    def scalar(self) -> ScalarSystem:
        """Expand the form identities into equations on coordinates at the map's level."""
        if self._scalar is None:
            src, tgt = self.phi.source, self.phi.target
            generic = {}
            for k in self.exponents:
                for i, nm in enumerate(src.names):
                    generic[laurent_var(nm, k)] = src.generic_form(i, k)

            def expand(slot: int, p: Poly) -> list[tuple[str, Poly]]:
                full = p.substitute(generic)
                split = full.coefficients_in({v for v in full.variables() if is_base_var(v)})
                return [
                    (var, split.get(mono, Poly()))
                    for mono, var in zip(tgt.basis(slot), tgt.coordinate_vars(slot))
                ]

            order = {v: i for i, v in enumerate(tgt.all_coordinate_vars())}
            cons = []
            for c in self.constraints:
                for var, q in expand(c.target, c.poly):
                    if not q.is_zero:
                        cons.append(ScalarConstraint(var, c.exponent, q))
            cons.sort(key=lambda c: (order[c.coordinate], -c.exponent))
            evaluation = []
            for j, e in enumerate(self.evaluation):
                evaluation.extend(expand(j, e))
            variables = [v for k in self.exponents for v in src.all_coordinate_vars(k)]
            self._scalar = ScalarSystem(variables, cons, evaluation)
        return self._scalar

    def __str__(self):
        lines = [f"L_(n={self.n}, m={self.m}) for {self.phi!r}", "constraints:"]
        lines += [f"  [{self.phi.target.names[c.target]}, t^{c.exponent}] {c.poly} = 0" for c in self.constraints]
        lines.append("evaluation:")
        lines += [f"  {self.phi.target.names[j]} = {e}" for j, e in enumerate(self.evaluation)]
        return "\n".join(lines)


def symbolic_point(phi: PolyMap, n: int, m: int) -> list[LaurentPoly]:
    return [
        LaurentPoly({k: Poly.var(laurent_var(nm, k)) for k in range(-n, m + 1)})
        for nm in phi.source.names
    ]


def lnm_constraints(phi: PolyMap, n: int, m: int) -> ConstraintSystem:
    """Equations and evaluation map of the pole-free locus at bounds ``(n, m)``.

    Constraints are ordered by target slot, then exponent ``-1`` down to
    ``-d*n``; identically zero coefficients are omitted.
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    values = dict(zip(phi.source.names, symbolic_point(phi, n, m)))
    constraints = []
    evaluation = []
    for j, e in enumerate(phi.exprs):
        s = e.evaluate(values, zero=LaurentPoly())
        s = s if isinstance(s, LaurentPoly) else LaurentPoly({0: s})
        for k in range(1, phi.degree * n + 1):
            c = s.coefficient(-k)
            if not c.is_zero:
                constraints.append(Constraint(j, -k, c))
        evaluation.append(s.coefficient(0))
    return ConstraintSystem(phi, n, m, constraints, evaluation)


def lnm_check(phi: PolyMap, y: LaurentPoint) -> tuple[bool, Point | None]:
    """``(True, value at 0)`` if ``phi(y)`` has no negative powers of ``t``, else ``(False, None)``."""
    image = substitute_laurent(phi, y)
    if image.pole_order > 0:
        return False, None
    return True, limit_at_zero(image)


def stabilization_bound(phi: PolyMap, n: int) -> int:
    """``(d - 1) n``: Laurent coefficients beyond it never reach ``t^(<= 0)``."""
    return max(phi.degree - 1, 0) * n


@dataclass
class SearchResult:
    """Outcome of :func:`image_search`.

    ``status`` is ``"found"``, ``"not_found"`` or ``"no_rational_witness"``.
    ``not_found`` only says that nothing was found within the bounds, unless
    ``nonmember`` is set (the target lies outside the image closure) or
    ``empty_levels`` lists every ``n`` (the system has no solution at all,
    even over the algebraic closure, at those bounds).
    """

    status: str
    n_max: int
    n: int | None = None
    m: int | None = None
    witness: LaurentPoint | None = None
    nonmember: bool = False
    empty_levels: list[int] = field(default_factory=list)
    log: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status == "found"


# Systems with more unknowns than this get a bounded exact attempt first,
# then randomized sparse-support trials.
EXACT_UNKNOWNS = 10
EXACT_BUDGET = 50_000
TRIAL_BUDGET = 20_000


def search_level(
    phi: PolyMap,
    x: Point,
    n: int,
    rng: random.Random,
    budget: int | None = None,
    trials: int = 400,
    max_support: int = 8,
) -> tuple[str, LaurentPoint | None, str]:
    """Solve the bounds-``n`` system with evaluation equal to ``x``.

    Returns ``(status, witness, note)`` with status ``found``,
    ``inconsistent`` (no solution over the algebraic closure),
    ``no_rational_witness`` or ``unknown``.
    """
    from . import oracle
    from .errors import OracleTimeout

    m = stabilization_bound(phi, n)
    sys = lnm_constraints(phi, n, m).scalar()
    target_vals = Point(phi.target, x.forms).coordinate_assignment()
    eqs = [c.poly for c in sys.constraints]
    eqs += [e - target_vals[var] for var, e in sys.evaluation]
    eqs = [e for e in eqs if not e.is_zero]
    unknowns = sys.variables
    note = f"n={n}, m={m}: {len(unknowns)} unknowns, {len(eqs)} equations"

    def accept(sol):
        w = _witness_from(phi, sol, n, m)
        ok, value = lnm_check(phi, w)
        if not ok or value != Point(phi.target, x.forms):
            raise AssertionError("solver returned a point that does not verify")
        return w

    big = len(unknowns) > EXACT_UNKNOWNS
    exact_status = "unknown"
    try:
        res = oracle.find_rational_point(eqs, unknowns, rng=rng, budget=EXACT_BUDGET if big else budget)
        exact_status = res.status
        if res.status == "found":
            return "found", accept(res.solution), note + " (exact)"
        if res.status == "inconsistent":
            return "inconsistent", None, note + " (inconsistent)"
    except OracleTimeout:
        if not big:
            raise
    if not big:
        return exact_status, None, note
    for trial in range(trials):
        k = rng.randint(1, min(max_support, len(unknowns)))
        keep = rng.sample(unknowns, k)
        dropped = set(unknowns) - set(keep)
        sub = [e.restrict_zero(dropped) for e in eqs]
        if any(e.is_constant() and not e.is_zero for e in sub):
            continue
        sub = [e for e in sub if not e.is_zero]
        try:
            res = oracle.find_rational_point(sub, keep, rng=rng, budget=TRIAL_BUDGET, attempts=1)
        except OracleTimeout:
            continue
        if res.status == "found":
            sol = {v: res.solution.get(v, Fraction(0)) for v in unknowns}
            return "found", accept(sol), note + f" (sparse trial {trial + 1}, support {k})"
    status = "no_rational_witness" if exact_status == "no_rational_witness" else "unknown"
    return status, None, note + f" ({status} after {trials} sparse trials)"


def image_search(
    phi: PolyMap,
    x: Point,
    n_max: int,
    rng: random.Random | None = None,
    budget: int | None = None,
    closure_check: bool = True,
    trials: int = 400,
) -> SearchResult:
    """Look for a Laurent point ``y`` with ``lim phi(y(t)) = x``, for ``n = 0..n_max``.

    The loop over ``n`` is sequential so the first witness has the smallest
    pole depth the search could reach.
    """
    from . import oracle

    phi.target.check_same(x.space, "search target")
    rng = rng or random.Random(0)
    result = SearchResult("not_found", n_max)
    if closure_check:
        try:
            if not oracle.border_membership(x, phi, budget=budget):
                result.nonmember = True
                result.log.append("target lies outside the image closure")
                return result
        except ResourceLimit:
            result.log.append("closure check skipped: budget exhausted")
    saw_irrational = False
    for n in range(n_max + 1):
        status, witness, note = search_level(phi, x, n, rng, budget, trials)
        result.log.append(note)
        if status == "found":
            result.status, result.n, result.m, result.witness = "found", n, stabilization_bound(phi, n), witness
            return result
        if status == "inconsistent":
            result.empty_levels.append(n)
        elif status == "no_rational_witness":
            saw_irrational = True
    if saw_irrational:
        result.status = "no_rational_witness"
    return result


def _witness_from(phi: PolyMap, sol: dict[str, Fraction], n: int, m: int) -> LaurentPoint:
    src = phi.source
    coeffs = {}
    for k in range(-n, m + 1):
        vecs = [[sol.get(v, Fraction(0)) for v in src.coordinate_vars(i, k)] for i in range(src.slots)]
        coeffs[k] = Point.from_coordinates(src, vecs)
    return LaurentPoint(src, coeffs)
