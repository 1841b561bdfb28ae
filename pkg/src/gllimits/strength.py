"""Strength and border strength of forms.

A form ``f`` of degree ``d`` has strength at most ``r`` when it is a sum of
``r`` products ``g_i * h_i`` of forms of positive degree. Border strength
asks the same of a limit: ``f = lim_{t->0} t^-s * sum g_i(t) h_i(t)`` with
polynomial dependence on ``t``, and the least such ``s`` is written sigma.

Everything here works with the multiplication map of a degree splitting
``e = (e_1, .., e_r)``, whose source slots are ``(e_1), (d - e_1), ...``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Sequence

from .errors import DegreeMismatch, InvalidSplitting, PoleAtZero, ResourceLimit
from .laurent import LaurentPoint, LaurentPoly, limit_at_zero, shift_exponent, substitute_laurent
from .linalg import diagonalize, gram_matrix, hyperbolic_split, matrix_rank, max_base_index, nonzero_minor
from .lnm import SearchResult, image_search, lnm_check
from .maps import PolyMap
from .poly import Poly, base_var, parse_poly
from .repspace import Point


@dataclass(frozen=True)
class DegreeSplitting:
    d: int
    e: tuple[int, ...]

    def __init__(self, d: int, e: Sequence[int]):
        d, e = int(d), tuple(int(x) for x in e)
        if d < 2:
            raise InvalidSplitting(f"total degree must be at least 2, got {d}")
        if not e:
            raise InvalidSplitting("a splitting needs at least one summand")
        bad = [x for x in e if not 0 < x < d]
        if bad:
            raise InvalidSplitting(f"factor degrees must lie strictly between 0 and {d}: {bad}")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "e", e)

    @property
    def r(self) -> int:
        return len(self.e)

    @property
    def slot_degrees(self) -> list[int]:
        return [x for ei in self.e for x in (ei, self.d - ei)]

    def canonical(self) -> DegreeSplitting:
        """Representative up to reordering summands and swapping ``g_i, h_i``."""
        return DegreeSplitting(self.d, sorted(min(x, self.d - x) for x in self.e))

    def __str__(self):
        return f"d={self.d}, e={list(self.e)}"


def slot_names(r: int) -> list[str]:
    return [nm for i in range(1, r + 1) for nm in (f"g{i}", f"h{i}")]


def strength_map(splitting: DegreeSplitting, N: int) -> PolyMap:
    """``(g_1, h_1, ..., g_r, h_r) -> sum g_i h_i`` at level ``N``."""
    if N < 1:
        raise ValueError("level must be at least 1")
    r = splitting.r
    expr = " + ".join(f"g{i}*h{i}" for i in range(1, r + 1))
    return PolyMap.forms(splitting.slot_degrees, [splitting.d], [expr], N, slot_names(r), ["f"])


def canonical_splittings(d: int, r: int) -> list[DegreeSplitting]:
    """All splittings of ``d`` into ``r`` summands up to reordering and ``g/h`` swaps."""
    half = d // 2
    return [DegreeSplitting(d, e) for e in itertools.combinations_with_replacement(range(1, half + 1), r)]


def quadratic_strength(f: Poly) -> int:
    """Strength of a quadratic form: half its Gram rank, rounded up."""
    if f.is_zero:
        return 0
    return ceil(matrix_rank(gram_matrix(f)) / 2)


def _level_of(*polys: Poly) -> int:
    return max([max_base_index(p) for p in polys] + [1])


def _check_form(p: Poly, deg: int, what: str):
    if not p.is_zero and not p.is_homogeneous(deg):
        raise DegreeMismatch(f"{what} must be a form of degree {deg}, got {p}")


def verify_decomposition(f: Poly, splitting: DegreeSplitting, factors: Sequence) -> bool:
    """``True`` iff ``f == sum g_i h_i`` exactly.

    ``factors`` is a sequence of ``(g_i, h_i)`` pairs (forms or text).
    """
    f = parse_poly(f) if isinstance(f, str) else f
    _check_form(f, splitting.d, "f")
    if len(factors) != splitting.r:
        raise DegreeMismatch(f"splitting has {splitting.r} summands, got {len(factors)} factor pairs")
    total = Poly()
    for i, ((g, h), ei) in enumerate(zip(factors, splitting.e)):
        g = parse_poly(g) if isinstance(g, str) else Poly.coerce(g)
        h = parse_poly(h) if isinstance(h, str) else Poly.coerce(h)
        _check_form(g, ei, f"g{i + 1}")
        _check_form(h, splitting.d - ei, f"h{i + 1}")
        total = total + g * h
    return total == f


class Certificate:
    """Border-strength certificate: ``f = lim t^-s sum g_i(t) h_i(t)``.

    ``factors`` lists ``g_1, h_1, g_2, h_2, ...`` as Laurent polynomials in
    ``t`` whose coefficients are forms in ``x1..xN``. Negative powers of
    ``t`` are not allowed; every pole is carried by ``s``.
    """

    __slots__ = ("s", "splitting", "factors")

    def __init__(self, s: int, splitting: DegreeSplitting, factors: Sequence[LaurentPoly]):
        if int(s) < 0:
            raise ValueError("s must be nonnegative")
        factors = [f if isinstance(f, LaurentPoly) else LaurentPoly(f) for f in factors]
        if len(factors) != 2 * splitting.r:
            raise DegreeMismatch(f"need {2 * splitting.r} factors for {splitting}, got {len(factors)}")
        names = slot_names(splitting.r)
        for nm, deg, fac in zip(names, splitting.slot_degrees, factors):
            for k, c in fac.coeffs.items():
                if k < 0:
                    raise ValueError(f"factor {nm} has a negative power t^{k}")
                _check_form(c, deg, f"coefficient of t^{k} in {nm}")
        self.s = int(s)
        self.splitting = splitting
        self.factors = factors

    @property
    def pairs(self) -> list[tuple[LaurentPoly, LaurentPoly]]:
        return list(zip(self.factors[::2], self.factors[1::2]))

    @property
    def level(self) -> int:
        polys = [c for fac in self.factors for c in fac.coeffs.values()]
        return _level_of(*polys)

    def laurent_point(self, N: int | None = None) -> LaurentPoint:
        """The factors as one Laurent point on the source of the strength map."""
        phi = strength_map(self.splitting, N or self.level)
        return LaurentPoint.from_slot_series(phi.source, self.factors)

    def with_s(self, s: int) -> Certificate:
        return Certificate(s, self.splitting, self.factors)

    def __eq__(self, other):
        return (
            isinstance(other, Certificate)
            and (self.s, self.splitting) == (other.s, other.splitting)
            and self.factors == other.factors
        )

    def __repr__(self):
        return f"Certificate(s={self.s}, {self.splitting}, factors={[str(f) for f in self.factors]})"


@dataclass
class CertificateVerdict:
    accepted: bool
    s: int
    reason: str | None
    expansion: LaurentPoint
    limit: Point | None = None

    def __bool__(self):
        return self.accepted


def verify_border_certificate(f: Poly, cert: Certificate, level: int | None = None) -> CertificateVerdict:
    """Expand ``P(t) = sum g_i(t) h_i(t)`` and check ``lim t^-s P(t) == f``.

    Rejections carry ``reason`` ``"PoleAtZero"`` (``s`` exceeds the
    valuation of ``P``) or ``"WrongLimit"``.
    """
    f = parse_poly(f) if isinstance(f, str) else f
    _check_form(f, cert.splitting.d, "f")
    N = level or max(_level_of(f), cert.level)
    phi = strength_map(cert.splitting, N)
    P = substitute_laurent(phi, cert.laurent_point(N))
    target = Point(phi.target, [f])
    try:
        lim = limit_at_zero(shift_exponent(P, cert.s))
    except PoleAtZero:
        return CertificateVerdict(False, cert.s, "PoleAtZero", P)
    if lim != target:
        return CertificateVerdict(False, cert.s, "WrongLimit", P, lim)
    return CertificateVerdict(True, cert.s, None, P, lim)


def certificate_from_witness(splitting: DegreeSplitting, y: LaurentPoint) -> Certificate:
    """Turn a pole-carrying witness ``lim mu(y) = f`` into a certificate.

    Each pair is multiplied through by ``t^a_i`` and ``t^b_i`` (its pole
    orders) and ``s`` is the largest ``a_i + b_i``; pairs with a smaller
    total pick up the difference on ``g_i``.
    """
    r = splitting.r
    series = [y.slot_series(i) for i in range(2 * r)]
    poles = [y.slot_pole_order(i) for i in range(2 * r)]
    s = max((poles[2 * i] + poles[2 * i + 1] for i in range(r)), default=0)
    factors = []
    for i in range(r):
        a, b = poles[2 * i], poles[2 * i + 1]
        factors.append(series[2 * i].times_t(s - b))
        factors.append(series[2 * i + 1].times_t(b))
    return Certificate(s, splitting, factors)


def shifted_witness(cert: Certificate, N: int | None = None) -> LaurentPoint:
    """The Laurent point ``(t^-s g_1, h_1, ...)`` whose image has limit ``f``."""
    N = N or cert.level
    factors = list(cert.factors)
    factors[0::2] = [g.times_t(-cert.s) for g in factors[0::2]]
    return LaurentPoint.from_slot_series(strength_map(cert.splitting, N).source, factors)


@dataclass
class SigmaResult:
    """Outcome of :func:`sigma_search`.

    ``found``: ``certificate`` witnesses ``sigma(f) <= s``.
    ``no_rational_witness``: ``s`` is known over an algebraic closure (for
    quadrics by the rank law) but no certificate over Q was produced.
    ``inconclusive``: nothing found up to ``n_max``; when ``nonmember`` is
    set, ``f`` was in addition shown to lie outside the border-strength locus.
    """

    status: str
    r: int
    n_max: int
    s: int | None = None
    certificate: Certificate | None = None
    nonmember: bool = False
    evidence: str | None = None
    log: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status == "found"


def quadric_nonmembership(f: Poly, r: int, level: int | None = None):
    """A nonzero ``(2r+1)``-minor of the Gram matrix, or ``None``.

    Quadrics of strength at most ``r`` form a closed set cut out by these
    minors, so a nonzero one proves that ``f`` is not even a limit.
    """
    return nonzero_minor(gram_matrix(f, level), 2 * r + 1)


def _linear(w) -> Poly:
    return Poly.from_terms(({base_var(i + 1): 1}, a) for i, a in enumerate(w) if a)


def _quadric_certificate(f: Poly, r: int) -> Certificate | None:
    # hyperbolic planes first (two squares' worth of rank per product), then
    # one product per remaining diagonal term
    pairs, rest = hyperbolic_split(gram_matrix(f))
    products = [(_linear(a).scale(2), _linear(b)) for a, b in pairs]
    products += [(_linear(w).scale(c), _linear(w)) for c, w in diagonalize(rest)]
    if len(products) > r:
        return None
    factors = [LaurentPoly({0: p}) for pair in products for p in pair]
    factors += [LaurentPoly()] * (2 * (r - len(products)))
    return Certificate(0, DegreeSplitting(2, [1] * r), factors)


def sigma_search(
    f: Poly,
    r: int,
    n_max: int,
    level: int | None = None,
    rng: random.Random | None = None,
    budget: int | None = None,
    trials: int = 400,
) -> SigmaResult:
    """Smallest witnessed ``s`` with ``f`` a limit of ``t^-s`` times ``r`` products.

    Splittings are searched one by one (canonical representatives only) and
    the minimum over all of them is reported, so the answer does not depend
    on the order. Every certificate is verified before it is returned.
    """
    f = parse_poly(f) if isinstance(f, str) else f
    if r < 1:
        raise ValueError("r must be at least 1")
    d = f.degree()
    if f.is_zero:
        return SigmaResult("found", r, n_max, 0, None, log=["f = 0"])
    if not f.is_homogeneous(d) or d < 2:
        raise DegreeMismatch(f"need a form of degree at least 2, got {f}")
    N = level or _level_of(f)
    rng = rng or random.Random(0)
    result = SigmaResult("inconclusive", r, n_max)

    if d == 2:
        rank = matrix_rank(gram_matrix(f, N))
        result.log.append(f"Gram rank {rank}")
        if rank > 2 * r:
            rows, cols, det = quadric_nonmembership(f, r, N)
            result.nonmember = True
            result.evidence = f"minor rows {rows} cols {cols} = {det}"
            result.log.append(f"rank {rank} > 2r: outside the closed strength-{r} locus")
            return result
        cert = _quadric_certificate(f, r)
        if cert is not None:
            result.status, result.s, result.certificate = "found", 0, cert
            return _checked(f, result, N)

    best: tuple[int, Certificate] | None = None
    saw_irrational = False
    for sp in canonical_splittings(d, r):
        phi = strength_map(sp, N)
        target = Point(phi.target, [f])
        try:
            depth = 0 if d == 2 else n_max
            res: SearchResult = image_search(phi, target, depth, rng, budget, closure_check=True, trials=trials)
        except ResourceLimit as exc:
            result.log.append(f"{sp}: {exc}")
            continue
        result.log.extend(f"{sp}: {line}" for line in res.log)
        if res.found:
            cert = certificate_from_witness(sp, res.witness)
            if best is None or cert.s < best[0]:
                best = (cert.s, cert)
            if cert.s == 0:
                break
        elif res.status == "no_rational_witness":
            saw_irrational = True

    if best is not None:
        result.status, result.s, result.certificate = "found", best[0], best[1]
        return _checked(f, result, N)
    if d == 2:
        # r < strength of a rational quadric but rank <= 2r: sigma = 0 over
        # the closure, the missing factorization needs an extension field.
        result.status, result.s = "no_rational_witness", 0
        result.log.append("rank <= 2r: strength <= r over the algebraic closure")
        return result
    if saw_irrational:
        result.status = "no_rational_witness"
    return result


def _checked(f: Poly, result: SigmaResult, N: int) -> SigmaResult:
    verdict = verify_border_certificate(f, result.certificate, N)
    if not verdict.accepted:
        raise AssertionError(f"search produced a certificate that does not verify: {verdict.reason}")
    ok, value = lnm_check(strength_map(result.certificate.splitting, N), shifted_witness(result.certificate, N))
    if not ok or value.forms[0] != f:
        raise AssertionError("shifted witness fails the pole-freedom check")
    return result
