"""JSON documents for spaces, points, maps, constraint systems, certificates
and ideals.

Polynomials always travel in the text grammar, so a document re-parses to
the identical value and re-emits byte for byte. ``dumps`` fixes the layout
(two-space indent, keys in insertion order, trailing newline).
"""

from __future__ import annotations

import json
from typing import Any

from .errors import ParseError
from .laurent import LaurentPoint, LaurentPoly
from .lnm import ConstraintSystem
from .maps import PolyMap
from .oracle import GREVLEX, Ideal, MonomialOrder
from .poly import Poly, parse_poly
from .repspace import CoordSpace, Point
from .strength import Certificate, DegreeSplitting


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def _need(doc: dict, key: str, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing field {key!r}")
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise ParseError(f"field {key!r} must be {kind.__name__}")
    return val


def _poly(text) -> Poly:
    if not isinstance(text, str):
        raise ParseError(f"polynomials are given as text, got {text!r}")
    return parse_poly(text)


def _exponent(key: str) -> int:
    try:
        k = int(key)
    except ValueError:
        raise ParseError(f"exponent key {key!r} is not an integer") from None
    if str(k) != key:
        raise ParseError(f"exponent key {key!r} is not in canonical form")
    return k


# spaces and points


def space_to_json(space: CoordSpace) -> dict:
    return {"tuple": space.tuple.to_list(), "level": space.level, "names": list(space.names)}


def space_from_json(doc: dict) -> CoordSpace:
    return CoordSpace(_need(doc, "tuple", list), _need(doc, "level", int), doc.get("names"))


def point_to_json(p: Point) -> list[str]:
    return p.to_strings()


def point_from_json(space: CoordSpace, doc) -> Point:
    if not isinstance(doc, list):
        raise ParseError("a point is a list of slot forms")
    return Point(space, [_poly(s) for s in doc])


def laurent_point_to_json(y: LaurentPoint) -> dict:
    return {
        "space": space_to_json(y.space),
        "coeffs": {str(k): point_to_json(p) for k, p in y.coeffs.items()},
    }


def laurent_point_from_json(doc: dict) -> LaurentPoint:
    space = space_from_json(_need(doc, "space", dict))
    coeffs = _need(doc, "coeffs", dict)
    return LaurentPoint(space, {_exponent(k): point_from_json(space, v) for k, v in coeffs.items()})


def laurent_poly_to_json(p: LaurentPoly) -> dict:
    return {str(k): str(p.coeffs[k]) for k in sorted(p.coeffs)}


def laurent_poly_from_json(doc: dict) -> LaurentPoly:
    if not isinstance(doc, dict):
        raise ParseError("a Laurent factor is an object {exponent: form}")
    return LaurentPoly({_exponent(k): _poly(v) for k, v in doc.items()})


# maps and constraint systems


def map_to_json(phi: PolyMap) -> dict:
    return {
        "source": phi.source.tuple.to_list(),
        "target": phi.target.tuple.to_list(),
        "level": phi.level,
        "components": [str(e) for e in phi.exprs],
        "source_names": list(phi.source.names),
        "target_names": list(phi.target.names),
    }


def map_from_json(doc: dict) -> PolyMap:
    level = _need(doc, "level", int)
    source = CoordSpace(_need(doc, "source", list), level, doc.get("source_names"))
    tnames = doc.get("target_names") or [f"w{i + 1}" for i in range(len(_need(doc, "target", list)))]
    target = CoordSpace(_need(doc, "target", list), level, tnames)
    return PolyMap(source, target, [_poly(c) for c in _need(doc, "components", list)])


def constraints_to_json(cs: ConstraintSystem, scalar: bool = False) -> dict:
    """Constraint and evaluation polynomials in canonical order.

    With ``scalar`` the coordinate-level equations are emitted instead of
    the slot-level form identities.
    """
    if scalar:
        sys = cs.scalar()
        return {
            "constraints": [str(c.poly) for c in sys.constraints],
            "evaluation": [str(e) for _, e in sys.evaluation],
        }
    return {
        "constraints": [str(c.poly) for c in cs.constraints],
        "evaluation": [str(e) for e in cs.evaluation],
    }


# certificates


def certificate_to_json(cert: Certificate) -> dict:
    return {
        "s": cert.s,
        "degree": cert.splitting.d,
        "splitting": list(cert.splitting.e),
        "factors": [laurent_poly_to_json(f) for f in cert.factors],
    }


def certificate_from_json(doc: dict) -> Certificate:
    s = _need(doc, "s", int)
    e = _need(doc, "splitting", list)
    factors = [laurent_poly_from_json(f) for f in _need(doc, "factors", list)]
    d = doc.get("degree")
    if d is None:
        # read the total degree off the first pair with both factors nonzero
        for g, h in zip(factors[::2], factors[1::2]):
            if g and h:
                d = next(iter(g.coeffs.values())).degree() + next(iter(h.coeffs.values())).degree()
                break
    if d is None:
        raise ParseError("certificate needs a 'degree' when no factor pair is nonzero")
    return Certificate(s, DegreeSplitting(d, e), factors)


# ideals


def ideal_to_json(I: Ideal) -> dict:
    gens = I.basis if I.basis is not None else I.generators
    return {
        "order": I.order.kind,
        "eliminate": list(I.order.eliminate),
        "variables": list(I.variables),
        "basis": [str(g) for g in gens],
    }


def ideal_from_json(doc: dict) -> Ideal:
    """Read an ideal back; its basis is trusted to be the reduced Groebner
    basis it was emitted as."""
    order = MonomialOrder(doc.get("order", "grevlex"), doc.get("eliminate", ()))
    basis = [_poly(g) for g in _need(doc, "basis", list)]
    return Ideal(basis, order or GREVLEX, doc.get("variables"), basis, True)
