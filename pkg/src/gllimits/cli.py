"""Command-line interface.

Exit status: 0 accepted / true / found, 1 rejected / false / not found,
2 bad input, 3 resource limit. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import serialize as ser
from .errors import AlgebraError, PoleAtZero, ResourceLimit
from .laurent import limit_at_zero, line_curve, shift_exponent, substitute_laurent
from .linalg import gram_matrix, matrix_rank
from .lnm import lnm_constraints
from .oracle import BUDGET_ENV, implicitize
from .poly import parse_poly
from .repspace import CoordSpace, Point
from .strength import quadratic_strength, sigma_search, verify_border_certificate

OK, NEGATIVE, BAD_INPUT, LIMIT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(BAD_INPUT)


def _read_json(path: str):
    return ser.loads(Path(path).read_text(encoding="utf-8"))


def _emit(args, doc, text: str):
    sys.stdout.write(ser.dumps(doc) if args.json else text.rstrip("\n") + "\n")


def _fraction(text: str) -> Fraction:
    if "." in text:
        raise ValueError(f"use p/q for rationals, got {text!r}")
    return Fraction(text)


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


# verbs


def cmd_strength_quad(args) -> int:
    f = parse_poly(args.form)
    rank = 0 if f.is_zero else matrix_rank(gram_matrix(f))
    s = quadratic_strength(f)
    _emit(args, {"form": str(f), "rank": rank, "strength": s}, str(s))
    return OK


def cmd_certify(args) -> int:
    f = parse_poly(args.form)
    cert = ser.certificate_from_json(_read_json(args.cert))
    v = verify_border_certificate(f, cert, args.level)
    doc = {
        "accepted": v.accepted,
        "s": v.s,
        "reason": v.reason,
        "expansion": ser.laurent_point_to_json(v.expansion),
    }
    if v.limit is not None:
        doc["limit"] = ser.point_to_json(v.limit)
    lines = [f"accepted s={v.s}" if v.accepted else f"rejected ({v.reason}) s={v.s}"]
    lines.append("P(t) = " + _series_text(v.expansion))
    if v.limit is not None and not v.accepted:
        lines.append(f"limit = {v.limit.forms[0]}")
    _emit(args, doc, "\n".join(lines))
    return OK if v.accepted else NEGATIVE


def _series_text(y) -> str:
    parts = []
    for k, p in y.coeffs.items():
        forms = ", ".join(str(f) for f in p.forms)
        parts.append(f"({forms})" + ("" if k == 0 else f"*t^{k}" if k != 1 else "*t"))
    return " + ".join(parts) or "0"


def cmd_lnm(args) -> int:
    phi = ser.map_from_json(_read_json(args.map))
    cs = lnm_constraints(phi, args.n, args.m)
    doc = ser.constraints_to_json(cs, scalar=args.scalar)
    text = "constraints:\n" + "".join(f"  {c} = 0\n" for c in doc["constraints"])
    text += "evaluation:\n" + "".join(f"  {e}\n" for e in doc["evaluation"])
    _emit(args, doc, text)
    return OK


def cmd_limit(args) -> int:
    y = ser.laurent_point_from_json(_read_json(args.point))
    if args.map:
        y = substitute_laurent(ser.map_from_json(_read_json(args.map)), y)
    y = shift_exponent(y, args.shift)
    try:
        p = limit_at_zero(y)
    except PoleAtZero as exc:
        _emit(args, {"limit": None, "pole": -exc.min_exponent}, f"no limit: pole of order {-exc.min_exponent}")
        return NEGATIVE
    _emit(args, {"limit": ser.point_to_json(p)}, "\n".join(p.to_strings()))
    return OK


def cmd_implicitize(args) -> int:
    phi = ser.map_from_json(_read_json(args.map))
    I = implicitize(phi, args.level, budget=args.budget, shortcut=not args.no_shortcut)
    doc = ser.ideal_to_json(I)
    text = "\n".join(doc["basis"]) if doc["basis"] else "0  (image is dense)"
    _emit(args, doc, text)
    return OK


def cmd_sigma_search(args) -> int:
    f = parse_poly(args.form)
    res = sigma_search(f, args.r, args.n_max, args.level, random.Random(args.seed), args.budget)
    doc = {
        "status": res.status,
        "r": res.r,
        "n_max": res.n_max,
        "s": res.s,
        "certificate": ser.certificate_to_json(res.certificate) if res.certificate else None,
        "nonmember": res.nonmember,
        "evidence": res.evidence,
        "log": res.log,
    }
    if res.found:
        text = f"found s={res.s}\n" + ser.dumps(doc["certificate"]) if res.certificate else f"found s={res.s}"
    elif res.status == "no_rational_witness":
        text = f"no rational witness (s={res.s} over the algebraic closure)"
    else:
        text = f"inconclusive up to n_max={res.n_max}"
        if res.nonmember:
            text += f"; not a limit of strength <= {res.r} forms ({res.evidence})"
    _emit(args, doc, text)
    return OK if res.found else NEGATIVE


def cmd_line_curve(args) -> int:
    degrees = _int_list(args.degrees)
    space = CoordSpace.forms(degrees, args.level)
    x = Point(space, [s.strip() for s in args.x.split(";")])
    y = Point(space, [s.strip() for s in args.y.split(";")])
    c = line_curve(x, y)
    e = c.expand_at(_fraction(args.t0))
    _emit(args, ser.laurent_point_to_json(e), _series_text(e))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gllimits", description="Exact border-strength and Laurent-limit computations over Q.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps (default 0)")
    common.add_argument("--budget", type=int, default=None, help=f"Buchberger step budget (also ${BUDGET_ENV})")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("strength-quad", parents=[common], help="strength of a quadratic form")
    s.add_argument("form")
    s.set_defaults(func=cmd_strength_quad)

    s = sub.add_parser("certify", parents=[common], help="check a border-strength certificate")
    s.add_argument("--form", required=True)
    s.add_argument("--cert", required=True, help="certificate JSON file")
    s.add_argument("--level", type=int, default=None)
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("lnm", parents=[common], help="Laurent truncation constraints of a map")
    s.add_argument("--map", required=True, help="map JSON file")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--scalar", action="store_true", help="expand to coordinate equations")
    s.set_defaults(func=cmd_lnm)

    s = sub.add_parser("limit", parents=[common], help="limit at t = 0 of a Laurent point")
    s.add_argument("--point", required=True, help="Laurent point JSON file")
    s.add_argument("--map", default=None, help="apply this map first")
    s.add_argument("--shift", type=int, default=0, help="multiply by t^-shift first")
    s.set_defaults(func=cmd_limit)

    s = sub.add_parser("implicitize", parents=[common], help="ideal of the image closure of a map")
    s.add_argument("--map", required=True)
    s.add_argument("--level", type=int, default=None)
    s.add_argument("--no-shortcut", action="store_true", help="always eliminate, even for dense images")
    s.set_defaults(func=cmd_implicitize)

    s = sub.add_parser("sigma-search", parents=[common], help="search for a border-strength certificate")
    s.add_argument("--form", required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--n-max", type=int, default=1)
    s.add_argument("--level", type=int, default=None)
    s.set_defaults(func=cmd_sigma_search)

    s = sub.add_parser("line-curve", parents=[common], help="Laurent expansion of (1-t)x + ty at t0")
    s.add_argument("--degrees", required=True, help="slot degrees, comma separated")
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--x", required=True, help="slot forms separated by ';'")
    s.add_argument("--y", required=True)
    s.add_argument("--t0", default="0")
    s.set_defaults(func=cmd_line_curve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget is None and os.environ.get(BUDGET_ENV):
        args.budget = int(os.environ[BUDGET_ENV])
    try:
        return args.func(args)
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return LIMIT
    except (AlgebraError, ValueError, OSError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
