"""Independent computation of the expected values used by the tests.

This script deliberately uses sympy only (nothing from gllimits) and writes
``tests/golden/derived.json``. Polynomials are frozen as term lists
``[[{var: exp}, "coeff"], ...]`` so no printer or parser is shared with the
code under test. Rerun with ``python3 tests/oracle/derive.py``; the test
suite recomputes and compares to catch a stale freeze.
"""

import json
import random
from pathlib import Path

import sympy as sp

OUT = Path(__file__).resolve().parent.parent / "golden" / "derived.json"


def S(name):
    return sp.Symbol(name)


def terms(expr, gens=None):
    expr = sp.expand(expr)
    if expr == 0:
        return []
    gens = gens or sorted(expr.free_symbols, key=lambda s: s.name)
    if not gens:
        return [[{}, str(sp.Rational(expr))]]
    poly = sp.Poly(expr, *gens)
    out = []
    for exps, c in poly.terms():
        mono = {g.name: int(e) for g, e in zip(gens, exps) if e}
        out.append([mono, str(sp.Rational(c))])
    out.sort(key=lambda t: json.dumps(t, sort_keys=True))
    return out


def t_coeffs(expr, t):
    """{exponent: coefficient} of a Laurent polynomial in t."""
    expr = sp.expand(expr)
    out = {}
    for term in sp.Add.make_args(expr):
        c, k = term.as_coeff_exponent(t)
        out[int(k)] = out.get(int(k), 0) + c
    return {k: sp.expand(v) for k, v in out.items() if sp.expand(v) != 0}


def laurent_symbols(name, lo, hi):
    return {k: S(f"{name}[{k}]") for k in range(lo, hi + 1)}


def weyl_dim(lam, N):
    lam = list(lam) + [0] * (N - len(lam))
    if len(lam) > N:
        return 0
    num = den = 1
    for i in range(N):
        for j in range(i + 1, N):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def main():
    x1, x2, x3, x4, x, y, z, t = (S(n) for n in ["x1", "x2", "x3", "x4", "x", "y", "z", "t"])
    out = {}

    # polynomial arithmetic
    out["binomial_cube"] = terms((x + t * y) ** 3)
    out["substitute_x1x2"] = terms((x1 * x2).subs({x1: x1 + x2, x2: x1 - x2}, simultaneous=True))

    # Gram matrix and rank
    f = x1 * x2 + x3 * x4
    G = sp.hessian(f, (x1, x2, x3, x4)) / 2
    out["gram_x1x2_x3x4"] = [[str(G[i, j]) for j in range(4)] for i in range(4)]
    out["rank_x1x2_x3x4"] = int(G.rank())

    # Schur dimensions by the Weyl dimension formula
    table = []
    for lam in [(2,), (1, 1), (2, 1), (3, 1), (2, 2), (3, 2, 1), (4,), (1, 1, 1)]:
        for N in range(1, 6):
            table.append([list(lam), N, weyl_dim(lam, N)])
    out["schur_dims"] = table

    # change of variables x_j -> sum_i g[i][j] x_i with g = [[1,1],[0,1]]
    g = [[1, 1], [0, 1]]
    X = [x1, x2]
    sub = {X[j]: sum(g[i][j] * X[i] for i in range(2)) for j in range(2)}
    out["gl_act_upper_x1x2"] = terms((x1 * x2).subs(sub, simultaneous=True))

    # Laurent truncation of f*g - h^2 at n = 1, m = 1 (slot symbols)
    fs, gs, hs = (laurent_symbols(nm, -1, 1) for nm in "fgh")
    F = sum(v * t**k for k, v in fs.items())
    Gs = sum(v * t**k for k, v in gs.items())
    H = sum(v * t**k for k, v in hs.items())
    co = t_coeffs(F * Gs - H**2, t)
    out["fgh2_lnm"] = {
        "constraints": {str(k): terms(co.get(k, 0)) for k in (-1, -2)},
        "evaluation": terms(co.get(0, 0)),
    }

    # linear map u + 3 v at n = 2, m = 0
    us, vs = laurent_symbols("u", -2, 0), laurent_symbols("v", -2, 0)
    co = t_coeffs(sum((us[k] + 3 * vs[k]) * t**k for k in us), t)
    out["linear_lnm"] = {
        "constraints": {str(k): terms(co.get(k, 0)) for k in (-1, -2)},
        "evaluation": terms(co.get(0, 0)),
    }

    # stabilization: largest coefficient index reaching t^(<=0) in a cubic
    n, m = 2, 7
    ws = laurent_symbols("w", -n, m)
    W = sum(v * t**k for k, v in ws.items())
    co = t_coeffs(W**3, t)
    used = set()
    for k, c in co.items():
        if k <= 0:
            used |= {int(s.name[2:-1]) for s in c.free_symbols}
    out["stabilization_cubic_n2"] = max(used)

    # Waring-type expansions
    out["waring_image"] = {str(k): terms(c) for k, c in t_coeffs((x1 + t * x2) ** 3 - x1**3, t).items()}
    co = t_coeffs((x1**2 / t) * (t * x2**2), t)
    out["fgh2_cancel"] = {str(k): terms(c) for k, c in co.items()}
    co = t_coeffs((x1**2 / t) * (x2**2 / t), t)
    out["fgh2_pole"] = {str(k): terms(c) for k, c in co.items()}

    # Waring certificate for x1^2 x2
    P = sp.Rational(1, 3) * (x1 + t * x2) * (x1 + t * x2) ** 2 - sp.Rational(1, 3) * x1 * x1**2
    out["waring_certificate_expansion"] = {str(k): terms(c) for k, c in t_coeffs(P, t).items()}

    # line through x = x1^2, y = x2^2 re-centred at t0 = 1/2
    c = (1 - (sp.Rational(1, 2) + t)) * x1**2 + (sp.Rational(1, 2) + t) * x2**2
    out["line_curve_half"] = {str(k): terms(v) for k, v in t_coeffs(c, t).items()}

    # Groebner fixtures
    B = sp.groebner([x - y, y - z], x, y, z, order="lex")
    out["gb_linear_lex"] = [terms(b, [x, y, z]) for b in B.exprs]
    B = sp.groebner([y - x**2, z - x**3], x, y, z, order="lex")
    out["gb_twisted_cubic_lex"] = [terms(b, [x, y, z]) for b in B.exprs]
    a, b = S("a"), S("b")
    B = sp.groebner([x - a**2, y - a * b, z - b**2], a, b, x, y, z, order="lex")
    out["veronese_ideal"] = [terms(e) for e in B.exprs if not (e.free_symbols & {a, b})]
    out["veronese_at_101"] = str((y**2 - x * z).subs({x: 1, y: 0, z: 1}))

    # product of two binary linear forms: image closure is everything
    a1, a2, b1, b2 = (S(n) for n in ["a1", "a2", "b1", "b2"])
    prod = sp.expand((a1 * x1 + a2 * x2) * (b1 * x1 + b2 * x2))
    comps = [prod.coeff(x1, 2), prod.coeff(x1, 1).coeff(x2, 1), prod.coeff(x2, 2)]
    w = [S(f"w{i}") for i in range(3)]
    B = sp.groebner([wi - ci for wi, ci in zip(w, comps)], a1, a2, b1, b2, *w, order="lex")
    out["binary_products_ideal"] = [terms(e) for e in B.exprs if not (e.free_symbols & {a1, a2, b1, b2})]

    # g1*h1 + g2*h2 with linear g_i, quadratic h_i on binary forms: Jacobian rank
    rng = random.Random(7)
    cs = sp.symbols("c0:10")
    g1 = cs[0] * x1 + cs[1] * x2
    h1 = cs[2] * x1**2 + cs[3] * x1 * x2 + cs[4] * x2**2
    g2 = cs[5] * x1 + cs[6] * x2
    h2 = cs[7] * x1**2 + cs[8] * x1 * x2 + cs[9] * x2**2
    cub = sp.Poly(sp.expand(g1 * h1 + g2 * h2), x1, x2)
    comps = [cub.coeff_monomial(x1 ** (3 - i) * x2**i) for i in range(4)]
    J = sp.Matrix([[sp.diff(cp, c) for c in cs] for cp in comps])
    point = {c: rng.randint(-9, 9) for c in cs}
    out["cubic_products_jacobian_rank"] = int(J.subs(point).rank())

    # n = 0 system for u^3 - v^3 = x1^2 x2 with linear u, v: no solution at all
    u1, u2, v1, v2 = sp.symbols("u1 u2 v1 v2")
    img = sp.Poly(sp.expand((u1 * x1 + u2 * x2) ** 3 - (v1 * x1 + v2 * x2) ** 3), x1, x2)
    target = {(2, 1): 1}
    eqs = [img.coeff_monomial(x1 ** (3 - i) * x2**i) - target.get((3 - i, i), 0) for i in range(4)]
    out["waring_n0_groebner"] = [str(e) for e in sp.groebner(eqs, u1, u2, v1, v2, order="grevlex").exprs]

    # quadric strength facts
    out["strength_x1x2_x3x4"] = int(-(-G.rank() // 2))
    out["x1sq_x2_has_linear_factor"] = any(
        sp.Poly(fac, x1, x2).total_degree() == 1 for fac, _ in sp.factor_list(x1**2 * x2)[1]
    )

    OUT.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
