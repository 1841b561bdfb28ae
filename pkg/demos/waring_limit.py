"""
A cubic as a limit of two cubes
===============================

``x1^2 x2`` is not a sum of two cubes of linear forms, but it is the limit
of ``((x1 + t x2)^3 - x1^3) / (3t)``. We build that certificate, check it,
watch it fail with the wrong pole order, and then let the search find a
witness by itself.
"""

import random

from gllimits import P, PolyMap, Point, image_search, lnm_constraints, verify_border_certificate
from gllimits.laurent import LaurentPoly
from gllimits.strength import Certificate, DegreeSplitting

f = P("x1^2*x2")

# g_i have degree 1, h_i degree 2: g1 h1 + g2 h2 with a t^-1 in front
split = DegreeSplitting(3, [1, 1])
factors = [
    LaurentPoly({0: P("1/3*x1"), 1: P("1/3*x2")}),
    LaurentPoly({0: P("x1^2"), 1: P("2*x1*x2"), 2: P("x2^2")}),
    LaurentPoly({0: P("-1/3*x1")}),
    LaurentPoly({0: P("x1^2")}),
]
cert = Certificate(1, split, factors)
v = verify_border_certificate(f, cert)
print("accepted:", v.accepted, "s =", v.s)
for k, p in v.expansion.coeffs.items():
    print(f"  t^{k}: {p.forms[0]}")

# too little pole order: the limit exists but is 0
print("with s=0:", verify_border_certificate(f, cert.with_s(0)).reason)
# too much: the t^-1 term survives
print("with s=2:", verify_border_certificate(f, cert.with_s(2)).reason)

# %%
# The same question as a Laurent image search for u^3 - v^3
waring = PolyMap.forms([1, 1], [3], ["u^3 - v^3"], 2, ["u", "v"], ["F"])
print(lnm_constraints(waring, 1, 2))

res = image_search(waring, Point(waring.target, [f]), 1, rng=random.Random(0))
print("status:", res.status, "at n =", res.n, "; levels with no solution at all:", res.empty_levels)
print("witness u(t):", res.witness.slot_series(0))
print("witness v(t):", res.witness.slot_series(1))
