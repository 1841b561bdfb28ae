"""
Image closures, two ways
========================

Elimination gives the ideal of the closure of a parametrized image.
Laurent points give its points: a curve whose image has no pole tends to a
point of the closure as t goes to 0. Here both for the squares of binary
linear forms and for the map (f, g, h) -> fg - h^2.
"""

import random

from gllimits import P, PolyMap, Point, image_search, implicitize, lnm_check, lnm_constraints
from gllimits.oracle import border_membership
from gllimits.sampling import random_laurent_point

# squares of linear forms: a conic in the plane of binary quadrics
sq = PolyMap.forms([1], [2], ["a^2"], 2, ["a"], ["w"])
I = implicitize(sq)
print("ideal:", [str(g) for g in I.basis])
print("x1^2 + 2*x1*x2 + x2^2 in closure:", border_membership(Point(sq.target, ["x1^2 + 2*x1*x2 + x2^2"]), sq))
print("x1^2 + x2^2 in closure:", border_membership(Point(sq.target, ["x1^2 + x2^2"]), sq))

res = image_search(sq, Point(sq.target, ["x1^2 + x2^2"]), 2)
print("search:", res.status, "| outside closure:", res.nonmember)

# %%
# fg - h^2 at n = 1, m = 1
fgh = PolyMap.forms([2, 2, 2], [4], ["f*g - h^2"], 2, ["f", "g", "h"], ["F"])
cs = lnm_constraints(fgh, 1, 1)
print(cs)

# random sparse Laurent points: those satisfying the constraints have a limit
rng = random.Random(3)
hits = 0
for _ in range(200):
    y = random_laurent_point(rng, fgh.source, 1, 1, density=0.2)
    ok, value = lnm_check(fgh, y)
    if ok != cs.satisfied_by(y):
        raise SystemExit("constraint check disagrees with the pole test")
    if ok and y.pole_order > 0:
        hits += 1
        last = value
print(hits, "pole-carrying points with a pole-free image; one limit:", last.forms[0])

# the map is dominant at level 2, so the closure is everything
print("dense image:", implicitize(fgh).basis == [])
