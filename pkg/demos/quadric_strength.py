"""
Strength of quadrics
====================

For a quadratic form the strength is half its rank, rounded up, and the
strength map is onto the matching rank locus. Below: ranks, certificates
built by splitting off hyperbolic planes, and the minor that rules out
smaller strength.
"""

import random

from gllimits import P, gl_act, gram_matrix, matrix_rank, quadratic_strength, sigma_search
from gllimits.repspace import CoordSpace, Point
from gllimits.sampling import random_gl

for text in ["x1^2", "x1*x2", "x1^2 + x2^2 + x3^2", "x1*x2 + x3*x4", "x1*x2 - 3*x3^2 + x4*x5"]:
    f = P(text)
    print(f"{text:28s} rank {matrix_rank(gram_matrix(f))}  strength {quadratic_strength(f)}")

# strength does not move under a change of coordinates
rng = random.Random(1)
f = P("x1*x2 + x3*x4")
g = random_gl(rng, 4)
moved = gl_act(g, Point(CoordSpace.forms([2], 4), [f])).forms[0]
print("after a random GL_4 element:", moved)
print("strength still", quadratic_strength(moved))

# %%
# A certificate for the moved form, found by exact isotropic vectors
res = sigma_search(moved, 2, 0)
print(res.status, "s =", res.s)
for g_i, h_i in res.certificate.pairs:
    print("  (", g_i.coefficient(0), ") * (", h_i.coefficient(0), ")")

# with one product it cannot work: a 3x3 minor of the Gram matrix is nonzero
res = sigma_search(moved, 1, 0)
print(res.status, "| nonmember:", res.nonmember, "|", res.evidence)

# x1^2 + x2^2 has strength 1 over C, but no rational factorization
res = sigma_search(P("x1^2 + x2^2"), 1, 0)
print(res.status, "s =", res.s)
