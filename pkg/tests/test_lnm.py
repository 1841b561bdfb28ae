import random

import pytest

from _helpers import derived, from_terms
from gllimits import (
    CoordSpace,
    LaurentPoint,
    P,
    PolyMap,
    SpaceMismatch,
    image_search,
    lnm_check,
    lnm_constraints,
    stabilization_bound,
    substitute_laurent,
)
from gllimits.laurent import limit_at_zero
from gllimits.oracle import border_membership, implicitize
from gllimits.repspace import Point
from gllimits.sampling import random_laurent_point, random_map, random_point

FGH = PolyMap.forms([2, 2, 2], [4], ["f*g - h^2"], 2, ["f", "g", "h"], ["F"])
WARING = PolyMap.forms([1, 1], [3], ["u^3 - v^3"], 2, ["u", "v"], ["F"])


def test_fgh2_constraints():
    cs = lnm_constraints(FGH, 1, 1)
    want = derived()["fgh2_lnm"]
    assert [(c.target, c.exponent) for c in cs.constraints] == [(0, -1), (0, -2)]
    for c in cs.constraints:
        assert c.poly == from_terms(want["constraints"][str(c.exponent)])
    assert cs.evaluation == [from_terms(want["evaluation"])]
    assert cs.evaluation[0] == P("f[-1]*g[1] + f[0]*g[0] + f[1]*g[-1] - 2*h[-1]*h[1] - h[0]^2")


def test_n_zero_has_no_constraints():
    cs = lnm_constraints(FGH, 0, 3)
    assert cs.constraints == []
    assert cs.evaluation == [P("f[0]*g[0] - h[0]^2")]


def test_linear_map():
    phi = PolyMap.forms([1, 1], [1], ["u + 3*v"], 2, ["u", "v"], ["w"])
    cs = lnm_constraints(phi, 2, 0)
    want = derived()["linear_lnm"]
    assert [c.poly for c in cs.constraints] == [from_terms(want["constraints"][k]) for k in ("-1", "-2")]
    assert cs.evaluation == [from_terms(want["evaluation"])]


def test_lnm_check_examples():
    y = LaurentPoint(WARING.source, {0: ["x1", "x1"], 1: ["x2", "0"]})
    ok, value = lnm_check(WARING, y)
    assert ok and value.is_zero
    z = LaurentPoint(FGH.source, {-1: ["x1^2", "0", "0"]})
    ok, value = lnm_check(FGH, z)
    assert ok and value.is_zero
    w = LaurentPoint(FGH.source, {-1: ["x1^2", "x2^2", "0"]})
    assert lnm_check(FGH, w) == (False, None)
    assert substitute_laurent(FGH, w).coefficient(-2).forms[0] == from_terms(derived()["fgh2_pole"]["-2"])
    with pytest.raises(SpaceMismatch):
        lnm_check(WARING, z)


def test_stabilization_bound():
    assert stabilization_bound(FGH, 1) == 1
    lin = PolyMap.forms([1], [1], ["2*u"], 2, ["u"], ["w"])
    assert stabilization_bound(lin, 5) == 0
    cub = PolyMap.forms([1], [3], ["u^3"], 1, ["u"], ["w"])
    assert stabilization_bound(cub, 2) == derived()["stabilization_cubic_n2"] == 4
    rng = random.Random(2)
    phi = random_map(rng, [1, 1], [3], 2, 3)
    a, b = lnm_constraints(phi, 2, 4), lnm_constraints(phi, 2, 5)
    assert [c.poly for c in a.constraints] == [c.poly for c in b.constraints]
    assert a.evaluation == b.evaluation


def test_constraints_match_pole_freedom():
    rng = random.Random(21)
    agree = 0
    for _ in range(15):
        phi = random_map(rng, [1, 2], [2, 3], 1, 3)
        n, m = rng.randint(0, 2), rng.randint(0, 2)
        cs = lnm_constraints(phi, n, m)
        for _ in range(8):
            # sparse points often satisfy the constraints; dense ones rarely do
            y = random_laurent_point(rng, phi.source, n, m, density=rng.choice([0.15, 0.5]))
            ok, value = lnm_check(phi, y)
            assert ok == cs.satisfied_by(y)
            if ok:
                assert cs.evaluate(y) == value
                agree += 1
    assert agree > 0


def test_scalar_expansion_consistency():
    rng = random.Random(5)
    cs = lnm_constraints(FGH, 1, 1)
    sys = cs.scalar()
    assert len(sys.variables) == 3 * 3 * 3
    order = [c.coordinate for c in sys.constraints]
    assert order == sorted(order, key=FGH.target.all_coordinate_vars().index)
    for _ in range(5):
        y = random_laurent_point(rng, FGH.source, 1, 1)
        assign = {}
        for k in range(-1, 2):
            assign.update(y.coefficient(k).coordinate_assignment(k))
        img = substitute_laurent(FGH, y)
        for c in sys.constraints:
            coords = img.coefficient(c.exponent).coordinate_assignment()
            assert c.poly.evaluate(assign) == coords[c.coordinate]
        for var, e in sys.evaluation:
            assert e.evaluate(assign) == img.coefficient(0).coordinate_assignment()[var]


def test_containment_in_image_closure():
    rng = random.Random(17)
    phi = PolyMap.forms([1], [2], ["a^2"], 2, ["a"], ["w"])
    I = implicitize(phi)
    hits = 0
    for _ in range(30):
        y = random_laurent_point(rng, phi.source, 1, 1, density=0.4)
        ok, value = lnm_check(phi, y)
        if ok:
            hits += 1
            assert border_membership(value, phi, ideal=I)
    assert hits > 0


def test_image_search_direct_preimage():
    rng = random.Random(0)
    p = random_point(rng, FGH.source)
    res = image_search(FGH, FGH(p), 1, rng=rng)
    assert res.found and res.n == 0
    ok, value = lnm_check(FGH, res.witness)
    assert ok and value == FGH(p)


def test_image_search_veronese_nonmember():
    phi = PolyMap.forms([1], [2], ["a^2"], 2, ["a"], ["w"])
    target = Point(phi.target, ["x1^2 + x2^2"])
    res = image_search(phi, target, 2)
    assert not res.found and res.nonmember


def test_image_search_waring():
    res = image_search(WARING, Point(WARING.target, ["x1^2*x2"]), 1, rng=random.Random(0))
    assert res.found and res.n == 1
    assert res.empty_levels == [0]
    ok, value = lnm_check(WARING, res.witness)
    assert ok and value.forms[0] == P("x1^2*x2")
