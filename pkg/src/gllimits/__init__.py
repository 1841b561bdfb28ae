"""Exact computations with limits of polynomial maps between spaces of forms.

Strength and border strength of forms, Laurent truncations of polynomial
maps with their evaluation at ``t = 0``, and a small Groebner-basis engine
for implicitization and rational solutions, all over Q.
"""

from .errors import (
    AlgebraError,
    BasisMissing,
    DegreeMismatch,
    InvalidSplitting,
    LevelMismatch,
    NonInvertible,
    NotEquivariant,
    NotQuadratic,
    OracleTimeout,
    ParseError,
    PoleAtZero,
    ResourceLimit,
    SpaceMismatch,
    UnboundVariable,
    UnsupportedSlot,
)
from .laurent import (
    LaurentPoint,
    LaurentPoly,
    expand_at,
    gl_act_laurent,
    limit_at_zero,
    line_curve,
    reparametrize,
    shift_exponent,
    substitute_laurent,
)
from .linalg import GramMatrix, gram_matrix, matrix_rank
from .lnm import ConstraintSystem, image_search, lnm_check, lnm_constraints, stabilization_bound
from .maps import PolyMap
from .oracle import (
    GREVLEX,
    LEX,
    Ideal,
    MonomialOrder,
    border_membership,
    buchberger,
    eliminate,
    find_rational_point,
    groebner,
    implicitize,
    implicitize_polys,
    normal_form,
)
from .poly import P, Poly, parse_poly, poly_mul, poly_substitute
from .repspace import (
    CoordSpace,
    Partition,
    PartitionTuple,
    Point,
    embed_point,
    gl_act,
    schur_dim,
    specialize_point,
)
from .strength import (
    Certificate,
    DegreeSplitting,
    canonical_splittings,
    quadratic_strength,
    sigma_search,
    strength_map,
    verify_border_certificate,
    verify_decomposition,
)

__version__ = "0.1.0"
