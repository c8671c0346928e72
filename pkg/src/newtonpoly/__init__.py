"""Exact Newton-polygon analysis of rational polynomials.

Computes p-adic Newton polygons, predicts how they transform under
polynomial composition and iteration (with machine-checkable certificates),
verifies every prediction against literal composition, and derives
irreducibility bounds, eventual-stability certificates, prime-splitting
shapes and common-index-divisor witnesses.
"""

from .errors import NewtonPolyError
from .polygon import (
    FactorConstraints,
    NewtonPolygon,
    dumas_merge,
    factor_constraints,
    newton_polygon,
    phi_newton_polygon,
)
from .polyq import (
    DEFAULT_DEGREE_CAP,
    RationalPoly,
    compose,
    iterate,
    parse,
    phi_expand,
    render,
)
from .theorems import (
    TheoremCertificate,
    best_certificate,
    check_composition,
    check_composition_steep,
    check_iterate,
    check_pure_composition,
    classify_purity,
    eventual_stability,
    predict_composition,
    predict_iterate,
    verify_prediction,
)
from .ore import (
    SchurSpec,
    common_index_divisor,
    is_p_regular,
    residual_data,
    schur_dynamical_irreducibility,
    schur_polygon,
    schur_polynomial,
    splitting_shape,
    truncated_exponential,
)
from .valuations import INFINITY, vp, vp_factorial

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_DEGREE_CAP",
    "FactorConstraints",
    "INFINITY",
    "NewtonPolyError",
    "NewtonPolygon",
    "RationalPoly",
    "SchurSpec",
    "TheoremCertificate",
    "best_certificate",
    "check_composition",
    "check_composition_steep",
    "check_iterate",
    "check_pure_composition",
    "classify_purity",
    "common_index_divisor",
    "compose",
    "dumas_merge",
    "eventual_stability",
    "factor_constraints",
    "is_p_regular",
    "iterate",
    "newton_polygon",
    "parse",
    "phi_expand",
    "phi_newton_polygon",
    "predict_composition",
    "predict_iterate",
    "render",
    "residual_data",
    "schur_dynamical_irreducibility",
    "schur_polygon",
    "schur_polynomial",
    "splitting_shape",
    "truncated_exponential",
    "verify_prediction",
    "vp",
    "vp_factorial",
]
