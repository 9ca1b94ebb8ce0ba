"""Exact construction and verification of cyclic pre-Lie-Rinehart structures.

Carriers are Q[t1..tn], Q(t1..tn) and truncated series Q[[t]]/(t^N); every
comparison is exact (series: up to the precision both sides know).
"""

from .calculus import (
    OneForm,
    TwoForm,
    VectorField,
    ad_matrix,
    apply,
    d_oneform,
    d_scalar,
    lie_derivative,
    lie_derivative_matrix,
    pair,
    vf_bracket,
)
from .cdo import (
    CdoOperator,
    Connection,
    ExtensionalOperator,
    FreeModule,
    IdempotentPresentation,
    cdo_apply,
    cdo_bracket,
    cdo_check,
    connection_from_lift,
    projective_lift,
    summation_lift,
)
from .errors import (
    ConditionViolated,
    ConfigError,
    CyclorError,
    DivisionByZero,
    ExpressionError,
    NotDivisible,
    NotIdempotent,
    NotUnivariate,
    PrecisionExhausted,
    RingMismatch,
    SchemaError,
    SingularPairing,
    ZeroFieldError,
)
from .ode import SecondOrderOde, airy_series, dg_field, hirota, reproduce_closing_example, series_solve
from .parser import parse_expression
from .prelie import (
    PairingSpace,
    PreLieStructure,
    StructureData,
    anchor,
    associator,
    bracket,
    build_structure,
    derive_dual_operator,
    eigen_solve,
    nabla_operator,
    product,
    standard_omega_instance,
    symmetry_condition,
)
from .results import CheckResult
from .rings import Poly, RatFunc, Ring, RingElement, Series, derive, exact_divide, rational
from .sampling import SamplerConfig, sample_element
from .verifier import run_check, run_suite

__version__ = "0.1.0"
