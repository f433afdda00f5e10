"""Bicomplex numbers, mixed polynomials and polar weighted homogeneity."""

__version__ = "0.1.0"

from .bicomplex import (
    E,
    E_DAG,
    ONE,
    ZERO,
    Bicomplex,
    ComplexAngle,
    HyperbolicPolarForm,
    HyperbolicValue,
    IdempotentPair,
    PolarForm,
    arg_complex,
    conj,
    exp_j,
    from_idempotent,
    hyperbolic_polar,
    is_zero_divisor,
    mul,
    norm_complex,
    norm_complex_sq,
    norm_euclid,
    norm_hyperbolic,
    polar_form,
    proj_i,
    proj_k,
    to_idempotent,
    try_inverse,
)
from .errors import ArityError, BicomplexDomainError, NotInvertibleError, PreconditionError, ShapeError
from .linalg import BCMatrix, RankPair, det, embed, rank_pair, split, try_invert
from .parser import ParseError, parse
from .poly import (
    ComplexMixedPair,
    MixedPolynomial,
    classify,
    eval_components,
    eval_poly,
    format_polynomial,
    idempotent_rep,
    normalize,
    sym_partial,
)
from .calculus import bc_jacobian, holomorphy_test, partial, real_jacobian, singular_test
from .weights import (
    DegreeSystem,
    InfeasibleWeights,
    PolarActionElement,
    WeightSystem,
    apply_action,
    degree_system,
    euler_check,
    join_weights,
    solve_weights,
    verify_homogeneity,
    weight_report,
)
from .topology import (
    BouquetInvariants,
    FibrationContext,
    bouquet_count,
    cyclic_invariants,
    discriminant_ray_check,
    global_trivialize,
    global_trivialize_inverse,
    in_VF,
    link_membership,
    phi_i,
    phi_s3,
    radial_transversality,
    regular_value_sample,
    sphere_trivialize,
    tube_membership,
    unfold,
)

__all__ = [
    "__version__",
    "E",
    "E_DAG",
    "ONE",
    "ZERO",
    "Bicomplex",
    "ComplexAngle",
    "HyperbolicPolarForm",
    "HyperbolicValue",
    "IdempotentPair",
    "PolarForm",
    "arg_complex",
    "conj",
    "exp_j",
    "from_idempotent",
    "hyperbolic_polar",
    "is_zero_divisor",
    "mul",
    "norm_complex",
    "norm_complex_sq",
    "norm_euclid",
    "norm_hyperbolic",
    "polar_form",
    "proj_i",
    "proj_k",
    "to_idempotent",
    "try_inverse",
    "ArityError",
    "BicomplexDomainError",
    "NotInvertibleError",
    "PreconditionError",
    "ShapeError",
    "BCMatrix",
    "RankPair",
    "det",
    "embed",
    "rank_pair",
    "split",
    "try_invert",
    "ParseError",
    "parse",
    "ComplexMixedPair",
    "MixedPolynomial",
    "classify",
    "eval_components",
    "eval_poly",
    "format_polynomial",
    "idempotent_rep",
    "normalize",
    "sym_partial",
    "bc_jacobian",
    "holomorphy_test",
    "partial",
    "real_jacobian",
    "singular_test",
    "DegreeSystem",
    "InfeasibleWeights",
    "PolarActionElement",
    "WeightSystem",
    "apply_action",
    "degree_system",
    "euler_check",
    "join_weights",
    "solve_weights",
    "verify_homogeneity",
    "weight_report",
    "BouquetInvariants",
    "FibrationContext",
    "bouquet_count",
    "cyclic_invariants",
    "discriminant_ray_check",
    "global_trivialize",
    "global_trivialize_inverse",
    "in_VF",
    "link_membership",
    "phi_i",
    "phi_s3",
    "radial_transversality",
    "regular_value_sample",
    "sphere_trivialize",
    "tube_membership",
    "unfold",
]
