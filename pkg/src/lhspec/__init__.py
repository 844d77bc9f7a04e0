"""Length-holonomy spectra of hyperbolic isometry groups, computationally.

Building blocks: explicit so(3,1) structure theory (Cartan/Iwasawa splits,
roots, closed-form exponentials), eigenvalue classification of loxodromic
matrices into (length, holonomy) invariants, truncated Euler products and
their windowed zero multisets, and multiset-peeling algorithms that recover
length and holonomy-ratio spectra back out of the zero data.
"""

from .errors import (
    AmbiguousTrace,
    ConvergenceWarning,
    DivisionByZero,
    DomainError,
    FactorZero,
    IncompleteWindow,
    NegativeMultiplicity,
    NotInAlgebra,
    NotInGroup,
    NotLoxodromic,
    ParseError,
    SpectralError,
    UnderflowError,
)
from .lie_so31 import (
    H0,
    J,
    POSITIVE_ROOTS,
    ROOTS,
    TAU_ALG,
    CartanParams,
    LieElement,
    algebra_residual,
    bracket,
    cartan_generator,
    cartan_split,
    exp_cartan,
    in_algebra,
    iwasawa_basis,
    iwasawa_split,
    n_matrix,
    restriction_multiplicities,
    rho0,
    root_eval,
    theta,
)
from .geodesic import (
    LOXODROMIC_THRESHOLD,
    TAU_SPEC,
    ClassInvariant,
    PrimitiveClass,
    Spectrum,
    classify,
    group_residual,
    in_group,
    inverse_class,
    merge,
    power_class,
    spectrum_difference,
)
from .multisets import (
    TAU_ZERO,
    ComplexMultiset,
    MatchResult,
    RealMultiset,
    match_multisets,
    multiset_equal,
)
from .zeta import (
    LatticePoint,
    TauIndex,
    Truncation,
    euler_factor,
    factor_exponent,
    log_derivative,
    xi_lambda,
    zeta_ratio,
    zeta_tau,
)
from .zeros import ZeroWindow, class_trace, strip_k0, zero_line, zero_multiset
from .recovery import RecoveryReport, recover_lengths, recover_ratios, smo_check
from .cli_io import (
    dumps,
    load_spectrum,
    parse_complex,
    parse_spectrum,
    run_cli,
    serialize_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousTrace",
    "CartanParams",
    "ClassInvariant",
    "ComplexMultiset",
    "ConvergenceWarning",
    "DivisionByZero",
    "DomainError",
    "FactorZero",
    "H0",
    "IncompleteWindow",
    "J",
    "LOXODROMIC_THRESHOLD",
    "LatticePoint",
    "LieElement",
    "MatchResult",
    "NegativeMultiplicity",
    "NotInAlgebra",
    "NotInGroup",
    "NotLoxodromic",
    "POSITIVE_ROOTS",
    "ParseError",
    "PrimitiveClass",
    "ROOTS",
    "RealMultiset",
    "RecoveryReport",
    "SpectralError",
    "Spectrum",
    "TAU_ALG",
    "TAU_SPEC",
    "TAU_ZERO",
    "TauIndex",
    "Truncation",
    "UnderflowError",
    "ZeroWindow",
    "algebra_residual",
    "bracket",
    "cartan_generator",
    "cartan_split",
    "class_trace",
    "classify",
    "dumps",
    "euler_factor",
    "exp_cartan",
    "factor_exponent",
    "group_residual",
    "in_algebra",
    "in_group",
    "inverse_class",
    "iwasawa_basis",
    "iwasawa_split",
    "load_spectrum",
    "log_derivative",
    "match_multisets",
    "merge",
    "multiset_equal",
    "n_matrix",
    "parse_complex",
    "parse_spectrum",
    "power_class",
    "recover_lengths",
    "recover_ratios",
    "restriction_multiplicities",
    "rho0",
    "root_eval",
    "run_cli",
    "serialize_spectrum",
    "smo_check",
    "spectrum_difference",
    "strip_k0",
    "theta",
    "xi_lambda",
    "zero_line",
    "zero_multiset",
    "zeta_ratio",
    "zeta_tau",
]
