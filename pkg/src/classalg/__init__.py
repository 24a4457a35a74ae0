"""Universal algebra over setoids: signatures, models, theories, homomorphisms,
free-model decision procedures, numeric towers and expression quoting."""
from .algebra import (
    EXHAUSTIVE,
    FiniteModel,
    Grid,
    Homomorphism,
    SampledModel,
    Sampling,
    check_homomorphism,
    first_homomorphism,
    is_algebra,
    is_congruence,
    kernel_congruence,
    quotient,
)
from .normal import decide_free_eq, normalize
from .terms import App, Signature, Var, VarContext, validate_term
from .theories import builtin_theory, check_in_variety

__all__ = [
    "App", "EXHAUSTIVE", "FiniteModel", "Grid", "Homomorphism", "SampledModel", "Sampling",
    "Signature", "Var", "VarContext", "builtin_theory", "check_homomorphism", "check_in_variety",
    "decide_free_eq", "first_homomorphism", "is_algebra", "is_congruence", "kernel_congruence",
    "normalize", "quotient", "validate_term",
]
