"""Exact specialization toolkit for parametrized prime ideals over Q."""

__version__ = "0.1.0"

from .context import Block, VariableContext, context
from .errors import (BudgetExceededError, ConfigError, ContextMismatchError,
                     HypothesisViolationError, PolynomialSyntaxError, PrimespecError,
                     UnknownVariableError)
from .factor import brute_force_factor_oracle, factor_univariate, is_irreducible_univariate
from .genpoly import (HypothesisHStatus, QuasiGenericSpec, generic_polynomial,
                      hypothesis_h_sufficient, quasi_generic)
from .groebner import (GBLimits, GroebnerBasis, Ideal, buchberger, buchberger_basis,
                       eliminate, fiber_dimension, ideal_dimension, normal_form)
from .orders import MonomialOrder, block_order, elimination_order, grevlex, lex
from .parse import parse_ideal_source, parse_polynomial, read_ideal_file
from .poly import Polynomial, monomials_upto, space_dimension
from .primality import (PrimalityVerdict, ZeroDimQuotient, is_prime,
                        minimal_polynomial, quotient_basis)
from .specialize import (LambdaAssignment, SpecializationPoint, build_parametric_system,
                         intersect_generic, specialize_polynomial, specialize_scalar)

__all__ = [
    "Block", "VariableContext", "context",
    "PrimespecError", "ContextMismatchError", "PolynomialSyntaxError",
    "UnknownVariableError", "BudgetExceededError", "HypothesisViolationError",
    "ConfigError",
    "Polynomial", "monomials_upto", "space_dimension",
    "parse_polynomial", "parse_ideal_source", "read_ideal_file",
    "MonomialOrder", "lex", "grevlex", "block_order", "elimination_order",
    "GBLimits", "GroebnerBasis", "Ideal", "buchberger", "buchberger_basis",
    "normal_form", "ideal_dimension", "eliminate", "fiber_dimension",
    "factor_univariate", "brute_force_factor_oracle", "is_irreducible_univariate",
    "ZeroDimQuotient", "quotient_basis", "minimal_polynomial", "is_prime",
    "PrimalityVerdict",
    "generic_polynomial", "QuasiGenericSpec", "quasi_generic",
    "hypothesis_h_sufficient", "HypothesisHStatus",
    "SpecializationPoint", "LambdaAssignment", "specialize_scalar",
    "specialize_polynomial", "intersect_generic", "build_parametric_system",
]
