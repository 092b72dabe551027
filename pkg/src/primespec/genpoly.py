"""Generic and quasi-generic polynomial constructors.

The generic polynomial of degree D attaches one fresh coefficient
parameter to every power product of degree <= D in the ambient
variables.  A quasi-generic polynomial restricts the parametrized
support to a chosen monomial set S (which must contain 1) and adds a
fixed offset polynomial R.  ``hypothesis_h_sufficient`` implements the
sufficient non-degeneracy test: the parametrized family is guaranteed
non-degenerate when the base ideal is non-maximal and every ambient
variable is covered by S or by R.  The test never claims failure; the
only verdicts are holds-by-lemma and unknown.
"""

from __future__ import annotations

from dataclasses import dataclass

from .context import Block, ROLE_LAMBDA, context as make_context
from .errors import PrimespecError
from .groebner import DEFAULT_LIMITS, Ideal, fiber_dimension
from .poly import Exponent, Polynomial, monomials_upto, space_dimension
from .primality import DEFAULT_TRIALS, NOT_PRIME, PRIME, is_prime

HOLDS_BY_LEMMA = "holds_by_lemma"
UNKNOWN = "unknown"


def generic_polynomial(s: int, degree: int, lambda_names,
                       y_names=None) -> tuple[Polynomial, int]:
    """The degree-bounded polynomial with fresh parameter coefficients.

    Returns (polynomial over the context (lambda block | Y block), count
    of power products).  ``lambda_names`` must provide exactly one name
    per power product of degree <= ``degree``.
    """
    count = space_dimension(s, degree).count
    lambda_names = tuple(lambda_names)
    if len(lambda_names) != count:
        raise ValueError(f"need {count} lambda names, got {len(lambda_names)}")
    if y_names is None:
        y_names = tuple(f"Y{i}" for i in range(1, s + 1))
    ctx = make_context(y_names, lambdas=(("L", lambda_names),))
    exponents = monomials_upto(s, degree)
    terms = {}
    n_lambda = len(lambda_names)
    for i, y_exp in enumerate(exponents):
        exp = [0] * len(ctx)
        exp[i] = 1
        for j, e in enumerate(y_exp):
            exp[n_lambda + j] = e
        terms[tuple(exp)] = 1
    return Polynomial(ctx, terms), count


@dataclass(frozen=True)
class QuasiGenericSpec:
    """Support monomials S, offset polynomial R, and fresh parameter names.

    ``support`` holds exponent tuples over the Y-variables of the
    offset's context, with the constant monomial first.
    """

    support: tuple[Exponent, ...]
    offset: Polynomial
    lambda_names: tuple[str, ...]

    def __post_init__(self):
        if not self.support or any(self.support[0]):
            raise ValueError("support must start with the constant monomial 1")
        if len(set(self.support)) != len(self.support):
            raise ValueError("support monomials must be distinct")
        if len(self.lambda_names) != len(self.support):
            raise ValueError("need one lambda name per support monomial")
        s = self.offset.context.s
        if any(len(exp) != s for exp in self.support):
            raise ValueError("support exponents must range over the Y-variables")
        clash = set(self.lambda_names) & set(self.offset.context.names)
        if clash:
            raise ValueError(f"lambda names collide with existing variables: {sorted(clash)}")

    @property
    def degree(self) -> int:
        return max(sum(exp) for exp in self.support)


def quasi_generic(spec: QuasiGenericSpec) -> Polynomial:
    """Assemble sum(lambda_i * S_i) + R over the extended context."""
    base = spec.offset.context
    ctx = base.adjoin_front(Block("L", ROLE_LAMBDA, spec.lambda_names))
    y_positions = ctx.indices_of(base.var_names)
    n_lambda = len(spec.lambda_names)
    terms = {}
    for i, y_exp in enumerate(spec.support):
        exp = [0] * len(ctx)
        exp[i] = 1
        for j, e in enumerate(y_exp):
            exp[y_positions[j]] = e
        terms[tuple(exp)] = 1
    result = Polynomial(ctx, terms) + spec.offset.embed(ctx)
    if spec.offset.is_zero:
        s = base.s
        d = spec.degree
        if set(spec.support) == set(monomials_upto(s, d)):
            full, _ = generic_polynomial(s, d, spec.lambda_names, base.var_names)
            assert result == (full if full.context == ctx else full.embed(ctx))
    return result


@dataclass(frozen=True)
class HypothesisHStatus:
    status: str
    reason: str


def _offset_negated_param(spec: QuasiGenericSpec):
    """The parameter name when the offset is exactly -T_i, else None."""
    offset = spec.offset
    if len(offset.terms) != 1:
        return None
    [(exp, coeff)] = offset.terms.items()
    if coeff != -1 or sum(exp) != 1:
        return None
    position = exp.index(1)
    name = offset.context.names[position]
    if name in offset.context.param_names:
        return name
    return None


def hypothesis_h_sufficient(ideal: Ideal, spec: QuasiGenericSpec,
                            trials: int = DEFAULT_TRIALS, seed: int = 0,
                            limits=DEFAULT_LIMITS) -> HypothesisHStatus:
    """Sufficient test for the non-degeneracy hypothesis of the family.

    Plain reading: the base ideal must be non-maximal and every ambient
    variable must appear in the support or equal the offset.  When the
    offset is minus a parameter variable, the ambient ring is re-blocked
    over the fraction field of the other parameters and the support must
    cover all Y-variables, with the parameter covered by the offset.
    The verdict is never negative: anything uncertified stays unknown.
    """
    ctx = ideal.context
    if spec.offset.context != ctx:
        raise PrimespecError("spec offset and ideal must share a context")
    target_param = _offset_negated_param(spec)
    s = ctx.s
    unit_exps = []
    for j, name in enumerate(ctx.var_names):
        exp = [0] * s
        exp[j] = 1
        unit_exps.append(tuple(exp))

    if target_param is not None:
        covered = all(exp in spec.support for exp in unit_exps)
        if not covered:
            return HypothesisHStatus(
                UNKNOWN, "support does not contain every ambient variable")
        others = tuple(n for n in ctx.param_names if n != target_param) + ctx.lambda_names
        fiber_dim = fiber_dimension(ideal, others, limits)
        if fiber_dim > 0:
            return HypothesisHStatus(
                HOLDS_BY_LEMMA,
                f"re-blocked ideal has positive dimension {fiber_dim}; "
                f"support covers the variables and the offset covers {target_param}")
        return HypothesisHStatus(UNKNOWN, "cannot certify non-maximality after re-blocking")

    support_set = set(spec.support)
    for j, name in enumerate(ctx.var_names):
        if unit_exps[j] in support_set:
            continue
        if spec.offset == Polynomial.variable(ctx, name):
            continue
        return HypothesisHStatus(
            UNKNOWN, f"variable {name} is neither in the support nor equal to the offset")

    dim = ideal.dimension(limits)
    if dim == -1:
        raise PrimespecError("hypothesis test expects a proper ideal")
    if dim > 0:
        return HypothesisHStatus(HOLDS_BY_LEMMA,
                                 f"ideal has dimension {dim} > 0, hence is non-maximal")
    verdict = is_prime(ideal, trials=trials, seed=seed, limits=limits)
    if verdict.status == PRIME:
        return HypothesisHStatus(UNKNOWN, "ideal is maximal")
    if verdict.status == NOT_PRIME:
        return HypothesisHStatus(HOLDS_BY_LEMMA,
                                 "zero-dimensional ideal is not prime, hence non-maximal")
    return HypothesisHStatus(UNKNOWN, "primality of the zero-dimensional ideal is unresolved")
