"""Primality verdicts for ideals via zero-dimensional quotient algebra.

For a zero-dimensional ideal the quotient is a finite-dimensional
vector space with the staircase monomials as basis.  A random linear
form whose minimal polynomial is irreducible of full degree certifies
the quotient is a field (deterministic Prime); a reducible minimal
polynomial yields a product pair lying in the ideal with both factors
outside it (certified NotPrime).  Positive-dimensional ideals are cut
down by random affine hyperplane sections: all sections must agree on
Prime (probabilistic verdict), and a section's NotPrime certificate is
only reported when it replays on the original ideal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .context import context as make_context
from .errors import PrimespecError
from .factor import factor_univariate
from .groebner import DEFAULT_LIMITS, GroebnerBasis, Ideal
from .orders import grevlex
from .poly import Exponent, Polynomial

PRIME = "prime"
NOT_PRIME = "not_prime"
UNIT_IDEAL = "unit_ideal"
INCONCLUSIVE = "inconclusive"

DEFAULT_TRIALS = 5
DEFAULT_BOX_START = 10
DEFAULT_BOX_CAP = 1 << 16

_MINPOLY_VARIABLE = "Z"


class ZeroDimQuotient:
    """Vector-space view of K[vars]/I for a zero-dimensional ideal.

    ``staircase`` lists the monomials below the grevlex staircase in
    increasing order; multiplication operator matrices are built lazily
    per variable.
    """

    def __init__(self, basis: GroebnerBasis, limits=DEFAULT_LIMITS):
        self.basis = basis
        self.limits = limits
        leads = basis.leading_exponents()
        n = len(basis.context)
        bounds = [None] * n
        for exp in leads:
            support = [i for i, e in enumerate(exp) if e]
            if len(support) == 1:
                i = support[0]
                if bounds[i] is None or exp[i] < bounds[i]:
                    bounds[i] = exp[i]
        if any(b is None for b in bounds):
            raise ValueError("leading terms admit no finite staircase (dimension > 0)")
        staircase = []
        for exp in _box(bounds):
            if not any(_divides(lead, exp) for lead in leads):
                staircase.append(exp)
        staircase.sort(key=grevlex.key)
        self.staircase: tuple[Exponent, ...] = tuple(staircase)
        self.index = {exp: i for i, exp in enumerate(staircase)}
        self.vector_dim = len(staircase)
        self._mult_ops: dict[str, tuple[tuple[Fraction, ...], ...]] = {}

    def reduce(self, p: Polynomial) -> Polynomial:
        return self.basis.normal_form(p, self.limits)

    def coords(self, reduced: Polynomial) -> list[Fraction]:
        vec = [Fraction(0)] * self.vector_dim
        for exp, coeff in reduced.terms.items():
            vec[self.index[exp]] = coeff
        return vec

    def multiplication_matrix(self, name) -> tuple[tuple[Fraction, ...], ...]:
        """Matrix of multiplication by a variable, columns over the staircase."""
        cached = self._mult_ops.get(name)
        if cached is not None:
            return cached
        var = Polynomial.variable(self.basis.context, name)
        columns = []
        for exp in self.staircase:
            image = self.reduce(var * Polynomial.monomial(self.basis.context, exp))
            columns.append(self.coords(image))
        rows = tuple(tuple(columns[j][i] for j in range(self.vector_dim))
                     for i in range(self.vector_dim))
        self._mult_ops[name] = rows
        return rows


def _box(bounds):
    exps = [()]
    for bound in bounds:
        exps = [e + (k,) for e in exps for k in range(bound)]
    return exps


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def quotient_basis(ideal: Ideal, limits=DEFAULT_LIMITS) -> ZeroDimQuotient:
    """Staircase basis of the quotient; requires dimension exactly 0."""
    dim = ideal.dimension(limits)
    if dim != 0:
        raise ValueError(f"ideal has dimension {dim}, expected 0")
    return ZeroDimQuotient(ideal.groebner(grevlex, limits), limits)


def _solve_dependency(vectors, target):
    """Coefficients x with sum x_i vectors[i] = target, or None."""
    k = len(vectors)
    dim = len(target)
    rows = [[vectors[j][i] for j in range(k)] + [target[i]] for i in range(dim)]
    pivot_cols = []
    rank = 0
    for col in range(k):
        pivot = next((r for r in range(rank, dim) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [v / lead for v in rows[rank]]
        for r in range(dim):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        pivot_cols.append(col)
        rank += 1
    for r in range(rank, dim):
        if rows[r][k]:
            return None  # inconsistent: target independent of the vectors
    solution = [Fraction(0)] * k
    for r, col in enumerate(pivot_cols):
        solution[col] = rows[r][k]
    return solution


def minimal_polynomial(quotient: ZeroDimQuotient, element: Polynomial) -> Polynomial:
    """Monic least-degree m over Q with m(element) = 0 in the quotient.

    Returned as a univariate polynomial in the variable Z, found from
    the Krylov sequence 1, e, e^2, ... by exact linear algebra.
    """
    z_ctx = make_context((_MINPOLY_VARIABLE,))
    reduced = quotient.reduce(element)
    one = quotient.reduce(Polynomial.constant(quotient.basis.context, 1))
    vectors = [quotient.coords(one)]
    power = one
    for k in range(1, quotient.vector_dim + 1):
        power = quotient.reduce(power * reduced)
        target = quotient.coords(power)
        combo = _solve_dependency(vectors, target)
        if combo is not None:
            terms = {(k,): Fraction(1)}
            for i, c in enumerate(combo):
                if c:
                    terms[(i,)] = -c
            return Polynomial(z_ctx, terms)
        vectors.append(target)
    raise PrimespecError("Krylov sequence exceeded the quotient dimension")


@dataclass(frozen=True)
class SectionData:
    """One certification attempt: cutting forms, probe form, its minimal polynomial."""

    section_forms: tuple[Polynomial, ...]
    linear_form: Polynomial
    minimal_poly: Polynomial
    quotient_dim: int


@dataclass(frozen=True)
class PrimalityVerdict:
    status: str
    certificate: tuple[Polynomial, Polynomial] | None = None
    sections: tuple[SectionData, ...] = ()
    confidence_trials: int = 0
    probabilistic: bool = False
    reason: str = ""


def not_prime_verdict(basis: GroebnerBasis, f: Polynomial, g: Polynomial,
                      trials: int, limits=DEFAULT_LIMITS,
                      sections=()) -> PrimalityVerdict:
    """NotPrime verdict; the certificate is re-verified before it is issued."""
    if not basis.contains(f * g, limits):
        raise PrimespecError("invalid certificate: f*g is not in the ideal")
    if basis.contains(f, limits) or basis.contains(g, limits):
        raise PrimespecError("invalid certificate: a factor lies in the ideal")
    return PrimalityVerdict(NOT_PRIME, certificate=(f, g), sections=tuple(sections),
                            confidence_trials=trials)


def _random_linear_form(ctx, rng, box, affine=False):
    terms = {}
    width = len(ctx)
    if affine:
        constant = rng.randint(-box, box)
        if constant:
            terms[(0,) * width] = Fraction(constant)
    for i in range(width):
        c = rng.randint(-box, box)
        if c:
            exp = [0] * width
            exp[i] = 1
            terms[tuple(exp)] = Fraction(c)
    return Polynomial(ctx, terms)


def _split_minimal_poly(m: Polynomial):
    """(f, g) with f*g = m, both of positive degree, or None if irreducible."""
    unit, factors = factor_univariate(m)
    if len(factors) == 1 and factors[0][1] == 1:
        return None
    first, first_mult = factors[0]
    g = Polynomial.constant(m.context, unit) * first ** (first_mult - 1)
    for fac, mult in factors[1:]:
        g = g * fac ** mult
    return first, g


def _evaluate_in_quotient(quotient: ZeroDimQuotient, univariate: Polynomial,
                          element_reduced: Polynomial) -> Polynomial:
    """Normal form of univariate(element), by Horner inside the quotient.

    Expanding the composition as a raw polynomial can explode in term
    count; reducing after every Horner step keeps each intermediate at
    most vector_dim terms wide.
    """
    ctx = quotient.basis.context
    coeffs = [Fraction(0)] * (univariate.total_degree() + 1)
    for exp, c in univariate.terms.items():
        coeffs[exp[0]] = c
    acc = Polynomial.zero(ctx)
    for c in reversed(coeffs):
        acc = quotient.reduce(acc * element_reduced + Polynomial.constant(ctx, c))
    return acc


def _field_test(ideal: Ideal, quotient: ZeroDimQuotient, rng, trials,
                box_start, box_cap, limits) -> PrimalityVerdict:
    """Dimension-0 test: field certificate, NotPrime split, or Inconclusive."""
    ctx = ideal.context
    basis = ideal.groebner(grevlex, limits)
    box = box_start
    for attempt in range(1, trials + 1):
        u = _random_linear_form(ctx, rng, box)
        if u.is_zero:
            box = min(2 * box, box_cap)
            continue
        m = minimal_polynomial(quotient, u)
        split = _split_minimal_poly(m)
        if split is None:
            if m.total_degree() == quotient.vector_dim:
                data = SectionData((), u, m, quotient.vector_dim)
                return PrimalityVerdict(PRIME, sections=(data,), confidence_trials=attempt,
                                        probabilistic=False)
            box = min(2 * box, box_cap)  # u generates a proper subfield: retry
            continue
        f_z, g_z = split
        # The reduced images are the certificate: F*G = m(u) = 0 holds in
        # the quotient and minimality of m keeps both factors nonzero.
        reduced_u = quotient.reduce(u)
        f = _evaluate_in_quotient(quotient, f_z, reduced_u)
        g = _evaluate_in_quotient(quotient, g_z, reduced_u)
        return not_prime_verdict(basis, f, g, trials=attempt, limits=limits,
                                 sections=(SectionData((), u, m, quotient.vector_dim),))
    return PrimalityVerdict(INCONCLUSIVE, confidence_trials=trials,
                            reason="only degenerate linear forms drawn")


def is_prime(ideal: Ideal, trials: int = DEFAULT_TRIALS, seed: int = 0,
             box_start: int = DEFAULT_BOX_START, box_cap: int = DEFAULT_BOX_CAP,
             limits=DEFAULT_LIMITS) -> PrimalityVerdict:
    """Primality verdict for an ideal over the rationals.

    Dimension 0 gives deterministic answers (field certificate or a
    re-verified NotPrime pair).  In positive dimension the verdict
    Prime is probabilistic: ``trials`` independent random sections must
    all certify Prime; a section NotPrime certificate is reported only
    when it re-verifies against the original ideal, and disagreement
    yields Inconclusive.  Fixed seeds give identical verdicts.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    basis = ideal.groebner(grevlex, limits)
    if basis.is_unit:
        return PrimalityVerdict(UNIT_IDEAL, reason="1 lies in the ideal")
    dim = ideal.dimension(limits)
    if dim == 0:
        quotient = ZeroDimQuotient(basis, limits)
        return _field_test(ideal, quotient, rng, trials, box_start, box_cap, limits)

    box = box_start
    sections = []
    for trial in range(1, trials + 1):
        section = None
        for _ in range(8):
            forms = tuple(_random_linear_form(ideal.context, rng, box, affine=True)
                          for _ in range(dim))
            if any(f.is_zero or f.is_constant for f in forms):
                box = min(2 * box, box_cap)
                continue
            candidate = ideal.adjoin(forms)
            if candidate.dimension(limits) == 0:
                section = (forms, candidate)
                break
            box = min(2 * box, box_cap)
        if section is None:
            return PrimalityVerdict(INCONCLUSIVE, confidence_trials=trial - 1,
                                    reason="no zero-dimensional section found")
        forms, cut = section
        quotient = ZeroDimQuotient(cut.groebner(grevlex, limits), limits)
        inner = _field_test(cut, quotient, rng, trials, box, box_cap, limits)
        if inner.status == PRIME:
            probe = inner.sections[0]
            sections.append(SectionData(forms, probe.linear_form, probe.minimal_poly,
                                        probe.quotient_dim))
            continue
        if inner.status == NOT_PRIME:
            f, g = inner.certificate
            if (basis.contains(f * g, limits)
                    and not basis.contains(f, limits)
                    and not basis.contains(g, limits)):
                probe = inner.sections[0]
                descended = SectionData(forms, probe.linear_form, probe.minimal_poly,
                                        probe.quotient_dim)
                return not_prime_verdict(basis, f, g, trials=trial, limits=limits,
                                         sections=(descended,))
            return PrimalityVerdict(
                INCONCLUSIVE, confidence_trials=trial - 1,
                reason="a section is not prime but its certificate does not descend")
        return PrimalityVerdict(INCONCLUSIVE, confidence_trials=trial - 1,
                                reason=inner.reason or "section test inconclusive")
    return PrimalityVerdict(PRIME, sections=tuple(sections), confidence_trials=trials,
                            probabilistic=True)
