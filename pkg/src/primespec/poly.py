"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a map from exponent tuples (one entry per context
variable) to nonzero ``fractions.Fraction`` values.  The zero polynomial
has an empty term map.  All operations return canonical forms: no zero
coefficient is ever stored, and printing iterates terms in descending
grevlex order so equal polynomials always print identically.

Values are immutable after construction and safe to share across worker
processes; every operation builds a fresh term map.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .context import VariableContext
from .errors import ContextMismatchError
from .orders import grevlex

Exponent = tuple[int, ...]

# Test hook: when True, every constructed polynomial is audited for
# canonical form (no zero coefficients, consistent exponent lengths).
AUDIT = False


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


class Polynomial:
    __slots__ = ("context", "terms")

    def __init__(self, context: VariableContext, terms=None):
        canonical = {}
        width = len(context)
        if terms:
            for exp, coeff in terms.items():
                coeff = _coerce(coeff)
                if coeff:
                    if len(exp) != width:
                        raise ContextMismatchError(
                            f"exponent width {len(exp)} != context width {width}")
                    canonical[tuple(exp)] = coeff
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "terms", canonical)
        if AUDIT:
            self._audit()

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    def _audit(self):
        width = len(self.context)
        for exp, coeff in self.terms.items():
            assert coeff != 0, f"zero coefficient stored at {exp}"
            assert len(exp) == width and all(e >= 0 for e in exp), f"bad exponent {exp}"

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(context) -> Polynomial:
        return Polynomial(context, {})

    @staticmethod
    def constant(context, value) -> Polynomial:
        return Polynomial(context, {(0,) * len(context): _coerce(value)})

    @staticmethod
    def variable(context, name) -> Polynomial:
        if name not in context:
            raise ContextMismatchError(f"variable {name!r} not in context")
        exp = [0] * len(context)
        exp[context.index[name]] = 1
        return Polynomial(context, {tuple(exp): Fraction(1)})

    @staticmethod
    def monomial(context, exp, coeff=1) -> Polynomial:
        return Polynomial(context, {tuple(exp): _coerce(coeff)})

    # -- queries ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(not any(exp) for exp in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        [(exp, coeff)] = self.terms.items()
        if any(exp):
            raise ValueError("polynomial is not constant")
        return coeff

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(exp) for exp in self.terms)

    def variables_used(self) -> tuple[str, ...]:
        used = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(i)
        return tuple(self.context.names[i] for i in sorted(used))

    def leading_term(self, order=grevlex) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def coefficient(self, exp) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def sorted_terms(self, order=grevlex) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- arithmetic ----------------------------------------------------------

    def _require_same_context(self, other):
        if self.context != other.context:
            raise ContextMismatchError("operands have different contexts")

    def __add__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.context, other)
        self._require_same_context(other)
        terms = dict(self.terms)
        for exp, coeff in other.terms.items():
            new = terms.get(exp, 0) + coeff
            if new:
                terms[exp] = new
            else:
                terms.pop(exp, None)
        return Polynomial(self.context, terms)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.context, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.context, other)
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            scalar = _coerce(other)
            if not scalar:
                return Polynomial.zero(self.context)
            return Polynomial(self.context, {e: c * scalar for e, c in self.terms.items()})
        self._require_same_context(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                new = terms.get(exp, 0) + c1 * c2
                if new:
                    terms[exp] = new
                else:
                    terms.pop(exp, None)
        return Polynomial(self.context, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.context, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, Polynomial)
                and self.context == other.context
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.context, frozenset(self.terms.items())))

    # -- context moves -------------------------------------------------------

    def embed(self, target: VariableContext) -> Polynomial:
        """Re-express in a larger context containing all used variables."""
        if target == self.context:
            return self
        positions = []
        for name in self.context.names:
            if name not in target:
                positions.append(None)
            else:
                positions.append(target.index[name])
        width = len(target)
        terms = {}
        for exp, coeff in self.terms.items():
            new = [0] * width
            for i, e in enumerate(exp):
                if e:
                    if positions[i] is None:
                        raise ContextMismatchError(
                            f"variable {self.context.names[i]!r} missing from target context")
                    new[positions[i]] = e
            terms[tuple(new)] = coeff
        return Polynomial(target, terms)

    def restrict(self, target: VariableContext) -> Polynomial:
        """Project onto a smaller context; dropped variables must be unused."""
        return self.embed(target)

    # -- substitution ----------------------------------------------------------

    def substitute(self, bindings, target: VariableContext | None = None) -> Polynomial:
        """Ring-homomorphism image under variable -> polynomial bindings.

        Unbound variables pass through and must exist in the target
        context (default: this polynomial's own context).
        """
        if target is None:
            target = self.context
        images: dict[int, Polynomial] = {}
        for name, value in bindings.items():
            if name not in self.context:
                raise ContextMismatchError(f"bound variable {name!r} not in context")
            if isinstance(value, (int, Fraction)):
                value = Polynomial.constant(target, value)
            elif value.context != target:
                value = value.embed(target)
            images[self.context.index[name]] = value
        one = Polynomial.constant(target, 1)
        var_cache: dict[int, Polynomial] = {}
        pow_cache: dict[tuple[int, int], Polynomial] = {}

        def var_power(i, e):
            key = (i, e)
            got = pow_cache.get(key)
            if got is None:
                if i in images:
                    base = images[i]
                else:
                    base = var_cache.get(i)
                    if base is None:
                        base = Polynomial.variable(target, self.context.names[i])
                        var_cache[i] = base
                got = base ** e
                pow_cache[key] = got
            return got

        result = Polynomial.zero(target)
        for exp, coeff in self.terms.items():
            term = one * coeff
            for i, e in enumerate(exp):
                if e:
                    term = term * var_power(i, e)
            result = result + term
        return result

    # -- content and primitive part ---------------------------------------------

    def integer_content_primitive(self, order=grevlex) -> tuple[Fraction, Polynomial]:
        """Split into (content, primitive) with p = content * primitive.

        The primitive part has coprime integer coefficients and positive
        leading coefficient under ``order``.
        """
        if not self.terms:
            raise ValueError("zero polynomial has no content decomposition")
        num_gcd = 0
        den_lcm = 1
        for coeff in self.terms.values():
            num_gcd = math.gcd(num_gcd, abs(coeff.numerator))
            den_lcm = den_lcm * coeff.denominator // math.gcd(den_lcm, coeff.denominator)
        content = Fraction(num_gcd, den_lcm)
        lead_exp = max(self.terms, key=order.key)
        if self.terms[lead_exp] < 0:
            content = -content
        primitive = Polynomial(self.context, {e: c / content for e, c in self.terms.items()})
        return content, primitive

    # -- printing -----------------------------------------------------------

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"

    def to_string(self, order=grevlex) -> str:
        if not self.terms:
            return "0"
        names = self.context.names
        pieces = []
        for exp, coeff in self.sorted_terms(order):
            factors = [f"{names[i]}^{e}" if e > 1 else names[i]
                       for i, e in enumerate(exp) if e]
            mag = abs(coeff)
            if factors and mag == 1:
                body = "*".join(factors)
            elif factors:
                body = "*".join([str(mag)] + factors)
            else:
                body = str(mag)
            if not pieces:
                pieces.append(body if coeff > 0 else "-" + body)
            else:
                pieces.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(pieces)


# -- monomial enumeration -------------------------------------------------


def monomials_upto(s: int, degree: int) -> list[Exponent]:
    """Exponent tuples in ``s`` variables of total degree <= ``degree``.

    Ordered by total degree, then descending lexicographically, so the
    listing starts 1, Y1, Y2, ..., Y1^2, Y1*Y2, ...
    """
    if s < 1:
        raise ValueError("need at least one variable")
    out = []
    for d in range(degree + 1):
        level = [exp for exp in itertools.product(range(d + 1), repeat=s) if sum(exp) == d]
        level.sort(reverse=True)
        out.extend(level)
    return out


@dataclass(frozen=True)
class PolynomialSpaceDim:
    """Dimension bookkeeping for the space of degree-bounded polynomials."""

    s: int
    degree: int
    count: int


def space_dimension(s: int, degree: int) -> PolynomialSpaceDim:
    return PolynomialSpaceDim(s, degree, math.comb(s + degree, degree))
