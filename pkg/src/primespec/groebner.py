"""Buchberger engine with elimination orders, dimension and membership.

The engine is a plain Buchberger loop with the normal selection strategy
and Gebauer-Moeller pair elimination; returned bases are reduced, monic
and sorted by decreasing leading monomial.  Computation budgets (pair
count, intermediate term count, optional wall-clock deadline) raise
``BudgetExceededError`` instead of ever returning a truncated basis.

Krull dimension is computed from the grevlex staircase: the dimension of
the quotient is the largest subset of variables meeting no leading-term
support, searched exhaustively (inputs here stay below ~8 variables).
"""

from __future__ import annotations

import itertools
import threading
import time
from dataclasses import dataclass
from fractions import Fraction

from .context import VariableContext
from .errors import BudgetExceededError, ContextMismatchError
from .orders import MonomialOrder, elimination_order, block_order, grevlex
from .poly import Exponent, Polynomial


@dataclass(frozen=True)
class GBLimits:
    max_pairs: int = 50_000
    max_term_count: int = 200_000
    deadline: float | None = None  # absolute time.monotonic() value

    def check_deadline(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceededError("wall-clock budget exceeded")


DEFAULT_LIMITS = GBLimits()


# -- exponent helpers -------------------------------------------------------


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _divides(a: Exponent, b: Exponent) -> bool:
    """True when monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def _quotient(b: Exponent, a: Exponent) -> Exponent:
    return tuple(y - x for x, y in zip(a, b))


# -- reduction ---------------------------------------------------------------

# A reducer is (lead_exponent, lead_coefficient, term_map).


def _reducers(polys, order):
    out = []
    for p in polys:
        lead = max(p.terms, key=order.key)
        out.append((lead, p.terms[lead], p.terms))
    return out


def _normal_form_terms(terms, reducers, order, limits):
    """Remainder of multivariate division, fully tail-reduced.

    Ties between applicable reducers break by lowest index, which keeps
    reduction deterministic.
    """
    work = dict(terms)
    remainder = {}
    key = order.key
    while work:
        limits.check_deadline()
        exp = max(work, key=key)
        coeff = work[exp]
        for lead, lead_coeff, body in reducers:
            if _divides(lead, exp):
                shift = _quotient(exp, lead)
                scale = coeff / lead_coeff
                for e, c in body.items():
                    target = _mul(e, shift)
                    new = work.get(target, 0) - scale * c
                    if new:
                        work[target] = new
                    else:
                        work.pop(target, None)
                if len(work) + len(remainder) > limits.max_term_count:
                    raise BudgetExceededError("intermediate polynomial exceeds term budget")
                break
        else:
            remainder[exp] = coeff
            del work[exp]
    return remainder


class GroebnerBasis:
    """A reduced Groebner basis frozen together with its monomial order."""

    __slots__ = ("context", "order", "polys", "_reducers")

    def __init__(self, context, order, polys):
        self.context = context
        self.order = order
        self.polys = tuple(polys)
        self._reducers = _reducers(self.polys, order)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis)
                and self.context == other.context
                and self.order == other.order
                and self.polys == other.polys)

    @property
    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant and not self.polys[0].is_zero

    def leading_exponents(self) -> list[Exponent]:
        return [max(p.terms, key=self.order.key) for p in self.polys]

    def normal_form(self, p: Polynomial, limits=DEFAULT_LIMITS) -> Polynomial:
        if p.context != self.context:
            raise ContextMismatchError("polynomial context differs from basis context")
        return Polynomial(self.context, _normal_form_terms(p.terms, self._reducers, self.order, limits))

    def contains(self, p: Polynomial, limits=DEFAULT_LIMITS) -> bool:
        return self.normal_form(p, limits).is_zero


def normal_form(p: Polynomial, basis: GroebnerBasis, limits=DEFAULT_LIMITS) -> Polynomial:
    return basis.normal_form(p, limits)


# -- Buchberger ---------------------------------------------------------------


def _update(basis, pairs, new_poly, order):
    """Add a monic polynomial to the working basis, pruning pairs.

    Gebauer-Moeller criteria: discard old pairs whose lcm is a proper
    multiple of the new lead, keep one representative per minimal new
    lcm, and drop coprime-lead pairs (Buchberger's first criterion).
    """
    leads = [max(g.terms, key=order.key) for g in basis]
    new_lead = max(new_poly.terms, key=order.key)
    m = len(basis)

    kept = set()
    for i, j in pairs:
        pair_lcm = _lcm(leads[i], leads[j])
        if (not _divides(new_lead, pair_lcm)
                or pair_lcm == _lcm(leads[i], new_lead)
                or pair_lcm == _lcm(leads[j], new_lead)):
            kept.add((i, j))

    by_lcm: dict[Exponent, list[int]] = {}
    for i in range(m):
        by_lcm.setdefault(_lcm(leads[i], new_lead), []).append(i)
    minimal = []
    for cand in sorted(by_lcm, key=order.key):
        if not any(_divides(kept_lcm, cand) for kept_lcm in minimal):
            minimal.append(cand)
    for cand in minimal:
        members = by_lcm[cand]
        if any(_lcm(leads[i], new_lead) == _mul(leads[i], new_lead) for i in members):
            continue  # coprime leads: S-polynomial reduces to zero
        kept.add((min(members), m))

    basis.append(new_poly)
    return basis, kept


def _monic(p: Polynomial, order) -> Polynomial:
    lead = max(p.terms, key=order.key)
    lc = p.terms[lead]
    if lc == 1:
        return p
    return Polynomial(p.context, {e: c / lc for e, c in p.terms.items()})


def _s_polynomial(f: Polynomial, g: Polynomial, order) -> Polynomial:
    lf = max(f.terms, key=order.key)
    lg = max(g.terms, key=order.key)
    lcm = _lcm(lf, lg)
    sf = _quotient(lcm, lf)
    sg = _quotient(lcm, lg)
    cf = f.terms[lf]
    cg = g.terms[lg]
    terms: dict[Exponent, Fraction] = {}
    for e, c in f.terms.items():
        terms[_mul(e, sf)] = c / cf
    for e, c in g.terms.items():
        target = _mul(e, sg)
        new = terms.get(target, 0) - c / cg
        if new:
            terms[target] = new
        else:
            terms.pop(target, None)
    return Polynomial(f.context, terms)


def buchberger(generators, order: MonomialOrder, limits=DEFAULT_LIMITS) -> list[Polynomial]:
    """Reduced Groebner basis of the given generators.

    Returns monic polynomials sorted by decreasing leading monomial; the
    unit ideal yields ``[1]`` and the zero ideal ``[]``.
    """
    gens = [g for g in generators if not g.is_zero]
    if not gens:
        return []
    context = gens[0].context
    for g in gens:
        if g.context != context:
            raise ContextMismatchError("generators live in different contexts")

    basis: list[Polynomial] = []
    pairs: set[tuple[int, int]] = set()
    for g in gens:
        reduced = Polynomial(context, _normal_form_terms(
            g.terms, _reducers(basis, order), order, limits))
        if not reduced.is_zero:
            basis, pairs = _update(basis, pairs, _monic(reduced, order), order)

    processed = 0
    key = order.key
    while pairs:
        limits.check_deadline()
        processed += 1
        if processed > limits.max_pairs:
            raise BudgetExceededError(f"pair budget {limits.max_pairs} exceeded")
        leads = [max(g.terms, key=key) for g in basis]
        pair = min(pairs, key=lambda p: (key(_lcm(leads[p[0]], leads[p[1]])), p))
        pairs.remove(pair)
        i, j = pair
        s = _s_polynomial(basis[i], basis[j], order)
        remainder = _normal_form_terms(s.terms, _reducers(basis, order), order, limits)
        if remainder:
            basis, pairs = _update(basis, pairs, _monic(Polynomial(context, remainder), order), order)

    return _interreduce(basis, order, limits)


def _interreduce(basis, order, limits):
    # Minimal basis: drop elements whose lead is divisible by another lead.
    leads = [max(g.terms, key=order.key) for g in basis]
    minimal = []
    for i, g in enumerate(basis):
        if not any(j != i and _divides(leads[j], leads[i])
                   and (leads[j] != leads[i] or j < i) for j in range(len(basis))):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        rem = _normal_form_terms(g.terms, _reducers(others, order), order, limits)
        if rem:
            reduced.append(_monic(Polynomial(g.context, rem), order))
    reduced.sort(key=lambda p: order.key(max(p.terms, key=order.key)), reverse=True)
    return reduced


# -- ideals -------------------------------------------------------------------


class Ideal:
    """Generator list plus cached Groebner bases and dimension data.

    Zero generators are dropped at construction.  The cache maps each
    monomial order to its reduced basis and is guarded by a lock so
    distinct threads may share one Ideal value.
    """

    def __init__(self, context: VariableContext, generators=()):
        gens = []
        for g in generators:
            if g.context != context:
                raise ContextMismatchError("generator context differs from ideal context")
            if not g.is_zero:
                gens.append(g)
        self.context = context
        self.generators = tuple(gens)
        self._cache: dict[MonomialOrder, GroebnerBasis] = {}
        self._dim: int | None = None
        self._lock = threading.Lock()

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"Ideal<{gens}>"

    def adjoin(self, extra) -> Ideal:
        return Ideal(self.context, self.generators + tuple(extra))

    def groebner(self, order: MonomialOrder = grevlex, limits=DEFAULT_LIMITS) -> GroebnerBasis:
        with self._lock:
            cached = self._cache.get(order)
        if cached is not None:
            return cached
        basis = GroebnerBasis(self.context, order, buchberger(self.generators, order, limits))
        with self._lock:
            self._cache.setdefault(order, basis)
        return basis

    def normal_form(self, p: Polynomial, order=grevlex, limits=DEFAULT_LIMITS) -> Polynomial:
        return self.groebner(order, limits).normal_form(p, limits)

    def contains(self, p: Polynomial, limits=DEFAULT_LIMITS) -> bool:
        return self.normal_form(p, limits=limits).is_zero

    def dimension(self, limits=DEFAULT_LIMITS) -> int:
        with self._lock:
            if self._dim is not None:
                return self._dim
        dim = ideal_dimension(self, limits)
        return dim

    @property
    def height(self) -> int:
        """Codimension: #variables - dimension (computing it on demand)."""
        return len(self.context) - self.dimension()


def buchberger_basis(ideal: Ideal, order: MonomialOrder = grevlex, limits=DEFAULT_LIMITS) -> GroebnerBasis:
    return ideal.groebner(order, limits)


def _max_independent_set(lead_supports, var_count) -> int:
    """Largest k such that some k-subset of variables meets no support."""
    if any(not support for support in lead_supports):
        raise ValueError("unit leading term")
    for size in range(var_count, 0, -1):
        for subset in itertools.combinations(range(var_count), size):
            chosen = set(subset)
            if all(not support <= chosen for support in lead_supports):
                return size
    return 0


def ideal_dimension(ideal: Ideal, limits=DEFAULT_LIMITS) -> int:
    """Krull dimension of the quotient ring; -1 for the unit ideal."""
    n = len(ideal.context)
    basis = ideal.groebner(grevlex, limits)
    if basis.is_unit:
        dim = -1
    elif not basis.polys:
        dim = n
    else:
        supports = [frozenset(i for i, e in enumerate(exp) if e)
                    for exp in basis.leading_exponents()]
        dim = _max_independent_set(supports, n)
    with ideal._lock:
        ideal._dim = dim
    return dim


def eliminate(ideal: Ideal, keep_names, limits=DEFAULT_LIMITS) -> Ideal:
    """Intersection of the ideal with the subring on ``keep_names``.

    Computed from a block order whose leading group holds the eliminated
    variables; basis elements supported on the kept variables generate
    the elimination ideal.
    """
    keep = tuple(keep_names)
    target = ideal.context.keep(keep)
    if ideal.is_zero:
        return Ideal(target, ())
    order = elimination_order(ideal.context, keep)
    basis = ideal.groebner(order, limits)
    keep_set = set(ideal.context.indices_of(keep))
    selected = []
    for p in basis:
        if all(all(e == 0 or i in keep_set for i, e in enumerate(exp)) for exp in p.terms):
            selected.append(p.restrict(target))
    return Ideal(target, selected)


def fiber_dimension(ideal: Ideal, coefficient_names, limits=DEFAULT_LIMITS) -> int:
    """Dimension of the quotient after inverting the named variables.

    Uses a block order with the remaining variables in the leading
    group: the leading exponents projected onto those variables generate
    the leading-term ideal over the fraction field of the inverted
    block, and the staircase search runs there.
    """
    coeff = set(coefficient_names)
    main = tuple(n for n in ideal.context.names if n not in coeff)
    inverted = tuple(n for n in ideal.context.names if n in coeff)
    if not inverted:
        return ideal.dimension(limits)
    order = block_order(ideal.context, (main, inverted))
    basis = ideal.groebner(order, limits)
    if basis.is_unit:
        return -1
    if not basis.polys:
        return len(main)
    main_idx = ideal.context.indices_of(main)
    supports = []
    for exp in basis.leading_exponents():
        support = frozenset(k for k, i in enumerate(main_idx) if exp[i])
        supports.append(support)
    if any(not s for s in supports):
        # Some basis element lies in the inverted block: unit ideal there.
        return -1
    return _max_independent_set(supports, len(main))
