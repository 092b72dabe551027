"""Zero-dimensional quotients, minimal polynomials, primality verdicts."""

from fractions import Fraction

import pytest

from primespec import (Ideal, Polynomial, PrimespecError, context, is_prime,
                       minimal_polynomial, quotient_basis)
from primespec.primality import INCONCLUSIVE, NOT_PRIME, PRIME, UNIT_IDEAL, not_prime_verdict

from conftest import make_ideal, random_polynomial, seeded


def test_quotient_basis_univariate():
    ideal = make_ideal(("Y",), ["Y^2 - 4"])
    q = quotient_basis(ideal)
    assert q.staircase == ((0,), (1,))
    assert q.vector_dim == 2


def test_quotient_basis_two_points(two_points):
    assert quotient_basis(two_points).vector_dim == 2


def test_quotient_basis_rejects_unit_and_positive_dim(circle):
    ctx = context(("Y",))
    with pytest.raises(ValueError):
        quotient_basis(Ideal(ctx, [Polynomial.constant(ctx, 1)]))
    with pytest.raises(ValueError):
        quotient_basis(circle)


def test_multiplication_matrix_columns():
    ideal = make_ideal(("Y",), ["Y^2 - 4"])
    q = quotient_basis(ideal)
    # columns are the coordinates of Y*1 = Y and Y*Y = 4
    matrix = q.multiplication_matrix("Y")
    assert matrix == ((Fraction(0), Fraction(4)), (Fraction(1), Fraction(0)))


def test_minimal_polynomial_of_generator():
    ideal = make_ideal(("Y",), ["Y^2 - 4"])
    q = quotient_basis(ideal)
    m = minimal_polynomial(q, Polynomial.variable(ideal.context, "Y"))
    assert str(m) == "Z^2 - 4"


def test_minimal_polynomial_of_zero():
    ideal = make_ideal(("Y",), ["Y^2 - 4"])
    q = quotient_basis(ideal)
    assert str(minimal_polynomial(q, Polynomial.zero(ideal.context))) == "Z"


def test_minimal_polynomial_idempotent_coordinate(two_points):
    # X^2 = X in the quotient, so the minimal polynomial is Z^2 - Z
    q = quotient_basis(two_points)
    m = minimal_polynomial(q, Polynomial.variable(two_points.context, "X"))
    assert str(m) == "Z^2 - Z"


def test_two_point_ideal_not_prime_with_replay(two_points):
    verdict = is_prime(two_points, trials=5, seed=0)
    assert verdict.status == NOT_PRIME
    f, g = verdict.certificate
    basis = two_points.groebner()
    assert basis.contains(f * g)
    assert not basis.contains(f) and not basis.contains(g)


def test_irreducible_univariate_prime_deterministically():
    verdict = is_prime(make_ideal(("Y",), ["Y^2 - 2"]), seed=0)
    assert verdict.status == PRIME
    assert not verdict.probabilistic


def test_unit_ideal_verdict():
    ctx = context(("Y",))
    verdict = is_prime(Ideal(ctx, [Polynomial.constant(ctx, 2)]), seed=0)
    assert verdict.status == UNIT_IDEAL


def test_circle_prime_probabilistic(circle):
    # seed chosen so all five random sections avoid rational chords
    verdict = is_prime(circle, trials=5, seed=3)
    assert verdict.status == PRIME
    assert verdict.probabilistic
    assert len(verdict.sections) == 5


def test_nonradical_ideal_not_prime():
    verdict = is_prime(make_ideal(("Y",), ["Y^2"]), seed=0)
    assert verdict.status == NOT_PRIME


def test_product_of_lines_never_certified_prime():
    # reducible but with no descending section certificate: never Prime
    ideal = make_ideal(("Y1", "Y2"), ["Y1*Y2"])
    for seed in range(6):
        verdict = is_prime(ideal, seed=seed)
        assert verdict.status in (NOT_PRIME, INCONCLUSIVE)
        if verdict.status == NOT_PRIME:
            f, g = verdict.certificate
            basis = ideal.groebner()
            assert basis.contains(f * g)


def test_field_certificate_implies_integrality(two_points):
    # spot check: products of nonmembers stay outside a certified-prime ideal
    ideal = make_ideal(("Y",), ["Y^3 - 2"])
    verdict = is_prime(ideal, seed=1)
    assert verdict.status == PRIME
    basis = ideal.groebner()
    rng = seeded(41)
    checked = 0
    while checked < 20:
        a = random_polynomial(ideal.context, rng, max_degree=3)
        b = random_polynomial(ideal.context, rng, max_degree=3)
        if basis.contains(a) or basis.contains(b):
            continue
        assert not basis.contains(a * b)
        checked += 1


def test_determinism_under_fixed_seed(circle, two_points):
    for ideal in (circle, two_points):
        first = is_prime(ideal, trials=5, seed=123)
        second = is_prime(ideal, trials=5, seed=123)
        assert first.status == second.status
        assert first.certificate == second.certificate
        assert [s.minimal_poly for s in first.sections] == [s.minimal_poly for s in second.sections]


def test_invalid_certificate_rejected(two_points):
    basis = two_points.groebner()
    ctx = two_points.context
    x = Polynomial.variable(ctx, "X")
    with pytest.raises(PrimespecError):
        not_prime_verdict(basis, x, x, trials=1)  # x*x is not in the ideal


def test_trials_validated(two_points):
    with pytest.raises(ValueError):
        is_prime(two_points, trials=0)


def test_large_quotient_certificate_stays_compact():
    # five-variable system with a 16-dimensional quotient: the reduced
    # certificate must come back quickly and replay, never the raw
    # composition of the split minimal polynomial
    import time

    ideal = make_ideal(
        ("x0", "x1", "x2", "x3", "x4"),
        ["x0 + 2x1 + 2x2 + 2x3 + 2x4 - 1",
         "x0^2 + 2x1^2 + 2x2^2 + 2x3^2 + 2x4^2 - x0",
         "2x0*x1 + 2x1*x2 + 2x2*x3 + 2x3*x4 - x1",
         "x1^2 + 2x0*x2 + 2x1*x3 + 2x2*x4 - x2",
         "2x1*x2 + 2x0*x3 + 2x1*x4 - x3"])
    assert quotient_basis(ideal).vector_dim == 16
    start = time.monotonic()
    verdict = is_prime(ideal, seed=0)
    assert time.monotonic() - start < 20
    assert verdict.status == NOT_PRIME
    f, g = verdict.certificate
    assert len(f.terms) <= 16 and len(g.terms) <= 16
    basis = ideal.groebner()
    assert basis.contains(f * g)
    assert not basis.contains(f) and not basis.contains(g)
