"""实代数：结式、判别式、实根隔离与精确符号"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from core.errors import AlgebraError
from realalg import (
    AlgebraicNumber, X, Y, bivar, compare, count_real_roots, discriminant, isolate_real_roots,
    poly_to_text, real_roots, resultant, root_bound, sign_at, simplest_rational_between, univar,
)
from realalg.polynomials import normalize_with_constant, univar_coefficients

TEARDROP = bivar(2 * X ** 3 + 21 * X ** 2 + 72 * X + 81 + 2 * X * Y ** 2 + 5 * Y ** 2)


def test_resultant_of_circle_and_line():
    # 圆与 y = x 相交处 2x² - 1 = 0
    r = resultant(bivar(X ** 2 + Y ** 2 - 1), bivar(Y - X))
    assert r == univar(2 * X ** 2 - 1)


def test_discriminant_matches_quadratic_formula():
    # y² + x y + 1：b² - 4ac = x² - 4
    assert discriminant(bivar(Y ** 2 + X * Y + 1)) == univar(X ** 2 - 4)


def test_discriminant_requires_y():
    with pytest.raises(AlgebraError):
        discriminant(bivar(X ** 2 - 1))


def test_isolate_sqrt_two():
    roots = real_roots(univar(X ** 2 - 2))
    assert len(roots) == 2
    lo, hi = roots[1].interval
    assert lo ** 2 < 2 < hi ** 2
    assert isolate_real_roots(univar(X ** 2 - 2))[0][0] < 0


def test_rational_roots_are_exact():
    roots = real_roots(univar((X - 1) * (2 * X + 3)))
    assert roots == [Fraction(-3, 2), Fraction(1)]


def test_count_real_roots_in_interval():
    assert count_real_roots(univar(X ** 3 - X), Fraction(-1, 2), Fraction(2)) == 2


def test_zero_polynomial_has_no_roots():
    with pytest.raises(AlgebraError):
        real_roots(univar(0))


def test_algebraic_comparison():
    sqrt2 = AlgebraicNumber(univar(X ** 2 - 2), Fraction(1), Fraction(2))
    sqrt3 = AlgebraicNumber(univar(X ** 2 - 3), Fraction(1), Fraction(2))
    assert compare(sqrt2, sqrt3) < 0
    assert compare(sqrt3, Fraction(7, 4)) < 0
    assert compare(sqrt2, AlgebraicNumber(univar(2 - X ** 2), Fraction(1, 2), Fraction(3))) == 0


def test_not_an_isolating_interval():
    with pytest.raises(ValueError):
        AlgebraicNumber(univar(X ** 2 - 2), Fraction(-2), Fraction(2))


def test_teardrop_signs():
    assert sign_at(TEARDROP, (Fraction(-7, 2), Fraction(0))) == 1
    assert sign_at(TEARDROP, (Fraction(-5), Fraction(0))) == -1
    assert sign_at(TEARDROP, (Fraction(-9, 2), Fraction(0))) == 0
    assert sign_at(TEARDROP, (Fraction(-3), Fraction(0))) == 0


def test_sign_at_algebraic_point():
    sqrt2 = AlgebraicNumber(univar(X ** 2 - 2), Fraction(1), Fraction(2))
    assert sign_at(bivar(X ** 2 + Y ** 2 - 3), (sqrt2, Fraction(1))) == 0
    assert sign_at(bivar(X - Y), (sqrt2, Fraction(7, 5))) == 1
    assert sign_at(bivar(X * Y - 2), (sqrt2, sqrt2)) == 0


def test_poly_to_text_orders_terms():
    assert poly_to_text(bivar(X ** 2 + Y ** 2 - 1)) == 'y^2 + x^2 - 1'


def test_normalize_with_constant():
    c, q = normalize_with_constant(bivar(-2 * X + 4))
    assert c < 0
    assert q.LC() > 0


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_simplest_rational_between_is_inside(a, b):
    lo, hi = min(a, b), max(a, b)
    if lo == hi:
        return
    r = simplest_rational_between(lo, hi)
    assert lo < r < hi


def test_resultant_examples():
    assert resultant(bivar(Y ** 2 - X), bivar(Y)) in (univar(-X), univar(X))
    assert resultant(bivar(Y - X), bivar(Y + X)) in (univar(-2 * X), univar(2 * X))
    p = bivar(Y ** 2 + X * Y - 3)
    assert resultant(p, p).is_zero


def test_discriminant_examples():
    assert discriminant(bivar(Y ** 2 + X)) == univar(-4 * X)
    assert discriminant(bivar(Y ** 2 - 2 * Y + 1)).is_zero
    assert discriminant(bivar(X * Y ** 2 + Y + 1)) == univar(1 - 4 * X)


def test_root_isolation_examples():
    assert isolate_real_roots(univar(X ** 2 + 1)) == []
    intervals = isolate_real_roots(univar(X ** 3))
    assert len(intervals) == 1
    lo, hi = intervals[0]
    assert lo <= 0 <= hi


small = st.integers(-3, 3)
in_y = st.tuples(small, small, small, small).map(
    lambda c: bivar(c[0] * Y ** 2 + c[1] * X * Y + c[2] * Y + c[3] * X + 1)
)
in_x = st.lists(small, min_size=2, max_size=6).map(
    lambda c: univar(sum(a * X ** k for k, a in enumerate(c)))
).filter(lambda p: p.degree() > 0)


@given(in_y, in_y)
def test_resultant_is_antisymmetric(p, q):
    r1, r2 = resultant(p, q), resultant(q, p)
    assert r1 == r2 or r1 == -r2


@given(in_y, in_y, in_y)
def test_resultant_is_multiplicative(p, q, r):
    assert resultant(p, q * r) == resultant(p, q) * resultant(p, r)


@given(in_x)
def test_sturm_count_matches_isolation(p):
    count = len(isolate_real_roots(p))
    assert count_real_roots(p) == count
    bound = root_bound(univar_coefficients(p))
    assert count_real_roots(p, -bound, bound) == count
