"""主值分支下的包围盒求值"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from core.errors import EvaluationDomainError
from core.presets import get_expression
from expr import COMPLEX, REAL, parse
from numeval import (
    ComplexBox, Evaluator, SignStatus, complex_point, decide_sign, evaluate, real_point,
)


def approx(box: ComplexBox, expected: complex, tol: float = 1e-12) -> bool:
    return abs(box.midpoint() - expected) < tol


def test_log_one_is_zero():
    box = evaluate(parse('log(z)'), complex_point(1, 0))
    assert box.contains(0, 0)
    assert box.radius() < Fraction(1, 2 ** 100)


def test_sqrt_four():
    assert evaluate(parse('sqrt(z)'), complex_point(4, 0)).contains(2, 0)


def test_log_minus_one_on_upper_side():
    # 负实轴属于上岸：log(-1) = iπ
    assert approx(evaluate(parse('log(z)'), complex_point(-1, 0)), complex(0, math.pi))


def test_sqrt_minus_four_on_upper_side():
    assert evaluate(parse('sqrt(z)'), complex_point(-4, 0)).contains(0, 2)


def test_sqrt_below_cut():
    box = evaluate(parse('sqrt(z)'), complex_point(-4, Fraction(-1, 10 ** 30)))
    assert approx(box, complex(0, -2), 1e-9)


def test_arccosh_two():
    assert approx(evaluate(parse('arccosh(z)'), complex_point(2, 0)), complex(math.acosh(2), 0))


def test_arctan_real():
    box = evaluate(parse('arctan(x)', REAL), real_point(x=Fraction(1)))
    assert approx(box, complex(math.pi / 4, 0))


def test_inverse_map_recovers_point():
    box = evaluate(get_expression('joukowski-f2-f'), complex_point(2, 0))
    assert box.contains(2, 0)


def test_f4_misses_i():
    # f(i) = 0，f4(0) = -i
    box = evaluate(get_expression('joukowski-f4-f'), complex_point(0, 1))
    assert approx(box, complex(0, -1))


def test_pole_is_domain_error():
    with pytest.raises(EvaluationDomainError):
        evaluate(parse('1/z'), complex_point(0, 0))


def test_real_mode_sqrt_of_negative_is_domain_error():
    with pytest.raises(EvaluationDomainError):
        evaluate(parse('sqrt(x)', REAL), real_point(x=Fraction(-1)))


def test_decide_sign_nonzero():
    decision = decide_sign(parse('sqrt(z^2) - z'), complex_point(-1, 0))
    assert decision.status is SignStatus.NONZERO


def test_decide_sign_equal_evidence():
    decision = decide_sign(parse('sqrt(z^2) - z'), complex_point(2, 1))
    assert decision.status is SignStatus.EQUAL_EVIDENCE


def test_decide_sign_with_small_gap():
    # 差值为 -πi
    e = parse('log(-z) - log(z)')
    decision = decide_sign(e, complex_point(-1, 1), gap=Fraction(1, 100))
    assert decision.status is SignStatus.NONZERO


coords = st.fractions(min_value=-4, max_value=4, max_denominator=16)


@given(coords, coords)
def test_exp_log_round_trip(x, y):
    if x == 0 and y == 0:
        return
    box = evaluate(parse('exp(log(z))'), complex_point(x, y))
    assert approx(box, complex(float(x), float(y)), 1e-9)


@given(coords, coords)
def test_sqrt_has_nonnegative_real_part(x, y):
    box = evaluate(parse('sqrt(z)'), complex_point(x, y), mode=COMPLEX)
    assert box.midpoint().real >= -1e-12


nonzero_coords = coords.filter(bool)


@pytest.mark.slow
@settings(max_examples=1000)
@given(coords, nonzero_coords)
def test_higher_precision_box_is_nested(x, y):
    e = parse('log(sqrt(z)+2)*exp(z/3) + arccosh(z+1)')
    coarse = evaluate(e, complex_point(x, y), precision=128)
    fine = evaluate(e, complex_point(x, y), precision=256)
    assert coarse.contains_box(fine)
    assert fine.radius() <= coarse.radius()


@pytest.mark.slow
@settings(max_examples=500)
@given(coords, coords)
def test_exp_log_contains_point(x, y):
    if x == 0 and y == 0:
        return
    assert evaluate(parse('exp(log(z))'), complex_point(x, y)).contains(x, y)


@pytest.mark.slow
@settings(max_examples=500)
@given(coords, coords)
def test_square_of_sqrt_contains_point(x, y):
    assert evaluate(parse('sqrt(z)^2'), complex_point(x, y)).contains(x, y)


@pytest.mark.slow
@settings(max_examples=500)
@given(coords, coords)
def test_cosh_of_arccosh_contains_point(x, y):
    box = evaluate(parse('arccosh(z)'), complex_point(x, y))
    assert Evaluator().apply('cosh', box).contains(x, y)


@given(coords, nonzero_coords)
def test_arccosh_agrees_with_log_form(x, y):
    point = complex_point(x, y)
    direct = evaluate(parse('arccosh(z)'), point)
    via_log = evaluate(parse('log(z + sqrt(z+1)*sqrt(z-1))'), point)
    assert direct.overlaps(via_log)
