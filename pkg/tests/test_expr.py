"""表达式解析、打印与实部虚部拆分"""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from core.errors import ExprSyntaxError, ModeViolationError, NonRationalNodeError, UnknownIdentifierError
from expr import COMPLEX, REAL, NodeKind, expr_to_poly, non_analytic_nodes, parse, reim_split, to_text, variables
from expr.nodes import add, arccosh, arctan, const, div, exp, log, mul, neg, power, sqrt, sub, var
from numeval import complex_point, evaluate
from realalg.polynomials import X, Y, bivar


def test_parse_precedence():
    e = parse('2*z+1')
    assert e.kind is NodeKind.ADD
    assert reim_split(e).evaluate(Fraction(1), Fraction(1)) == (Fraction(3), Fraction(2))


def test_power_and_imaginary_unit():
    pair = reim_split(parse('(z+I)^2'))
    # (x + i(y+1))² 在 (1, 0) 处为 (1+i)² = 2i
    assert pair.evaluate(1, 0) == (0, 2)


def test_decimal_literal_is_exact():
    pair = reim_split(parse('0.1*z'))
    assert pair.evaluate(1, 0) == (Fraction(1, 10), 0)


def test_declared_variable():
    e = parse('zeta+1', COMPLEX, 'zeta')
    assert variables(e) == ['zeta']


def test_real_mode_variables():
    assert variables(parse('x*y+1', REAL)) == ['x', 'y']


def test_syntax_error_has_position():
    with pytest.raises(ExprSyntaxError) as info:
        parse('sqrt(z')
    assert info.value.text == 'sqrt(z'
    assert '^' in info.value.caret()


@pytest.mark.parametrize('text, mode', [
    ('x+1', COMPLEX),
    ('I*x', REAL),
    ('z+1', REAL),
])
def test_mode_violation(text, mode):
    with pytest.raises(ModeViolationError):
        parse(text, mode)


def test_unknown_function():
    with pytest.raises(UnknownIdentifierError):
        parse('sin(z)')


def test_non_analytic_nodes_in_preorder():
    e = parse('log(z) + sqrt(arctan(z))')
    kinds = [n.kind for n in non_analytic_nodes(e)]
    assert kinds == [NodeKind.LOG, NodeKind.SQRT, NodeKind.ARCTAN]


def test_reim_split_of_reciprocal():
    pair = reim_split(parse('1/z'))
    assert pair.evaluate(0, 2) == (0, Fraction(-1, 2))


def test_reim_split_rejects_functions():
    with pytest.raises(NonRationalNodeError):
        reim_split(parse('sqrt(z)'))


def test_expr_to_poly():
    assert expr_to_poly(parse('x^2+y^2-1', REAL)) == bivar(X ** 2 + Y ** 2 - 1)


def test_expr_to_poly_rejects_complex_values():
    with pytest.raises(NonRationalNodeError):
        expr_to_poly(parse('z'))


small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
leaves = st.one_of(st.just(var('z')), small.map(const))
trees = st.recursive(
    leaves,
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda ab: add(*ab)),
        st.tuples(inner, inner).map(lambda ab: sub(*ab)),
        st.tuples(inner, inner).map(lambda ab: mul(*ab)),
        inner.map(neg),
        inner.map(lambda a: power(a, 2)),
    ),
    max_leaves=6,
)


@given(trees, small, small)
def test_printed_text_parses_to_same_value(e, x, y):
    assert reim_split(parse(to_text(e))).evaluate(x, y) == reim_split(e).evaluate(x, y)


def same_rational(pair, re, im) -> bool:
    (re_num, re_den), (im_num, im_den) = pair
    return (sympy.cancel(re_num.as_expr() / re_den.as_expr() - re) == 0
            and sympy.cancel(im_num.as_expr() / im_den.as_expr() - im) == 0)


def test_reim_split_of_square():
    pair = reim_split(parse('z^2'))
    assert same_rational((pair.re, pair.im), X ** 2 - Y ** 2, 2 * X * Y)


def test_reim_split_of_joukowski_map():
    pair = reim_split(parse('(z+1/z)/2'))
    r2 = X ** 2 + Y ** 2
    assert same_rational((pair.re, pair.im), X / 2 + X / (2 * r2), Y / 2 - Y / (2 * r2))


points = st.tuples(small, small)


@given(trees, trees, points)
def test_reim_split_respects_sum_and_product(a, b, point):
    x, y = point
    lhs_sum = reim_split(add(a, b)).evaluate(x, y)
    lhs_product = reim_split(mul(a, b)).evaluate(x, y)
    assert lhs_sum == (reim_split(a) + reim_split(b)).evaluate(x, y)
    assert lhs_product == (reim_split(a) * reim_split(b)).evaluate(x, y)


@settings(max_examples=100)
@given(trees, points)
def test_reim_split_matches_box_evaluation(e, point):
    x, y = point
    re, im = reim_split(e).evaluate(x, y)
    assert evaluate(e, complex_point(x, y)).contains(re, im)


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)
constants = st.one_of(
    fractions.map(const),
    st.tuples(fractions, fractions.filter(bool)).map(lambda c: const(*c)),
    st.just(const(0, 1)),
)
functions = st.sampled_from([sqrt, log, exp, arccosh, arctan])
full_trees = st.recursive(
    st.one_of(st.just(var('z')), constants),
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda ab: add(*ab)),
        st.tuples(inner, inner).map(lambda ab: sub(*ab)),
        st.tuples(inner, inner).map(lambda ab: mul(*ab)),
        st.tuples(inner, inner).map(lambda ab: div(*ab)),
        inner.map(neg),
        st.tuples(inner, st.integers(2, 3)).map(lambda an: power(*an)),
        st.tuples(functions, inner).map(lambda fa: fa[0](fa[1])),
    ),
    max_leaves=8,
)


@pytest.mark.parametrize('tree', [
    const(-3),
    const(0, 2),
    const(1, -2),
    mul(const(-1), var('z')),
    mul(const(2), const(0, 1)),
    add(const(1), const(0, 2)),
    neg(const(3)),
    power(neg(var('z')), 2),
])
def test_printed_text_parses_to_same_tree(tree):
    assert parse(to_text(tree)) == tree


@given(full_trees)
def test_print_parse_round_trip_is_structural(e):
    assert parse(to_text(e)) == e
