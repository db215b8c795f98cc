"""割线映射"""

from fractions import Fraction

import pytest

from branchcut import (
    FunctionFactory, Relation, SemiAlgebraicSet, SignCondition, cuts_rational_arg, expression_cuts,
    parse_condition, parse_region, real_discontinuity_locus,
)
from branchcut.cut_mapper import denominator_sign
from core.errors import ExprSyntaxError
from core.presets import get_expression
from expr import REAL, NodeKind, parse
from realalg import X, Y, bivar
from realalg.polynomials import polys_equal_up_to_constant

F = Fraction

TEARDROP = bivar(2 * X ** 3 + 21 * X ** 2 + 72 * X + 81 + 2 * X * Y ** 2 + 5 * Y ** 2)


def inside_any(cut_sets, point) -> bool:
    return any(s.contains_point(point) for s in cut_sets)


def test_log_cut_is_negative_real_axis():
    cuts = expression_cuts(parse('log(z)'))
    assert len(cuts) == 1
    assert str(cuts[0]) == 'y = 0 ∧ x < 0'
    assert cuts[0].contains_point((F(-1), F(0)))
    assert not cuts[0].contains_point((F(1), F(0)))
    assert not cuts[0].contains_point((F(0), F(0)))
    assert not cuts[0].contains_point((F(-1), F(1, 2)))


def test_polynomial_has_no_cuts():
    assert expression_cuts(parse('z^2+1')) == []


def test_sqrt_of_square_cuts_imaginary_axis():
    cuts = expression_cuts(parse('sqrt(z^2)'))
    assert inside_any(cuts, (F(0), F(1)))
    assert inside_any(cuts, (F(0), F(-3)))
    assert not inside_any(cuts, (F(1), F(0)))
    assert not inside_any(cuts, (F(0), F(0)))


def test_arccosh_cut():
    cut = cuts_rational_arg(NodeKind.ARCCOSH, parse('z'))
    assert cut.contains_point((F(1, 2), F(0)))
    assert cut.contains_point((F(-5), F(0)))
    assert not cut.contains_point((F(1), F(0)))
    assert not cut.contains_point((F(2), F(0)))


def test_arctan_cut():
    cut = cuts_rational_arg(NodeKind.ARCTAN, parse('z'))
    assert cut.contains_point((F(0), F(2)))
    assert cut.contains_point((F(0), F(-1)))
    assert not cut.contains_point((F(0), F(1, 2)))


def test_pole_of_reciprocal():
    cuts = expression_cuts(parse('1/(z-1)'))
    assert len(cuts) == 1
    assert cuts[0].contains_point((F(1), F(0)))


def test_nested_sqrt_has_only_inner_cut():
    cuts = expression_cuts(parse('sqrt(sqrt(z))'))
    assert len(cuts) == 1
    assert cuts[0].exact
    assert cuts[0].contains_point((F(-1), F(0)))


def test_kahan_q_teardrop():
    cuts = expression_cuts(get_expression('kahan-q'))
    assert all(s.exact for s in cuts)
    factors = [f for s in cuts for p in s.polynomials() for f, _ in p.factor_list()[1]]
    assert any(polys_equal_up_to_constant(bivar(f), TEARDROP) for f in factors)
    # 内层 sqrt 的割线 -4 < x < -3
    assert inside_any(cuts, (F(-7, 2), F(0)))


def test_kahan_g_cuts_are_exact():
    cuts = expression_cuts(get_expression('kahan-g'))
    assert cuts
    assert all(s.exact for s in cuts)
    assert all(s.provenance for s in cuts)


def test_too_many_radicals_fall_back_to_evidence():
    cuts = expression_cuts(parse('log(sqrt(z)+sqrt(z+1)+sqrt(z+2))'))
    outer = [s for s in cuts if s.provenance.startswith('log')]
    assert len(outer) == 1
    assert not outer[0].exact


def test_real_arctan_discontinuity():
    locus = real_discontinuity_locus(get_expression('arctan-add'))
    assert locus.contains_point((F(1), F(1)))
    assert locus.contains_point((F(2), F(1, 2)))
    assert not locus.contains_point((F(0), F(0)))


def test_real_locus_of_sqrt():
    locus = real_discontinuity_locus(parse('sqrt(x-y)', REAL))
    assert locus.contains_point((F(1), F(1)))
    assert locus.contains_point((F(0), F(1)))
    assert not locus.contains_point((F(1), F(0)))


def test_function_factory():
    assert set(FunctionFactory.get_available_functions()) >= {
        k.value for k in (NodeKind.SQRT, NodeKind.LOG, NodeKind.ARCCOSH, NodeKind.ARCTAN)}
    with pytest.raises(ValueError):
        FunctionFactory.create_function(NodeKind.EXP)


def test_parse_condition():
    cond = parse_condition('x^2 + y^2 >= 1')
    assert cond.relation is Relation.GE
    assert cond.holds(lambda p: 1)
    assert parse_condition('y < x').relation in (Relation.LT, Relation.GT)


def test_parse_region():
    region = parse_region('y>0 & x<1 | x^2+y^2<1')
    assert isinstance(region, SemiAlgebraicSet)
    assert len(region.clauses) == 2
    assert region.contains_point((F(0), F(1)))
    assert region.contains_point((F(0), F(-1, 2)))
    assert not region.contains_point((F(2), F(-1)))


def test_parse_region_syntax_error():
    with pytest.raises(ExprSyntaxError):
        parse_region('x +')


def test_kahan_q_outer_cut_polynomials():
    cuts = expression_cuts(get_expression('kahan-q'))
    inner_real = SignCondition.of(bivar(Y ** 4 - X ** 4 + 3 * X * Y ** 2 - 13 * X ** 3 + 9 * Y ** 2
                                        - 63 * X ** 2 - 135 * X - 108), Relation.LE).key()
    below_one = SignCondition.of(bivar(4 * Y ** 4 - 4 * X ** 4 + 12 * X * Y ** 2 - 52 * X ** 3
                                       + 63 * Y ** 2 - 225 * X ** 2 - 324 * X), Relation.GT).key()
    clause_keys = [set(clause.key()) for s in cuts for clause in s.clauses]
    assert any({inner_real, below_one} <= keys for keys in clause_keys)


def test_denominator_sign():
    assert denominator_sign(bivar(X - 1)) == 0
    assert denominator_sign(bivar((X + 4) ** 2 + Y ** 2)) == 1
    assert denominator_sign(bivar(-X ** 2 - 1)) == -1
    assert denominator_sign(bivar(3)) == 1


def test_log_cut_with_sign_changing_denominator():
    # 1/(x-1) < 0 恰为 x < 1
    cut = cuts_rational_arg(NodeKind.LOG, parse('1/(x-1)', REAL))
    assert cut.contains_point((F(0), F(0)))
    assert cut.contains_point((F(1, 2), F(5)))
    assert not cut.contains_point((F(2), F(0)))
    assert not cut.contains_point((F(1), F(0)))
