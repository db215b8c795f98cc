"""
代数点处的精确符号判定
先用区间包围，包围跨零时转精确判定（最小多项式整除 / 数域 gcd）
"""

import logging
from typing import Tuple

from sympy import Poly

from . import intervals
from .algebraic import AlgebraicNumber, exact_value
from .number_field import FiberRoot, NumberField
from .polynomials import (
    X, Y, bivar, coefficient_table, eval_exact, to_rational, univar, univar_coefficients,
)

logger = logging.getLogger(__name__)

_PROBE_PRECISION = 64


def _as_interval(value, prec: int):
    exact = exact_value(value)
    if exact is not None:
        return intervals.point(exact, prec)
    return value.enclosure(prec)


def sign_univar_at(q: Poly, a) -> int:
    """一元多项式在实数 a 处的符号"""
    q = univar(q)
    if q.is_zero:
        return 0
    exact = exact_value(a)
    if exact is not None:
        v = eval_exact(q, exact)
        return (v > 0) - (v < 0)
    if isinstance(a, FiberRoot):
        a = a.to_algebraic()
        return sign_univar_at(q, a)
    if q.rem(a.defining_poly).is_zero:
        return 0
    coeffs = univar_coefficients(q)
    while True:
        lo, hi = a.value_bounds(coeffs)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        a.refine()


def _field_for(x) -> NumberField:
    exact = exact_value(x)
    if exact is not None:
        return NumberField.rational(exact)
    if isinstance(x, FiberRoot):
        x = x.to_algebraic()
        if not isinstance(x, AlgebraicNumber):
            return NumberField.rational(x)
    return x.field()


def sign_at(p: Poly, point: Tuple) -> int:
    """
    二元多项式 p 在点 (x, y) 处的精确符号
    坐标可以是有理数、AlgebraicNumber 或纤维根
    """
    p = bivar(p)
    if p.is_zero:
        return 0
    x, y = point
    ex, ey = exact_value(x), exact_value(y)
    if ex is not None and ey is not None:
        v = eval_exact(p, ex, ey)
        return (v > 0) - (v < 0)

    enclosure = intervals.poly_enclosure(coefficient_table(p), _as_interval(x, _PROBE_PRECISION),
                                         _as_interval(y, _PROBE_PRECISION), _PROBE_PRECISION)
    s = intervals.sign(enclosure)
    if s is not None:
        return s

    if ey is not None:
        q = univar(p.as_expr().subs(Y, to_rational(ey)))
        return sign_univar_at(q, x)
    if ex is not None and not isinstance(y, FiberRoot):
        q = univar(p.as_expr().subs(X, to_rational(ex)).subs(Y, X))
        return sign_univar_at(q, y)
    if isinstance(y, FiberRoot):
        return y.sign_of(p)
    field = _field_for(x)
    # y 的最小多项式在 Q(α) 上仍无平方，隔离区间不变
    kpoly = field.from_rational_coeffs(univar_coefficients(y.defining_poly))
    lo, hi = y.interval
    root = FiberRoot(field, kpoly, lo, hi)
    return field.sign_at_root(field.from_bivar(p), root)


def sign_vector(polys, point: Tuple) -> Tuple[int, ...]:
    return tuple(sign_at(p, point) for p in polys)

