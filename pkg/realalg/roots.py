"""
实根隔离
按不可约因子分别隔离再合并，保证区间两两不交、端点不是根
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy import Poly

from core.errors import AlgebraError
from .algebraic import AlgebraicNumber, RealNumber, bounds, compare, exact_value
from .polynomials import factor_irreducible, to_fraction, to_rational, univar, univar_coefficients

logger = logging.getLogger(__name__)


def _factor_roots(factor: Poly) -> List[RealNumber]:
    if factor.degree() == 1:
        a, b = univar_coefficients(factor)
        return [-b / a]
    roots = []
    for (lo, hi), _ in factor.intervals():
        lo, hi = to_fraction(lo), to_fraction(hi)
        if lo == hi:
            roots.append(lo)
        else:
            roots.append(AlgebraicNumber(factor, lo, hi))
    return roots


def real_roots(p: Poly) -> List[RealNumber]:
    """
    全部不同实根，升序
    有理根以 Fraction 给出，其余为 AlgebraicNumber
    """
    p = univar(p)
    if p.is_zero:
        raise AlgebraError("零多项式没有有限个根")
    roots: List[RealNumber] = []
    for factor, _ in factor_irreducible(p):
        roots.extend(_factor_roots(factor))
    return sort_distinct(roots)


def sort_distinct(values: Sequence[RealNumber]) -> List[RealNumber]:
    """精确排序并去重，相邻区间细化到互不相交"""
    ordered: List[RealNumber] = []
    for v in values:
        lo, hi = 0, len(ordered)
        duplicate = False
        while lo < hi:
            mid = (lo + hi) // 2
            c = compare(v, ordered[mid])
            if c == 0:
                duplicate = True
                break
            if c < 0:
                hi = mid
            else:
                lo = mid + 1
        if not duplicate:
            ordered.insert(lo, v)
    separate(ordered)
    return ordered


def separate(ordered: Sequence[RealNumber]) -> None:
    for left, right in zip(ordered, ordered[1:]):
        while bounds(left)[1] >= bounds(right)[0]:
            if exact_value(left) is None:
                left.refine()
            if exact_value(right) is None:
                right.refine()


def isolate_real_roots(p: Poly) -> List[Tuple[Fraction, Fraction]]:
    """
    每个不同实根一个隔离区间，升序且两两不交
    有理根给出退化区间 (r, r)
    """
    return [bounds(r) for r in real_roots(p)]


def count_real_roots(p: Poly, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> int:
    p = univar(p)
    if p.is_zero:
        raise AlgebraError("零多项式没有有限个根")
    if p.degree() <= 0:
        return 0
    sqf = p.sqf_part()
    inf = None if lo is None else Fraction(lo)
    sup = None if hi is None else Fraction(hi)
    return sqf.count_roots(None if inf is None else to_rational(inf),
                           None if sup is None else to_rational(sup))


def root_bound(coeffs: Sequence[Fraction]) -> Fraction:
    """Cauchy 上界：所有实根的绝对值严格小于它"""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return Fraction(1)
    lead = abs(coeffs[0])
    return 1 + max(abs(c) / lead for c in coeffs[1:])


def _simplest_positive(lo: Fraction, hi: Fraction) -> Fraction:
    """0 ≤ lo < hi 时开区间 (lo, hi) 中分母最小的有理数"""
    fl = math.floor(lo)
    if fl + 1 < hi:
        return Fraction(fl + 1)
    a, b = lo - fl, hi - fl
    if a == 0:
        return fl + Fraction(1, math.floor(1 / b) + 1)
    return fl + 1 / _simplest_positive(1 / b, 1 / a)


def simplest_rational_between(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    """
    开区间 (lo, hi) 中最简单的有理数
    有整数时取绝对值最小的整数，否则取分母最小者；None 表示无界
    """
    if lo is not None and hi is not None and not lo < hi:
        raise ValueError(f"空区间 ({lo}, {hi})")
    if (lo is None or lo < 0) and (hi is None or hi > 0):
        return Fraction(0)
    if lo is None:
        return Fraction(math.ceil(hi) - 1)
    if hi is None:
        return Fraction(math.floor(lo) + 1)
    if lo >= 0:
        return _simplest_positive(Fraction(lo), Fraction(hi))
    return -_simplest_positive(-Fraction(hi), -Fraction(lo))


def rational_between(a: Optional[RealNumber], b: Optional[RealNumber]) -> Fraction:
    """严格位于两个实数之间的最简有理数，None 表示无穷"""
    if a is not None and b is not None:
        while bounds(a)[1] >= bounds(b)[0]:
            if exact_value(a) is None:
                a.refine()
            if exact_value(b) is None:
                b.refine()
    lo = None if a is None else bounds(a)[1]
    hi = None if b is None else bounds(b)[0]
    return simplest_rational_between(lo, hi)
