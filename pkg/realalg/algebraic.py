"""
实代数数
Q 上不可约定义多项式 + 有理隔离区间，区间细化带锁，可跨线程共享
"""

import logging
import threading
from fractions import Fraction
from typing import Optional, Tuple, Union

from sympy import Poly

from .intervals import Interval, between, fraction_horner, horner_exact
from .polynomials import (
    factor_irreducible, poly_to_text, primitive_normal, to_rational, univar,
    univar_coefficients,
)

logger = logging.getLogger(__name__)


class AlgebraicNumber:
    """
    无理实代数数
    defining_poly 为本原不可约多项式（次数 ≥ 2），(lo, hi) 内恰有它的一个根，端点不是根
    """

    def __init__(self, defining_poly: Poly, lo: Fraction, hi: Fraction):
        self.defining_poly = primitive_normal(univar(defining_poly))
        self._coeffs = univar_coefficients(self.defining_poly)
        self._lo = Fraction(lo)
        self._hi = Fraction(hi)
        self._sign_lo = self._sign(self._lo)
        self._lock = threading.Lock()
        self._field = None
        if self._sign_lo == 0 or self._sign(self._hi) == 0 or self._sign_lo == self._sign(self._hi):
            raise ValueError(f"区间 ({lo}, {hi}) 不是 {poly_to_text(self.defining_poly)} 的隔离区间")

    @classmethod
    def from_root(cls, poly: Poly, lo: Fraction, hi: Fraction) -> Union[Fraction, 'AlgebraicNumber']:
        """
        由任意多项式及其某个根的隔离区间 [lo, hi] 构造
        取包含该根的不可约因子，线性因子直接返回有理数
        """
        lo, hi = Fraction(lo), Fraction(hi)
        if lo == hi:
            return lo
        for factor, _ in factor_irreducible(univar(poly)):
            if factor.count_roots(to_rational(lo), to_rational(hi)) == 0:
                continue
            if factor.degree() == 1:
                a, b = univar_coefficients(factor)
                return -b / a
            return cls(factor, lo, hi)
        raise ValueError("区间内没有根")

    def _sign(self, value: Fraction) -> int:
        v = horner_exact(self._coeffs, value)
        return (v > 0) - (v < 0)

    @property
    def degree(self) -> int:
        return self.defining_poly.degree()

    @property
    def interval(self) -> Tuple[Fraction, Fraction]:
        with self._lock:
            return self._lo, self._hi

    def refine(self) -> Tuple[Fraction, Fraction]:
        """区间对分一次"""
        with self._lock:
            mid = (self._lo + self._hi) / 2
            if self._sign(mid) == self._sign_lo:
                self._lo = mid
            else:
                self._hi = mid
            return self._lo, self._hi

    def refine_to(self, width: Fraction) -> Tuple[Fraction, Fraction]:
        lo, hi = self.interval
        while hi - lo > width:
            lo, hi = self.refine()
        return lo, hi

    def enclosure(self, prec: int) -> Interval:
        """宽度不超过 2^-prec 的外包区间"""
        lo, hi = self.refine_to(Fraction(1, 2 ** prec))
        return between(lo, hi, prec + 10)

    def field(self):
        """Q(α)，按需创建并缓存"""
        if self._field is None:
            from .number_field import NumberField
            self._field = NumberField(self.defining_poly, self)
        return self._field

    def value_bounds(self, coeffs) -> Tuple[Fraction, Fraction]:
        """多项式（降幂有理系数）在当前区间上的值域包围"""
        lo, hi = self.interval
        return fraction_horner(coeffs, lo, hi)

    def exact(self) -> Optional[Fraction]:
        return None

    def __float__(self):
        lo, hi = self.refine_to(Fraction(1, 2 ** 60))
        return float((lo + hi) / 2)

    def __repr__(self):
        lo, hi = self.interval
        return f"AlgebraicNumber({poly_to_text(self.defining_poly)}, ({lo}, {hi}))"

    def to_json(self) -> dict:
        lo, hi = self.interval
        return {
            'poly': poly_to_text(self.defining_poly),
            'interval': [format_fraction(lo), format_fraction(hi)],
            'approx': f"{float(self):.15g}",
        }

    def _same_poly(self, other: 'AlgebraicNumber') -> bool:
        return self.defining_poly == other.defining_poly

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return False
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        return compare(self, other) == 0

    def __hash__(self):
        return hash(tuple(self._coeffs))

    def __lt__(self, other):
        return compare(self, other) < 0


RealNumber = Union[Fraction, AlgebraicNumber]


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def bounds(value) -> Tuple[Fraction, Fraction]:
    """任意实数对象的当前有理包围"""
    if isinstance(value, (int, Fraction)):
        v = Fraction(value)
        return v, v
    exact = value.exact()
    if exact is not None:
        return exact, exact
    return value.interval


def exact_value(value) -> Optional[Fraction]:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return value.exact()


def compare(a, b) -> int:
    """
    精确比较两个实数（有理数、代数数或纤维根）
    无理数之间：同一最小多项式且区间重叠时用根计数判等，否则细化至分离
    """
    ea, eb = exact_value(a), exact_value(b)
    if ea is not None and eb is not None:
        return (ea > eb) - (ea < eb)
    if ea is None and not isinstance(a, AlgebraicNumber):
        a = a.to_algebraic()
        ea = exact_value(a)
    if eb is None and not isinstance(b, AlgebraicNumber):
        b = b.to_algebraic()
        eb = exact_value(b)
    if ea is not None and eb is not None:
        return (ea > eb) - (ea < eb)
    if ea is None and eb is None and a._same_poly(b):
        lo = min(a.interval[0], b.interval[0])
        hi = max(a.interval[1], b.interval[1])
        if a.defining_poly.count_roots(to_rational(lo), to_rational(hi)) == 1:
            return 0
    while True:
        alo, ahi = bounds(a)
        blo, bhi = bounds(b)
        if ahi < blo:
            return -1
        if bhi < alo:
            return 1
        if ea is None:
            a.refine()
        if eb is None:
            b.refine()
