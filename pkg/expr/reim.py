"""
实部虚部拆分
z = x + iy 代入有理表达式，得到 (Re, Im) 两个二元有理函数
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import sympy
from sympy import Poly, QQ

from core.errors import NonRationalNodeError, ZeroDenominatorError
from realalg.polynomials import (
    BIVAR_GENS, X, Y, bivar, eval_exact, is_constant, normalize_with_constant,
    poly_to_text, to_rational,
)
from .nodes import Expr, NodeKind

logger = logging.getLogger(__name__)

REAL_NAMES = {'x': X, 'y': Y}


def _poly(expr, gens) -> Poly:
    return Poly(expr, *gens, domain=QQ)


@dataclass(frozen=True)
class ComplexRational:
    """
    (re + i·im) / den，三者为同一组生成元上的多项式
    den 由 |N|² 与正常数连乘得到，处处非负
    """
    re: Poly
    im: Poly
    den: Poly

    @property
    def gens(self):
        return self.re.gens

    @classmethod
    def constant(cls, re: Fraction, im: Fraction, gens) -> 'ComplexRational':
        return cls(_poly(to_rational(re), gens), _poly(to_rational(im), gens), _poly(1, gens))

    @classmethod
    def of(cls, re, im, gens) -> 'ComplexRational':
        return cls(_poly(re, gens), _poly(im, gens), _poly(1, gens))

    def reduced(self) -> 'ComplexRational':
        g = self.den.gcd(self.re).gcd(self.im)
        re, im, den = self.re, self.im, self.den
        if not is_constant(g):
            re, im, den = re.exquo(g), im.exquo(g), den.exquo(g)
        c, den = normalize_with_constant(den)
        if c != 1:
            factor = to_rational(1 / c)
            re, im = re.mul_ground(factor), im.mul_ground(factor)
        return ComplexRational(re, im, den)

    def __add__(self, other: 'ComplexRational') -> 'ComplexRational':
        if self.den == other.den:
            return ComplexRational(self.re + other.re, self.im + other.im, self.den).reduced()
        return ComplexRational(self.re * other.den + other.re * self.den,
                               self.im * other.den + other.im * self.den,
                               self.den * other.den).reduced()

    def __neg__(self) -> 'ComplexRational':
        return ComplexRational(-self.re, -self.im, self.den)

    def __sub__(self, other: 'ComplexRational') -> 'ComplexRational':
        return self + (-other)

    def __mul__(self, other: 'ComplexRational') -> 'ComplexRational':
        return ComplexRational(self.re * other.re - self.im * other.im,
                               self.re * other.im + self.im * other.re,
                               self.den * other.den).reduced()

    def __truediv__(self, other: 'ComplexRational') -> 'ComplexRational':
        if other.re.is_zero and other.im.is_zero:
            raise ZeroDenominatorError("除数恒为零")
        norm = other.re ** 2 + other.im ** 2
        return ComplexRational((self.re * other.re + self.im * other.im) * other.den,
                               (self.im * other.re - self.re * other.im) * other.den,
                               self.den * norm).reduced()

    def __pow__(self, n: int) -> 'ComplexRational':
        result = ComplexRational.constant(Fraction(1), Fraction(0), self.gens)
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result


def _reduce_fraction(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if num.is_zero:
        return num, _poly(1, num.gens)
    g = num.gcd(den)
    if not is_constant(g):
        num, den = num.exquo(g), den.exquo(g)
    c, den = normalize_with_constant(den)
    if c != 1:
        num = num.mul_ground(to_rational(1 / c))
    return num, den


@dataclass(frozen=True)
class RatFunPair:
    """
    Re 与 Im 两个既约有理函数
    分母本原、首项系数为正（分次字典序，y > x）
    """
    re_num: Poly
    re_den: Poly
    im_num: Poly
    im_den: Poly

    @classmethod
    def from_complex(cls, value: ComplexRational) -> 'RatFunPair':
        re_num, re_den = _reduce_fraction(value.re, value.den)
        im_num, im_den = _reduce_fraction(value.im, value.den)
        return cls(re_num, re_den, im_num, im_den)

    @property
    def re(self) -> Tuple[Poly, Poly]:
        return self.re_num, self.re_den

    @property
    def im(self) -> Tuple[Poly, Poly]:
        return self.im_num, self.im_den

    def __add__(self, other: 'RatFunPair') -> 'RatFunPair':
        re = _reduce_fraction(self.re_num * other.re_den + other.re_num * self.re_den,
                              self.re_den * other.re_den)
        im = _reduce_fraction(self.im_num * other.im_den + other.im_num * self.im_den,
                              self.im_den * other.im_den)
        return RatFunPair(re[0], re[1], im[0], im[1])

    def __mul__(self, other: 'RatFunPair') -> 'RatFunPair':
        # (a + ib)(c + id) = (ac - bd) + i(ad + bc)
        den_ac = self.re_den * other.re_den
        den_bd = self.im_den * other.im_den
        den_ad = self.re_den * other.im_den
        den_bc = self.im_den * other.re_den
        re = _reduce_fraction(self.re_num * other.re_num * den_bd - self.im_num * other.im_num * den_ac,
                              den_ac * den_bd)
        im = _reduce_fraction(self.re_num * other.im_num * den_bc + self.im_num * other.re_num * den_ad,
                              den_ad * den_bc)
        return RatFunPair(re[0], re[1], im[0], im[1])

    def evaluate(self, x, y) -> Tuple[Fraction, Fraction]:
        """在有理点处精确求值，分母为零时抛出 ZeroDivisionError"""
        re_den = eval_exact(bivar(self.re_den), x, y)
        im_den = eval_exact(bivar(self.im_den), x, y)
        if re_den == 0 or im_den == 0:
            raise ZeroDivisionError(f"({x}, {y}) 处分母为零")
        return (eval_exact(bivar(self.re_num), x, y) / re_den,
                eval_exact(bivar(self.im_num), x, y) / im_den)

    def __str__(self):
        def part(num, den):
            if is_constant(den):
                return poly_to_text(num)
            return f"({poly_to_text(num)})/({poly_to_text(den)})"
        return f"Re = {part(self.re_num, self.re_den)}, Im = {part(self.im_num, self.im_den)}"


def complex_rational(e: Expr, radicals: Optional[Dict[Expr, Tuple[sympy.Symbol, sympy.Symbol]]] = None,
                     gens: Optional[Sequence[sympy.Symbol]] = None) -> ComplexRational:
    """
    把有理表达式转为 ComplexRational
    radicals 把 Sqrt 节点映射为辅助实变量 (u, v)，即 sqrt(...) = u + iv
    """
    radicals = radicals or {}
    if gens is None:
        gens = list(BIVAR_GENS)
        for u, v in radicals.values():
            gens.extend([u, v])
    gens = tuple(gens)
    cache: Dict[Expr, ComplexRational] = {}

    def visit(node: Expr) -> ComplexRational:
        if node in cache:
            return cache[node]
        kind = node.kind
        if kind is NodeKind.CONST:
            result = ComplexRational.constant(node.re, node.im, gens)
        elif kind is NodeKind.VAR:
            if node.name in REAL_NAMES:
                result = ComplexRational.of(REAL_NAMES[node.name], 0, gens)
            else:
                result = ComplexRational.of(X, Y, gens)
        elif node in radicals:
            u, v = radicals[node]
            result = ComplexRational.of(u, v, gens)
        elif kind is NodeKind.NEG:
            result = -visit(node.args[0])
        elif kind is NodeKind.ADD:
            result = visit(node.args[0]) + visit(node.args[1])
        elif kind is NodeKind.SUB:
            result = visit(node.args[0]) - visit(node.args[1])
        elif kind is NodeKind.MUL:
            result = visit(node.args[0]) * visit(node.args[1])
        elif kind is NodeKind.DIV:
            result = visit(node.args[0]) / visit(node.args[1])
        elif kind is NodeKind.POW:
            result = visit(node.args[0]) ** node.exponent
        else:
            raise NonRationalNodeError(f"非有理节点: {kind.value}")
        cache[node] = result
        return result

    return visit(e)


def reim_split(e: Expr) -> RatFunPair:
    """
    有理表达式的实部/虚部拆分
    复变量按 x + iy 处理；实模式下 x、y 本身为实数
    """
    result = RatFunPair.from_complex(complex_rational(e))
    logger.debug("拆分结果: %s", result)
    return result


def expr_to_poly(e: Expr) -> Poly:
    """实多项式表达式转为 (y, x) 上的多项式，用于区域条件与 CAD 输入"""
    pair = reim_split(e)
    if not pair.im_num.is_zero:
        raise NonRationalNodeError("多项式条件必须为实值")
    if not is_constant(pair.re_den):
        raise NonRationalNodeError("多项式条件不能含分母")
    den_value = eval_exact(bivar(pair.re_den), 0, 0)
    return bivar(pair.re_num).mul_ground(to_rational(1 / den_value))
