"""
有理系数多项式工具
二元多项式统一用 sympy Poly，生成元顺序 (y, x)，即 y > x；一元多项式生成元为 x
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import sympy
from sympy import Poly, QQ

from core.errors import AlgebraError, CadBudgetExceeded

logger = logging.getLogger(__name__)

X, Y = sympy.symbols('x y')
BIVAR_GENS = (Y, X)

Number = Union[int, Fraction]


def to_fraction(c) -> Fraction:
    """sympy / gmpy / python 有理数统一转为 Fraction"""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, sympy.Rational):
        return Fraction(int(c.p), int(c.q))
    numerator = getattr(c, 'numerator', None)
    denominator = getattr(c, 'denominator', None)
    if numerator is not None and denominator is not None and not callable(numerator):
        return Fraction(int(numerator), int(denominator))
    r = sympy.Rational(c)
    return Fraction(int(r.p), int(r.q))


def to_rational(f: Number) -> sympy.Rational:
    f = Fraction(f)
    return sympy.Rational(f.numerator, f.denominator)


def bivar(expr) -> Poly:
    """构造 (y, x) 上的二元多项式"""
    if isinstance(expr, Poly):
        if expr.gens == BIVAR_GENS:
            return expr
        expr = expr.as_expr()
    return Poly(expr, *BIVAR_GENS, domain=QQ)


def univar(expr, gen=X) -> Poly:
    if isinstance(expr, Poly):
        if expr.gens == (gen,):
            return expr
        expr = expr.as_expr()
    return Poly(expr, gen, domain=QQ)


def is_zero(p: Poly) -> bool:
    return p.is_zero


def is_constant(p: Poly) -> bool:
    return p.is_zero or p.total_degree() == 0


def degree_in(p: Poly, gen) -> int:
    if p.is_zero:
        return -1
    return p.degree(gen)


def leading_coefficient(p: Poly) -> Fraction:
    """固定单项式序（分次字典序，y > x）下的首项系数"""
    return to_fraction(p.LC(order='grlex'))


def normalize_with_constant(p: Poly) -> Tuple[Fraction, Poly]:
    """
    返回 (c, q)，p = c·q，q 为本原整系数且首项系数为正
    零多项式返回 (0, p)
    """
    if p.is_zero:
        return Fraction(0), p
    coeffs = [to_fraction(c) for c in p.coeffs()]
    common_den = 1
    for c in coeffs:
        common_den = common_den * c.denominator // math.gcd(common_den, c.denominator)
    g = 0
    for c in coeffs:
        g = math.gcd(g, abs(c.numerator * (common_den // c.denominator)))
    content = Fraction(g, common_den)
    if leading_coefficient(p) < 0:
        content = -content
    if content == 1:
        return content, p
    return content, p.mul_ground(to_rational(1 / content))


def primitive_normal(p: Poly) -> Poly:
    return normalize_with_constant(p)[1]


def sort_key(p: Poly) -> Tuple:
    return (p.total_degree(), len(p.terms()), poly_to_text(p))


def factor_irreducible(p: Poly) -> List[Tuple[Poly, int]]:
    """Q 上不可约分解（丢弃常数因子），各因子规范化"""
    if is_constant(p):
        return []
    _, factors = p.factor_list()
    result = []
    for f, k in factors:
        if is_constant(f):
            continue
        result.append((primitive_normal(f), k))
    result.sort(key=lambda item: sort_key(item[0]))
    return result


def squarefree_basis(polys: Iterable[Poly]) -> List[Poly]:
    """所有输入的不可约因子，去重并按确定顺序排列"""
    seen: Dict[Tuple, Poly] = {}
    for p in polys:
        for f, _ in factor_irreducible(p):
            key = tuple(f.terms())
            seen.setdefault(key, f)
    return sorted(seen.values(), key=sort_key)


def squarefree_part(p: Poly) -> Poly:
    if is_constant(p):
        return p
    return primitive_normal(p.sqf_part())


def resultant(p: Poly, q: Poly) -> Poly:
    """
    关于 y 的结式，结果为 x 的一元多项式
    精确计算（sympy 子结式 PRS）
    """
    p, q = bivar(p), bivar(q)
    if p.is_zero or q.is_zero:
        raise AlgebraError("结式的输入不能为零多项式")
    dp, dq = degree_in(p, Y), degree_in(q, Y)
    if dp == 0 and dq == 0:
        return univar(1)
    if dp == 0:
        return univar(p.as_expr() ** dq)
    if dq == 0:
        return univar(q.as_expr() ** dp)
    return univar(p.resultant(q))


def discriminant(p: Poly) -> Poly:
    """
    关于 y 的判别式
    规范：(-1)^(n(n-1)/2) · res_y(p, ∂p/∂y) / lc_y(p)，与 b²-4ac 一致
    """
    p = bivar(p)
    if p.is_zero or degree_in(p, Y) < 1:
        raise AlgebraError("判别式要求 y 次数至少为 1")
    if degree_in(p, Y) == 1:
        return univar(1)
    return univar(p.discriminant())


def y_coefficients(p: Poly) -> List[Poly]:
    """按 y 的降幂给出系数（x 的一元多项式）"""
    p = bivar(p)
    d = degree_in(p, Y)
    if d < 0:
        return []
    buckets: Dict[int, object] = {}
    for (ey, ex), c in p.terms():
        buckets[ey] = buckets.get(ey, 0) + c * X ** ex
    return [univar(buckets.get(k, 0)) for k in range(d, -1, -1)]


@lru_cache(maxsize=4096)
def coefficient_table(p: Poly) -> Tuple[Tuple[int, int, Fraction], ...]:
    """(ey, ex, 系数) 表，用于精确与区间求值"""
    p = bivar(p)
    return tuple((ey, ex, to_fraction(c)) for (ey, ex), c in p.terms())


def eval_exact(p: Poly, x: Number, y: Number = 0) -> Fraction:
    total = Fraction(0)
    x, y = Fraction(x), Fraction(y)
    for ey, ex, c in coefficient_table(bivar(p)):
        total += c * x ** ex * y ** ey
    return total


def univar_coefficients(p: Poly) -> List[Fraction]:
    """一元多项式的降幂系数"""
    return [to_fraction(c) for c in univar(p).all_coeffs()]


def substitute_x(p: Poly, x0: Number) -> Poly:
    """p(x0, y)，结果为 y 的一元多项式"""
    p = bivar(p)
    return Poly(p.as_expr().subs(X, to_rational(x0)), Y, domain=QQ)


def _format_coefficient(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def poly_to_text(p: Poly) -> str:
    """
    规范字符串：分次字典序（y > x）降序，语法与表达式解析器一致
    """
    if p.is_zero:
        return '0'
    gens = p.gens
    pieces = []
    for monom, c in p.terms(order='grlex'):
        c = to_fraction(c)
        factors = []
        # 单项式内按 x 在前书写
        for gen, e in sorted(zip(gens, monom), key=lambda item: str(item[0])):
            if e == 0:
                continue
            factors.append(str(gen) if e == 1 else f"{gen}^{e}")
        magnitude = abs(c)
        if factors:
            body = '*'.join(factors)
            if magnitude != 1:
                body = f"{_format_coefficient(magnitude)}*{body}"
        else:
            body = _format_coefficient(magnitude)
        sign = '-' if c < 0 else '+'
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ('-' if first_sign == '-' else '') + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def polys_equal_up_to_constant(p: Poly, q: Poly) -> bool:
    if p.is_zero or q.is_zero:
        return p.is_zero and q.is_zero
    return primitive_normal(bivar(p)) == primitive_normal(bivar(q))


def ensure_degree_budget(polys: Sequence[Poly], budget: int) -> None:
    for p in polys:
        p = bivar(p)
        for gen, name in ((X, 'x'), (Y, 'y')):
            if degree_in(p, gen) > budget:
                raise CadBudgetExceeded(
                    f"多项式 {name} 次数 {degree_in(p, gen)} 超过预算 {budget}")
