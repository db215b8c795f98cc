"""
区间工具
基于 mpmath.libmp 的有向舍入区间，端点为二进制浮点 (mpf)
"""

from fractions import Fraction
from typing import Optional, Sequence, Tuple

from mpmath.libmp import (
    fzero, from_int, from_rational, mpf_le, mpf_lt, mpf_sign, round_ceiling, round_floor,
    to_rational,
)
from mpmath.libmp import libmpi

Interval = Tuple[tuple, tuple]

ZERO = libmpi.mpi_zero
ONE = libmpi.mpi_one


def point(value: Fraction, prec: int) -> Interval:
    """包含有理数 value 的最窄区间；二进有理数时精确"""
    value = Fraction(value)
    lo = from_rational(value.numerator, value.denominator, prec, round_floor)
    hi = from_rational(value.numerator, value.denominator, prec, round_ceiling)
    return lo, hi


def between(lo: Fraction, hi: Fraction, prec: int) -> Interval:
    lo, hi = Fraction(lo), Fraction(hi)
    return (from_rational(lo.numerator, lo.denominator, prec, round_floor),
            from_rational(hi.numerator, hi.denominator, prec, round_ceiling))


def integer(n: int) -> Interval:
    v = from_int(n)
    return v, v


def to_fractions(iv: Interval) -> Tuple[Fraction, Fraction]:
    lo, hi = iv
    p, q = to_rational(lo)
    r, s = to_rational(hi)
    return Fraction(p, q), Fraction(r, s)


def is_exact_zero(iv: Interval) -> bool:
    return iv[0] == fzero and iv[1] == fzero


def sign(iv: Interval) -> Optional[int]:
    """区间严格不含 0 时给出符号，恒为 0 时给出 0，否则 None"""
    lo, hi = iv
    if is_exact_zero(iv):
        return 0
    if mpf_sign(lo) > 0:
        return 1
    if mpf_sign(hi) < 0:
        return -1
    return None


def contains_zero(iv: Interval) -> bool:
    lo, hi = iv
    return mpf_le(lo, fzero) and mpf_le(fzero, hi)


def below(iv: Interval, bound: Interval) -> bool:
    """iv 严格小于 bound"""
    return mpf_lt(iv[1], bound[0])


def width(iv: Interval) -> Fraction:
    lo, hi = to_fractions(iv)
    return hi - lo


def radius_bound(iv: Interval) -> Fraction:
    return width(iv) / 2


def clamp_nonnegative(iv: Interval) -> Interval:
    lo, hi = iv
    if mpf_sign(lo) < 0:
        lo = fzero
    if mpf_sign(hi) < 0:
        hi = fzero
    return lo, hi


def fraction_horner(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """
    精确有理区间 Horner 求值
    coeffs 为降幂系数，结果为包含多项式在 [lo, hi] 上取值的区间
    """
    acc_lo = acc_hi = Fraction(0)
    for c in coeffs:
        candidates = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo = min(candidates) + c
        acc_hi = max(candidates) + c
    return acc_lo, acc_hi


def horner_exact(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def poly_enclosure(table, x_iv: Interval, y_iv: Interval, prec: int) -> Interval:
    """
    二元多项式在区间盒上的包围
    table 为 (ey, ex, 系数) 表
    """
    cache_x = {}
    cache_y = {}
    total = ZERO
    for ey, ex, c in table:
        if ex not in cache_x:
            cache_x[ex] = libmpi.mpi_pow_int(x_iv, ex, prec) if ex else ONE
        if ey not in cache_y:
            cache_y[ey] = libmpi.mpi_pow_int(y_iv, ey, prec) if ey else ONE
        term = libmpi.mpi_mul(cache_x[ex], cache_y[ey], prec)
        term = libmpi.mpi_mul(term, point(c, prec), prec)
        total = libmpi.mpi_add(total, term, prec)
    return total
