"""
投影
二元情形：首项系数、判别式、两两结式与 x-内容，先取不可约基
"""

import logging
from itertools import combinations
from typing import Iterable, List, Tuple

from sympy import Poly

from realalg.polynomials import (
    Y, bivar, degree_in, discriminant, is_constant, resultant, sort_key, squarefree_basis,
    squarefree_part, univar, y_coefficients,
)

logger = logging.getLogger(__name__)


def split_basis(polys: Iterable[Poly]) -> Tuple[List[Poly], List[Poly]]:
    """
    不可约基按是否含 y 拆分
    返回 (含 y 的因子, 只含 x 的因子)
    """
    with_y, x_only = [], []
    for f in squarefree_basis(bivar(p) for p in polys):
        if degree_in(f, Y) >= 1:
            with_y.append(f)
        else:
            x_only.append(f)
    return with_y, x_only


def project(polys: Iterable[Poly]) -> List[Poly]:
    """
    投影到 x 轴，结果为无平方本原一元多项式（不再分解），去掉常数并去重

    Args:
        polys: 二元多项式集合，可以为空
    Returns:
        x 的一元多项式列表，按确定顺序排列
    """
    with_y, x_only = split_basis(polys)
    candidates: List[Poly] = [univar(f) for f in x_only]

    for f in with_y:
        candidates.append(y_coefficients(f)[0])
        if degree_in(f, Y) >= 2:
            candidates.append(discriminant(f))
    for f, g in combinations(with_y, 2):
        candidates.append(resultant(f, g))

    seen = {}
    for c in candidates:
        c = univar(c)
        if c.is_zero or is_constant(c):
            continue
        c = univar(squarefree_part(c))
        seen.setdefault(tuple(c.all_coeffs()), c)
    result = sorted(seen.values(), key=sort_key)
    logger.debug("投影: %d 个输入因子 -> %d 个多项式", len(with_y) + len(x_only), len(result))
    return result
