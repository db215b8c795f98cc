"""
实代数模块
有理系数多项式、实根隔离、代数数与符号判定
"""

from .algebraic import AlgebraicNumber, RealNumber, compare, format_fraction
from .number_field import FiberRoot, NumberField
from .polynomials import (
    X, Y, bivar, discriminant, factor_irreducible, poly_to_text, primitive_normal, resultant,
    squarefree_basis, univar,
)
from .roots import (
    count_real_roots, isolate_real_roots, rational_between, real_roots, root_bound,
    simplest_rational_between,
)
from .sign import sign_at, sign_univar_at, sign_vector

__all__ = [
    'AlgebraicNumber',
    'RealNumber',
    'compare',
    'format_fraction',
    'FiberRoot',
    'NumberField',
    'X',
    'Y',
    'bivar',
    'discriminant',
    'factor_irreducible',
    'poly_to_text',
    'primitive_normal',
    'resultant',
    'squarefree_basis',
    'univar',
    'count_real_roots',
    'isolate_real_roots',
    'rational_between',
    'real_roots',
    'root_bound',
    'simplest_rational_between',
    'sign_at',
    'sign_univar_at',
    'sign_vector'
]
