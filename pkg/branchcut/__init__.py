"""
割线模块
初等函数的定义割线、割线到 (x, y) 平面的映射与半代数集
"""

from .base_function import (
    EXACT, NUMERIC_EVIDENCE, Clause, ElementaryFunction, FunctionFactory, Relation,
    SemiAlgebraicSet, SignCondition, parse_condition, parse_region,
)
from .log_function import LogFunction
from .sqrt_function import SqrtFunction
from .arccosh_function import ArccoshFunction
from .arctan_function import ArctanFunction
from .pole_locus import PoleLocus
from .cut_mapper import (
    cuts_radical_arg, cuts_rational_arg, expression_cuts, node_cuts, real_discontinuity_locus,
)

__all__ = [
    'EXACT',
    'NUMERIC_EVIDENCE',
    'Clause',
    'ElementaryFunction',
    'FunctionFactory',
    'Relation',
    'SemiAlgebraicSet',
    'SignCondition',
    'parse_condition',
    'parse_region',
    'LogFunction',
    'SqrtFunction',
    'ArccoshFunction',
    'ArctanFunction',
    'PoleLocus',
    'cuts_radical_arg',
    'cuts_rational_arg',
    'expression_cuts',
    'node_cuts',
    'real_discontinuity_locus'
]
