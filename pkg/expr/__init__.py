"""
表达式模块
语法树、解析、打印与实部虚部拆分
"""

from .nodes import (
    Expr, NodeKind, NonAnalyticNode, non_analytic_nodes, substitute, variables, walk,
)
from .parser import COMPLEX, REAL, parse
from .printer import to_text
from .reim import ComplexRational, RatFunPair, complex_rational, expr_to_poly, reim_split

__all__ = [
    'Expr',
    'NodeKind',
    'NonAnalyticNode',
    'non_analytic_nodes',
    'substitute',
    'variables',
    'walk',
    'COMPLEX',
    'REAL',
    'parse',
    'to_text',
    'ComplexRational',
    'RatFunPair',
    'complex_rational',
    'expr_to_poly',
    'reim_split'
]
