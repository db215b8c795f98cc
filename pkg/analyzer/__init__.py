"""
表达式分析器模块
"""

from .expression_analyzer import ExpressionAnalyzer, parse_point, parse_polynomials

__all__ = [
    'ExpressionAnalyzer',
    'parse_point',
    'parse_polynomials'
]
