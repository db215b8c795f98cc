"""
表达式分析器
单个表达式的分阶段处理：割线、求值、CAD，结果以字典返回
"""

import logging
import time
from datetime import datetime
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from sympy import Poly

from branchcut import SemiAlgebraicSet, expression_cuts, parse_region, real_discontinuity_locus
from cad import decompose
from core.errors import (
    CadBudgetExceeded, EvaluationDomainError, ExprSyntaxError, PrecisionExhausted, VerifierError,
)
from core.presets import resolve_expression
from expr import COMPLEX, REAL, non_analytic_nodes, parse, reim_split, to_text, variables
from expr.reim import expr_to_poly
from numeval import Evaluator

logger = logging.getLogger(__name__)

# 结果字典中的错误类型，命令行据此决定退出码
ERROR_SYNTAX = 'syntax'
ERROR_BUDGET = 'budget'
ERROR_DOMAIN = 'domain'
ERROR_PRECISION = 'precision'
ERROR_INTERNAL = 'internal'


def _error_type(exc: Exception) -> str:
    if isinstance(exc, (ExprSyntaxError, KeyError, ValueError)):
        return ERROR_SYNTAX
    if isinstance(exc, CadBudgetExceeded):
        return ERROR_BUDGET
    if isinstance(exc, EvaluationDomainError):
        return ERROR_DOMAIN
    if isinstance(exc, PrecisionExhausted):
        return ERROR_PRECISION
    return ERROR_INTERNAL


def parse_point(text: str, mode: str = COMPLEX) -> Tuple[Fraction, Fraction]:
    """
    解析求值点
    复模式为有理复数 "a+b*I"，实模式为 "a,b"（x, y）
    """
    if mode == COMPLEX:
        e = parse(text, COMPLEX)
        if variables(e):
            raise ExprSyntaxError("求值点不能含变量", 0, text)
        return reim_split(e).evaluate(0, 0)
    parts = [p for p in text.split(',')]
    if len(parts) > 2:
        raise ExprSyntaxError("实模式求值点格式为 x,y", 0, text)
    values = []
    for part in parts:
        pair = reim_split(parse(part, REAL))
        values.append(pair.evaluate(0, 0)[0])
    while len(values) < 2:
        values.append(Fraction(0))
    return values[0], values[1]


def parse_polynomials(text: str) -> List[Poly]:
    """分号分隔的多项式列表，空串为空列表"""
    polys = []
    for part in text.split(';'):
        if part.strip():
            polys.append(expr_to_poly(parse(part, REAL)))
    return polys


class ExpressionAnalyzer:
    """表达式分析器类"""

    def __init__(self, mode: str = COMPLEX, variable: Optional[str] = None):
        self.mode = mode
        self.variable = variable
        self.timings: Dict[str, float] = {}

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.timings:
            logger.debug("阶段用时: %s", self.timings)

    def _new_result(self, **fields) -> Dict:
        result = {
            'success': False,
            'error': None,
            'error_type': None,
            'timestamp': datetime.now().strftime('%Y-%m-%d %H:%M:%S'),
        }
        result.update(fields)
        return result

    def _fail(self, result: Dict, exc: Exception) -> Dict:
        result['error'] = str(exc)
        result['error_type'] = _error_type(exc)
        if isinstance(exc, ExprSyntaxError):
            result['caret'] = exc.caret()
        if isinstance(exc, CadBudgetExceeded):
            result['bottleneck'] = exc.bottleneck
        logger.debug("阶段失败: %s", exc)
        return result

    def analyze_cuts(self, text: str) -> Dict:
        """
        计算表达式的潜在割线
        Returns:
            {'success', 'error', 'expression', 'cut_sets', 'non_analytic', 'elapsed'}
        """
        result = self._new_result(expression=text, cut_sets=[], non_analytic=[])
        start = time.time()
        try:
            e = resolve_expression(text, self.mode, self.variable)
            result['expression'] = to_text(e)
            result['non_analytic'] = [f"{n.kind.value}({to_text(n.argument)})" for n in non_analytic_nodes(e)]
            if self.mode == REAL:
                locus = real_discontinuity_locus(e)
                result['cut_sets'] = [] if locus.is_empty() else [locus]
            else:
                result['cut_sets'] = expression_cuts(e)
            result['success'] = True
        except (VerifierError, KeyError, ValueError) as exc:
            self._fail(result, exc)
        result['elapsed'] = self.timings['cuts'] = time.time() - start
        return result

    def evaluate(self, text: str, at: str = '0', precision: Optional[int] = None) -> Dict:
        """在一个有理点处求值，返回包围盒"""
        result = self._new_result(expression=text, point=at, box=None)
        start = time.time()
        try:
            e = resolve_expression(text, self.mode, self.variable)
            x, y = parse_point(at, self.mode)
            names = variables(e)
            if self.mode == COMPLEX:
                point = {(names[0] if names else 'z'): (x, y)}
            else:
                point = {'x': (x, Fraction(0)), 'y': (y, Fraction(0))}
            box = Evaluator(self.mode).evaluate(e, point, precision, strict=True)
            result.update({'success': True, 'box': box, 'expression': to_text(e),
                           'precision': box.prec, 'value': box.midpoint()})
        except (VerifierError, KeyError, ValueError) as exc:
            self._fail(result, exc)
        result['elapsed'] = self.timings['eval'] = time.time() - start
        return result

    def decompose(self, polys_text: str, region: Optional[str] = None,
                  cell_budget: Optional[int] = None, degree_budget: Optional[int] = None,
                  progress_callback=None) -> Dict:
        """多项式集合的平面 CAD，可附带区域"""
        result = self._new_result(polynomials=polys_text, decomposition=None, region=None)
        start = time.time()
        try:
            polys = parse_polynomials(polys_text)
            region_set: Optional[SemiAlgebraicSet] = parse_region(region) if region else None
            result['region'] = region_set
            d = decompose(polys, region=region_set, cell_budget=cell_budget,
                          degree_budget=degree_budget, progress_callback=progress_callback)
            result.update({'success': True, 'decomposition': d})
        except (VerifierError, KeyError, ValueError) as exc:
            self._fail(result, exc)
        result['elapsed'] = self.timings['cad'] = time.time() - start
        return result
