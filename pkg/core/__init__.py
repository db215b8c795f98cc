"""
核心工具模块
配置、异常、命名预设与运行报告
"""

from .errors import (
    AlgebraError, CadBudgetExceeded, EliminationBudgetError, EvaluationDomainError,
    ExprSyntaxError, ModeViolationError, NonRationalNodeError, PrecisionExhausted,
    StraddlesCutError, UnknownIdentifierError, UnsupportedNodeError, VerifierError,
    ZeroDenominatorError,
)
from .settings import VerifierSettings, parse_gap

__all__ = [
    'AlgebraError',
    'CadBudgetExceeded',
    'EliminationBudgetError',
    'EvaluationDomainError',
    'ExprSyntaxError',
    'ModeViolationError',
    'NonRationalNodeError',
    'PrecisionExhausted',
    'StraddlesCutError',
    'UnknownIdentifierError',
    'UnsupportedNodeError',
    'VerifierError',
    'ZeroDenominatorError',
    'VerifierSettings',
    'parse_gap'
]
