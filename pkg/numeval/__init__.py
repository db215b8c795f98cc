"""
数值求值模块
复数包围盒与主值分支约定下的可验证求值
"""

from .box import ComplexBox
from .evaluator import (
    Evaluator, SignDecision, SignStatus, complex_point, decide_sign, evaluate, real_point,
)

__all__ = [
    'ComplexBox',
    'Evaluator',
    'SignDecision',
    'SignStatus',
    'complex_point',
    'decide_sign',
    'evaluate',
    'real_point'
]
