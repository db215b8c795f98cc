"""
异常层次
库代码抛出这些异常，引擎层把它们转换成结果字典，命令行映射为退出码
"""

from typing import Optional, Tuple


class VerifierError(Exception):
    """所有验证器异常的基类"""


class ExprSyntaxError(VerifierError):
    """表达式语法错误，携带出错位置"""

    def __init__(self, message: str, position: int = 0, text: str = ''):
        super().__init__(message)
        self.message = message
        self.position = position
        self.text = text

    def caret(self) -> str:
        """返回原文与指向出错位置的脱字符"""
        return f"{self.text}\n{' ' * self.position}^"

    def __str__(self):
        return f"{self.message} (位置 {self.position})"


class UnknownIdentifierError(ExprSyntaxError):
    pass


class ModeViolationError(ExprSyntaxError):
    pass


class NonRationalNodeError(VerifierError):
    """reim_split 遇到非有理节点"""


class ZeroDenominatorError(VerifierError):
    """除数恒为零"""


class AlgebraError(VerifierError):
    """多项式运算前提不满足"""


class UnsupportedNodeError(VerifierError):
    pass


class EliminationBudgetError(VerifierError):
    """根式消元超出次数或个数上限"""


class CadBudgetExceeded(VerifierError):
    def __init__(self, bottleneck: str):
        super().__init__(bottleneck)
        self.bottleneck = bottleneck


class EvaluationDomainError(VerifierError):
    """极点、log(0) 或实模式下的定义域外求值"""

    def __init__(self, message: str, location: Optional[Tuple] = None):
        super().__init__(message)
        self.location = location


class StraddlesCutError(EvaluationDomainError):
    """
    参数的包围盒跨越割线（或奇点），需要提高精度
    singular 为真表示包围盒含极点或 log(0)，精度耗尽时按定义域错误处理
    """

    def __init__(self, message: str, location: Optional[Tuple] = None, singular: bool = False):
        super().__init__(message, location)
        self.singular = singular


class PrecisionExhausted(VerifierError):
    pass
