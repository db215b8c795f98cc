"""
平方根 sqrt(w)，主值实部非负，割线同 log
"""

from expr.nodes import NodeKind
from .base_function import FunctionFactory
from .log_function import LogFunction


@FunctionFactory.register_function
class SqrtFunction(LogFunction):

    kind = NodeKind.SQRT

    def get_function_name(self) -> str:
        return "sqrt"
