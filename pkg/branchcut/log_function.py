"""
对数 log(w)
主值分支，割线为负实轴，逆时针连续：log(-r) = log(r) + iπ
"""

from fractions import Fraction

from expr.nodes import NodeKind
from .base_function import ElementaryFunction, FunctionFactory, Relation, cond, ray_on_cut


@FunctionFactory.register_function
class LogFunction(ElementaryFunction):

    kind = NodeKind.LOG
    threshold = Fraction(0)

    def get_function_name(self) -> str:
        return "log"

    def defining_cut(self):
        return [[cond('im', Relation.EQ), cond('re', Relation.LT, self.threshold)]]

    def squared_cut(self):
        # w 为负实数 ⇔ W > 0 且 w < 0
        return [[('im', Relation.EQ, Fraction(0)), ('re', Relation.GT, Fraction(0)),
                 ('sign', Relation.LT, Fraction(0))]]

    def equation_components(self):
        return ('im',)

    def on_cut(self, re_bounds, im_bounds):
        return ray_on_cut(re_bounds, im_bounds, self.threshold)
