"""
除法的极点：分母 w = 0 的点集
按割线同样的方式映射到 (x, y) 平面
"""

from fractions import Fraction

from expr.nodes import NodeKind
from .base_function import ElementaryFunction, FunctionFactory, Relation, cond


@FunctionFactory.register_function
class PoleLocus(ElementaryFunction):

    kind = NodeKind.DIV

    def get_function_name(self) -> str:
        return "pole"

    def defining_cut(self):
        return [[cond('re', Relation.EQ), cond('im', Relation.EQ)]]

    def squared_cut(self):
        return [[('re', Relation.EQ, Fraction(0)), ('im', Relation.EQ, Fraction(0))]]

    def equation_components(self):
        return ('re', 'im')

    def on_cut(self, re_bounds, im_bounds):
        (re_lo, re_hi), (im_lo, im_hi) = re_bounds, im_bounds
        if re_lo > 0 or re_hi < 0 or im_lo > 0 or im_hi < 0:
            return False
        return None
