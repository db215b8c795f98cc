"""
反正切 arctan(w) = (i/2)(log(1 - iw) - log(1 + iw))
割线为虚轴上 |v| ≥ 1 的两段
"""

from fractions import Fraction

from expr.nodes import NodeKind
from .base_function import ElementaryFunction, FunctionFactory, Relation, cond


@FunctionFactory.register_function
class ArctanFunction(ElementaryFunction):

    kind = NodeKind.ARCTAN

    def get_function_name(self) -> str:
        return "arctan"

    def defining_cut(self):
        return [
            [cond('re', Relation.EQ), cond('im', Relation.GE, 1)],
            [cond('re', Relation.EQ), cond('im', Relation.LE, -1)],
        ]

    def squared_cut(self):
        # w 为纯虚数 ⇔ W ≤ 0；|v| ≥ 1 ⇔ W ≤ -1
        return [[('im', Relation.EQ, Fraction(0)), ('re', Relation.LE, Fraction(-1))]]

    def equation_components(self):
        return ('re',)

    def on_cut(self, re_bounds, im_bounds):
        (re_lo, re_hi), (im_lo, im_hi) = re_bounds, im_bounds
        if re_lo > 0 or re_hi < 0 or (im_lo > -1 and im_hi < 1):
            return False
        if re_lo <= 0 <= re_hi and (im_lo >= 1 or im_hi <= -1):
            return True
        return None
