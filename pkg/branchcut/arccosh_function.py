"""
反双曲余弦 arccosh(w) = log(w + sqrt(w+1)·sqrt(w-1))
割线为实轴上 u < 1 的部分
"""

from fractions import Fraction

from expr.nodes import NodeKind
from .base_function import ElementaryFunction, FunctionFactory, Relation, cond, ray_on_cut


@FunctionFactory.register_function
class ArccoshFunction(ElementaryFunction):

    kind = NodeKind.ARCCOSH
    threshold = Fraction(1)

    def get_function_name(self) -> str:
        return "arccosh"

    def defining_cut(self):
        return [[cond('im', Relation.EQ), cond('re', Relation.LT, self.threshold)]]

    def squared_cut(self):
        """
        w 为实数且 w < 1：
        0 ≤ W < 1 时 w ∈ (-1, 1)，两种符号都在割线上；
        W ≥ 1 时只有 w ≤ -1 在割线上
        """
        zero, one = Fraction(0), self.threshold
        return [
            [('im', Relation.EQ, zero), ('re', Relation.GE, zero), ('re', Relation.LT, one)],
            [('im', Relation.EQ, zero), ('re', Relation.GE, one), ('sign', Relation.LT, zero)],
        ]

    def equation_components(self):
        return ('im',)

    def on_cut(self, re_bounds, im_bounds):
        return ray_on_cut(re_bounds, im_bounds, self.threshold)
