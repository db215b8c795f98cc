"""
割线描述的基础类型与函数注册表
SignCondition / Clause / SemiAlgebraicSet 描述 (x, y) 平面上的半代数集
"""

import logging
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from sympy import Poly

from core.errors import ExprSyntaxError
from expr.nodes import NodeKind
from realalg.polynomials import (
    bivar, eval_exact, is_constant, normalize_with_constant, poly_to_text,
)

logger = logging.getLogger(__name__)


class Relation(Enum):
    """符号关系 p REL 0"""
    EQ = "="
    NE = "≠"
    LT = "<"
    GT = ">"
    LE = "≤"
    GE = "≥"

    def holds(self, sign: int) -> bool:
        return {
            Relation.EQ: sign == 0,
            Relation.NE: sign != 0,
            Relation.LT: sign < 0,
            Relation.GT: sign > 0,
            Relation.LE: sign <= 0,
            Relation.GE: sign >= 0,
        }[self]

    def flipped(self) -> 'Relation':
        """两边乘以负数后的关系"""
        return {
            Relation.LT: Relation.GT,
            Relation.GT: Relation.LT,
            Relation.LE: Relation.GE,
            Relation.GE: Relation.LE,
        }.get(self, self)

    @property
    def ascii(self) -> str:
        return {Relation.NE: '!=', Relation.LE: '<=', Relation.GE: '>='}.get(self, self.value)


@dataclass(frozen=True)
class SignCondition:
    """poly REL 0，poly 为本原多项式且首项系数为正"""
    poly: Poly
    relation: Relation

    @classmethod
    def of(cls, poly: Poly, relation: Relation) -> 'SignCondition':
        c, q = normalize_with_constant(bivar(poly))
        if c < 0:
            relation = relation.flipped()
        if c == 0:
            q = bivar(0)
        return cls(q, relation)

    def constant_truth(self) -> Optional[bool]:
        """多项式为常数时直接给出真假，否则 None"""
        if not is_constant(self.poly):
            return None
        v = eval_exact(self.poly, 0, 0)
        return self.relation.holds((v > 0) - (v < 0))

    def holds(self, sign_of: Callable[[Poly], int]) -> bool:
        return self.relation.holds(sign_of(self.poly))

    def key(self) -> Tuple:
        return (poly_to_text(self.poly), self.relation.value)

    def __str__(self):
        return f"{poly_to_text(self.poly)} {self.relation.value} 0"

    def to_json(self) -> Dict:
        return {'poly': poly_to_text(self.poly), 'relation': self.relation.ascii}


@dataclass(frozen=True)
class Clause:
    """条件的合取；provenance 记录生成它的函数出现位置"""
    conditions: Tuple[SignCondition, ...]
    provenance: str = ''

    @classmethod
    def build(cls, conditions: Sequence[SignCondition], provenance: str = '') -> Optional['Clause']:
        """
        去掉恒真条件、按确定顺序去重
        含恒假条件或为空时返回 None
        """
        kept: Dict[Tuple, SignCondition] = {}
        for cond in conditions:
            truth = cond.constant_truth()
            if truth is True:
                continue
            if truth is False:
                return None
            kept.setdefault(cond.key(), cond)
        if not kept:
            return None
        ordered = tuple(kept[k] for k in sorted(kept, key=_condition_order))
        return cls(ordered, provenance)

    def key(self) -> Tuple:
        return tuple(c.key() for c in self.conditions)

    def holds(self, sign_of: Callable[[Poly], int]) -> bool:
        return all(c.holds(sign_of) for c in self.conditions)

    def polynomials(self) -> List[Poly]:
        return [c.poly for c in self.conditions]

    def equalities(self) -> List[Poly]:
        return [c.poly for c in self.conditions if c.relation is Relation.EQ]

    def __str__(self):
        return ' ∧ '.join(str(c) for c in self.conditions)

    def to_json(self) -> Dict:
        return {'conditions': [c.to_json() for c in self.conditions], 'provenance': self.provenance}


def _condition_order(key: Tuple) -> Tuple:
    text, relation = key
    # 等式在前
    return (relation != Relation.EQ.value, len(text), text, relation)


EXACT = 'exact'
NUMERIC_EVIDENCE = 'numeric-evidence'


@dataclass
class SemiAlgebraicSet:
    """
    子句的析取
    exactness 为 exact 或 numeric-evidence；后者表示割线只经数值证据确定（或未能确定）
    """
    clauses: List[Clause] = field(default_factory=list)
    provenance: str = ''
    exactness: str = EXACT
    note: str = ''

    def __post_init__(self):
        clauses, self.clauses = self.clauses, []
        for clause in clauses:
            self.add(clause)

    @property
    def exact(self) -> bool:
        return self.exactness == EXACT

    def add(self, clause: Optional[Clause]) -> None:
        if clause is None or not clause.conditions:
            return
        if any(existing.key() == clause.key() for existing in self.clauses):
            return
        self.clauses.append(clause)

    def extend(self, other: 'SemiAlgebraicSet') -> None:
        for clause in other.clauses:
            self.add(clause)
        if not other.exact:
            self.exactness = NUMERIC_EVIDENCE

    def is_empty(self) -> bool:
        return not self.clauses

    def polynomials(self) -> List[Poly]:
        seen: Dict[str, Poly] = {}
        for clause in self.clauses:
            for p in clause.polynomials():
                if not is_constant(p):
                    seen.setdefault(poly_to_text(p), p)
        return list(seen.values())

    def contains(self, sign_of: Callable[[Poly], int]) -> bool:
        return any(clause.holds(sign_of) for clause in self.clauses)

    def contains_point(self, point) -> bool:
        from realalg.sign import sign_at
        return self.contains(lambda p: sign_at(p, point))

    def __str__(self):
        if not self.clauses:
            return '∅'
        return ' ∨ '.join(f"({c})" if len(self.clauses) > 1 else str(c) for c in self.clauses)

    def to_json(self) -> Dict:
        return {
            'provenance': self.provenance,
            'exactness': self.exactness,
            'note': self.note,
            'clauses': [c.to_json() for c in self.clauses],
        }


class LinearCondition(NamedTuple):
    """
    w = u + iv 上的线性条件：coefficient·(u 或 v) + constant REL 0
    component 为 're' 或 'im'
    """
    component: str
    coefficient: Fraction
    constant: Fraction
    relation: Relation

    def __str__(self):
        name = 'u' if self.component == 're' else 'v'
        lhs = name if self.coefficient == 1 else f"{self.coefficient}*{name}"
        if self.constant:
            threshold = -self.constant / self.coefficient
            relation = self.relation if self.coefficient > 0 else self.relation.flipped()
            return f"{name} {relation.value} {threshold}"
        return f"{lhs} {self.relation.value} 0"


SquaredCondition = Tuple[str, Relation, Fraction]


def cond(component: str, relation: Relation, threshold=0) -> LinearCondition:
    """u 或 v 与阈值比较"""
    return LinearCondition(component, Fraction(1), -Fraction(threshold), relation)


class ElementaryFunction(ABC):
    """
    单值初等函数的基类
    子类给出 (u, v) 平面上的定义割线
    """

    kind: NodeKind = None

    def __init__(self):
        self.name = self.__class__.__name__

    @abstractmethod
    def get_function_name(self) -> str:
        """函数名（与表达式语法一致）"""
        pass

    @abstractmethod
    def defining_cut(self) -> List[List[LinearCondition]]:
        """
        定义割线：子句列表，每个子句是线性条件的合取
        """
        pass

    @abstractmethod
    def squared_cut(self) -> List[List[SquaredCondition]]:
        """
        用 W = w² 表示的割线（w 为实数或纯虚数时 W 为实数）
        分量 'sign' 表示 w 自身的符号
        """
        pass

    @abstractmethod
    def equation_components(self) -> Tuple[str, ...]:
        """消元时作为方程的分量：割线上恒为零的 Re 或 Im"""
        pass

    @abstractmethod
    def on_cut(self, re_bounds: Tuple[Fraction, Fraction],
               im_bounds: Tuple[Fraction, Fraction]) -> Optional[bool]:
        """参数包围盒是否落在割线上：True / False / None（无法判定）"""
        pass


class FunctionFactory:
    """函数注册表"""

    _functions = {}

    @classmethod
    def register_function(cls, function_class):
        cls._functions[function_class.kind] = function_class
        return function_class

    @classmethod
    def create_function(cls, kind: NodeKind) -> ElementaryFunction:
        if kind not in cls._functions:
            raise ValueError(f"未找到函数: {kind}")
        return cls._functions[kind]()

    @classmethod
    def get_available_functions(cls) -> list:
        return [k.value for k in cls._functions]


_RELATIONS = [('>=', Relation.GE), ('<=', Relation.LE), ('!=', Relation.NE), ('==', Relation.EQ),
              ('≥', Relation.GE), ('≤', Relation.LE), ('≠', Relation.NE),
              ('>', Relation.GT), ('<', Relation.LT), ('=', Relation.EQ)]


def parse_condition(text: str, provenance: str = '区域') -> SignCondition:
    from expr.parser import REAL, parse
    from expr.reim import expr_to_poly

    for token, relation in _RELATIONS:
        idx = text.find(token)
        if idx >= 0:
            lhs, rhs = text[:idx], text[idx + len(token):]
            if not lhs.strip() or not rhs.strip():
                raise ExprSyntaxError("条件两侧不能为空", idx, text)
            poly = expr_to_poly(parse(lhs, REAL) - parse(rhs, REAL))
            return SignCondition.of(poly, relation)
    raise ExprSyntaxError("条件缺少比较符号", 0, text)


def parse_region(text: str) -> SemiAlgebraicSet:
    """
    区域语法：条件用 & 连接，子句用 | 连接
    例如 "x^2+y^2>1"、"y>0 & x<1"
    """
    region = SemiAlgebraicSet(provenance=f"区域 {text.strip()}")
    for part in re.split(r'\|', text):
        conditions = [parse_condition(c) for c in re.split(r'&|\band\b', part) if c.strip()]
        if not conditions:
            raise ExprSyntaxError("区域子句为空", 0, text)
        clause = Clause.build(conditions, provenance=region.provenance)
        region.add(clause)
    return region


def ray_on_cut(re_bounds, im_bounds, threshold) -> Optional[bool]:
    """割线 {v = 0, u < threshold} 的三值判定"""
    (re_lo, re_hi), (im_lo, im_hi) = re_bounds, im_bounds
    if im_lo > 0 or im_hi < 0 or re_lo >= threshold:
        return False
    if im_lo <= 0 <= im_hi and re_hi < threshold:
        return True
    return None
