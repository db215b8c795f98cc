"""
表达式语法树
节点不可变，可在线程间共享
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Tuple


class NodeKind(Enum):
    """节点类型枚举"""
    CONST = "Const"
    VAR = "Var"
    NEG = "Neg"
    ADD = "Add"
    SUB = "Sub"
    MUL = "Mul"
    DIV = "Div"
    POW = "Pow"
    SQRT = "Sqrt"
    LOG = "Log"
    EXP = "Exp"
    ARCCOSH = "Arccosh"
    ARCTAN = "Arctan"


FUNCTION_KINDS = (NodeKind.SQRT, NodeKind.LOG, NodeKind.EXP, NodeKind.ARCCOSH, NodeKind.ARCTAN)
NON_ANALYTIC_KINDS = (NodeKind.SQRT, NodeKind.LOG, NodeKind.ARCCOSH, NodeKind.ARCTAN)
BINARY_KINDS = (NodeKind.ADD, NodeKind.SUB, NodeKind.MUL, NodeKind.DIV)

FUNCTION_NAMES = {
    NodeKind.SQRT: 'sqrt',
    NodeKind.LOG: 'log',
    NodeKind.EXP: 'exp',
    NodeKind.ARCCOSH: 'arccosh',
    NodeKind.ARCTAN: 'arctan',
}


@dataclass(frozen=True)
class Expr:
    """
    表达式节点
    常量为精确高斯有理数 re + im·i，幂指数为整数
    """
    kind: NodeKind
    args: Tuple['Expr', ...] = ()
    re: Fraction = field(default=Fraction(0))
    im: Fraction = field(default=Fraction(0))
    name: str = ''
    exponent: int = 0

    def __add__(self, other: 'Expr') -> 'Expr':
        return add(self, other)

    def __sub__(self, other: 'Expr') -> 'Expr':
        return sub(self, other)

    def __mul__(self, other: 'Expr') -> 'Expr':
        return mul(self, other)

    def __truediv__(self, other: 'Expr') -> 'Expr':
        return div(self, other)

    def __neg__(self) -> 'Expr':
        return neg(self)

    @property
    def is_const(self) -> bool:
        return self.kind is NodeKind.CONST

    def __repr__(self):
        if self.kind is NodeKind.CONST:
            return f"Const({self.re}{'' if not self.im else f'+{self.im}i'})"
        if self.kind is NodeKind.VAR:
            return f"Var({self.name})"
        if self.kind is NodeKind.POW:
            return f"Pow({self.args[0]!r}, {self.exponent})"
        inner = ', '.join(repr(a) for a in self.args)
        return f"{self.kind.value}({inner})"


def const(re, im=0) -> Expr:
    return Expr(NodeKind.CONST, re=Fraction(re), im=Fraction(im))


ONE = const(1)
I_UNIT = const(0, 1)


def var(name: str) -> Expr:
    return Expr(NodeKind.VAR, name=name)


def neg(a: Expr) -> Expr:
    return Expr(NodeKind.NEG, (a,))


def add(a: Expr, b: Expr) -> Expr:
    return Expr(NodeKind.ADD, (a, b))


def sub(a: Expr, b: Expr) -> Expr:
    return Expr(NodeKind.SUB, (a, b))


def mul(a: Expr, b: Expr) -> Expr:
    return Expr(NodeKind.MUL, (a, b))


def div(a: Expr, b: Expr) -> Expr:
    return Expr(NodeKind.DIV, (a, b))


def power(base: Expr, exponent: int) -> Expr:
    """负指数在构造时规范为除法"""
    exponent = int(exponent)
    if exponent < 0:
        return div(ONE, Expr(NodeKind.POW, (base,), exponent=-exponent))
    return Expr(NodeKind.POW, (base,), exponent=exponent)


def func(kind: NodeKind, arg: Expr) -> Expr:
    if kind not in FUNCTION_KINDS:
        raise ValueError(f"不是函数节点: {kind}")
    return Expr(kind, (arg,))


def sqrt(a: Expr) -> Expr:
    return func(NodeKind.SQRT, a)


def log(a: Expr) -> Expr:
    return func(NodeKind.LOG, a)


def exp(a: Expr) -> Expr:
    return func(NodeKind.EXP, a)


def arccosh(a: Expr) -> Expr:
    return func(NodeKind.ARCCOSH, a)


def arctan(a: Expr) -> Expr:
    return func(NodeKind.ARCTAN, a)


def walk(e: Expr) -> Iterator[Tuple[Tuple[int, ...], Expr]]:
    """先序遍历，返回 (路径, 节点)"""
    stack = [((), e)]
    while stack:
        path, node = stack.pop()
        yield path, node
        for i in range(len(node.args) - 1, -1, -1):
            stack.append((path + (i,), node.args[i]))


def variables(e: Expr) -> List[str]:
    names = {node.name for _, node in walk(e) if node.kind is NodeKind.VAR}
    return sorted(names)


def is_rational(e: Expr) -> bool:
    """不含任何函数节点"""
    return all(node.kind not in FUNCTION_KINDS for _, node in walk(e))


class NonAnalyticNode(NamedTuple):
    kind: NodeKind
    argument: Expr
    path: Tuple[int, ...]


def non_analytic_nodes(e: Expr) -> List[NonAnalyticNode]:
    """
    列出所有非解析节点（sqrt/log/arccosh/arctan）
    按先序给出，重复出现的节点各计一次
    """
    return [NonAnalyticNode(node.kind, node.args[0], path)
            for path, node in walk(e) if node.kind in NON_ANALYTIC_KINDS]


def substitute(e: Expr, name: str, replacement: Expr) -> Expr:
    """把变量 name 替换为 replacement，用于复合 f₂∘f 等"""
    if e.kind is NodeKind.VAR:
        return replacement if e.name == name else e
    if not e.args:
        return e
    new_args = tuple(substitute(a, name, replacement) for a in e.args)
    return Expr(e.kind, new_args, e.re, e.im, e.name, e.exponent)
