"""
表达式打印
输出可被解析器还原为同一语法树（允许多余括号）
解析器会把 -3、2*I、1+2*I 折叠成常量，打印时凡是折叠会改变结构的位置都加括号
"""

from fractions import Fraction

from .nodes import Expr, FUNCTION_NAMES, NodeKind

_PREC_SUM = 1
_PREC_PRODUCT = 2
_PREC_POWER = 3
_PREC_BASE = 4


def _format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _imag_text(im: Fraction) -> str:
    if im == 1:
        return 'I'
    return f"{_format_fraction(im)}*I"


def _const_text(e: Expr) -> str:
    if e.im == 0:
        return _format_fraction(e.re)
    if e.re == 0:
        return _imag_text(e.im)
    sign = '+' if e.im > 0 else '-'
    return f"{_format_fraction(e.re)}{sign}{_imag_text(abs(e.im))}"


def _is_atom(e: Expr) -> bool:
    if e.kind is NodeKind.VAR or e.kind in FUNCTION_NAMES:
        return True
    if e.kind is NodeKind.CONST:
        if e.im == 0:
            return e.re >= 0 and e.re.denominator == 1
        return e.re == 0 and e.im == 1
    return False


def _is_real_const(e: Expr) -> bool:
    return e.kind is NodeKind.CONST and e.im == 0


def _is_imag_const(e: Expr) -> bool:
    return e.kind is NodeKind.CONST and e.re == 0 and e.im != 0


def _precedence(e: Expr) -> int:
    if e.kind in (NodeKind.ADD, NodeKind.SUB):
        return _PREC_SUM
    if e.kind in (NodeKind.MUL, NodeKind.DIV):
        return _PREC_PRODUCT
    if e.kind is NodeKind.POW:
        return _PREC_POWER
    if e.kind is NodeKind.CONST and not _is_atom(e):
        # 正分数与正虚部纯虚数按乘积层处理，负数与复数按加法层
        if e.im == 0:
            return _PREC_PRODUCT if e.re > 0 else _PREC_SUM
        if e.re == 0 and e.im > 0:
            return _PREC_PRODUCT
        return _PREC_SUM
    return _PREC_BASE


def _wrap(e: Expr, minimum: int) -> str:
    text = to_text(e)
    if _precedence(e) < minimum:
        return f"({text})"
    return text


def to_text(e: Expr) -> str:
    kind = e.kind
    if kind is NodeKind.CONST:
        return _const_text(e)
    if kind is NodeKind.VAR:
        return e.name
    if kind in FUNCTION_NAMES:
        return f"{FUNCTION_NAMES[kind]}({to_text(e.args[0])})"
    if kind is NodeKind.NEG:
        arg = e.args[0]
        inner = to_text(arg)
        # "-3" 会被读成常量 -3
        if arg.kind is not NodeKind.CONST and (_is_atom(arg) or arg.kind is NodeKind.NEG):
            return f"-{inner}"
        return f"-({inner})"
    if kind is NodeKind.POW:
        base = e.args[0]
        inner = to_text(base)
        if not _is_atom(base):
            inner = f"({inner})"
        return f"{inner}^{e.exponent}"
    left, right = e.args
    if kind in (NodeKind.ADD, NodeKind.SUB):
        op = '+' if kind is NodeKind.ADD else '-'
        right_text = _wrap(right, _PREC_PRODUCT)
        if _is_real_const(left) and _is_imag_const(right) and not right_text.startswith('('):
            right_text = f"({right_text})"
        return f"{_wrap(left, _PREC_SUM)}{op}{right_text}"
    if kind is NodeKind.MUL:
        right_text = _wrap(right, _PREC_POWER)
        if _is_real_const(left) and right.kind is NodeKind.CONST and right.re == 0 and right.im == 1:
            right_text = f"({right_text})"
        return f"{_wrap(left, _PREC_PRODUCT)}*{right_text}"
    # 除法：右操作数以数字开头时加括号，避免被读成 p/q 字面量
    right_text = _wrap(right, _PREC_POWER)
    if right_text[:1].isdigit():
        right_text = f"({right_text})"
    return f"{_wrap(left, _PREC_PRODUCT)}/{right_text}"
