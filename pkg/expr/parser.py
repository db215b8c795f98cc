"""
表达式解析器
递归下降实现，文法：
    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := base ("^" int)?
    base   := rational | "I" | ident | ident "(" expr ")" | "(" expr ")" | "-" base
字面量折叠：-3、2*I、1+2*I 直接解析为单个常量节点
"""

import logging
import re
from fractions import Fraction
from typing import List, NamedTuple, Optional

from core.errors import ExprSyntaxError, ModeViolationError, UnknownIdentifierError
from .nodes import (
    Expr, NodeKind, I_UNIT, add, const, div, func, mul, neg, power, sub, var,
)

logger = logging.getLogger(__name__)

COMPLEX = 'complex'
REAL = 'real'
MODES = (COMPLEX, REAL)

REAL_VARIABLES = ('x', 'y')
DEFAULT_COMPLEX_VARIABLE = 'z'

# 字面量标记，用于常量折叠
REAL_LITERAL = 'real'
IMAG_LITERAL = 'imag'

FUNCTION_ALIASES = {
    'sqrt': NodeKind.SQRT,
    'log': NodeKind.LOG,
    'ln': NodeKind.LOG,
    'exp': NodeKind.EXP,
    'arccosh': NodeKind.ARCCOSH,
    'acosh': NodeKind.ARCCOSH,
    'arctan': NodeKind.ARCTAN,
    'atan': NodeKind.ARCTAN,
}

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>\d+\.\d*|\.\d+|\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^(),])
""", re.VERBOSE)


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ExprSyntaxError(f"无法识别的字符 '{text[pos]}'", pos, text)
        kind = m.lastgroup
        if kind != 'ws':
            value = m.group(kind)
            if value == '**':
                value = '^'
            tokens.append(Token(kind, value, pos))
        pos = m.end()
    tokens.append(Token('end', '', len(text)))
    return tokens


def decimal_to_fraction(literal: str) -> Fraction:
    """十进制字面量按精确有理数解析"""
    return Fraction(literal)


class ExpressionParser:
    """
    单次解析器
    mode 决定允许的变量：复模式仅允许一个复变量（默认 z），实模式允许 x、y
    """

    def __init__(self, text: str, mode: str = COMPLEX, variable: Optional[str] = None):
        if mode not in MODES:
            raise ValueError(f"未知模式: {mode}")
        self.text = text
        self.mode = mode
        self.variable = (variable or DEFAULT_COMPLEX_VARIABLE).lower()
        self.tokens = tokenize(text)
        self.index = 0
        self.literal: Optional[str] = None

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def peek(self, offset: int = 1) -> Token:
        idx = min(self.index + offset, len(self.tokens) - 1)
        return self.tokens[idx]

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        if tok.kind != 'end':
            self.index += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.current
        if tok.text != text:
            found = tok.text or '输入结束'
            raise ExprSyntaxError(f"期望 '{text}'，实际为 '{found}'", tok.pos, self.text)
        return self.advance()

    def error(self, message: str, tok: Optional[Token] = None) -> ExprSyntaxError:
        tok = tok or self.current
        return ExprSyntaxError(message, tok.pos, self.text)

    def parse(self) -> Expr:
        if self.current.kind == 'end':
            raise self.error("空表达式")
        result = self.parse_expr()
        if self.current.kind != 'end':
            raise self.error(f"多余的输入 '{self.current.text}'")
        return result

    def parse_expr(self) -> Expr:
        left = self.parse_term()
        left_literal = self.literal
        while self.current.text in ('+', '-'):
            op = self.advance().text
            right = self.parse_term()
            if left_literal == REAL_LITERAL and self.literal == IMAG_LITERAL:
                im = right.im if op == '+' else -right.im
                left = const(left.re, im)
            else:
                left = add(left, right) if op == '+' else sub(left, right)
            left_literal = None
        self.literal = left_literal
        return left

    def parse_term(self) -> Expr:
        left = self.parse_factor()
        left_literal = self.literal
        while self.current.text in ('*', '/'):
            op = self.advance().text
            right = self.parse_factor()
            if op == '*' and left_literal == REAL_LITERAL and self.literal == IMAG_LITERAL:
                left = const(0, left.re)
                left_literal = IMAG_LITERAL
                continue
            left = mul(left, right) if op == '*' else div(left, right)
            left_literal = None
        self.literal = left_literal
        return left

    def parse_factor(self) -> Expr:
        base = self.parse_base()
        if self.current.text == '^':
            self.advance()
            sign = 1
            if self.current.text == '-':
                self.advance()
                sign = -1
            tok = self.current
            if tok.kind != 'number' or not tok.text.isdigit():
                raise self.error("指数必须是整数（分数次幂请使用 sqrt）")
            self.advance()
            self.literal = None
            return power(base, sign * int(tok.text))
        return base

    def parse_base(self) -> Expr:
        tok = self.current
        self.literal = None

        if tok.text == '-':
            self.advance()
            if self.current.kind == 'number':
                value = self.parse_rational()
                self.literal = REAL_LITERAL
                return const(-value.re)
            operand = self.parse_base()
            self.literal = None
            return neg(operand)

        if tok.text == '(':
            self.advance()
            inner = self.parse_expr()
            self.expect(')')
            self.literal = None
            return inner

        if tok.kind == 'number':
            value = self.parse_rational()
            self.literal = REAL_LITERAL
            return value

        if tok.kind == 'ident':
            node = self.parse_identifier()
            if node == I_UNIT:
                self.literal = IMAG_LITERAL
            return node

        found = tok.text or '输入结束'
        raise self.error(f"意外的符号 '{found}'")

    def parse_rational(self) -> Expr:
        tok = self.advance()
        value = decimal_to_fraction(tok.text)
        # p/q 字面量：整数/整数，且其后不是乘方
        if (tok.text.isdigit() and self.current.text == '/'
                and self.peek().kind == 'number' and self.peek().text.isdigit()
                and self.peek(2).text != '^'):
            self.advance()
            denom_tok = self.advance()
            denominator = int(denom_tok.text)
            if denominator == 0:
                raise ExprSyntaxError("有理数分母为零", denom_tok.pos, self.text)
            value = Fraction(int(tok.text), denominator)
        return const(value)

    def parse_identifier(self) -> Expr:
        tok = self.advance()
        name = tok.text.lower()

        if self.current.text == '(':
            kind = FUNCTION_ALIASES.get(name)
            if kind is None:
                raise UnknownIdentifierError(f"未知函数 '{tok.text}'", tok.pos, self.text)
            self.advance()
            arg = self.parse_expr()
            self.expect(')')
            return func(kind, arg)

        if name in FUNCTION_ALIASES:
            raise self.error(f"函数 '{tok.text}' 缺少参数括号")

        if name == 'i':
            if self.mode == REAL:
                raise ModeViolationError("实模式中不能使用虚数单位 I", tok.pos, self.text)
            return I_UNIT

        return self.check_variable(name, tok)

    def check_variable(self, name: str, tok: Token) -> Expr:
        if self.mode == COMPLEX:
            if name == self.variable:
                return var(name)
            if name in REAL_VARIABLES or name == DEFAULT_COMPLEX_VARIABLE:
                raise ModeViolationError(
                    f"复模式中变量 '{tok.text}' 不可用（复变量为 {self.variable}）",
                    tok.pos, self.text)
        else:
            if name in REAL_VARIABLES:
                return var(name)
            if name == DEFAULT_COMPLEX_VARIABLE or name == self.variable:
                raise ModeViolationError(f"实模式中变量 '{tok.text}' 不可用", tok.pos, self.text)
        raise UnknownIdentifierError(f"未知标识符 '{tok.text}'", tok.pos, self.text)


def parse(text: str, mode: str = COMPLEX, variable: Optional[str] = None) -> Expr:
    """
    解析表达式文本
    Args:
        text: 表达式
        mode: 'complex' 或 'real'
        variable: 复模式下声明的变量名（如 zeta），缺省为 z
    Returns:
        语法树
    """
    result = ExpressionParser(text, mode, variable).parse()
    logger.debug("解析完成: %s -> %r", text, result)
    return result
