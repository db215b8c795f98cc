"""
可验证的任意精度求值
主值分支；割线上取逆时针连续（CCC）的值：log(-1) = iπ，sqrt(-4) = 2i，
arccosh 在 (-∞, 1) 上取上方极限，arctan 在割线上取 Re > 0 一侧的极限
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from mpmath.libmp import mpf_sign
from mpmath.libmp import libmpi

from core.errors import EvaluationDomainError, PrecisionExhausted, StraddlesCutError
from core.settings import VerifierSettings
from expr.nodes import Expr, NodeKind
from expr.parser import COMPLEX, REAL
from expr.printer import to_text
from realalg import intervals
from realalg.algebraic import exact_value
from realalg.intervals import ONE, ZERO, Interval
from .box import ComplexBox

logger = logging.getLogger(__name__)

GUARD_BITS = 20

# π 的有理下界，用于 δ = π 的比较
PI_LOWER = Fraction(3141592653589793, 10 ** 15)

Point = Dict[str, Tuple[object, object]]


class SignStatus(Enum):
    """逐单元判定结果"""
    EQUAL_EVIDENCE = "相等证据"
    NONZERO = "非零"
    INCONCLUSIVE = "无法判定"


@dataclass
class SignDecision:
    status: SignStatus
    box: Optional[ComplexBox]
    precision: int
    reason: str = ''

    @property
    def is_nonzero(self) -> bool:
        return self.status is SignStatus.NONZERO

    @property
    def is_equal(self) -> bool:
        return self.status is SignStatus.EQUAL_EVIDENCE


def complex_point(x, y, variable: str = 'z') -> Point:
    return {variable: (x, y)}


def real_point(**coords) -> Point:
    return {name: (value, Fraction(0)) for name, value in coords.items()}


def _coordinate(value, prec: int) -> Interval:
    exact = exact_value(value)
    if exact is not None:
        return intervals.point(exact, prec)
    return value.enclosure(prec)


def _im_side(im: Interval) -> int:
    """虚部所在一侧：1 上半闭平面，-1 严格下半平面，0 跨越实轴"""
    lo, hi = im
    if mpf_sign(lo) >= 0:
        return 1
    if mpf_sign(hi) < 0:
        return -1
    return 0


class Evaluator:
    """
    表达式在精确点处的包围盒求值器
    mode 为 complex 时变量取 x + iy，为 real 时 sqrt/log 的负实参数属于定义域外
    """

    def __init__(self, mode: str = COMPLEX):
        self.mode = mode
        self._location = None

    # ---- 基本运算 ----

    def _mul(self, a, b, wp):
        if intervals.is_exact_zero(a[1]) and intervals.is_exact_zero(b[1]):
            return libmpi.mpi_mul(a[0], b[0], wp), ZERO
        return libmpi.mpci_mul(a, b, wp)

    def _div(self, a, b, wp, node: Expr):
        re, im = b
        if intervals.is_exact_zero(re) and intervals.is_exact_zero(im):
            raise EvaluationDomainError(f"极点: 除数 {to_text(node.args[1])} 为零", self._location)
        if intervals.contains_zero(re) and intervals.contains_zero(im):
            raise StraddlesCutError(f"除数 {to_text(node.args[1])} 的包围盒含 0",
                                    self._location, singular=True)
        if intervals.is_exact_zero(a[1]) and intervals.is_exact_zero(im):
            return libmpi.mpi_div(a[0], re, wp), ZERO
        return libmpi.mpci_div(a, b, wp)

    def _pow(self, a, n: int, wp):
        if intervals.is_exact_zero(a[1]):
            return libmpi.mpi_pow_int(a[0], n, wp), ZERO
        result = (ONE, ZERO)
        base = a
        while n > 0:
            if n & 1:
                result = libmpi.mpci_mul(result, base, wp)
            n >>= 1
            if n:
                base = libmpi.mpci_mul(base, base, wp)
        return result

    # ---- 初等函数 ----

    def sqrt(self, w, wp):
        re, im = w
        if intervals.is_exact_zero(im):
            lo, hi = re
            if mpf_sign(lo) >= 0:
                return libmpi.mpi_sqrt(re, wp), ZERO
            if self.mode == REAL:
                if mpf_sign(hi) < 0:
                    raise EvaluationDomainError("实模式下 sqrt 的参数为负", self._location)
                raise StraddlesCutError("sqrt 的参数跨越 0", self._location)
            if mpf_sign(hi) <= 0:
                return ZERO, libmpi.mpi_sqrt(libmpi.mpi_neg(re), wp)
            return (libmpi.mpi_sqrt(intervals.clamp_nonnegative(re), wp),
                    libmpi.mpi_sqrt(intervals.clamp_nonnegative(libmpi.mpi_neg(re)), wp))

        r = libmpi.mpci_abs(w, wp)
        if intervals.contains_zero(re) and intervals.contains_zero(im):
            bound = libmpi.mpi_sqrt((r[1], r[1]), wp)[1]
            return (intervals.ZERO[0], bound), (libmpi.mpi_neg((bound, bound))[0], bound)

        side = _im_side(im)
        if side == 0 and mpf_sign(re[0]) <= 0:
            raise StraddlesCutError("sqrt 的参数跨越割线", self._location)
        half_plus = intervals.clamp_nonnegative(libmpi.mpi_shift(libmpi.mpi_add(r, re, wp), -1))
        half_minus = intervals.clamp_nonnegative(libmpi.mpi_shift(libmpi.mpi_sub(r, re, wp), -1))
        real_part = libmpi.mpi_sqrt(half_plus, wp)
        imag_part = libmpi.mpi_sqrt(half_minus, wp)
        if side > 0:
            return real_part, imag_part
        if side < 0:
            return real_part, libmpi.mpi_neg(imag_part)
        return real_part, (libmpi.mpi_neg(imag_part)[0], imag_part[1])

    def log(self, w, wp, from_below: bool = False):
        """
        主值对数
        from_below 为真时割线上取下方极限（虚部 -π），仅供 arctan 使用
        """
        re, im = w
        if intervals.is_exact_zero(re) and intervals.is_exact_zero(im):
            raise EvaluationDomainError("log(0)", self._location)
        if intervals.contains_zero(re) and intervals.contains_zero(im):
            raise StraddlesCutError("log 的参数包围盒含 0", self._location, singular=True)

        if intervals.is_exact_zero(im):
            if mpf_sign(re[0]) > 0:
                return libmpi.mpi_log(re, wp), ZERO
            if self.mode == REAL:
                raise EvaluationDomainError("实模式下 log 的参数为负", self._location)
            angle = libmpi.mpi_pi(wp)
            if from_below:
                angle = libmpi.mpi_neg(angle)
            return libmpi.mpi_log(libmpi.mpi_neg(re), wp), angle

        magnitude = libmpi.mpi_log(libmpi.mpci_abs(w, wp + GUARD_BITS), wp)
        if mpf_sign(re[0]) > 0:
            return magnitude, libmpi.mpi_atan2(im, re, wp)

        if from_below:
            # 下半闭平面连续：arg(w) = -arg(conj w)
            if mpf_sign(im[1]) <= 0 or mpf_sign(im[0]) > 0:
                return magnitude, libmpi.mpi_neg(libmpi.mpi_atan2(libmpi.mpi_neg(im), re, wp))
            raise StraddlesCutError("log 的参数跨越割线", self._location)

        if _im_side(im) == 0:
            raise StraddlesCutError("log 的参数跨越割线", self._location)
        return magnitude, libmpi.mpi_atan2(im, re, wp)

    def exp(self, w, wp):
        re, im = w
        if intervals.is_exact_zero(im):
            return libmpi.mpi_exp(re, wp), ZERO
        return libmpi.mpci_exp(w, wp)

    def cosh(self, w, wp):
        """cosh w = (e^w + e^-w) / 2"""
        a = self.exp(w, wp)
        b = self.exp(libmpi.mpci_neg(w), wp)
        s = libmpi.mpci_add(a, b, wp)
        return libmpi.mpi_shift(s[0], -1), libmpi.mpi_shift(s[1], -1)

    def arccosh(self, w, wp):
        """arccosh w = log(w + sqrt(w + 1)·sqrt(w - 1))"""
        one = (ONE, ZERO)
        root = self._mul(self.sqrt(libmpi.mpci_add(w, one, wp), wp),
                         self.sqrt(libmpi.mpci_sub(w, one, wp), wp), wp)
        return self.log(libmpi.mpci_add(w, root, wp), wp)

    def arctan(self, w, wp):
        """arctan w = (i/2)(log(1 - iw) - log(1 + iw))"""
        re, im = w
        if intervals.is_exact_zero(im):
            return libmpi.mpi_atan(re, wp), ZERO
        one_minus_iw = (libmpi.mpi_add(ONE, im, wp), libmpi.mpi_neg(re))
        one_plus_iw = (libmpi.mpi_sub(ONE, im, wp), re)
        d = libmpi.mpci_sub(self.log(one_minus_iw, wp, from_below=True),
                            self.log(one_plus_iw, wp), wp)
        return libmpi.mpi_shift(libmpi.mpi_neg(d[1]), -1), libmpi.mpi_shift(d[0], -1)

    def apply(self, name: str, box: ComplexBox) -> ComplexBox:
        """对包围盒直接施加初等函数（含 cosh），供一致性检查使用"""
        functions = {
            'sqrt': self.sqrt,
            'log': self.log,
            'exp': self.exp,
            'cosh': self.cosh,
            'arccosh': self.arccosh,
            'arctan': self.arctan,
        }
        re, im = functions[name](box.pair, box.prec + GUARD_BITS)
        return ComplexBox(re, im, box.prec)

    # ---- 求值 ----

    def evaluate_at(self, e: Expr, point: Point, prec: int) -> ComplexBox:
        """固定精度求值，割线跨越时抛出 StraddlesCutError"""
        wp = prec + GUARD_BITS
        self._location = tuple(point.items())
        coords = {name: (_coordinate(x, wp), _coordinate(y, wp)) for name, (x, y) in point.items()}
        memo: Dict[int, tuple] = {}

        def visit(node: Expr):
            key = id(node)
            if key in memo:
                return memo[key]
            kind = node.kind
            if kind is NodeKind.CONST:
                value = (intervals.point(node.re, wp), intervals.point(node.im, wp))
            elif kind is NodeKind.VAR:
                if node.name not in coords:
                    raise EvaluationDomainError(f"变量 {node.name} 没有取值", self._location)
                value = coords[node.name]
            elif kind is NodeKind.NEG:
                value = libmpi.mpci_neg(visit(node.args[0]))
            elif kind is NodeKind.ADD:
                value = libmpi.mpci_add(visit(node.args[0]), visit(node.args[1]), wp)
            elif kind is NodeKind.SUB:
                value = libmpi.mpci_sub(visit(node.args[0]), visit(node.args[1]), wp)
            elif kind is NodeKind.MUL:
                value = self._mul(visit(node.args[0]), visit(node.args[1]), wp)
            elif kind is NodeKind.DIV:
                value = self._div(visit(node.args[0]), visit(node.args[1]), wp, node)
            elif kind is NodeKind.POW:
                value = self._pow(visit(node.args[0]), node.exponent, wp)
            elif kind is NodeKind.SQRT:
                value = self.sqrt(visit(node.args[0]), wp)
            elif kind is NodeKind.LOG:
                value = self.log(visit(node.args[0]), wp)
            elif kind is NodeKind.EXP:
                value = self.exp(visit(node.args[0]), wp)
            elif kind is NodeKind.ARCCOSH:
                value = self.arccosh(visit(node.args[0]), wp)
            elif kind is NodeKind.ARCTAN:
                value = self.arctan(visit(node.args[0]), wp)
            else:
                raise EvaluationDomainError(f"无法求值的节点: {kind.value}", self._location)
            memo[key] = value
            return value

        re, im = visit(e)
        return ComplexBox(re, im, prec)

    def precisions(self, precision: Optional[int] = None):
        """起始精度逐级加倍直至预算上限"""
        prec = VerifierSettings.start_precision()
        limit = VerifierSettings.max_precision(precision)
        while prec <= limit:
            yield prec
            prec *= 2

    def evaluate(self, e: Expr, point: Point, precision: Optional[int] = None,
                 strict: bool = False) -> ComplexBox:
        """
        逐级提高精度直到不再跨越割线，并至少达到请求精度
        极点在精度耗尽时抛出 EvaluationDomainError；跨割线时返回标记为无法判定的整平面，
        strict 为真则抛出 PrecisionExhausted
        """
        precision = precision or VerifierSettings.default_precision()
        last_error = None
        for prec in self.precisions(precision):
            if prec < precision:
                continue
            try:
                return self.evaluate_at(e, point, prec)
            except StraddlesCutError as exc:
                last_error = exc
                logger.debug("精度 %d 跨越割线: %s", prec, exc)
        if last_error is not None and last_error.singular:
            raise EvaluationDomainError(str(last_error), last_error.location)
        if strict:
            raise PrecisionExhausted(f"精度预算耗尽: {last_error}")
        return ComplexBox.whole_plane(VerifierSettings.max_precision(precision))

    def decide_sign(self, e: Expr, point: Point, precision: Optional[int] = None,
                    gap: Union[str, Fraction, None] = None) -> SignDecision:
        """
        差值表达式在样本点处的判定
        包围盒不含 0 -> 非零；含 0 且半径 < δ/2 -> 相等证据；否则无法判定
        """
        gap = VerifierSettings.discreteness_gap() if gap is None else gap
        half_gap = PI_LOWER / 2 if gap == 'pi' else Fraction(gap) / 2
        last_box = None
        last_error = None
        last_prec = VerifierSettings.start_precision()
        for prec in self.precisions(precision):
            last_prec = prec
            try:
                box = self.evaluate_at(e, point, prec)
            except StraddlesCutError as exc:
                last_error = exc
                continue
            last_box = box
            if box.excludes_zero():
                return SignDecision(SignStatus.NONZERO, box, prec)
            radius = box.radius()
            if radius is not None and radius < half_gap:
                return SignDecision(SignStatus.EQUAL_EVIDENCE, box, prec)
        if last_box is None and last_error is not None:
            if last_error.singular:
                raise EvaluationDomainError(str(last_error), last_error.location)
            return SignDecision(SignStatus.INCONCLUSIVE, None, last_prec, f"精度耗尽: {last_error}")
        return SignDecision(SignStatus.INCONCLUSIVE, last_box, last_prec, "包围盒过宽")


def evaluate(e: Expr, point: Point, precision: Optional[int] = None, mode: str = COMPLEX,
             strict: bool = False) -> ComplexBox:
    return Evaluator(mode).evaluate(e, point, precision, strict)


def decide_sign(e: Expr, point: Point, precision: Optional[int] = None,
                gap: Union[str, Fraction, None] = None, mode: str = COMPLEX) -> SignDecision:
    return Evaluator(mode).decide_sign(e, point, precision, gap)
