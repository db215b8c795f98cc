"""
实代数数域 Q(α) 上的一元多项式运算
用于代数数 x 坐标上方的纤维：域元素为 x 的多项式模 m(x)，符号通过 α 的隔离区间判定
"""

import logging
import threading
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy import Poly

from .algebraic import AlgebraicNumber, format_fraction
from .intervals import between
from .polynomials import (
    X, Y, bivar, poly_to_text, to_rational, univar, univar_coefficients, y_coefficients,
)

logger = logging.getLogger(__name__)

KPoly = List[Poly]


class NumberField:
    """
    Q(α)，α 为 m 的实根
    有理点 x0 视为 m = x - x0 的退化情形
    """

    def __init__(self, modulus: Poly, alpha):
        self.modulus = univar(modulus)
        self.alpha = alpha
        self.degree = self.modulus.degree()

    @classmethod
    def rational(cls, x0: Fraction) -> 'NumberField':
        x0 = Fraction(x0)
        return cls(univar(X - to_rational(x0)), x0)

    def __repr__(self):
        return f"NumberField({poly_to_text(self.modulus)})"

    # ---- 域元素 ----

    def element(self, value) -> Poly:
        return univar(value).rem(self.modulus)

    def zero(self) -> Poly:
        return univar(0)

    def one(self) -> Poly:
        return univar(1)

    def mul(self, a: Poly, b: Poly) -> Poly:
        return (a * b).rem(self.modulus)

    def inv(self, a: Poly) -> Poly:
        if a.is_zero:
            raise ZeroDivisionError("域中零元不可逆")
        if a.degree() <= 0:
            return univar(1 / a.as_expr())
        return a.invert(self.modulus)

    def _bounds(self, coeffs: Sequence[Fraction]) -> Tuple[Fraction, Fraction]:
        if isinstance(self.alpha, Fraction):
            v = Fraction(0)
            for c in coeffs:
                v = v * self.alpha + c
            return v, v
        return self.alpha.value_bounds(coeffs)

    def sign(self, a: Poly) -> int:
        """域元素的精确符号；非零元素必有确定符号，细化 α 直至区间不含 0"""
        if a.is_zero:
            return 0
        coeffs = univar_coefficients(a)
        if len(coeffs) == 1:
            return 1 if coeffs[0] > 0 else -1
        while True:
            lo, hi = self._bounds(coeffs)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            self.alpha.refine()

    def magnitude_bounds(self, a: Poly) -> Tuple[Fraction, Fraction]:
        """|a| 的下界与上界，a 非零时下界为正"""
        if a.is_zero:
            return Fraction(0), Fraction(0)
        self.sign(a)
        lo, hi = self._bounds(univar_coefficients(a))
        if lo > 0:
            return lo, hi
        return -hi, -lo

    # ---- K[y] 多项式（降幂系数列表）----

    def from_bivar(self, p: Poly) -> KPoly:
        return self.trim([self.element(c) for c in y_coefficients(bivar(p))])

    def from_rational_coeffs(self, coeffs: Sequence[Fraction]) -> KPoly:
        return self.trim([univar(to_rational(c)) for c in coeffs])

    @staticmethod
    def trim(f: KPoly) -> KPoly:
        i = 0
        while i < len(f) and f[i].is_zero:
            i += 1
        return list(f[i:])

    @staticmethod
    def deg(f: KPoly) -> int:
        return len(f) - 1

    def scale(self, f: KPoly, c: Poly) -> KPoly:
        return self.trim([self.mul(a, c) for a in f])

    def sub(self, f: KPoly, g: KPoly) -> KPoly:
        n = max(len(f), len(g))
        f = [univar(0)] * (n - len(f)) + list(f)
        g = [univar(0)] * (n - len(g)) + list(g)
        return self.trim([a - b for a, b in zip(f, g)])

    def multiply(self, f: KPoly, g: KPoly) -> KPoly:
        if not f or not g:
            return []
        out = [univar(0)] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
        return self.trim([c.rem(self.modulus) for c in out])

    def divmod(self, f: KPoly, g: KPoly) -> Tuple[KPoly, KPoly]:
        if not g:
            raise ZeroDivisionError("除以零多项式")
        inv_lead = self.inv(g[0])
        r = list(f)
        q = [univar(0)] * max(len(f) - len(g) + 1, 0)
        while len(r) >= len(g) and r:
            c = self.mul(r[0], inv_lead)
            shift = len(r) - len(g)
            q[len(q) - 1 - shift] = c
            for k, b in enumerate(g):
                r[k] = (r[k] - c * b).rem(self.modulus)
            r = self.trim(r)
        return self.trim(q), r

    def rem(self, f: KPoly, g: KPoly) -> KPoly:
        return self.divmod(f, g)[1]

    def monic(self, f: KPoly) -> KPoly:
        return self.scale(f, self.inv(f[0])) if f else f

    def gcd(self, f: KPoly, g: KPoly) -> KPoly:
        f, g = self.trim(f), self.trim(g)
        while g:
            f, g = g, self.rem(f, g)
        return self.monic(f)

    def derivative(self, f: KPoly) -> KPoly:
        n = self.deg(f)
        return self.trim([c * (n - i) for i, c in enumerate(f[:-1])])

    def sqf(self, f: KPoly) -> KPoly:
        """无平方部分，首一"""
        if self.deg(f) <= 0:
            return self.monic(f)
        g = self.gcd(f, self.derivative(f))
        if self.deg(g) <= 0:
            return self.monic(f)
        return self.monic(self.divmod(f, g)[0])

    def eval_rational(self, f: KPoly, t: Fraction) -> Poly:
        acc = univar(0)
        t = to_rational(t)
        for c in f:
            acc = acc.mul_ground(t) + c
        return acc

    def sign_at_rational(self, f: KPoly, t: Fraction) -> int:
        return self.sign(self.eval_rational(f, t))

    # ---- 实根 ----

    def sturm(self, f: KPoly) -> List[KPoly]:
        seq = [f, self.derivative(f)]
        while seq[-1] and self.deg(seq[-1]) > 0:
            r = self.rem(seq[-2], seq[-1])
            if not r:
                break
            neg = [-c for c in r]
            # 除以 |首项系数|，保持符号
            lead = neg[0]
            factor = self.inv(lead) * self.sign(lead)
            seq.append(self.scale(neg, factor.rem(self.modulus)))
        return [s for s in seq if s]

    def variations(self, seq: List[KPoly], t: Fraction) -> int:
        signs = [self.sign_at_rational(s, t) for s in seq]
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count_roots(self, f: KPoly, lo: Fraction, hi: Fraction, seq=None) -> int:
        """(lo, hi] 内不同实根个数"""
        if self.deg(f) <= 0:
            return 0
        seq = seq or self.sturm(f)
        return self.variations(seq, lo) - self.variations(seq, hi)

    def root_bound(self, f: KPoly) -> Fraction:
        lead_lo, _ = self.magnitude_bounds(f[0])
        bound = Fraction(0)
        for c in f[1:]:
            _, hi = self.magnitude_bounds(c)
            bound = max(bound, hi / lead_lo)
        return 1 + bound

    def isolate(self, f: KPoly) -> List['FiberRoot']:
        """无平方多项式 f 的全部实根，升序"""
        f = self.sqf(self.trim(f))
        if self.deg(f) <= 0:
            return []
        seq = self.sturm(f)
        bound = self.root_bound(f)
        found: List[FiberRoot] = []
        pending = [(-bound, bound, self.count_roots(f, -bound, bound, seq))]
        while pending:
            lo, hi, count = pending.pop()
            if count == 0:
                continue
            if count == 1:
                if self.sign_at_rational(f, hi) == 0:
                    found.append(FiberRoot(self, f, hi, hi, hi))
                else:
                    found.append(FiberRoot(self, f, lo, hi))
                continue
            mid = (lo + hi) / 2
            left = self.count_roots(f, lo, mid, seq)
            pending.append((lo, mid, left))
            pending.append((mid, hi, count - left))
        found.sort(key=lambda r: r.interval[0])
        return found

    def compare_roots(self, a: 'FiberRoot', b: 'FiberRoot') -> int:
        """同一纤维上两个根的精确比较；区间重叠时用 gcd 判等"""
        ea, eb = a.exact(), b.exact()
        if ea is not None and eb is not None:
            return (ea > eb) - (ea < eb)
        if ea is not None:
            return -self.compare_roots(b, a)
        checked = False
        while True:
            alo, ahi = a.interval
            blo, bhi = b.interval
            # a 不是有理根，位于开区间 (alo, ahi) 内
            if ahi <= blo:
                return -1
            if bhi <= alo:
                return 1
            if not checked:
                eb = b.exact()
                if eb is not None:
                    if alo < eb < ahi and self.sign_at_rational(a.poly, eb) == 0:
                        return 0
                else:
                    common = self.gcd(a.poly, b.poly)
                    lo, hi = max(alo, blo), min(ahi, bhi)
                    if self.deg(common) >= 1 and self.count_roots(common, lo, hi) > 0:
                        return 0
                checked = True
            a.refine()
            if b.exact() is None:
                b.refine()
            if a.exact() is not None:
                return self.compare_roots(a, b)

    def root_count_on(self, f: KPoly, root: 'FiberRoot') -> int:
        lo, hi = root.interval
        if lo == hi:
            return 1 if self.sign_at_rational(f, lo) == 0 else 0
        return self.count_roots(f, lo, hi)

    def sign_at_root(self, f: KPoly, root: 'FiberRoot') -> int:
        """f 在纤维根处的精确符号"""
        f = self.trim(f)
        if not f:
            return 0
        if self.deg(f) == 0:
            return self.sign(f[0])
        exact = root.exact()
        if exact is not None:
            return self.sign_at_rational(f, exact)
        common = self.gcd(f, root.poly)
        if self.deg(common) >= 1 and self.root_count_on(common, root) > 0:
            return 0
        g = self.sqf(f)
        seq = self.sturm(g)
        while True:
            exact = root.exact()
            if exact is not None:
                return self.sign_at_rational(f, exact)
            lo, hi = root.interval
            s = self.sign_at_rational(f, lo)
            if s != 0 and self.count_roots(g, lo, hi, seq) == 0:
                return s
            root.refine()


class FiberRoot:
    """
    纤维上的实根：K[y] 中无平方多项式 + 有理隔离区间 (lo, hi]
    区间细化带锁；恰好落在中点时塌缩为有理数
    """

    def __init__(self, field: NumberField, poly: KPoly, lo: Fraction, hi: Fraction,
                 exact: Optional[Fraction] = None):
        self.field = field
        self.poly = poly
        self._lo = Fraction(lo)
        self._hi = Fraction(hi)
        self._exact = exact
        self._lock = threading.Lock()
        self._sign_hi = None if exact is not None else field.sign_at_rational(poly, self._hi)
        self._algebraic = None

    def exact(self) -> Optional[Fraction]:
        return self._exact

    @property
    def interval(self) -> Tuple[Fraction, Fraction]:
        with self._lock:
            return self._lo, self._hi

    def refine(self) -> Tuple[Fraction, Fraction]:
        with self._lock:
            if self._exact is not None:
                return self._lo, self._hi
            mid = (self._lo + self._hi) / 2
            s = self.field.sign_at_rational(self.poly, mid)
            if s == 0:
                self._exact = mid
                self._lo = self._hi = mid
            elif s == self._sign_hi:
                self._hi = mid
            else:
                self._lo = mid
            return self._lo, self._hi

    def refine_to(self, width: Fraction) -> Tuple[Fraction, Fraction]:
        lo, hi = self.interval
        while hi - lo > width:
            lo, hi = self.refine()
        return lo, hi

    def enclosure(self, prec: int):
        lo, hi = self.refine_to(Fraction(1, 2 ** prec))
        return between(lo, hi, prec + 10)

    def sign_of(self, p: Poly) -> int:
        """二元多项式在 (α, 本根) 处的符号"""
        return self.field.sign_at_root(self.field.from_bivar(p), self)

    def norm_poly(self) -> Poly:
        """Q 上以本根为根的多项式：res_x(m, P)"""
        if self.field.degree == 1:
            coeffs = [to_fraction_const(c) for c in self.poly]
            return univar(sum(to_rational(c) * X ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs)))
        p_expr = sum(c.as_expr() * Y ** (len(self.poly) - 1 - i) for i, c in enumerate(self.poly))
        res = sympy.resultant(self.field.modulus.as_expr(), p_expr, X)
        return univar(sympy.expand(res).subs(Y, X))

    def to_algebraic(self):
        """转为 Q 上的 AlgebraicNumber（或有理数）"""
        if self._exact is not None:
            return self._exact
        if self._algebraic is None:
            norm = self.norm_poly().sqf_part()
            while True:
                lo, hi = self.interval
                if self._exact is not None:
                    return self._exact
                if norm.count_roots(to_rational(lo), to_rational(hi)) == 1:
                    break
                self.refine()
            self._algebraic = AlgebraicNumber.from_root(norm, lo, hi)
        return self._algebraic

    def to_json(self) -> dict:
        value = self.to_algebraic()
        if isinstance(value, Fraction):
            return {'rational': format_fraction(value)}
        return value.to_json()

    def __float__(self):
        lo, hi = self.refine_to(Fraction(1, 2 ** 60))
        return float((lo + hi) / 2)

    def __repr__(self):
        lo, hi = self.interval
        return f"FiberRoot({self.field!r}, ({lo}, {hi}))"


def to_fraction_const(c: Poly) -> Fraction:
    coeffs = univar_coefficients(c)
    return coeffs[-1] if coeffs else Fraction(0)
