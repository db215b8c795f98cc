"""
复数矩形包围盒
实部、虚部各为一个二进端点区间
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional

from mpmath.libmp import finf, fnan, fninf, mpf_le, to_str

from realalg import intervals
from realalg.intervals import Interval


def _finite(iv: Interval) -> bool:
    return all(v not in (finf, fninf, fnan) for v in iv)


@dataclass(frozen=True)
class ComplexBox:
    re: Interval
    im: Interval
    prec: int
    inconclusive: bool = False

    @classmethod
    def exact(cls, re, im=0, prec: int = 64) -> 'ComplexBox':
        return cls(intervals.point(Fraction(re), prec), intervals.point(Fraction(im), prec), prec)

    @classmethod
    def whole_plane(cls, prec: int) -> 'ComplexBox':
        full = (fninf, finf)
        return cls(full, full, prec, inconclusive=True)

    @property
    def pair(self):
        return self.re, self.im

    @property
    def is_finite(self) -> bool:
        return _finite(self.re) and _finite(self.im)

    def contains_zero(self) -> bool:
        return intervals.contains_zero(self.re) and intervals.contains_zero(self.im)

    def excludes_zero(self) -> bool:
        return not self.contains_zero()

    def radius(self) -> Optional[Fraction]:
        """两个分量半宽的较大者；端点无穷时为 None"""
        if not self.is_finite:
            return None
        return max(intervals.radius_bound(self.re), intervals.radius_bound(self.im))

    def contains(self, re, im=0) -> bool:
        """精确有理点是否落在盒内"""
        if not self.is_finite:
            return True
        re_lo, re_hi = intervals.to_fractions(self.re)
        im_lo, im_hi = intervals.to_fractions(self.im)
        return re_lo <= Fraction(re) <= re_hi and im_lo <= Fraction(im) <= im_hi

    def contains_box(self, other: 'ComplexBox') -> bool:
        return (mpf_le(self.re[0], other.re[0]) and mpf_le(other.re[1], self.re[1])
                and mpf_le(self.im[0], other.im[0]) and mpf_le(other.im[1], self.im[1]))

    def overlaps(self, other: 'ComplexBox') -> bool:
        return (mpf_le(self.re[0], other.re[1]) and mpf_le(other.re[0], self.re[1])
                and mpf_le(self.im[0], other.im[1]) and mpf_le(other.im[0], self.im[1]))

    def midpoint(self) -> complex:
        if not self.is_finite:
            return complex('nan')
        re_lo, re_hi = intervals.to_fractions(self.re)
        im_lo, im_hi = intervals.to_fractions(self.im)
        return complex(float((re_lo + re_hi) / 2), float((im_lo + im_hi) / 2))

    def format(self, digits: int = 20) -> str:
        return (f"re ∈ [{to_str(self.re[0], digits)}, {to_str(self.re[1], digits)}], "
                f"im ∈ [{to_str(self.im[0], digits)}, {to_str(self.im[1], digits)}]")

    def to_json(self, digits: int = 25) -> Dict:
        return {
            're': [to_str(self.re[0], digits), to_str(self.re[1], digits)],
            'im': [to_str(self.im[0], digits), to_str(self.im[1], digits)],
            'precision': self.prec,
            'inconclusive': self.inconclusive,
        }

    def __str__(self):
        return self.format(12)
