"""
柱形代数分解（ℝ¹ 与 ℝ²）
基础阶段隔离投影多项式的实根，堆栈阶段在每个 x 样本上隔离 y 的根；
每个单元给出精确样本点与输入多项式的符号向量
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy import Poly

from core.errors import CadBudgetExceeded
from core.settings import VerifierSettings
from realalg.algebraic import AlgebraicNumber, RealNumber
from realalg.number_field import FiberRoot
from realalg.polynomials import (
    X, Y, bivar, eval_exact, ensure_degree_budget, is_constant, normalize_with_constant,
    poly_to_text, primitive_normal, to_fraction, to_rational, univar,
)
from realalg.roots import rational_between, real_roots, sort_distinct
from realalg.sign import sign_at, sign_univar_at
from .projection import project

logger = logging.getLogger(__name__)

SECTOR = 'sector'
SECTION = 'section'

IN_REGION = 'in'
OUT_OF_REGION = 'out'
ON_BOUNDARY = 'boundary'


@dataclass
class CellBound:
    """单个坐标方向上的柱形描述"""
    kind: str
    lower: Optional[object] = None
    upper: Optional[object] = None
    value: Optional[object] = None
    polys: Tuple[int, ...] = ()


@dataclass
class Cell:
    """
    CAD 单元
    index 为 (x 方向位置, y 方向位置)，偶数位置是扇区，奇数位置是截面
    """
    index: Tuple[int, ...]
    dimension: int
    sample: Tuple
    signs: Tuple[int, ...]
    bounds: Tuple[CellBound, ...]
    region: str = IN_REGION

    @property
    def cell_id(self) -> str:
        return '.'.join(str(i) for i in self.index)

    @property
    def is_full_dimensional(self) -> bool:
        return self.dimension == len(self.index)

    @property
    def in_region(self) -> bool:
        return self.region == IN_REGION


@dataclass
class CellDecomposition:
    polynomials: List[Poly]
    projection: List[Poly]
    x_roots: List[RealNumber]
    cells: List[Cell]
    dimension: int = 2
    stack_sizes: List[int] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    @property
    def max_degree(self) -> int:
        degrees = [p.total_degree() for p in self.polynomials + self.projection if not p.is_zero]
        return max(degrees, default=0)

    def cells_in_region(self) -> List[Cell]:
        return [c for c in self.cells if c.in_region]

    def stack(self, i: int) -> List[Cell]:
        return [c for c in self.cells if c.index[0] == i]

    def stats(self) -> Dict:
        return {
            'cells': self.cell_count,
            'dimension': self.dimension,
            'input_polynomials': len(self.polynomials),
            'projection_polynomials': len(self.projection),
            'x_cells': len(self.stack_sizes),
            'max_degree': self.max_degree,
            'full_dimensional': sum(1 for c in self.cells if c.is_full_dimensional),
        }


class _FactorProfile:
    """p = c · Π f_k^e_k，f_k 为不可约基中的元素"""

    def __init__(self, p: Poly, basis_index: Dict[Tuple, int]):
        self.zero = p.is_zero
        self.constant_sign = 0
        self.factors: List[Tuple[int, int]] = []
        if self.zero:
            return
        c, factors = p.factor_list()
        constant = to_fraction(c)
        for f, k in factors:
            cf, nf = normalize_with_constant(bivar(f))
            constant *= cf ** k
            self.factors.append((basis_index[_key(nf)], k))
        self.constant_sign = (constant > 0) - (constant < 0)

    def sign(self, factor_signs: Sequence[int]) -> int:
        if self.zero:
            return 0
        s = self.constant_sign
        for i, k in self.factors:
            s *= factor_signs[i] ** k
        return s


def _key(p: Poly) -> Tuple:
    return tuple(bivar(p).terms())


def _to_x(q) -> Poly:
    """y 的一元多项式改写为以 x 为生成元"""
    return univar(q.subs(Y, X))


class CylindricalDecomposer:
    """
    二元 CAD 构造器
    堆栈在线程池中并行构造，按 x 位置确定性合并
    """

    def __init__(self, polys: Sequence[Poly], region=None,
                 cell_budget: Optional[int] = None, degree_budget: Optional[int] = None,
                 max_workers: Optional[int] = None):
        self.region = region
        inputs = [bivar(p) for p in polys]
        if region is not None:
            known = {_key(p) for p in inputs}
            for p in region.polynomials():
                if _key(p) not in known:
                    inputs.append(bivar(p))
                    known.add(_key(p))
        self.polynomials = inputs
        self.cell_budget = cell_budget or VerifierSettings.cell_budget()
        self.degree_budget = degree_budget or VerifierSettings.degree_budget()
        self.max_workers = max_workers or VerifierSettings.worker_count()

        basis: Dict[Tuple, Poly] = {}
        for p in inputs:
            if p.is_zero or is_constant(p):
                continue
            for f, _ in p.factor_list()[1]:
                if is_constant(f):
                    continue
                nf = primitive_normal(bivar(f))
                basis.setdefault(_key(nf), nf)
        self.basis = list(basis.values())
        self.basis_index = {k: i for i, k in enumerate(basis)}
        self.profiles = [_FactorProfile(p, self.basis_index) for p in inputs]
        self.cell_count = 0

    # ---- 基础阶段 ----

    def x_cells(self) -> Tuple[List[Poly], List[RealNumber], List[Tuple[str, object, CellBound]]]:
        ensure_degree_budget(self.polynomials, self.degree_budget)
        projection = project(self.basis)
        ensure_degree_budget(projection, self.degree_budget)
        roots: List[RealNumber] = []
        for q in projection:
            roots.extend(real_roots(q))
        roots = sort_distinct(roots)

        cells = []
        for i in range(2 * len(roots) + 1):
            if i % 2 == 0:
                lower = roots[i // 2 - 1] if i > 0 else None
                upper = roots[i // 2] if i // 2 < len(roots) else None
                cells.append((SECTOR, rational_between(lower, upper),
                              CellBound(SECTOR, lower=lower, upper=upper)))
            else:
                root = roots[i // 2]
                cells.append((SECTION, root, CellBound(SECTION, value=root)))
        return projection, roots, cells

    # ---- 堆栈阶段 ----

    def _rational_fiber(self, x0: Fraction):
        fibers = []
        for f in self.basis:
            q = _to_x(bivar(f).as_expr().subs(X, to_rational(x0)))
            fibers.append(q)
        roots: List[RealNumber] = []
        for q in fibers:
            if not q.is_zero and q.degree() >= 1:
                roots.extend(real_roots(q))
        roots = sort_distinct(roots)

        def section_signs(r):
            return [sign_univar_at(q, r) for q in fibers]

        def sector_signs(t):
            return [_sign(eval_exact(q, t)) for q in fibers]

        return roots, section_signs, sector_signs

    def _algebraic_fiber(self, alpha: AlgebraicNumber):
        nf = alpha.field()
        kpolys = [nf.from_bivar(f) for f in self.basis]
        roots: List[FiberRoot] = []
        for kp in kpolys:
            for r in nf.isolate(kp):
                if not any(nf.compare_roots(r, other) == 0 for other in roots):
                    roots.append(r)
        ordered: List[FiberRoot] = []
        for r in roots:
            pos = 0
            while pos < len(ordered) and nf.compare_roots(ordered[pos], r) < 0:
                pos += 1
            ordered.insert(pos, r)

        def section_signs(r):
            return [nf.sign_at_root(kp, r) for kp in kpolys]

        def sector_signs(t):
            return [nf.sign_at_rational(kp, t) for kp in kpolys]

        return ordered, section_signs, sector_signs

    def build_stack(self, i: int, kind: str, x_value, x_bound: CellBound) -> List[Cell]:
        """x 位置 i 上方的全部单元（自下而上）"""
        if isinstance(x_value, AlgebraicNumber):
            roots, section_signs, sector_signs = self._algebraic_fiber(x_value)
        else:
            roots, section_signs, sector_signs = self._rational_fiber(Fraction(x_value))

        x_dim = 1 if kind == SECTOR else 0
        cells = []
        for j in range(2 * len(roots) + 1):
            if j % 2 == 0:
                lower = roots[j // 2 - 1] if j > 0 else None
                upper = roots[j // 2] if j // 2 < len(roots) else None
                y_value = rational_between(lower, upper)
                factor_signs = sector_signs(y_value)
                y_bound = CellBound(SECTOR, lower=lower, upper=upper)
                dim = x_dim + 1
            else:
                y_value = roots[j // 2]
                factor_signs = section_signs(y_value)
                y_bound = None
                dim = x_dim
            signs = tuple(profile.sign(factor_signs) for profile in self.profiles)
            if y_bound is None:
                y_bound = CellBound(SECTION, value=y_value,
                                    polys=tuple(k for k, s in enumerate(signs) if s == 0))
            cells.append(Cell(index=(i, j), dimension=dim, sample=(x_value, y_value),
                              signs=signs, bounds=(x_bound, y_bound)))
        for cell in cells:
            cell.region = self.classify(cell)
        return cells

    def classify(self, cell: Cell) -> str:
        if self.region is None:
            return IN_REGION
        lookup = {_key(p): s for p, s in zip(self.polynomials, cell.signs)}

        def sign_of(p: Poly) -> int:
            k = _key(p)
            if k in lookup:
                return lookup[k]
            return sign_at(p, cell.sample)

        if self.region.contains(sign_of):
            return IN_REGION
        if any(sign_of(p) == 0 for p in self.region.polynomials()):
            return ON_BOUNDARY
        return OUT_OF_REGION

    def _charge(self, n: int) -> None:
        self.cell_count += n
        if self.cell_count > self.cell_budget:
            raise CadBudgetExceeded(f"单元数超过预算 {self.cell_budget}")

    def run(self, progress_callback: Optional[Callable[[int, int], None]] = None) -> CellDecomposition:
        start = time.time()
        projection, x_roots, x_cells = self.x_cells()
        self._charge(len(x_cells))
        stacks: Dict[int, List[Cell]] = {}

        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_index = {
                executor.submit(self.build_stack, i, kind, value, bound): i
                for i, (kind, value, bound) in enumerate(x_cells)
            }
            for future in as_completed(future_to_index):
                i = future_to_index[future]
                stacks[i] = future.result()
                self._charge(len(stacks[i]) - 1)
                if progress_callback:
                    progress_callback(len(stacks), len(x_cells))

        cells = [c for i in range(len(x_cells)) for c in stacks[i]]
        elapsed = time.time() - start
        logger.info("CAD 完成: %d 个多项式, %d 个单元, 用时 %.2fs",
                    len(self.polynomials), len(cells), elapsed)
        return CellDecomposition(polynomials=self.polynomials, projection=projection,
                                 x_roots=x_roots, cells=cells, dimension=2,
                                 stack_sizes=[len(stacks[i]) for i in range(len(x_cells))],
                                 elapsed=elapsed)


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def decompose(polys: Sequence[Poly], region=None, cell_budget: Optional[int] = None,
              degree_budget: Optional[int] = None, max_workers: Optional[int] = None,
              progress_callback=None) -> CellDecomposition:
    """
    ℝ² 的符号不变柱形分解

    Args:
        polys: (x, y) 上的有理系数多项式
        region: 可选区域（需提供 polynomials() 与 contains(sign_of)），其多项式并入输入
    Returns:
        CellDecomposition，单元按 x 位置、再按 y 位置自下而上排列
    """
    builder = CylindricalDecomposer(polys, region, cell_budget, degree_budget, max_workers)
    return builder.run(progress_callback)


def decompose_1d(polys: Sequence[Poly], cell_budget: Optional[int] = None,
                 degree_budget: Optional[int] = None) -> CellDecomposition:
    """ℝ¹ 分解：实根为截面，其间为扇区"""
    start = time.time()
    inputs = [univar(p) for p in polys]
    budget = cell_budget or VerifierSettings.cell_budget()
    degree_cap = degree_budget or VerifierSettings.degree_budget()
    for p in inputs:
        if not p.is_zero and p.degree() > degree_cap:
            raise CadBudgetExceeded(f"多项式 x 次数 {p.degree()} 超过预算 {degree_cap}")

    roots: List[RealNumber] = []
    for p in inputs:
        if not p.is_zero and p.degree() >= 1:
            roots.extend(real_roots(p))
    roots = sort_distinct(roots)
    if 2 * len(roots) + 1 > budget:
        raise CadBudgetExceeded(f"单元数超过预算 {budget}")

    cells = []
    for i in range(2 * len(roots) + 1):
        if i % 2 == 0:
            lower = roots[i // 2 - 1] if i > 0 else None
            upper = roots[i // 2] if i // 2 < len(roots) else None
            value = rational_between(lower, upper)
            bound = CellBound(SECTOR, lower=lower, upper=upper)
        else:
            value = roots[i // 2]
            bound = CellBound(SECTION, value=value)
        signs = tuple(sign_univar_at(p, value) for p in inputs)
        if bound.kind == SECTION:
            bound.polys = tuple(k for k, s in enumerate(signs) if s == 0)
        cells.append(Cell(index=(i,), dimension=1 if bound.kind == SECTOR else 0,
                          sample=(value,), signs=signs, bounds=(bound,)))
    return CellDecomposition(polynomials=inputs, projection=[], x_roots=roots, cells=cells,
                             dimension=1, stack_sizes=[1] * len(cells),
                             elapsed=time.time() - start)


def sample_points(d: CellDecomposition) -> List[Tuple[str, Tuple]]:
    """每个单元一个样本点，顺序与单元顺序一致"""
    return [(cell.cell_id, cell.sample) for cell in d.cells]


def describe_cell(cell: Cell, polynomials: Sequence[Poly]) -> str:
    """单元的文字描述，用于日志与报告"""
    parts = []
    for name, bound in zip(('x', 'y'), cell.bounds):
        if bound.kind == SECTION:
            parts.append(f"{name} = {float(bound.value):.6g}")
        else:
            lo = '-∞' if bound.lower is None else f"{float(bound.lower):.6g}"
            hi = '+∞' if bound.upper is None else f"{float(bound.upper):.6g}"
            parts.append(f"{lo} < {name} < {hi}")
    zero = [poly_to_text(polynomials[k]) for k, s in enumerate(cell.signs) if s == 0]
    text = ', '.join(parts)
    if zero:
        text += f" 且 {' = 0, '.join(zero)} = 0"
    return text
