"""
恒等式验证引擎
割线 -> CAD -> 每个单元样本点上的判定 -> 汇总结论
"""

import logging
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd
from sympy import Poly

from branchcut import (
    SemiAlgebraicSet, expression_cuts, parse_region, real_discontinuity_locus,
)
from cad import (
    IN_REGION, OUT_OF_REGION, ON_BOUNDARY, CellDecomposition, decompose, decompose_1d,
    number_to_decimal, point_to_json, point_to_text,
)
from core.errors import CadBudgetExceeded, EvaluationDomainError, ModeViolationError, VerifierError
from core.presets import CASES, preset_text, resolve_expression
from core.settings import VerifierSettings
from expr import COMPLEX, REAL, Expr, to_text, variables
from numeval import ComplexBox, Evaluator, SignStatus
from realalg.polynomials import X, Y, bivar, univar
from realalg.sign import sign_univar_at

logger = logging.getLogger(__name__)


class VerdictKind(Enum):
    EQUAL = "EqualOnRegion"
    NOT_EQUAL = "NotEqual"
    INCONCLUSIVE = "Inconclusive"


class CellStatus(Enum):
    EQUAL = "equal"
    NONZERO = "nonzero"
    INCONCLUSIVE = "inconclusive"
    SKIPPED = "skipped"


EXIT_CODES = {
    VerdictKind.EQUAL: 0,
    VerdictKind.NOT_EQUAL: 1,
    VerdictKind.INCONCLUSIVE: 2,
}


@dataclass
class QueryOptions:
    """单次验证的选项，缺省值取自 VerifierSettings"""
    precision: int = field(default_factory=VerifierSettings.default_precision)
    gap: Union[str, Fraction] = field(default_factory=VerifierSettings.discreteness_gap)
    cell_budget: Optional[int] = None
    degree_budget: Optional[int] = None
    test_sections: bool = True
    extra_polynomials: List[Poly] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            'precision': self.precision,
            'gap': str(self.gap),
            'cell_budget': self.cell_budget or VerifierSettings.cell_budget(),
            'degree_budget': self.degree_budget or VerifierSettings.degree_budget(),
            'test_sections': self.test_sections,
        }


@dataclass
class IdentityQuery:
    """待验证的恒等式 lhs = rhs（可选区域）"""
    lhs: Expr
    rhs: Expr
    mode: str = COMPLEX
    region: Optional[SemiAlgebraicSet] = None
    options: QueryOptions = field(default_factory=QueryOptions)
    lhs_text: str = ''
    rhs_text: str = ''
    region_text: str = ''

    @classmethod
    def from_text(cls, lhs: str, rhs: str, mode: str = COMPLEX, region: Optional[str] = None,
                  variable: Optional[str] = None, **options) -> 'IdentityQuery':
        """表达式文本可以是 '@预设名'"""
        query = cls(lhs=resolve_expression(lhs, mode, variable),
                    rhs=resolve_expression(rhs, mode, variable), mode=mode,
                    region=parse_region(region) if region else None,
                    options=QueryOptions(**options),
                    lhs_text=preset_text(lhs), rhs_text=preset_text(rhs), region_text=region or '')
        query.validate()
        return query

    @classmethod
    def from_case(cls, name: str, **options) -> 'IdentityQuery':
        """命名案例，显式选项覆盖案例自带的选项"""
        if name not in CASES:
            raise KeyError(f"未找到验证案例: {name}")
        case = CASES[name]
        merged = dict(case.options)
        merged.update(options)
        return cls.from_text(case.lhs, case.rhs, case.mode, case.region, **merged)

    @property
    def difference(self) -> Expr:
        return self.lhs - self.rhs

    @property
    def variables(self) -> List[str]:
        return sorted(set(variables(self.lhs)) | set(variables(self.rhs)))

    @property
    def complex_variable(self) -> str:
        names = self.variables
        return names[0] if names else 'z'

    def region_variables(self) -> List[str]:
        if self.region is None:
            return []
        found = set()
        for p in self.region.polynomials():
            p = bivar(p)
            if p.degree(X) > 0:
                found.add('x')
            if p.degree(Y) > 0:
                found.add('y')
        return sorted(found)

    @property
    def dimension(self) -> int:
        if self.mode == REAL and len(set(self.variables) | set(self.region_variables())) <= 1:
            return 1
        return 2

    def validate(self) -> None:
        names = self.variables
        if self.mode == COMPLEX and len(names) > 1:
            raise ModeViolationError(f"复模式只允许一个复变量，得到 {', '.join(names)}", 0, self.lhs_text)
        if self.mode == REAL and not set(names) <= {'x', 'y'}:
            raise ModeViolationError("实模式只允许变量 x、y", 0, self.lhs_text)

    def to_dict(self) -> Dict:
        return {
            'lhs': self.lhs_text or to_text(self.lhs),
            'rhs': self.rhs_text or to_text(self.rhs),
            'mode': self.mode,
            'region': self.region_text or (str(self.region) if self.region else None),
            'options': self.options.to_dict(),
        }


@dataclass
class CellRecord:
    """单个单元的判定记录"""
    cell_id: str
    dimension: int
    sample: Tuple
    status: CellStatus
    region: str = IN_REGION
    enclosure: Optional[ComplexBox] = None
    precision: int = 0
    note: str = ''

    @property
    def is_witness(self) -> bool:
        return self.status is CellStatus.NONZERO

    def to_dict(self) -> Dict:
        return {
            'id': self.cell_id,
            'dimension': self.dimension,
            'sample': point_to_json(self.sample),
            'sample_decimal': point_to_text(self.sample),
            'status': self.status.value,
            'region': self.region,
            'enclosure': self.enclosure.to_json() if self.enclosure is not None and self.enclosure.is_finite else None,
            'precision': self.precision,
            'note': self.note,
        }


@dataclass
class Verdict:
    overall: VerdictKind
    cells: List[CellRecord] = field(default_factory=list)
    cut_sets: List[SemiAlgebraicSet] = field(default_factory=list)
    decomposition: Optional[CellDecomposition] = None
    ledger: Dict = field(default_factory=dict)
    bottleneck: Optional[str] = None
    message: str = ''
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def witnesses(self) -> List[CellRecord]:
        return [c for c in self.cells if c.is_witness]

    @property
    def inconclusive_cells(self) -> List[CellRecord]:
        return [c for c in self.cells if c.status is CellStatus.INCONCLUSIVE]

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.overall]

    def counts(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in CellStatus}
        for c in self.cells:
            counts[c.status.value] += 1
        return counts


@dataclass(frozen=True)
class GridSpec:
    """WxH@[a,b]x[c,d]：矩形上的 W×H 个网格节点"""
    width: int
    height: int
    x_range: Tuple[Fraction, Fraction]
    y_range: Tuple[Fraction, Fraction]

    _PATTERN = re.compile(
        r'^\s*(\d+)\s*x\s*(\d+)\s*@\s*\[([^,\]]+),([^\]]+)\]\s*x\s*\[([^,\]]+),([^\]]+)\]\s*$')

    @classmethod
    def parse(cls, text: str) -> 'GridSpec':
        m = cls._PATTERN.match(text)
        if not m:
            raise ValueError(f"网格格式应为 WxH@[a,b]x[c,d]: {text}")
        w, h = int(m.group(1)), int(m.group(2))
        a, b, c, d = (Fraction(m.group(k).strip()) for k in range(3, 7))
        if w < 2 or h < 2 or a >= b or c >= d:
            raise ValueError(f"网格参数无效: {text}")
        return cls(w, h, (a, b), (c, d))

    def nodes(self) -> List[Tuple[Fraction, Fraction]]:
        (a, b), (c, d) = self.x_range, self.y_range
        xs = [a + (b - a) * i / (self.width - 1) for i in range(self.width)]
        ys = [c + (d - c) * j / (self.height - 1) for j in range(self.height)]
        return [(x, y) for y in ys for x in xs]

    def __str__(self):
        (a, b), (c, d) = self.x_range, self.y_range
        return f"{self.width}x{self.height}@[{a},{b}]x[{c},{d}]"


class IdentityVerifier:
    """
    恒等式验证器
    单元判定彼此独立，在线程池中并行，结论与完成顺序无关
    """

    def __init__(self, max_workers: Optional[int] = None,
                 progress_callback: Optional[Callable[[int, int, str], None]] = None):
        self.max_workers = max_workers or VerifierSettings.worker_count()
        self.progress_callback = progress_callback

    # ---- 割线与分解 ----

    def compute_cuts(self, query: IdentityQuery) -> List[SemiAlgebraicSet]:
        if query.mode == REAL:
            locus = real_discontinuity_locus(query.difference)
            return [] if locus.is_empty() else [locus]
        return expression_cuts(query.difference)

    def cut_polynomials(self, query: IdentityQuery, cut_sets: Sequence[SemiAlgebraicSet]) -> List[Poly]:
        polys: Dict[str, Poly] = {}
        for s in cut_sets:
            for p in s.polynomials():
                polys.setdefault(str(p.as_expr()), p)
        for p in query.options.extra_polynomials:
            polys.setdefault(str(bivar(p).as_expr()), bivar(p))
        return list(polys.values())

    def decompose(self, query: IdentityQuery, polys: Sequence[Poly]) -> CellDecomposition:
        opts = query.options
        if query.dimension == 1:
            return self._decompose_line(query, polys)
        return decompose(polys, region=query.region, cell_budget=opts.cell_budget,
                         degree_budget=opts.degree_budget, max_workers=self.max_workers)

    def _line_variable(self, query: IdentityQuery) -> str:
        names = sorted(set(query.variables) | set(query.region_variables()))
        return names[0] if names else 'x'

    def _decompose_line(self, query: IdentityQuery, polys: Sequence[Poly]) -> CellDecomposition:
        """实模式单变量：变量统一改写为 x 后做一维分解"""
        name = self._line_variable(query)

        def to_line(p: Poly) -> Poly:
            expr = bivar(p).as_expr()
            return univar(expr.subs(Y, X) if name == 'y' else expr)

        region_polys = [to_line(p) for p in query.region.polynomials()] if query.region else []
        d = decompose_1d([to_line(p) for p in polys] + region_polys,
                         cell_budget=query.options.cell_budget,
                         degree_budget=query.options.degree_budget)
        if query.region is not None:
            for cell in d.cells:
                value = cell.sample[0]

                def sign_of(p: Poly, value=value) -> int:
                    return sign_univar_at(to_line(p), value)

                if query.region.contains(sign_of):
                    cell.region = IN_REGION
                elif any(sign_of(p) == 0 for p in query.region.polynomials()):
                    cell.region = ON_BOUNDARY
                else:
                    cell.region = OUT_OF_REGION
        return d

    def sample_to_point(self, query: IdentityQuery, sample: Tuple) -> Dict:
        zero = Fraction(0)
        if query.dimension == 1:
            return {self._line_variable(query): (sample[0], zero)}
        if query.mode == REAL:
            return {'x': (sample[0], zero), 'y': (sample[1], zero)}
        return {query.complex_variable: (sample[0], sample[1])}

    # ---- 单元判定 ----

    def decide_cell(self, query: IdentityQuery, cell) -> CellRecord:
        record = CellRecord(cell_id=cell.cell_id, dimension=cell.dimension,
                            sample=cell.sample, status=CellStatus.SKIPPED, region=cell.region)
        if not cell.in_region:
            record.note = "不在区域内"
            return record
        if not query.options.test_sections and not cell.is_full_dimensional:
            record.note = "截面未测试"
            return record

        point = self.sample_to_point(query, cell.sample)
        evaluator = Evaluator(query.mode)
        opts = query.options
        try:
            decision = evaluator.decide_sign(query.difference, point, opts.precision, opts.gap)
        except EvaluationDomainError as e:
            record.status = CellStatus.INCONCLUSIVE
            record.note = f"定义域错误: {e}"
            return record

        record.enclosure = decision.box
        record.precision = decision.precision
        if decision.status is SignStatus.EQUAL_EVIDENCE:
            record.status = CellStatus.EQUAL
        elif decision.status is SignStatus.NONZERO:
            record.status = self._recheck(query, point, record)
        else:
            record.status = CellStatus.INCONCLUSIVE
            record.note = decision.reason
        logger.debug("单元 %s %s: %s", cell.cell_id, point_to_text(cell.sample), record.status.value)
        return record

    def _recheck(self, query: IdentityQuery, point: Dict, record: CellRecord) -> CellStatus:
        """反例在 4 倍精度下独立复核"""
        precision = 4 * max(query.options.precision, record.precision)
        try:
            box = Evaluator(query.mode).evaluate(query.difference, point, precision)
        except EvaluationDomainError as e:
            record.note = f"复核失败: {e}"
            return CellStatus.INCONCLUSIVE
        if box.is_finite and box.excludes_zero():
            record.enclosure = box
            record.precision = box.prec
            return CellStatus.NONZERO
        record.note = "复核时包围盒含 0"
        return CellStatus.INCONCLUSIVE

    def decide_cells(self, query: IdentityQuery, d: CellDecomposition) -> List[CellRecord]:
        records: Dict[int, CellRecord] = {}
        total = len(d.cells)
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_index = {
                executor.submit(self.decide_cell, query, cell): i
                for i, cell in enumerate(d.cells)
            }
            for future in as_completed(future_to_index):
                i = future_to_index[future]
                try:
                    records[i] = future.result()
                except VerifierError as e:
                    cell = d.cells[i]
                    logger.warning("单元 %s 判定失败: %s", cell.cell_id, e)
                    records[i] = CellRecord(cell.cell_id, cell.dimension, cell.sample,
                                            CellStatus.INCONCLUSIVE, cell.region, note=str(e))
                if self.progress_callback:
                    self.progress_callback(len(records), total, d.cells[i].cell_id)
        return [records[i] for i in range(total)]

    # ---- 汇总 ----

    def build_ledger(self, query: IdentityQuery, cut_sets: Sequence[SemiAlgebraicSet],
                     records: Sequence[CellRecord]) -> Dict:
        inexact = [s.provenance for s in cut_sets if not s.exact]
        sections_skipped = any(r.note == "截面未测试" for r in records)
        qualifiers = [f"离散间隙 δ = {query.options.gap}"]
        if inexact:
            qualifiers.append("equal (evidence)")
        if sections_skipped:
            qualifiers.append("sections untested")
        return {
            'discreteness_gap': str(query.options.gap),
            'cut_sets_exact': not inexact,
            'numeric_evidence_cut_sets': inexact,
            'sections_tested': not sections_skipped,
            'qualifiers': qualifiers,
        }

    def aggregate(self, query: IdentityQuery, cut_sets: Sequence[SemiAlgebraicSet],
                  records: List[CellRecord]) -> Tuple[VerdictKind, str, Dict]:
        ledger = self.build_ledger(query, cut_sets, records)
        tested = [r for r in records if r.status is not CellStatus.SKIPPED]
        witnesses = [r for r in records if r.is_witness]
        if witnesses:
            first = witnesses[0]
            return VerdictKind.NOT_EQUAL, f"在 {point_to_text(first.sample)} 处不相等", ledger
        undecided = [r for r in tested if r.status is CellStatus.INCONCLUSIVE]
        if undecided:
            return VerdictKind.INCONCLUSIVE, f"{len(undecided)} 个单元无法判定", ledger
        if not ledger['cut_sets_exact']:
            return VerdictKind.INCONCLUSIVE, "所有单元相等，但部分割线仅有数值证据 (equal (evidence))", ledger
        return VerdictKind.EQUAL, f"{len(tested)} 个单元均相等", ledger

    def verify(self, query: IdentityQuery) -> Verdict:
        """
        完整验证流程
        预算耗尽时返回 Inconclusive 并给出瓶颈
        """
        timings: Dict[str, float] = {}
        start = time.time()
        cut_sets = self.compute_cuts(query)
        timings['cuts'] = time.time() - start
        polys = self.cut_polynomials(query, cut_sets)
        logger.info("割线集合 %d 个, 多项式 %d 个", len(cut_sets), len(polys))

        start = time.time()
        try:
            d = self.decompose(query, polys)
        except CadBudgetExceeded as e:
            logger.warning("CAD 预算耗尽: %s", e.bottleneck)
            timings['cad'] = time.time() - start
            return Verdict(VerdictKind.INCONCLUSIVE, cut_sets=cut_sets,
                           ledger=self.build_ledger(query, cut_sets, []),
                           bottleneck=e.bottleneck, message=f"预算耗尽: {e.bottleneck}",
                           timings=timings)
        timings['cad'] = time.time() - start

        start = time.time()
        records = self.decide_cells(query, d)
        timings['cells'] = time.time() - start

        overall, message, ledger = self.aggregate(query, cut_sets, records)
        logger.info("结论 %s: %s", overall.value, message)
        return Verdict(overall, cells=records, cut_sets=cut_sets, decomposition=d,
                       ledger=ledger, message=message, timings=timings)

    def find_counterexample(self, query: IdentityQuery) -> Optional[CellRecord]:
        """按确定的单元顺序给出第一个反例，没有则为 None"""
        verdict = self.verify(query)
        if verdict.overall is VerdictKind.NOT_EQUAL:
            return verdict.witnesses[0]
        return None

    # ---- 网格证据 ----

    def _on_exact_cut(self, cut_sets: Sequence[SemiAlgebraicSet], point) -> bool:
        return any(s.exact and s.contains_point(point) for s in cut_sets)

    def decide_node(self, query: IdentityQuery, cut_sets, node: Tuple[Fraction, Fraction]) -> Dict:
        x, y = node
        result = {'x': x, 'y': y, 'status': None, 'value': None}
        if query.region is not None and not query.region.contains_point(node):
            result['status'] = 'outside'
            return result
        if self._on_exact_cut(cut_sets, node):
            result['status'] = 'on_cut'
            return result
        point = self.sample_to_point(query, node if query.dimension == 2 else (x,))
        try:
            decision = Evaluator(query.mode).decide_sign(query.difference, point,
                                                         query.options.precision, query.options.gap)
        except EvaluationDomainError:
            result['status'] = 'on_cut'
            return result
        if decision.box is not None and decision.box.is_finite:
            result['value'] = decision.box.midpoint()
        result['status'] = {
            SignStatus.EQUAL_EVIDENCE: 'equal',
            SignStatus.NONZERO: 'nonzero',
        }.get(decision.status, 'inconclusive')
        return result

    def verify_on_grid(self, query: IdentityQuery, grid: Union[GridSpec, str]) -> Dict:
        """
        网格证据：只统计节点结论，不给出 EqualOnRegion
        落在精确割线上或求值时跨越割线的节点记为 on_cut
        """
        if isinstance(grid, str):
            grid = GridSpec.parse(grid)
        start = time.time()
        cut_sets = self.compute_cuts(query)
        nodes = grid.nodes()
        results: Dict[int, Dict] = {}
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_node = {
                executor.submit(self.decide_node, query, cut_sets, node): i
                for i, node in enumerate(nodes)
            }
            for future in as_completed(future_to_node):
                i = future_to_node[future]
                results[i] = future.result()
                if self.progress_callback:
                    x, y = nodes[i]
                    self.progress_callback(len(results), len(nodes),
                                           f"({number_to_decimal(x, 6)}, {number_to_decimal(y, 6)})")
        ordered = [results[i] for i in range(len(nodes))]
        summary = {k: 0 for k in ('equal', 'nonzero', 'inconclusive', 'on_cut', 'outside')}
        for r in ordered:
            summary[r['status']] += 1
        elapsed = time.time() - start
        logger.info("网格 %s: %s, 用时 %.2fs", grid, summary, elapsed)
        return {
            'success': True,
            'grid': str(grid),
            'summary': summary,
            'nodes': ordered,
            'cut_sets': cut_sets,
            'elapsed': elapsed,
        }

    # ---- 汇总与导出 ----

    def generate_summary(self, verdict: Verdict) -> Dict:
        """按单元维数统计判定结果"""
        summary = {
            'verdict': verdict.overall.value,
            'total_cells': len(verdict.cells),
            'witnesses': len(verdict.witnesses),
            'status_counts': verdict.counts(),
            'by_dimension': {},
        }
        for record in verdict.cells:
            by_dim = summary['by_dimension'].setdefault(
                record.dimension, {status.value: 0 for status in CellStatus})
            by_dim[record.status.value] += 1
        return summary

    def export_results_to_excel(self, verdict: Verdict, file_path: str) -> bool:
        """逐单元结果导出到 Excel"""
        try:
            export_data = []
            for record in verdict.cells:
                box = record.enclosure
                export_data.append({
                    '单元': record.cell_id,
                    '维数': record.dimension,
                    '样本点': point_to_text(record.sample),
                    '区域': record.region,
                    '结论': record.status.value,
                    '差值包围盒': box.format(12) if box is not None and box.is_finite else '',
                    '精度': record.precision,
                    '备注': record.note,
                })
            df = pd.DataFrame(export_data)
            df.to_excel(file_path, index=False)
            print(f"结果已导出到: {file_path}", file=sys.stderr)
            return True
        except Exception as e:
            print(f"导出Excel失败: {e}", file=sys.stderr)
            return False


class ProgressReporter:
    """进度报告器"""

    def __init__(self, update_interval: float = 5, stream=None):
        self.update_interval = update_interval
        self.last_update_time = 0
        self.stream = stream or sys.stdout
        self.started = datetime.now()

    def __call__(self, current: int, total: int, label: str):
        """进度回调函数"""
        now = time.time()
        if now - self.last_update_time >= self.update_interval or current == total:
            progress = (current / total) * 100 if total else 100.0
            print(f"进度更新: {current}/{total} ({progress:.1f}%) - 当前: {label}", file=self.stream)
            self.last_update_time = now

