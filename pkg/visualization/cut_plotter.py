"""
割线与单元绘图
使用 plotly 绘制割线曲线、CAD 样本点与网格证据，经 kaleido 导出 SVG
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import plotly.graph_objects as go
import sympy
from sympy import Poly

from realalg.polynomials import X, Y, bivar, is_constant, poly_to_text, resultant, univar_coefficients

logger = logging.getLogger(__name__)

Range = Tuple[float, float]


def _numeric(p: Poly):
    """多项式的 numpy 向量化求值函数"""
    return sympy.lambdify((X, Y), bivar(p).as_expr(), 'numpy')


def _holds(values: np.ndarray, relation: str, tol: float) -> np.ndarray:
    return {
        '=': np.abs(values) <= tol,
        '≠': np.abs(values) > tol,
        '<': values < 0,
        '>': values > 0,
        '≤': values <= tol,
        '≥': values >= -tol,
    }[relation]


class CutPlotter:
    """割线/单元绘图器"""

    def __init__(self, resolution: int = 401):
        self.resolution = resolution
        self.colors = {
            'curve': '#1f4e9c',         # 割线曲线深蓝
            'region': '#7fa7e0',        # 不等式区域浅蓝
            'point_cut': '#d62728',     # 孤立点红色
            'polynomial': '#888888',    # CAD 输入多项式灰色
            'equal': '#2ca02c',         # 相等绿色
            'nonzero': '#d62728',       # 不相等红色
            'inconclusive': '#ff7f0e',  # 无法判定橙色
            'skipped': '#bbbbbb',       # 跳过浅灰
            'on_cut': '#9467bd',        # 割线上紫色
            'outside': '#dddddd',
        }

    def _mesh(self, x_range: Range, y_range: Range):
        xs = np.linspace(x_range[0], x_range[1], self.resolution)
        ys = np.linspace(y_range[0], y_range[1], self.resolution)
        gx, gy = np.meshgrid(xs, ys)
        return xs, ys, gx, gy

    def _evaluate(self, p: Poly, gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
        values = _numeric(p)(gx, gy)
        return np.broadcast_to(np.asarray(values, dtype=float), gx.shape)

    def _layout(self, fig: go.Figure, title: str, x_range: Range, y_range: Range,
                width: int, height: int):
        fig.update_layout(
            title=title,
            width=width,
            height=height,
            template='plotly_white',
            xaxis=dict(title='x = Re z', range=list(x_range), zeroline=True),
            yaxis=dict(title='y = Im z', range=list(y_range), zeroline=True,
                       scaleanchor='x', scaleratio=1),
            legend=dict(orientation='h', yanchor='bottom', y=-0.25),
        )

    def _isolated_points(self, equalities: Sequence[Poly]) -> List[Tuple[float, float]]:
        """两条等式曲线的公共实点（近似，用于绘图）"""
        p, q = bivar(equalities[0]), bivar(equalities[1])
        res = resultant(p, q)
        if res.is_zero or is_constant(res):
            return []
        points = []
        for xr in np.roots([float(c) for c in univar_coefficients(res)]):
            if abs(xr.imag) > 1e-9:
                continue
            x0 = float(xr.real)
            fibers = [Poly(f.as_expr().subs(X, x0), Y) for f in (p, q)]
            fiber = next((f for f in fibers if not f.is_zero and f.degree() >= 1), None)
            if fiber is None:
                continue
            for yr in np.roots([float(c) for c in fiber.all_coeffs()]):
                if abs(yr.imag) > 1e-9:
                    continue
                y0 = float(yr.real)
                if all(abs(float(f.as_expr().subs({X: x0, Y: y0}))) < 1e-6 for f in (p, q)):
                    points.append((x0, y0))
        return points

    def create_cut_chart(self, cut_sets: Sequence, x_range: Range = (-6, 2), y_range: Range = (-3, 3),
                         title: str = "割线", width: int = 900, height: int = 700) -> go.Figure:
        """
        等式曲线画实线，纯不等式子句画阴影区域
        Args:
            cut_sets: SemiAlgebraicSet 列表
        """
        if not cut_sets or all(s.is_empty() for s in cut_sets):
            return self._create_empty_chart("没有割线", width, height)

        xs, ys, gx, gy = self._mesh(x_range, y_range)
        step = max((x_range[1] - x_range[0]), (y_range[1] - y_range[0])) / self.resolution
        fig = go.Figure()
        for s in cut_sets:
            for clause in s.clauses:
                equalities = clause.equalities()
                mask = np.ones(gx.shape, dtype=bool)
                for cond in clause.conditions:
                    if cond.relation.value == '=':
                        continue
                    mask &= _holds(self._evaluate(cond.poly, gx, gy), cond.relation.value, step)
                name = f"{s.provenance}: {clause}"
                if len(equalities) >= 2:
                    pts = self._isolated_points(equalities)
                    if pts:
                        fig.add_trace(go.Scatter(
                            x=[p[0] for p in pts], y=[p[1] for p in pts], mode='markers',
                            marker=dict(color=self.colors['point_cut'], size=8), name=name))
                elif equalities:
                    z = self._evaluate(equalities[0], gx, gy).copy()
                    z[~mask] = np.nan
                    fig.add_trace(go.Contour(
                        x=xs, y=ys, z=z, showscale=False, name=name, showlegend=True,
                        contours=dict(start=0, end=0, size=1, coloring='lines'),
                        line=dict(width=2, color=self.colors['curve']),
                        colorscale=[[0, self.colors['curve']], [1, self.colors['curve']]]))
                else:
                    z = np.where(mask, 1.0, np.nan)
                    fig.add_trace(go.Heatmap(
                        x=xs, y=ys, z=z, showscale=False, opacity=0.3, name=name,
                        colorscale=[[0, self.colors['region']], [1, self.colors['region']]]))
        self._layout(fig, title, x_range, y_range, width, height)
        return fig

    def create_cell_chart(self, decomposition, records: Optional[Sequence] = None,
                          x_range: Optional[Range] = None, y_range: Optional[Range] = None,
                          title: str = "CAD 单元", width: int = 900, height: int = 700) -> go.Figure:
        """输入多项式的零点曲线加上每个单元的样本点，按判定结果着色"""
        if decomposition.dimension != 2:
            return self._create_empty_chart("一维分解不绘制平面图", width, height)
        samples = [(float(c.sample[0]), float(c.sample[1])) for c in decomposition.cells]
        if x_range is None or y_range is None:
            sx = [p[0] for p in samples] or [0.0]
            sy = [p[1] for p in samples] or [0.0]
            pad = 1.0
            x_range = x_range or (min(sx) - pad, max(sx) + pad)
            y_range = y_range or (min(sy) - pad, max(sy) + pad)

        xs, ys, gx, gy = self._mesh(x_range, y_range)
        fig = go.Figure()
        for p in decomposition.polynomials:
            if is_constant(p):
                continue
            fig.add_trace(go.Contour(
                x=xs, y=ys, z=self._evaluate(p, gx, gy), showscale=False, name=poly_to_text(p),
                showlegend=True, contours=dict(start=0, end=0, size=1, coloring='lines'),
                line=dict(width=1, color=self.colors['polynomial']),
                colorscale=[[0, self.colors['polynomial']], [1, self.colors['polynomial']]]))

        status_of: Dict[str, str] = {}
        for r in records or []:
            status_of[r.cell_id] = r.status.value
        groups: Dict[str, List[Tuple[float, float, str]]] = {}
        for cell, (sx, sy) in zip(decomposition.cells, samples):
            status = status_of.get(cell.cell_id, 'equal' if records is None else 'skipped')
            groups.setdefault(status, []).append((sx, sy, cell.cell_id))
        for status, pts in groups.items():
            fig.add_trace(go.Scatter(
                x=[p[0] for p in pts], y=[p[1] for p in pts], mode='markers',
                text=[p[2] for p in pts], name=f"样本点 ({status})",
                marker=dict(color=self.colors.get(status, '#000000'), size=6)))
        self._layout(fig, title, x_range, y_range, width, height)
        return fig

    def create_grid_chart(self, grid_result: Dict, title: str = "网格证据",
                          width: int = 900, height: int = 700) -> go.Figure:
        nodes = grid_result.get('nodes') or []
        if not nodes:
            return self._create_empty_chart("没有网格节点", width, height)
        fig = go.Figure()
        groups: Dict[str, List[Dict]] = {}
        for node in nodes:
            groups.setdefault(node['status'], []).append(node)
        for status, items in groups.items():
            fig.add_trace(go.Scatter(
                x=[float(n['x']) for n in items], y=[float(n['y']) for n in items], mode='markers',
                name=f"{status} ({len(items)})",
                marker=dict(color=self.colors.get(status, '#000000'), size=4)))
        xs = [float(n['x']) for n in nodes]
        ys = [float(n['y']) for n in nodes]
        self._layout(fig, title, (min(xs), max(xs)), (min(ys), max(ys)), width, height)
        return fig

    def _create_empty_chart(self, message: str, width: int, height: int) -> go.Figure:
        """创建空图表"""
        fig = go.Figure()
        fig.add_annotation(
            text=message,
            xref="paper", yref="paper",
            x=0.5, y=0.5,
            showarrow=False,
            font=dict(size=20, color="gray")
        )
        fig.update_layout(
            width=width,
            height=height,
            title="图表",
            template='plotly_white',
            font=dict(color='black')
        )
        return fig


def save_chart_as_svg(fig: go.Figure, file_path: str, width: int = 900, height: int = 700) -> bool:
    """保存图表为 SVG"""
    try:
        fig.write_image(file_path, format='svg', width=width, height=height)
        logger.info("图表已保存: %s", file_path)
        return True
    except Exception as e:
        logger.warning("保存图片失败: %s（需要安装 kaleido）", e)
        return False
