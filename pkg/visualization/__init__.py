"""
可视化模块
割线、CAD 单元与网格证据的 SVG 图
"""

from .cut_plotter import CutPlotter, save_chart_as_svg

__all__ = [
    'CutPlotter',
    'save_chart_as_svg'
]
