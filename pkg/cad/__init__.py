"""
柱形代数分解模块
投影、单元构造与 JSON 序列化
"""

from .decomposition import (
    IN_REGION, ON_BOUNDARY, OUT_OF_REGION, SECTION, SECTOR, Cell, CellBound, CellDecomposition,
    CylindricalDecomposer, decompose, decompose_1d, describe_cell, sample_points,
)
from .projection import project, split_basis
from .serialize import (
    cell_to_json, decomposition_to_json, number_to_decimal, number_to_json, point_to_json,
    point_to_text,
)

__all__ = [
    'IN_REGION',
    'ON_BOUNDARY',
    'OUT_OF_REGION',
    'SECTION',
    'SECTOR',
    'Cell',
    'CellBound',
    'CellDecomposition',
    'CylindricalDecomposer',
    'decompose',
    'decompose_1d',
    'describe_cell',
    'sample_points',
    'project',
    'split_basis',
    'cell_to_json',
    'decomposition_to_json',
    'number_to_decimal',
    'number_to_json',
    'point_to_json',
    'point_to_text'
]
