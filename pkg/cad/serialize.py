"""
精确数与 CAD 单元的 JSON 表示
有理数写成 "p/q" 字符串，代数数写成 {poly, interval}
"""

from fractions import Fraction
from typing import Dict, List

from realalg.algebraic import format_fraction
from realalg.polynomials import poly_to_text
from .decomposition import SECTION, Cell, CellDecomposition


def number_to_json(value):
    if value is None:
        return None
    if isinstance(value, (int, Fraction)):
        return format_fraction(Fraction(value))
    return value.to_json()


def number_to_decimal(value, digits: int = 15) -> str:
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
    return f"{float(value):.{digits}g}"


def point_to_json(point) -> List:
    return [number_to_json(v) for v in point]


def point_to_text(point) -> str:
    return '(' + ', '.join(number_to_decimal(v) for v in point) + ')'


def cell_to_json(cell: Cell) -> Dict:
    bounds = []
    for bound in cell.bounds:
        if bound.kind == SECTION:
            bounds.append({'kind': bound.kind, 'value': number_to_json(bound.value),
                           'vanishing': list(bound.polys)})
        else:
            bounds.append({'kind': bound.kind, 'lower': number_to_json(bound.lower),
                           'upper': number_to_json(bound.upper)})
    return {
        'id': cell.cell_id,
        'dimension': cell.dimension,
        'sample': point_to_json(cell.sample),
        'sample_decimal': point_to_text(cell.sample),
        'signs': list(cell.signs),
        'bounds': bounds,
        'region': cell.region,
    }


def decomposition_to_json(d: CellDecomposition, include_cells: bool = True) -> Dict:
    data = {
        'polynomials': [poly_to_text(p) for p in d.polynomials],
        'projection': [poly_to_text(p) for p in d.projection],
        'x_roots': [number_to_json(r) for r in d.x_roots],
        'stats': d.stats(),
    }
    if include_cells:
        data['cells'] = [cell_to_json(c) for c in d.cells]
    return data
