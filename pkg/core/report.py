"""
运行报告（RunReport）
键固定，JSON 按键排序输出；除 timings 外同样的调用得到逐字节相同的结果
"""

import json
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Optional

from core.settings import VerifierSettings

REPORT_KEYS = ('schema', 'tool_version', 'command', 'query', 'verdict', 'cells',
               'cut_sets', 'decomposition', 'ledger', 'timings')


def _json_default(obj):
    if isinstance(obj, Fraction):
        from realalg.algebraic import format_fraction
        return format_fraction(obj)
    if isinstance(obj, complex):
        return [repr(obj.real), repr(obj.imag)]
    if isinstance(obj, Enum):
        return obj.value
    if hasattr(obj, 'to_json'):
        return obj.to_json()
    raise TypeError(f"无法序列化的对象: {type(obj).__name__}")


def cut_sets_to_json(cut_sets: Iterable) -> list:
    return [s.to_json() for s in cut_sets]


def verdict_to_json(verdict) -> Dict:
    return {
        'overall': verdict.overall.value,
        'message': verdict.message,
        'bottleneck': verdict.bottleneck,
        'witnesses': [c.to_dict() for c in verdict.witnesses],
        'inconclusive_cells': [c.cell_id for c in verdict.inconclusive_cells],
        'counts': verdict.counts(),
    }


def build_report(command: str, query=None, verdict=None, cut_sets=None, decomposition=None,
                 cells: Optional[list] = None, ledger: Optional[Dict] = None,
                 timings: Optional[Dict] = None, **extra) -> Dict:
    """
    组装报告字典
    verdict 给出时，cut_sets / decomposition / cells / ledger 缺省取自 verdict
    """
    from cad.serialize import decomposition_to_json

    if verdict is not None:
        cut_sets = verdict.cut_sets if cut_sets is None else cut_sets
        decomposition = verdict.decomposition if decomposition is None else decomposition
        cells = [c.to_dict() for c in verdict.cells] if cells is None else cells
        ledger = verdict.ledger if ledger is None else ledger
        timings = verdict.timings if timings is None else timings

    report = {
        'schema': VerifierSettings.json_schema_version(),
        'tool_version': VerifierSettings.tool_version(),
        'command': command,
        'query': query.to_dict() if hasattr(query, 'to_dict') else query,
        'verdict': verdict_to_json(verdict) if verdict is not None else None,
        'cells': cells or [],
        'cut_sets': cut_sets_to_json(cut_sets or []),
        'decomposition': decomposition_to_json(decomposition, include_cells=False) if decomposition else None,
        'ledger': ledger or {},
        'timings': {k: round(v, 6) for k, v in (timings or {}).items()},
    }
    report.update(extra)
    return report


def dumps(report: Dict) -> str:
    return json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2, default=_json_default)


def loads(text: str) -> Dict:
    return json.loads(text)
