"""
命名表达式与命名验证案例
复合函数通过把内层表达式代入外层变量得到
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from expr.nodes import Expr, substitute
from expr.parser import COMPLEX, REAL, parse
from expr.printer import to_text


@dataclass(frozen=True)
class ExpressionPreset:
    name: str
    text: str
    mode: str = COMPLEX
    variable: str = 'z'
    description: str = ''
    inner: Optional[str] = None  # 代入 variable 的内层预设

    def build(self) -> Expr:
        e = parse(self.text, self.mode, self.variable if self.mode == COMPLEX else None)
        if self.inner:
            e = substitute(e, self.variable, get_expression(self.inner))
        return e


EXPRESSIONS: Dict[str, ExpressionPreset] = {p.name: p for p in [
    ExpressionPreset('kahan-g', '2*arccosh(1+2*z/3) - arccosh((5*z+12)/(3*(z+4)))',
                     description="Kahan 开槽带状区域映射 g"),
    ExpressionPreset('kahan-q', '2*arccosh(2*(z+3)*sqrt((z+3)/(27*(z+4))))',
                     description="g 的化简候选 q，在泪滴区域内不相等"),
    ExpressionPreset('kahan-h', '2*log((1/3)*sqrt(3*z+12)*(sqrt(z+3)+sqrt(z))^2/(2*sqrt(z+3)+sqrt(z)))',
                     description="g 的化简候选 h，全平面相等"),
    ExpressionPreset('joukowski-f', '(1/2)*(z+1/z)', description="Joukowski 映射"),
    ExpressionPreset('joukowski-f2', 'zeta+sqrt(zeta-1)*sqrt(zeta+1)', variable='zeta',
                     description="|z| > 1 上的逆映射"),
    ExpressionPreset('joukowski-f4', 'zeta+sqrt(zeta-1)*I*sqrt(-zeta-1)', variable='zeta',
                     description="上半平面上的逆映射候选"),
    ExpressionPreset('joukowski-f2-f', 'zeta+sqrt(zeta-1)*sqrt(zeta+1)', variable='zeta',
                     inner='joukowski-f', description="f2(f(z))"),
    ExpressionPreset('joukowski-f4-f', 'zeta+sqrt(zeta-1)*I*sqrt(-zeta-1)', variable='zeta',
                     inner='joukowski-f', description="f4(f(z))"),
    ExpressionPreset('arctan-sum', 'arctan(x)+arctan(y)', mode=REAL,
                     description="反正切加法公式左边"),
    ExpressionPreset('arctan-add', 'arctan((x+y)/(1-x*y))', mode=REAL,
                     description="反正切加法公式右边，xy > 1 时相差 ±π"),
]}


@dataclass(frozen=True)
class CasePreset:
    name: str
    lhs: str
    rhs: str
    mode: str = COMPLEX
    region: Optional[str] = None
    description: str = ''
    options: Dict = field(default_factory=dict)


CASES: Dict[str, CasePreset] = {c.name: c for c in [
    CasePreset('challenge1', '@kahan-g', '@kahan-q', description="g 与 q 不相等（找反例）"),
    CasePreset('challenge2', '@kahan-g', '@kahan-h', description="g 与 h 相等"),
    CasePreset('joukowski-f2', '@joukowski-f2-f', 'z', region='x^2+y^2>1',
               description="f2 是 f 在 |z| > 1 上的逆"),
    # 单位半圆（截面）上 f4(f(z)) ≠ z，例如 z = i；案例只检验开单元
    CasePreset('joukowski-f4', '@joukowski-f4-f', 'z', region='y>0',
               description="f4 是 f 在上半平面开单元上的逆", options={'test_sections': False}),
    CasePreset('arctan-add', '@arctan-sum', '@arctan-add', mode=REAL,
               description="实模式反正切加法公式"),
]}


def get_expression(name: str) -> Expr:
    if name not in EXPRESSIONS:
        raise KeyError(f"未找到预设表达式: {name}")
    return EXPRESSIONS[name].build()


def resolve_expression(text: str, mode: str = COMPLEX, variable: Optional[str] = None) -> Expr:
    """'@name' 取预设，其余按表达式解析"""
    text = text.strip()
    if text.startswith('@'):
        preset = EXPRESSIONS.get(text[1:])
        if preset is None:
            raise KeyError(f"未找到预设表达式: {text[1:]}")
        if preset.mode != mode:
            raise ValueError(f"预设 {preset.name} 属于 {preset.mode} 模式")
        return preset.build()
    return parse(text, mode, variable)


def preset_text(text: str) -> str:
    """预设展开后的表达式文本，用于报告"""
    text = text.strip()
    if text.startswith('@') and text[1:] in EXPRESSIONS:
        return to_text(EXPRESSIONS[text[1:]].build())
    return text


def list_presets() -> List[Dict]:
    rows = [{'type': 'expression', 'name': p.name, 'mode': p.mode, 'text': to_text(p.build()),
             'description': p.description} for p in EXPRESSIONS.values()]
    rows += [{'type': 'case', 'name': c.name, 'mode': c.mode,
              'text': f"{c.lhs} = {c.rhs}" + (f" on {c.region}" if c.region else ''),
              'description': c.description} for c in CASES.values()]
    return rows
