"""
割线映射
把表达式中每个非解析节点的定义割线拉回到 (x, y) 平面，得到潜在割线的半代数描述

三条路径：
- 有理参数：Re/Im 代入线性条件，乘去分母；分母变号时按其符号分支
- 单根式乘积 R1·sqrt(ρ)：改用 W = R1²·ρ，精确消去根式
- 一般根式参数：结果式消去辅助变量，再在候选曲线上采样确定哪些分支落在割线上
"""

import logging
from dataclasses import replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy import Poly, QQ

from core.errors import (
    CadBudgetExceeded, EliminationBudgetError, EvaluationDomainError, UnsupportedNodeError,
)
from core.settings import VerifierSettings
from expr.nodes import (
    FUNCTION_KINDS, ONE, Expr, NodeKind, is_rational, non_analytic_nodes, variables, walk,
)
from expr.parser import COMPLEX
from expr.printer import to_text
from expr.reim import RatFunPair, complex_rational, reim_split
from realalg import intervals
from realalg.polynomials import (
    BIVAR_GENS, Y, bivar, degree_in, eval_exact, factor_irreducible, is_constant, is_zero,
    poly_to_text, substitute_x, to_rational, univar,
)
from realalg.roots import real_roots
from .base_function import (
    NUMERIC_EVIDENCE, Clause, ElementaryFunction, FunctionFactory, Relation,
    SemiAlgebraicSet, SignCondition,
)

logger = logging.getLogger(__name__)

AUXILIARY_SYMBOLS = [sympy.symbols('u1 v1'), sympy.symbols('u2 v2')]

SAMPLE_ABSCISSAE = [Fraction(k, 2) for k in range(-16, 16)]
SAMPLE_ORDINATES = [Fraction(-2), Fraction(-1, 2), Fraction(1, 2), Fraction(2)]
SAMPLE_PRECISION = 128


def _scaled(part: Tuple[Poly, Poly], coefficient: Fraction, constant: Fraction) -> Poly:
    num, den = part
    return bivar(num.mul_ground(to_rational(coefficient)) + den.mul_ground(to_rational(constant)))


_DENOMINATOR_SIGNS: Dict[str, int] = {}


def _evidently_nonnegative(p: Poly) -> bool:
    """各项系数为正且 x、y 的指数均为偶数"""
    return all(c > 0 and ey % 2 == 0 and ex % 2 == 0 for (ey, ex), c in p.terms())


def denominator_sign(den: Poly) -> int:
    """
    分母在其非零点上的符号
    +1 处处为正，-1 处处为负，0 表示变号（需要按分母符号分支）
    """
    den = bivar(den)
    if is_constant(den):
        value = eval_exact(den, 0, 0)
        return 1 if value > 0 else -1
    if _evidently_nonnegative(den):
        return 1
    key = poly_to_text(den)
    if key not in _DENOMINATOR_SIGNS:
        from cad.decomposition import decompose

        try:
            signs = {cell.signs[0] for cell in decompose([den], max_workers=1).cells}
        except CadBudgetExceeded:
            signs = {-1, 1}
        if -1 not in signs:
            _DENOMINATOR_SIGNS[key] = 1
        elif 1 not in signs:
            _DENOMINATOR_SIGNS[key] = -1
        else:
            _DENOMINATOR_SIGNS[key] = 0
        logger.debug("分母 %s 的符号: %d", key, _DENOMINATOR_SIGNS[key])
    return _DENOMINATOR_SIGNS[key]


def over_denominator(part: Tuple[Poly, Poly], coefficient: Fraction, constant: Fraction,
                     relation: Relation) -> List[List[SignCondition]]:
    """
    coefficient·(num/den) + constant REL 0 化为多项式条件的析取
    分母变号时按 den > 0 与 den < 0 拆成两支
    """
    poly = _scaled(part, coefficient, constant)
    den = part[1]
    sign = denominator_sign(den)
    if relation in (Relation.EQ, Relation.NE) or sign > 0:
        return [[SignCondition.of(poly, relation)]]
    if sign < 0:
        return [[SignCondition.of(poly, relation.flipped())]]
    return [[SignCondition.of(den, Relation.GT), SignCondition.of(poly, relation)],
            [SignCondition.of(den, Relation.LT), SignCondition.of(poly, relation.flipped())]]


def _conjunction(branches: List[List[SignCondition]],
                 alternatives: List[List[SignCondition]]) -> List[List[SignCondition]]:
    return [branch + alt for branch in branches for alt in alternatives]


def _guards(*pairs: RatFunPair) -> List[SignCondition]:
    """参数有定义：所有非常数分母 ≠ 0"""
    guards = []
    for pair in pairs:
        for den in (pair.re_den, pair.im_den):
            if not is_constant(den):
                guards.append(SignCondition.of(den, Relation.NE))
    return guards


def _component(pair: RatFunPair, name: str) -> Tuple[Poly, Poly]:
    return pair.re if name == 're' else pair.im


def _provenance(function: ElementaryFunction, arg: Expr) -> str:
    return f"{function.get_function_name()}({to_text(arg)})"


def _fallback(provenance: str, reason: str) -> SemiAlgebraicSet:
    logger.warning("割线 %s 退化为数值证据: %s", provenance, reason)
    return SemiAlgebraicSet(provenance=provenance, exactness=NUMERIC_EVIDENCE, note=reason)


# ---- 有理参数 ----

def cuts_rational_arg(kind: NodeKind, arg: Expr, provenance: Optional[str] = None) -> SemiAlgebraicSet:
    """
    有理参数 w = A(x,y) + i·B(x,y) 的割线
    :param kind: 函数类型（NodeKind.DIV 表示极点）
    :param arg: 参数表达式，不能含函数节点
    """
    function = FunctionFactory.create_function(kind)
    provenance = provenance or _provenance(function, arg)
    result = SemiAlgebraicSet(provenance=provenance)
    if not variables(arg):
        return result
    pair = reim_split(arg)
    guards = _guards(pair)
    for clause in function.defining_cut():
        branches: List[List[SignCondition]] = [[]]
        for c in clause:
            branches = _conjunction(branches, over_denominator(
                _component(pair, c.component), c.coefficient, c.constant, c.relation))
        for conditions in branches:
            result.add(Clause.build(conditions + guards, provenance))
    logger.debug("有理割线 %s: %s", provenance, result)
    return result


# ---- 根式参数 ----

def _radicals(arg: Expr) -> List[Expr]:
    """参数中互不相同的根式节点；嵌套或其他函数节点超出可消元范围"""
    found: List[Expr] = []
    for _, node in walk(arg):
        if node.kind is NodeKind.SQRT:
            if not is_rational(node.args[0]):
                raise EliminationBudgetError("根式嵌套超出上限")
            if node not in found:
                found.append(node)
        elif node.kind in FUNCTION_KINDS:
            raise UnsupportedNodeError(f"参数含 {node.kind.value}，无法消元")
    return found


def replace_node(e: Expr, target: Expr, replacement: Expr) -> Expr:
    if e == target:
        return replacement
    if not e.args:
        return e
    return replace(e, args=tuple(replace_node(a, target, replacement) for a in e.args))


def _aux_degrees(p: Poly, u, v) -> set:
    iu, iv = p.gens.index(u), p.gens.index(v)
    return {m[iu] + m[iv] for m in p.monoms()} if not p.is_zero else set()


def radical_factorization(arg: Expr, radicals: Sequence[Expr]) -> Optional[Tuple[Expr, Expr]]:
    """
    参数形如 R1·sqrt(ρ)（R1、ρ 有理）时返回 (R1, ρ)，否则 None
    """
    if len(radicals) != 1:
        return None
    s = radicals[0]
    u, v = AUXILIARY_SYMBOLS[0]
    value = complex_rational(arg, radicals={s: (u, v)})
    if _aux_degrees(value.den, u, v) - {0}:
        return None
    if _aux_degrees(value.re, u, v) | _aux_degrees(value.im, u, v) != {1}:
        return None
    return replace_node(arg, s, ONE), s.args[0]


def _sign_clauses(factor: RatFunPair, relation: Relation) -> List[List[SignCondition]]:
    """
    w = R1·s 为非零实数时 w 的符号：
    Re R1 ≠ 0 时与 Re R1 同号（主值 Re s ≥ 0），Re R1 = 0 时与 Im R1 反号（s 为非负虚数）
    """
    if relation not in (Relation.LT, Relation.GT):
        raise ValueError(f"不支持的符号条件: {relation}")
    one, zero = Fraction(1), Fraction(0)
    same = over_denominator(factor.re, one, zero, relation)
    on_axis = _conjunction(over_denominator(factor.re, one, zero, Relation.EQ),
                           over_denominator(factor.im, one, zero, relation.flipped()))
    return same + on_axis


def squared_cuts(function: ElementaryFunction, factor: Expr, radicand: Expr,
                 provenance: str) -> SemiAlgebraicSet:
    """单根式乘积参数的精确割线"""
    r1 = complex_rational(factor)
    rho = complex_rational(radicand)
    squared = RatFunPair.from_complex(r1 * r1 * rho)
    r1_pair = RatFunPair.from_complex(r1)
    guards = _guards(squared, r1_pair, RatFunPair.from_complex(rho))
    result = SemiAlgebraicSet(provenance=provenance)
    for clause in function.squared_cut():
        branches: List[List[SignCondition]] = [[]]
        sign_relation = None
        for component, relation, threshold in clause:
            if component == 'sign':
                sign_relation = relation
                continue
            branches = _conjunction(branches, over_denominator(
                _component(squared, component), Fraction(1), -threshold, relation))
        if sign_relation is not None:
            branches = _conjunction(branches, _sign_clauses(r1_pair, sign_relation))
        for conditions in branches:
            result.add(Clause.build(conditions + guards, provenance))
    logger.debug("平方路径割线 %s: %s", provenance, result)
    return result


def _lift(expr, gens) -> Poly:
    return Poly(expr, *gens, domain=QQ)


def _resultant(p: Poly, q: Poly, var, gens) -> Poly:
    if p.degree(var) <= 0:
        return p
    if q.degree(var) <= 0:
        return q
    return _lift(sympy.resultant(p.as_expr(), q.as_expr(), var), gens)


def _check_degree(p: Poly, cap: int, stage: str) -> Poly:
    if p.is_zero:
        raise EliminationBudgetError(f"{stage}: 消元结果恒为零")
    if p.total_degree() > cap:
        raise EliminationBudgetError(f"{stage}: 次数 {p.total_degree()} 超过上限 {cap}")
    return p


def _radical_relations(radicand: Expr, u, v, gens) -> Tuple[Poly, Poly]:
    """
    s = u + iv 满足 s² = ρ = (a + ib)/d：
    d(u² - v²) - a = 0, 2d·uv - b = 0
    """
    rho = complex_rational(radicand)
    a, b, d = (_lift(p.as_expr(), gens) for p in (rho.re, rho.im, rho.den))
    h1 = d * _lift(u ** 2 - v ** 2, gens) - a
    h2 = d * _lift(2 * u * v, gens) - b
    return h1, h2


def eliminate_radicals(equation: Poly, radicals: Sequence[Expr], aux: Dict[Expr, Tuple],
                       gens, cap: int) -> Poly:
    """依次消去每个根式的 (u, v)，返回 (y, x) 上的多项式"""
    p = equation
    for node in reversed(list(radicals)):
        u, v = aux[node]
        h1, h2 = _radical_relations(node.args[0], u, v, gens)
        r1 = _check_degree(_resultant(p, h2, v, gens), cap, "消去 v")
        r2 = _check_degree(_resultant(h1, h2, v, gens), cap, "消去 v")
        p = _check_degree(_resultant(r1, r2, u, gens), cap, "消去 u")
    return bivar(p.as_expr())


def _curve_points(curve: Poly, count: int) -> List[Tuple]:
    """曲线 curve = 0 上的实样本点"""
    points: List[Tuple] = []
    if degree_in(curve, Y) <= 0:
        for root in real_roots(univar(curve.as_expr())):
            points.extend((root, y0) for y0 in SAMPLE_ORDINATES)
    else:
        for x0 in SAMPLE_ABSCISSAE:
            fiber = substitute_x(curve, x0)
            if is_zero(fiber) or is_constant(fiber):
                continue
            points.extend((x0, root) for root in real_roots(fiber))
    if len(points) > count:
        step = len(points) / count
        points = [points[int(i * step)] for i in range(count)]
    return points


def classify_point(function: ElementaryFunction, arg: Expr, point: Tuple) -> Optional[bool]:
    """参数在样本点处是否落在割线上，无法判定时为 None"""
    from numeval.evaluator import Evaluator

    names = variables(arg)
    if len(names) != 1:
        return None
    try:
        box = Evaluator(COMPLEX).evaluate(arg, {names[0]: point}, SAMPLE_PRECISION)
    except EvaluationDomainError:
        return None
    if not box.is_finite:
        return None
    return function.on_cut(intervals.to_fractions(box.re), intervals.to_fractions(box.im))


def eliminated_cuts(function: ElementaryFunction, arg: Expr, radicals: Sequence[Expr],
                    provenance: str) -> SemiAlgebraicSet:
    """
    一般根式参数：消元得到候选曲线，采样决定保留哪些不可约分量
    只有一个根式且所有分量采样结论一致时标记为精确
    """
    caps = VerifierSettings.radical_caps()
    aux = {node: AUXILIARY_SYMBOLS[i] for i, node in enumerate(radicals)}
    gens = list(BIVAR_GENS)
    for u, v in aux.values():
        gens.extend([u, v])
    value = complex_rational(arg, radicals=aux, gens=gens)
    guards = _guards(*(reim_split(node.args[0]) for node in radicals))
    exact = len(radicals) == 1
    result = SemiAlgebraicSet(provenance=provenance)

    curves = []
    for component in function.equation_components():
        equation = _lift((value.re if component == 're' else value.im).as_expr(), gens)
        curves.append(eliminate_radicals(equation, radicals, aux, gens, caps['degree']))

    if len(curves) > 1:
        # 多个方程（极点）：候选点集取交，不再采样
        conditions = [SignCondition.of(c, Relation.EQ) for c in curves]
        result.add(Clause.build(conditions + guards, provenance))
    else:
        for factor, _ in factor_irreducible(curves[0]):
            verdicts = [classify_point(function, arg, p)
                        for p in _curve_points(factor, caps['samples'])]
            on = sum(1 for v in verdicts if v is True)
            off = sum(1 for v in verdicts if v is False)
            logger.debug("候选分量 %s: 在割线上 %d, 不在 %d, 未定 %d",
                         poly_to_text(factor), on, off, len(verdicts) - on - off)
            if verdicts and off == len(verdicts):
                continue
            if not verdicts or on != len(verdicts):
                exact = False
            result.add(Clause.build([SignCondition.of(factor, Relation.EQ)] + guards, provenance))

    if not exact:
        result.exactness = NUMERIC_EVIDENCE
        result.note = "根式消元的分量由采样确定"
    return result


def cuts_radical_arg(kind: NodeKind, arg: Expr, provenance: Optional[str] = None) -> SemiAlgebraicSet:
    """
    含根式参数的割线
    超出根式个数、嵌套或次数上限时抛出 EliminationBudgetError
    """
    function = FunctionFactory.create_function(kind)
    provenance = provenance or _provenance(function, arg)
    radicals = _radicals(arg)
    caps = VerifierSettings.radical_caps()
    if len(radicals) > caps['count']:
        raise EliminationBudgetError(f"根式个数 {len(radicals)} 超过上限 {caps['count']}")
    shape = radical_factorization(arg, radicals)
    if shape is not None:
        return squared_cuts(function, shape[0], shape[1], provenance)
    return eliminated_cuts(function, arg, radicals, provenance)


# ---- 整个表达式 ----

def node_cuts(kind: NodeKind, arg: Expr, provenance: str) -> SemiAlgebraicSet:
    """单个节点的割线，无法精确描述时退化为数值证据集"""
    try:
        if is_rational(arg):
            return cuts_rational_arg(kind, arg, provenance)
        return cuts_radical_arg(kind, arg, provenance)
    except (EliminationBudgetError, UnsupportedNodeError) as exc:
        return _fallback(provenance, str(exc))


def expression_cuts(e: Expr) -> List[SemiAlgebraicSet]:
    """
    复模式表达式的全部潜在割线
    每个非解析节点一个集合，外加除法分母的极点集合；精确且为空的集合不列出
    """
    sets: List[SemiAlgebraicSet] = []
    for node in non_analytic_nodes(e):
        function = FunctionFactory.create_function(node.kind)
        provenance = f"{_provenance(function, node.argument)} @ {'.'.join(map(str, node.path)) or 'root'}"
        sets.append(node_cuts(node.kind, node.argument, provenance))
    for path, node in walk(e):
        if node.kind is NodeKind.DIV and variables(node.args[1]):
            provenance = f"pole({to_text(node.args[1])}) @ {'.'.join(map(str, path)) or 'root'}"
            sets.append(node_cuts(NodeKind.DIV, node.args[1], provenance))

    result: List[SemiAlgebraicSet] = []
    seen = set()
    for s in sets:
        if s.exact and s.is_empty():
            continue
        key = (str(s), s.exactness, s.note)
        if key in seen:
            continue
        seen.add(key)
        result.append(s)
    logger.info("共 %d 个割线集合（数值证据 %d 个）", len(result), sum(1 for s in result if not s.exact))
    return result


def real_discontinuity_locus(e: Expr) -> SemiAlgebraicSet:
    """
    实模式下可能的不连续点：arctan 参数的极点、根式被开方数的边界、除法极点
    log 与 arccosh 不支持
    """
    locus = SemiAlgebraicSet(provenance=f"实模式不连续点 {to_text(e)}")
    for path, node in walk(e):
        kind = node.kind
        if kind in (NodeKind.LOG, NodeKind.ARCCOSH):
            raise UnsupportedNodeError(f"实模式不支持 {kind.value}")
        if kind not in (NodeKind.ARCTAN, NodeKind.SQRT, NodeKind.DIV):
            continue
        arg = node.args[1] if kind is NodeKind.DIV else node.args[0]
        if not variables(arg):
            continue
        if not is_rational(arg):
            raise UnsupportedNodeError(f"实模式下 {kind.value} 的参数必须为有理式")
        provenance = f"{kind.value}({to_text(arg)})"
        num, den = reim_split(arg).re
        if kind is NodeKind.ARCTAN:
            locus.add(Clause.build([SignCondition.of(den, Relation.EQ)], provenance))
        elif kind is NodeKind.SQRT:
            locus.add(Clause.build([SignCondition.of(num, Relation.EQ)], provenance))
            locus.add(Clause.build([SignCondition.of(den, Relation.EQ)], provenance))
            locus.add(Clause.build([SignCondition.of(bivar(num * den), Relation.LT)], provenance))
        else:
            locus.add(Clause.build([SignCondition.of(num, Relation.EQ)], provenance))
    logger.info("实模式不连续点: %s", locus)
    return locus
