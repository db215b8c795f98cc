#!/usr/bin/env python3
"""
割线恒等式验证器主程序
提供命令行接口：验证、割线、CAD、求值
"""

import argparse
import logging
import os
import re
import sys
from datetime import datetime
from fractions import Fraction

# 添加项目路径
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from analyzer import ExpressionAnalyzer
from analyzer.expression_analyzer import ERROR_BUDGET, ERROR_DOMAIN, ERROR_PRECISION, ERROR_SYNTAX
from cad import cell_to_json, describe_cell, point_to_json, point_to_text
from core.errors import ExprSyntaxError, VerifierError
from core.presets import CASES, EXPRESSIONS, list_presets
from core.report import build_report, dumps
from core.settings import parse_gap
from engine import IdentityQuery, IdentityVerifier, ProgressReporter, VerdictKind
from expr import COMPLEX, REAL
from realalg.polynomials import poly_to_text
from visualization import CutPlotter, save_chart_as_svg

logger = logging.getLogger(__name__)

EXIT_EQUAL = 0
EXIT_NOT_EQUAL = 1
EXIT_INCONCLUSIVE = 2
EXIT_BUDGET = 3
EXIT_DOMAIN = 4
EXIT_USAGE = 64
EXIT_INTERNAL = 70

ERROR_EXIT_CODES = {
    ERROR_SYNTAX: EXIT_USAGE,
    ERROR_BUDGET: EXIT_BUDGET,
    ERROR_DOMAIN: EXIT_DOMAIN,
    ERROR_PRECISION: EXIT_INCONCLUSIVE,
}

_RANGE_RE = re.compile(r'^\s*\[([^,\]]+),([^\]]+)\]\s*x\s*\[([^,\]]+),([^\]]+)\]\s*$')


class VerifierArgumentParser(argparse.ArgumentParser):
    """参数错误以退出码 64 结束"""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"✗ 参数错误: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def info_stream(args):
    """json 模式下所有进度信息写到 stderr"""
    return sys.stderr if getattr(args, 'format', 'text') == 'json' else sys.stdout


def say(args, text: str = ''):
    print(text, file=info_stream(args))


def parse_range(text: str):
    m = _RANGE_RE.match(text)
    if not m:
        raise ValueError(f"范围格式应为 [a,b]x[c,d]: {text}")
    a, b, c, d = (float(Fraction(m.group(k).strip())) for k in range(1, 5))
    return (a, b), (c, d)


def report_syntax_error(exc: Exception) -> int:
    print(f"✗ 表达式错误: {exc}", file=sys.stderr)
    if isinstance(exc, ExprSyntaxError) and exc.text:
        print(exc.caret(), file=sys.stderr)
    return EXIT_USAGE


def report_failure(args, result: dict) -> int:
    """分析器结果字典失败时的输出与退出码"""
    print(f"✗ {result['error']}", file=sys.stderr)
    if result.get('caret'):
        print(result['caret'], file=sys.stderr)
    return ERROR_EXIT_CODES.get(result.get('error_type'), EXIT_INTERNAL)


def apply_preset(args, target: str):
    """--preset NAME 等同于 @NAME，模式与复变量名取自预设"""
    if not args.preset:
        return
    preset = EXPRESSIONS[args.preset]
    setattr(args, target, f"@{preset.name}")
    args.mode = preset.mode
    if preset.mode == COMPLEX and not args.variable:
        args.variable = preset.variable


def build_query(args) -> IdentityQuery:
    apply_preset(args, 'lhs')
    options = {
        'precision': args.precision,
        'gap': parse_gap(args.gap) if args.gap else None,
        'cell_budget': args.cell_budget,
        'degree_budget': args.degree_budget,
    }
    options = {k: v for k, v in options.items() if v is not None}
    if args.open_cells_only:
        options['test_sections'] = False
    if args.case:
        return IdentityQuery.from_case(args.case, **options)
    if not args.lhs or not args.rhs:
        raise ValueError("需要 --lhs（或 --preset）与 --rhs，或使用 --case")
    return IdentityQuery.from_text(args.lhs, args.rhs, args.mode, args.region, args.variable, **options)


def print_verdict(args, verdict):
    say(args, "\n--- 验证结论 ---")
    mark = '✓' if verdict.overall is VerdictKind.EQUAL else '✗'
    say(args, f"{mark} {verdict.overall.value}: {verdict.message}")
    if verdict.bottleneck:
        say(args, f"瓶颈: {verdict.bottleneck}")
    if verdict.decomposition is not None:
        stats = verdict.decomposition.stats()
        say(args, f"单元数: {stats['cells']}  最高次数: {stats['max_degree']}")
    counts = verdict.counts()
    say(args, "单元结论: " + ', '.join(f"{k} {v}" for k, v in counts.items()))

    if verdict.witnesses:
        say(args, "\n--- 反例 ---")
        for record in verdict.witnesses[:5]:
            say(args, f"单元 {record.cell_id}: {point_to_text(record.sample)}")
            say(args, f"  精确坐标: {point_to_json(record.sample)}")
            if record.enclosure is not None:
                say(args, f"  差值: {record.enclosure.format(15)}")
    if verdict.inconclusive_cells:
        say(args, "\n--- 无法判定的单元 ---")
        for record in verdict.inconclusive_cells[:10]:
            say(args, f"单元 {record.cell_id} {point_to_text(record.sample)}: {record.note}")

    say(args, "\n--- 假设 ---")
    for qualifier in verdict.ledger.get('qualifiers', []):
        say(args, f"- {qualifier}")


def cmd_verify(args) -> int:
    """验证恒等式"""
    try:
        query = build_query(args)
    except (ExprSyntaxError, KeyError, ValueError) as e:
        return report_syntax_error(e)

    say(args, f"左边: {query.lhs_text}")
    say(args, f"右边: {query.rhs_text}")
    if query.region_text:
        say(args, f"区域: {query.region_text}")

    reporter = ProgressReporter(update_interval=2, stream=info_stream(args))
    verifier = IdentityVerifier(max_workers=args.workers, progress_callback=reporter)
    plotter = CutPlotter()

    if args.grid:
        try:
            grid = verifier.verify_on_grid(query, args.grid)
        except ValueError as e:
            return report_syntax_error(e)
        summary = grid['summary']
        say(args, f"\n--- 网格证据 {grid['grid']} ---")
        for key, value in summary.items():
            say(args, f"{key}: {value}")
        if args.plot:
            fig = plotter.create_grid_chart(grid, title=f"网格证据 {grid['grid']}")
            print(f"{'✓' if save_chart_as_svg(fig, args.plot) else '✗'} 图表: {args.plot}",
                  file=info_stream(args))
        if args.format == 'json':
            nodes = [{'x': n['x'], 'y': n['y'], 'status': n['status']} for n in grid['nodes']]
            report = build_report('verify', query=query, cut_sets=grid['cut_sets'],
                                  timings={'grid': grid['elapsed']},
                                  grid={'spec': grid['grid'], 'summary': summary, 'nodes': nodes})
            print(dumps(report))
        # 网格只提供证据：有非零节点即为反例，否则无法下结论
        return EXIT_NOT_EQUAL if summary['nonzero'] else EXIT_INCONCLUSIVE

    verdict = verifier.verify(query)
    print_verdict(args, verdict)

    if args.export_excel:
        verifier.export_results_to_excel(verdict, args.export_excel)
    if args.plot and verdict.decomposition is not None:
        fig = plotter.create_cell_chart(verdict.decomposition, verdict.cells, title="CAD 单元与判定")
        print(f"{'✓' if save_chart_as_svg(fig, args.plot) else '✗'} 图表: {args.plot}",
              file=info_stream(args))
    if args.format == 'json':
        print(dumps(build_report('verify', query=query, verdict=verdict,
                                 summary=verifier.generate_summary(verdict))))
    return verdict.exit_code


def cmd_cuts(args) -> int:
    """列出割线"""
    apply_preset(args, 'expr')
    with ExpressionAnalyzer(args.mode, args.variable) as analyzer:
        result = analyzer.analyze_cuts(args.expr)
    if not result['success']:
        return report_failure(args, result)

    say(args, f"表达式: {result['expression']}")
    cut_sets = result['cut_sets']
    if not cut_sets:
        say(args, "没有割线")
    for s in cut_sets:
        flag = '' if s.exact else f" [数值证据: {s.note}]"
        say(args, f"\n{s.provenance}{flag}")
        for clause in s.clauses:
            say(args, f"  {clause}")

    if args.plot:
        try:
            x_range, y_range = parse_range(args.range)
        except ValueError as e:
            return report_syntax_error(e)
        fig = CutPlotter().create_cut_chart(cut_sets, x_range, y_range, title=f"割线: {result['expression']}")
        print(f"{'✓' if save_chart_as_svg(fig, args.plot) else '✗'} 图表: {args.plot}",
              file=info_stream(args))
    if args.format == 'json':
        print(dumps(build_report('cuts', query={'expr': result['expression'], 'mode': args.mode},
                                 cut_sets=cut_sets, timings={'cuts': result['elapsed']})))
    return EXIT_EQUAL


def cmd_cad(args) -> int:
    """柱形代数分解"""
    reporter = ProgressReporter(update_interval=2, stream=info_stream(args))
    with ExpressionAnalyzer() as analyzer:
        result = analyzer.decompose(args.polys, args.region, args.cell_budget, args.degree_budget,
                                    progress_callback=lambda i, n: reporter(i, n, f"x 单元 {i}"))
    if not result['success']:
        return report_failure(args, result)

    d = result['decomposition']
    stats = d.stats()
    say(args, f"多项式: {', '.join(poly_to_text(p) for p in d.polynomials) or '(无)'}")
    say(args, f"投影: {', '.join(poly_to_text(p) for p in d.projection) or '(无)'}")
    say(args, f"✓ 单元数: {stats['cells']}  (x 方向 {stats['x_cells']} 段)")
    if args.show_cells:
        for cell in d.cells:
            say(args, f"  {cell.cell_id:>8} [{cell.region}] {point_to_text(cell.sample)}  "
                      f"{describe_cell(cell, d.polynomials)}")

    if args.plot:
        fig = CutPlotter().create_cell_chart(d, title="CAD 样本点")
        print(f"{'✓' if save_chart_as_svg(fig, args.plot) else '✗'} 图表: {args.plot}",
              file=info_stream(args))
    if args.format == 'json':
        print(dumps(build_report('cad', query={'polys': args.polys, 'region': args.region},
                                 decomposition=d, cells=[cell_to_json(c) for c in d.cells],
                                 timings={'cad': result['elapsed']})))
    return EXIT_EQUAL


def cmd_eval(args) -> int:
    """在一点处求值"""
    apply_preset(args, 'expr')
    with ExpressionAnalyzer(args.mode, args.variable) as analyzer:
        result = analyzer.evaluate(args.expr, args.at, args.precision)
    if not result['success']:
        return report_failure(args, result)

    box = result['box']
    say(args, f"表达式: {result['expression']}")
    say(args, f"求值点: {args.at}")
    say(args, f"精度: {result['precision']} 位")
    say(args, f"✓ {box.format(args.digits)}")
    if args.format == 'json':
        print(dumps(build_report('eval', query={'expr': result['expression'], 'at': args.at,
                                                'mode': args.mode},
                                 timings={'eval': result['elapsed']}, value=box.to_json(args.digits))))
    return EXIT_EQUAL


def cmd_list_presets(args) -> int:
    """列出预设"""
    rows = list_presets()
    if args.format == 'json':
        print(dumps(build_report('list-presets', presets=rows)))
        return EXIT_EQUAL
    say(args, "预设表达式（在 --lhs/--rhs/--expr 中用 @名称 引用，或用 --preset 名称）:")
    for row in rows:
        if row['type'] == 'expression':
            say(args, f"  {row['name']:<16} [{row['mode']}] {row['text']}")
            say(args, f"  {'':<16} {row['description']}")
    say(args, "\n验证案例（--case 名称）:")
    for name, case in CASES.items():
        region = f" 区域 {case.region}" if case.region else ''
        say(args, f"  {name:<16} {case.lhs} = {case.rhs}{region}  ({case.description})")
    return EXIT_EQUAL


def add_common_arguments(p):
    p.add_argument('--format', choices=['text', 'json'], default='text', help='输出格式')
    p.add_argument('--verbose', action='store_true', help='输出调试日志')


def build_parser() -> argparse.ArgumentParser:
    parser = VerifierArgumentParser(
        description='割线恒等式验证器',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例用法:
  # 找出 g 与 q 不相等的点
  python main.py verify --case challenge1

  # 自定义恒等式
  python main.py verify --lhs "sqrt(z^2)" --rhs "z" --region "x>0"

  # g 与 h 的网格证据
  python main.py verify --case challenge2 --grid 61x61@[-6,2]x[-3,3]

  # 实模式反正切加法公式
  python main.py verify --mode real --lhs "arctan(x)+arctan(y)" --rhs "arctan((x+y)/(1-x*y))"

  # 割线与绘图
  python main.py cuts --preset kahan-q --plot q_cuts.svg

  # CAD
  python main.py cad --polys "x^2+y^2-1" --show-cells

  # 求值
  python main.py eval --expr "log(z)" --at "-1"

  退出码: 0 相等, 1 不相等, 2 无法判定, 3 CAD 预算耗尽, 4 定义域错误, 64 用法错误, 70 内部错误
        """
    )

    subparsers = parser.add_subparsers(dest='command', help='可用命令')

    # 验证
    verify_parser = subparsers.add_parser('verify', help='验证恒等式')
    left = verify_parser.add_mutually_exclusive_group()
    left.add_argument('--lhs', help='左边表达式（@名称 引用预设）')
    left.add_argument('--preset', choices=sorted(EXPRESSIONS), help='左边取预设表达式，等同于 --lhs @名称')
    left.add_argument('--case', choices=sorted(CASES), help='命名验证案例')
    verify_parser.add_argument('--rhs', help='右边表达式')
    verify_parser.add_argument('--mode', choices=[COMPLEX, REAL], default=COMPLEX, help='复模式或实模式')
    verify_parser.add_argument('--variable', help='复变量名，默认 z')
    verify_parser.add_argument('--region', help='区域，如 "x^2+y^2>1" 或 "y>0 & x<1"')
    verify_parser.add_argument('--precision', type=int, help='工作精度（比特），默认 128')
    verify_parser.add_argument('--gap', help='离散间隙 δ（pi 或有理数），默认 pi')
    verify_parser.add_argument('--cell-budget', type=int, help='CAD 单元预算')
    verify_parser.add_argument('--degree-budget', type=int, help='多项式次数预算')
    verify_parser.add_argument('--workers', type=int, help='并发线程数')
    verify_parser.add_argument('--open-cells-only', action='store_true', help='只检验二维开单元')
    verify_parser.add_argument('--grid', help='网格证据模式 WxH@[a,b]x[c,d]')
    verify_parser.add_argument('--plot', help='保存 SVG 图路径')
    verify_parser.add_argument('--export-excel', help='导出逐单元结果的 Excel 路径')
    add_common_arguments(verify_parser)

    # 割线
    cuts_parser = subparsers.add_parser('cuts', help='列出表达式的潜在割线')
    source = cuts_parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--expr', help='表达式（@名称 引用预设）')
    source.add_argument('--preset', choices=sorted(EXPRESSIONS), help='预设表达式名称')
    cuts_parser.add_argument('--mode', choices=[COMPLEX, REAL], default=COMPLEX, help='复模式或实模式')
    cuts_parser.add_argument('--variable', help='复变量名，默认 z')
    cuts_parser.add_argument('--plot', help='保存 SVG 图路径')
    cuts_parser.add_argument('--range', default='[-6,2]x[-3,3]', help='绘图范围 [a,b]x[c,d]')
    add_common_arguments(cuts_parser)

    # CAD
    cad_parser = subparsers.add_parser('cad', help='柱形代数分解')
    cad_parser.add_argument('--polys', required=True, help='分号分隔的多项式，可以为空')
    cad_parser.add_argument('--region', help='区域')
    cad_parser.add_argument('--cell-budget', type=int, help='单元预算')
    cad_parser.add_argument('--degree-budget', type=int, help='次数预算')
    cad_parser.add_argument('--show-cells', action='store_true', help='列出每个单元')
    cad_parser.add_argument('--plot', help='保存 SVG 图路径')
    add_common_arguments(cad_parser)

    # 求值
    eval_parser = subparsers.add_parser('eval', help='区间求值')
    source = eval_parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--expr', help='表达式（@名称 引用预设）')
    source.add_argument('--preset', choices=sorted(EXPRESSIONS), help='预设表达式名称')
    eval_parser.add_argument('--at', default='0', help='求值点：复模式 "a+b*I"，实模式 "x,y"')
    eval_parser.add_argument('--mode', choices=[COMPLEX, REAL], default=COMPLEX, help='复模式或实模式')
    eval_parser.add_argument('--variable', help='复变量名，默认 z')
    eval_parser.add_argument('--precision', type=int, help='精度（比特），默认 128')
    eval_parser.add_argument('--digits', type=int, default=30, help='输出有效数字')
    add_common_arguments(eval_parser)

    # 预设
    presets_parser = subparsers.add_parser('list-presets', help='列出预设表达式与案例')
    add_common_arguments(presets_parser)

    return parser


COMMANDS = {
    'verify': cmd_verify,
    'cuts': cmd_cuts,
    'cad': cmd_cad,
    'eval': cmd_eval,
    'list-presets': cmd_list_presets,
}


def main(argv=None) -> int:
    """主函数"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(asctime)s %(name)s %(levelname)s: %(message)s', stream=sys.stderr)

    say(args, f"割线恒等式验证器 - {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
    say(args, "=" * 50)

    try:
        return COMMANDS[args.command](args)
    except VerifierError as e:
        print(f"✗ 执行错误: {e}", file=sys.stderr)
        logger.debug("执行错误", exc_info=True)
        return EXIT_INTERNAL
    except Exception as e:
        print(f"✗ 内部错误: {e}", file=sys.stderr)
        logger.debug("内部错误", exc_info=True)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
