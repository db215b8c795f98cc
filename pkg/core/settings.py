import os
from fractions import Fraction
from typing import Optional, Union


class VerifierSettings:
    # 数值求值精度（比特）
    _default_precision = 128   # 默认工作精度
    _start_precision = 64      # 逐级加倍的起始精度
    _precision_budget_factor = 16  # 最大精度 = 请求精度 × 16

    # 离散间隙 δ：'pi' 或有理数字符串
    _discreteness_gap = 'pi'

    # CAD 预算
    _cell_budget = 100000
    _degree_budget = 64

    # 根式消元上限
    _radical_degree_cap = 40
    _radical_count_cap = 2
    _radical_nesting_cap = 1
    _radical_samples_per_component = 32

    # 并发
    _max_workers = 4
    _threads_env = 'BCV_THREADS'

    # 报告
    _json_schema_version = 1
    _tool_version = '0.3.0'

    @classmethod
    def default_precision(cls) -> int:
        return cls._default_precision

    @classmethod
    def start_precision(cls) -> int:
        return cls._start_precision

    @classmethod
    def max_precision(cls, requested: Optional[int] = None) -> int:
        """
        精度预算上限
        :param requested: 请求精度，缺省为默认精度
        """
        base = requested or cls._default_precision
        return base * cls._precision_budget_factor

    @classmethod
    def discreteness_gap(cls) -> Union[str, Fraction]:
        return parse_gap(cls._discreteness_gap)

    @classmethod
    def cell_budget(cls) -> int:
        return cls._cell_budget

    @classmethod
    def degree_budget(cls) -> int:
        return cls._degree_budget

    @classmethod
    def radical_caps(cls) -> dict:
        return {
            'degree': cls._radical_degree_cap,
            'count': cls._radical_count_cap,
            'nesting': cls._radical_nesting_cap,
            'samples': cls._radical_samples_per_component,
        }

    @classmethod
    def worker_count(cls) -> int:
        """
        并发线程数，环境变量 BCV_THREADS 可覆盖
        """
        raw = os.environ.get(cls._threads_env)
        if raw:
            try:
                value = int(raw)
                if value > 0:
                    return value
            except ValueError:
                pass
        return cls._max_workers

    @classmethod
    def json_schema_version(cls) -> int:
        return cls._json_schema_version

    @classmethod
    def tool_version(cls) -> str:
        return cls._tool_version


def parse_gap(value) -> Union[str, Fraction]:
    """把 δ 规范为 'pi' 或正有理数"""
    if isinstance(value, Fraction):
        gap = value
    elif isinstance(value, str) and value.strip().lower() == 'pi':
        return 'pi'
    else:
        gap = Fraction(str(value).strip())
    if gap <= 0:
        raise ValueError(f"离散间隙必须为正: {value}")
    return gap
