"""
测试公共配置
hypothesis 配置档：fast（默认）、ci、thorough，通过 HYPOTHESIS_PROFILE 选择
"""

import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

settings.register_profile('fast', max_examples=25, deadline=None)
settings.register_profile('ci', max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile('thorough', max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'fast'))


def pytest_configure(config):
    # 用 -m "not slow" 跳过
    config.addinivalue_line('markers', 'slow: 完整案例验证，耗时较长')

