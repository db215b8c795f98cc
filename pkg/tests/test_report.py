"""JSON 报告与预设"""

import pytest

from core.presets import CASES, EXPRESSIONS, get_expression, list_presets, preset_text, resolve_expression
from core.report import REPORT_KEYS, build_report, dumps, loads
from core.settings import VerifierSettings, parse_gap
from engine import IdentityQuery, IdentityVerifier
from expr import REAL, variables


def test_report_has_fixed_keys():
    query = IdentityQuery.from_text('sqrt(z^2)', 'z')
    verdict = IdentityVerifier(max_workers=1).verify(query)
    report = loads(dumps(build_report('verify', query=query, verdict=verdict)))
    assert set(REPORT_KEYS) <= set(report)
    assert report['schema'] == VerifierSettings.json_schema_version()
    assert report['verdict']['overall'] == 'NotEqual'
    assert report['query']['lhs'] == 'sqrt(z^2)'
    assert report['cells']
    assert report['cut_sets'][0]['exactness'] == 'exact'


def test_report_samples_are_exact_strings():
    query = IdentityQuery.from_text('z', 'z+1/3')
    verdict = IdentityVerifier(max_workers=1).verify(query)
    report = loads(dumps(build_report('verify', query=query, verdict=verdict)))
    for cell in report['cells']:
        assert all(isinstance(v, str) for v in cell['sample'])


def test_dumps_is_deterministic():
    report = build_report('list-presets', presets=list_presets())
    assert dumps(report) == dumps(report)
    assert '"command": "list-presets"' in dumps(report)


def test_presets_build():
    for name in EXPRESSIONS:
        assert len(variables(get_expression(name))) <= 2, name


def test_composed_preset_uses_z():
    assert variables(get_expression('joukowski-f2-f')) == ['z']
    assert variables(get_expression('joukowski-f2')) == ['zeta']


def test_resolve_expression():
    assert resolve_expression('@kahan-g') == get_expression('kahan-g')
    assert variables(resolve_expression('@arctan-sum', REAL)) == ['x', 'y']
    with pytest.raises(ValueError):
        resolve_expression('@arctan-sum')
    with pytest.raises(KeyError):
        resolve_expression('@missing')
    assert preset_text('z+1') == 'z+1'


def test_cases_reference_known_presets():
    for case in CASES.values():
        for side in (case.lhs, case.rhs):
            if side.startswith('@'):
                assert side[1:] in EXPRESSIONS


def test_parse_gap():
    assert parse_gap('pi') == 'pi'
    assert parse_gap('1/10') == parse_gap('0.1')
    with pytest.raises(ValueError):
        parse_gap('-1')
