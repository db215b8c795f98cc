"""命令行入口与退出码"""

import json

import pytest

from main import EXIT_DOMAIN, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_log_minus_one(capsys):
    code, out, _ = run(capsys, 'eval', '--expr', 'log(z)', '--at', '-1')
    assert code == 0
    assert '3.14159265358979' in out


def test_eval_json_goes_to_stdout(capsys):
    code, out, err = run(capsys, 'eval', '--expr', 'sqrt(z)', '--at', '4', '--format', 'json')
    assert code == 0
    report = json.loads(out)
    assert report['command'] == 'eval'
    assert report['value']['precision'] >= 128
    assert '割线恒等式验证器' in err


def test_eval_pole_is_domain_error(capsys):
    code, _, err = run(capsys, 'eval', '--expr', '1/z', '--at', '0')
    assert code == EXIT_DOMAIN
    assert '✗' in err


def test_syntax_error_exit_code(capsys):
    code, _, err = run(capsys, 'eval', '--expr', 'sqrt(z', '--at', '1')
    assert code == EXIT_USAGE
    assert '^' in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(['verify', '--mode', 'quaternion'])
    assert info.value.code == EXIT_USAGE


def test_verify_exit_codes(capsys):
    assert run(capsys, 'verify', '--lhs', 'z', '--rhs', 'z')[0] == 0
    assert run(capsys, 'verify', '--lhs', 'sqrt(z^2)', '--rhs', 'z')[0] == 1
    assert run(capsys, 'verify', '--lhs', 'sqrt(z^2)', '--rhs', 'z', '--cell-budget', '3')[0] == 2


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, 'verify', '--lhs', 'sqrt(z^2)', '--rhs', 'z', '--region', 'x>0',
                       '--format', 'json')
    assert code == 0
    report = json.loads(out)
    assert report['verdict']['overall'] == 'EqualOnRegion'
    assert report['query']['region'] == 'x>0'


def test_verify_needs_both_sides(capsys):
    code, _, _ = run(capsys, 'verify', '--lhs', 'z')
    assert code == EXIT_USAGE


def test_cuts_command(capsys):
    code, out, _ = run(capsys, 'cuts', '--expr', 'log(z)')
    assert code == 0
    assert 'y = 0 ∧ x < 0' in out


def test_cad_command(capsys):
    code, out, _ = run(capsys, 'cad', '--polys', 'x^2+y^2-1', '--format', 'json')
    assert code == 0
    assert json.loads(out)['decomposition']['stats']['cells'] == 13


def test_cad_budget_exit_code(capsys):
    code, _, _ = run(capsys, 'cad', '--polys', 'x^2+y^2-1', '--cell-budget', '4')
    assert code == 3


def test_list_presets(capsys):
    code, out, _ = run(capsys, 'list-presets')
    assert code == 0
    assert 'kahan-g' in out
    assert 'challenge1' in out


def test_eval_preset_takes_its_mode(capsys):
    # 实模式预设：arctan((1/2+1/3)/(1-1/6)) = π/4
    code, out, _ = run(capsys, 'eval', '--preset', 'arctan-add', '--at', '1/2,1/3')
    assert code == 0
    assert '0.785398163397448' in out


def test_cuts_preset_matches_at_reference(capsys):
    code, by_preset, _ = run(capsys, 'cuts', '--preset', 'joukowski-f')
    assert code == 0
    _, by_reference, _ = run(capsys, 'cuts', '--expr', '@joukowski-f')
    # 首行是带时间戳的标题
    assert by_preset.splitlines()[1:] == by_reference.splitlines()[1:]


@pytest.mark.parametrize('argv', [
    ['verify', '--preset', 'kahan-g', '--lhs', 'z', '--rhs', 'z'],
    ['verify', '--preset', 'no-such-preset', '--rhs', 'z'],
    ['cuts', '--preset', 'kahan-q', '--expr', 'log(z)'],
])
def test_preset_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == EXIT_USAGE
