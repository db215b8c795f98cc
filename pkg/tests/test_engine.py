"""恒等式验证流程"""

import math
from fractions import Fraction

import pytest

from core.errors import ModeViolationError
from engine import (
    EXIT_CODES, CellStatus, GridSpec, IdentityQuery, IdentityVerifier, VerdictKind,
)
from expr import REAL
from realalg import X, Y, bivar, compare, sign_at

TEARDROP = bivar(2 * X ** 3 + 21 * X ** 2 + 72 * X + 81 + 2 * X * Y ** 2 + 5 * Y ** 2)


@pytest.fixture
def verifier():
    return IdentityVerifier(max_workers=2)


def test_trivial_identity(verifier):
    verdict = verifier.verify(IdentityQuery.from_text('z', 'z'))
    assert verdict.overall is VerdictKind.EQUAL
    assert verdict.exit_code == 0
    assert len(verdict.cells) == 1


def test_real_line_not_equal(verifier):
    query = IdentityQuery.from_text('x', 'x+1', mode=REAL)
    assert query.dimension == 1
    verdict = verifier.verify(query)
    assert verdict.overall is VerdictKind.NOT_EQUAL
    assert verdict.exit_code == EXIT_CODES[VerdictKind.NOT_EQUAL] == 1
    witness = verdict.witnesses[0]
    assert witness.enclosure.contains(-1, 0)


def test_sqrt_of_square_fails_on_left_half_plane(verifier):
    verdict = verifier.verify(IdentityQuery.from_text('sqrt(z^2)', 'z'))
    assert verdict.overall is VerdictKind.NOT_EQUAL
    for record in verdict.witnesses:
        assert record.sample[0] <= 0


def test_sqrt_of_square_on_right_half_plane(verifier):
    verdict = verifier.verify(IdentityQuery.from_text('sqrt(z^2)', 'z', region='x>0'))
    assert verdict.overall is VerdictKind.EQUAL
    counts = verdict.counts()
    assert counts[CellStatus.NONZERO.value] == 0
    assert counts[CellStatus.SKIPPED.value] > 0
    assert 'sections untested' not in verdict.ledger['qualifiers']


def test_open_cells_only_is_recorded(verifier):
    query = IdentityQuery.from_text('sqrt(z^2)', 'z', region='x>0', test_sections=False)
    verdict = verifier.verify(query)
    assert verdict.overall is VerdictKind.EQUAL
    assert 'sections untested' in verdict.ledger['qualifiers']


def test_numeric_evidence_cuts_are_inconclusive(verifier):
    lhs = 'log(sqrt(z)+sqrt(z+1)+sqrt(z+2))'
    verdict = verifier.verify(IdentityQuery.from_text(lhs, lhs))
    assert verdict.overall is VerdictKind.INCONCLUSIVE
    assert 'equal (evidence)' in verdict.ledger['qualifiers']


def test_cell_budget_gives_bottleneck(verifier):
    verdict = verifier.verify(IdentityQuery.from_text('sqrt(z^2)', 'z', cell_budget=3))
    assert verdict.overall is VerdictKind.INCONCLUSIVE
    assert verdict.bottleneck
    assert verdict.exit_code == 2


def test_complex_mode_takes_one_variable():
    with pytest.raises(ModeViolationError):
        IdentityQuery.from_text('x', 'z')


def test_unknown_case():
    with pytest.raises(KeyError):
        IdentityQuery.from_case('no-such-case')


def test_grid_spec():
    grid = GridSpec.parse('5x3@[-2,2]x[0,1]')
    nodes = grid.nodes()
    assert len(nodes) == 15
    assert nodes[0] == (Fraction(-2), Fraction(0))
    assert nodes[-1] == (Fraction(2), Fraction(1))
    assert str(grid) == '5x3@[-2,2]x[0,1]'
    with pytest.raises(ValueError):
        GridSpec.parse('5x5')


def test_grid_evidence(verifier):
    result = verifier.verify_on_grid(IdentityQuery.from_text('sqrt(z^2)', 'z'), '5x5@[-2,2]x[-2,2]')
    summary = result['summary']
    assert sum(summary.values()) == 25
    assert summary['nonzero'] > 0
    assert summary['on_cut'] > 0


def test_summary_counts_by_dimension(verifier):
    verdict = verifier.verify(IdentityQuery.from_text('sqrt(z^2)', 'z'))
    summary = verifier.generate_summary(verdict)
    assert summary['total_cells'] == len(verdict.cells)
    assert sum(sum(v.values()) for v in summary['by_dimension'].values()) == len(verdict.cells)


@pytest.fixture(scope='module')
def kahan_q_verdict():
    return IdentityVerifier(max_workers=2).verify(IdentityQuery.from_case('challenge1'))


@pytest.mark.slow
def test_kahan_q_counterexample_in_teardrop(verifier):
    query = IdentityQuery.from_case('challenge1')
    witness = verifier.find_counterexample(query)
    assert witness is not None
    assert sign_at(TEARDROP, witness.sample) >= 0


@pytest.mark.slow
def test_kahan_q_witnesses_between_minus_nine_halves_and_minus_three(kahan_q_verdict):
    assert kahan_q_verdict.overall is VerdictKind.NOT_EQUAL
    for record in kahan_q_verdict.witnesses:
        x = record.sample[0]
        assert compare(x, Fraction(-9, 2)) >= 0
        assert compare(x, Fraction(-3)) <= 0
        assert sign_at(TEARDROP, record.sample) >= 0


@pytest.mark.slow
def test_kahan_q_real_axis_right_of_minus_three_is_equal(kahan_q_verdict):
    on_axis = [r for r in kahan_q_verdict.cells
               if compare(r.sample[1], Fraction(0)) == 0 and compare(r.sample[0], Fraction(-3)) > 0]
    assert on_axis
    for record in on_axis:
        assert record.status is CellStatus.EQUAL


@pytest.mark.slow
def test_kahan_q_cell_count(kahan_q_verdict):
    assert 50 <= kahan_q_verdict.decomposition.cell_count <= 5000


@pytest.mark.slow
def test_kahan_h_inconclusive_with_evidence(verifier):
    # 对数参数含三个根式，超出精确割线上限，只能给出数值证据
    verdict = verifier.verify(IdentityQuery.from_case('challenge2'))
    assert verdict.overall is VerdictKind.INCONCLUSIVE
    assert 'equal (evidence)' in verdict.ledger['qualifiers']
    assert not verdict.witnesses


@pytest.mark.slow
def test_kahan_h_grid_has_no_nonzero_nodes(verifier):
    result = verifier.verify_on_grid(IdentityQuery.from_case('challenge2'), '61x61@[-6,2]x[-3,3]')
    assert result['summary']['nonzero'] == 0


@pytest.mark.slow
def test_joukowski_f2_outside_unit_disc(verifier):
    verdict = verifier.verify(IdentityQuery.from_case('joukowski-f2'))
    assert verdict.overall is VerdictKind.EQUAL


@pytest.mark.slow
def test_joukowski_f4_open_cells(verifier):
    verdict = verifier.verify(IdentityQuery.from_case('joukowski-f4'))
    assert verdict.overall is VerdictKind.EQUAL
    assert 'sections untested' in verdict.ledger['qualifiers']


@pytest.mark.slow
def test_joukowski_f4_fails_on_unit_circle(verifier):
    verdict = verifier.verify(IdentityQuery.from_case('joukowski-f4', test_sections=True))
    assert verdict.overall is VerdictKind.NOT_EQUAL
    on_circle = [r for r in verdict.witnesses if sign_at(bivar(X ** 2 + Y ** 2 - 1), r.sample) == 0]
    assert on_circle


@pytest.mark.slow
def test_arctan_addition_off_by_pi(verifier):
    verdict = verifier.verify(IdentityQuery.from_case('arctan-add'))
    assert verdict.overall is VerdictKind.NOT_EQUAL
    for record in verdict.witnesses:
        assert abs(abs(record.enclosure.midpoint().real) - math.pi) < 1e-9
        assert sign_at(bivar(X * Y - 1), record.sample) > 0
