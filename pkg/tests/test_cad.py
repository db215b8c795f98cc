"""柱形代数分解"""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from branchcut import parse_region
from cad import (
    IN_REGION, OUT_OF_REGION, SECTION, SECTOR, cell_to_json, decompose, decompose_1d,
    decomposition_to_json, point_to_json,
)
from core.errors import CadBudgetExceeded
from realalg import X, Y, bivar, real_roots, sign_at, sign_vector, univar
from realalg.polynomials import substitute_x
from realalg.roots import rational_between, sort_distinct

CIRCLE = bivar(X ** 2 + Y ** 2 - 1)


def test_circle_has_thirteen_cells():
    d = decompose([CIRCLE])
    assert d.cell_count == 13
    assert d.stack_sizes == [1, 3, 5, 3, 1]


def test_axes_give_nine_cells():
    d = decompose([bivar(X), bivar(Y)])
    assert d.cell_count == 9
    assert sum(1 for c in d.cells if c.dimension == 2) == 4


def test_empty_input_is_one_cell():
    d = decompose([])
    assert d.cell_count == 1
    assert d.cells[0].dimension == 2


def test_cells_are_sign_invariant_at_samples():
    d = decompose([CIRCLE, bivar(Y - X)])
    for cell in d.cells:
        for p, s in zip(d.polynomials, cell.signs):
            assert sign_at(p, cell.sample) == s


def test_sections_lie_on_a_polynomial():
    d = decompose([CIRCLE])
    for cell in d.cells:
        if cell.bounds[1].kind == SECTION:
            assert sign_at(CIRCLE, cell.sample) == 0
        if cell.bounds[0].kind == SECTOR and cell.bounds[1].kind == SECTOR:
            assert sign_at(CIRCLE, cell.sample) != 0


def test_samples_are_simple_rationals_in_sectors():
    d = decompose([CIRCLE])
    first = d.cells[0]
    assert first.sample[0] == Fraction(-2)
    assert first.sample[1] == Fraction(0)


def test_region_classification():
    region = parse_region('x^2+y^2>1')
    d = decompose([], region=region)
    inside = [c for c in d.cells if c.region == IN_REGION]
    outside = [c for c in d.cells if c.region == OUT_OF_REGION]
    assert inside and outside
    for cell in inside:
        assert sign_at(CIRCLE, cell.sample) > 0


def test_cell_budget():
    with pytest.raises(CadBudgetExceeded):
        decompose([CIRCLE], cell_budget=5)


def test_degree_budget():
    with pytest.raises(CadBudgetExceeded):
        decompose([bivar(Y ** 5 - X)], degree_budget=3)


def test_one_dimensional_decomposition():
    d = decompose_1d([univar(X ** 2 - 2)])
    assert d.dimension == 1
    assert d.cell_count == 5
    assert [c.dimension for c in d.cells] == [1, 0, 1, 0, 1]
    assert decompose_1d([univar(X)]).cell_count == 3


def test_serialisation_is_exact():
    d = decompose([CIRCLE])
    cell = cell_to_json(d.cells[0])
    assert cell['id'] == d.cells[0].cell_id
    assert point_to_json((Fraction(1, 3), Fraction(0))) == ['1/3', '0']
    summary = decomposition_to_json(d, include_cells=False)
    assert 'cells' not in summary


monomials = st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda m: sum(m) <= 4)
random_polys = st.dictionaries(monomials, st.integers(-3, 3).filter(bool), min_size=1, max_size=4).map(
    lambda terms: bivar(sum(c * X ** i * Y ** j for (i, j), c in terms.items()))
).filter(lambda p: p.total_degree() > 0)


def points_between(lower, upper, count):
    points = []
    previous = lower
    for _ in range(count):
        previous = rational_between(previous, upper)
        points.append(previous)
    return points


def fiber_roots(polys, x):
    roots = []
    for p in polys:
        q = substitute_x(p, x)
        if q.degree() > 0:
            roots.extend(real_roots(univar(q.as_expr().subs(Y, X))))
    return sort_distinct(roots)


@pytest.mark.slow
@settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.lists(random_polys, min_size=1, max_size=2))
def test_sign_invariance_inside_full_cells(polys):
    # 每个二维单元内取 4×5 个内点
    d = decompose(polys)
    for cell in d.cells:
        if cell.dimension != 2:
            continue
        k = cell.index[1] // 2
        for x in points_between(cell.bounds[0].lower, cell.bounds[0].upper, 4):
            roots = fiber_roots(d.polynomials, x)
            below = roots[k - 1] if k > 0 else None
            above = roots[k] if k < len(roots) else None
            for y in points_between(below, above, 5):
                assert sign_vector(d.polynomials, (x, y)) == cell.signs
