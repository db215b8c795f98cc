"""割线与单元图"""

import pytest

from branchcut import expression_cuts
from cad import decompose
from expr import parse
from realalg import X, Y, bivar
from visualization import CutPlotter, save_chart_as_svg


@pytest.fixture
def plotter():
    return CutPlotter(resolution=81)


def test_cut_chart_has_a_trace_per_clause(plotter):
    cuts = expression_cuts(parse('log(z) + 1/(z-1)'))
    fig = plotter.create_cut_chart(cuts)
    assert len(fig.data) >= 2
    assert fig.layout.xaxis.title.text == 'x = Re z'


def test_empty_cut_chart(plotter):
    fig = plotter.create_cut_chart([])
    assert len(fig.data) == 0
    assert fig.layout.annotations


def test_cell_chart(plotter):
    d = decompose([bivar(X ** 2 + Y ** 2 - 1)])
    fig = plotter.create_cell_chart(d)
    markers = [t for t in fig.data if t.type == 'scatter']
    assert sum(len(t.x) for t in markers) == 13


def test_save_svg(plotter, tmp_path):
    pytest.importorskip('kaleido')
    path = tmp_path / 'cuts.svg'
    fig = plotter.create_cut_chart(expression_cuts(parse('sqrt(z)')))
    assert save_chart_as_svg(fig, str(path))
    assert path.read_text().lstrip().startswith('<')
