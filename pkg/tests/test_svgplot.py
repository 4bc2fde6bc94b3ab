import math

import numpy as np
import pytest

from hermdecay import svgplot


@pytest.mark.parametrize("lo, hi", [(0.0, 100.0), (-60.3, 0.2), (0.001, 0.0017), (5.0, 5.0)])
def test_ticks_cover_range(lo, hi):
    ticks = svgplot.nice_ticks(lo, hi)
    assert 2 <= len(ticks) <= 12
    assert all(b > a for a, b in zip(ticks, ticks[1:]))


def test_nonfinite_points_are_skipped():
    x = np.arange(6.0)
    y = np.array([0.0, -np.inf, -1.0, -np.inf, -2.0, np.nan])
    svg = svgplot.render(x, [("c", y)], "n", "y")
    assert svg.count("<polyline") == 1
    line = next(ln for ln in svg.splitlines() if ln.startswith("<polyline"))
    assert line.split('"')[1].count(",") == 3


def test_single_point_is_a_marker():
    svg = svgplot.render([0.0, 1.0], [("c", [1.0, -math.inf])], "n", "y")
    assert "<circle" in svg and "<polyline" not in svg


def test_labels_are_escaped():
    svg = svgplot.render([0, 1], [("a<b", [0, 1])], "x&y", "y", title="t")
    assert "a&lt;b" in svg and "x&amp;y" in svg


@pytest.mark.parametrize("x, y", [([], []), ([0, 1], [np.nan, -np.inf]), ([0, 1, 2], [1, 2])])
def test_unplottable_input(x, y):
    with pytest.raises(svgplot.PlotInputError):
        svgplot.render(x, [("c", y)], "n", "y")
