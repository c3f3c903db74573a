import math

import numpy as np
import pytest

from meridian_re import ContourGrid, PreconditionError
from meridian_re.contour import (
    BRANCH_SCALENE,
    EXCLUDED_POINTS,
    LINE_BRANCHES,
    emit_contour,
    scan_and_trace,
)
from meridian_re.families import critical_angle, scalene_cos2y
from meridian_re.shape_analysis import normalized_f
from meridian_re import Shape

AC = critical_angle().ac


@pytest.fixture(scope="module")
def contours():
    return scan_and_trace(ContourGrid(resolution=400))


def test_all_branches_present(contours):
    branches = {p.branch for p in contours.polylines}
    assert BRANCH_SCALENE in branches
    assert set(LINE_BRANCHES) <= branches
    assert set(contours.verified_lines) == set(LINE_BRANCHES)


def test_points_lie_on_zero_set(contours):
    pts = contours.branch_points(BRANCH_SCALENE)
    worst = max(abs(normalized_f(Shape(a, x))) for x, a in pts[:: max(1, len(pts) // 300)])
    assert worst < 1e-9


def test_scalene_points_match_closed_form(contours):
    n = contours.grid.resolution
    pts = contours.branch_points(BRANCH_SCALENE)
    for x, a in pts[:: max(1, len(pts) // 200)]:
        # express the point in the largest-arc chart when it is there
        if math.pi / 2 + 0.02 < a < AC - 0.02 and 0 < x < a:
            y = abs(x - a / 2)
            assert math.cos(2 * y) == pytest.approx(scalene_cos2y(a), abs=2 * 2 * math.pi / n)


def test_maximum_arc_is_critical(contours):
    pts = contours.branch_points(BRANCH_SCALENE)
    assert pts[:, 1].max() == pytest.approx(AC, abs=2 * math.pi / contours.grid.resolution)


def test_ya_mirror_symmetry(contours):
    rows = emit_contour(contours, "ya")
    pts = np.array([(y, a) for b, y, a in rows if b == BRANCH_SCALENE])
    mirrored = pts * np.array([-1.0, 1.0])
    cell = max(contours.grid.cell)
    for p in mirrored[:: max(1, len(pts) // 300)]:
        assert np.min(np.hypot(*(pts - p).T)) <= cell


def test_xa_round_trip(contours):
    xa = emit_contour(contours, "xa")
    ya = emit_contour(contours, "ya")
    assert len(xa) == len(ya)
    for (b1, x, a1), (b2, y, a2) in zip(xa[::97], ya[::97]):
        assert b1 == b2 and a1 == a2
        assert math.remainder(x - a1 / 2 - y, 2 * math.pi) == pytest.approx(0.0, abs=1e-12)


def test_punctures_respected(contours):
    pts = contours.branch_points(BRANCH_SCALENE)
    r = contours.grid.puncture_radius
    for x0, a0 in EXCLUDED_POINTS:
        assert np.min(np.hypot(pts[:, 0] - x0, pts[:, 1] - a0)) >= r * 0.999


def test_doubling_resolution_converges(contours):
    fine = scan_and_trace(ContourGrid(resolution=800))
    coarse_max = contours.branch_points(BRANCH_SCALENE)[:, 1].max()
    fine_max = fine.branch_points(BRANCH_SCALENE)[:, 1].max()
    assert abs(fine_max - AC) <= abs(coarse_max - AC) + 1e-9


def test_bad_coords(contours):
    with pytest.raises(PreconditionError):
        emit_contour(contours, "xy")


@pytest.mark.parametrize("kwargs", [dict(resolution=4), dict(a_range=(1.0, 0.0)), dict(puncture_radius=-1.0)])
def test_bad_grid(kwargs):
    with pytest.raises(PreconditionError):
        ContourGrid(**kwargs)
