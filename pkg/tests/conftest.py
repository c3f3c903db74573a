import math

from hypothesis import strategies as st

from meridian_re import Shape
from meridian_re.geometry import normalize_angle

# keep every pair at least this far from collision and from antipodes
MARGIN = 0.05


def _nondegenerate(pair):
    a, x = pair
    return all(MARGIN < abs(normalize_angle(t)) < math.pi - MARGIN for t in (a, x, x - a))


angles = st.floats(-math.pi, math.pi, allow_nan=False)
nondegenerate_shapes = st.tuples(angles, angles).filter(_nondegenerate).map(lambda p: Shape(*p))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
