import math

import pytest
from hypothesis import given, strategies as st

from meridian_re import Configuration, PotentialModel, SingularityError
from meridian_re.families import IsoscelesSpec, solve_isosceles, solve_scalene
from meridian_re.potential import REPULSIVE
from meridian_re.translation import reflect_configuration, relative_equilibrium
from meridian_re.verify import (
    appendix_regression,
    appendix_regression_mp,
    repulsive_shift_check,
    shifted_by_quarter_turn,
    verify_configuration,
)


def test_pi_over_three_configuration():
    cfg = Configuration(-math.pi / 3, math.pi / 3, 0.0, 32 / (3 * math.sqrt(3)), 1)
    report = verify_configuration(cfg, tol=1e-12)
    assert report.passed
    assert bool(report)


def test_printed_pi_over_three_rate_fails():
    cfg = Configuration(-math.pi / 3, math.pi / 3, 0.0, 16 / (3 * math.sqrt(3)), 1)
    report = verify_configuration(cfg)
    assert not report
    assert report.max_abs > 1.0


def test_wrong_rate_fails():
    cfg = solve_isosceles(0.7)
    bad = Configuration(*cfg.thetas, cfg.omega_sq * 1.001, cfg.s)
    assert not verify_configuration(bad)


def test_constraint_violation_counts():
    cfg = Configuration(0.3, 0.3 + 1.0, 0.3 + 2.0, 5.0, 1)
    report = verify_configuration(cfg, tol=1e300)
    assert report.constraint == pytest.approx(cfg.angular_momentum())


def test_collision_raises():
    with pytest.raises(SingularityError):
        verify_configuration(Configuration(0.0, 0.0, 1.0, 1.0, 1))


@given(st.floats(math.pi / 2 + 0.01, 1.81), st.floats(-math.pi, math.pi))
def test_equator_reflection_preserves_verdict(a, shift):
    good = relative_equilibrium(solve_scalene(a).positive)
    assert verify_configuration(reflect_configuration(good))
    bad = Configuration(shift, shift + 1.0, shift + 2.2, 3.0, 1)
    assert bool(verify_configuration(bad)) == bool(verify_configuration(reflect_configuration(bad)))


@given(st.floats(0.05, math.pi - 0.05))
def test_residuals_flip_under_reflection(theta1):
    cfg = Configuration(theta1, theta1 + 0.8, theta1 - 1.3, 2.0, 1)
    r = verify_configuration(cfg, tol=1e300).residuals
    rr = verify_configuration(reflect_configuration(cfg), tol=1e300).residuals
    assert rr == pytest.approx(r, abs=1e-9)


@pytest.mark.parametrize(
    "t_from, t_to, expected",
    [(0.0, math.pi / 2, True), (0.0, -math.pi / 2, True), (0.3, 0.3 + 1.5 * math.pi, True), (0.0, 0.1, False)],
)
def test_shifted_by_quarter_turn(t_from, t_to, expected):
    assert shifted_by_quarter_turn(t_from, t_to) is expected


@pytest.mark.parametrize("theta", [0.3, math.pi / 3, 1.0, 2.0, 2 * math.pi / 3, 3 * math.pi / 4, 2.9])
def test_repulsive_shift(theta):
    assert repulsive_shift_check(theta)
    assert repulsive_shift_check(IsoscelesSpec(theta))


@pytest.mark.parametrize("theta, attractive_pole, repulsive_pole", [(math.pi / 3, 0.0, math.pi / 2), (3 * math.pi / 4, math.pi / 2, 0.0)])
def test_repulsive_shift_examples(theta, attractive_pole, repulsive_pole):
    att = solve_isosceles(theta)
    rep = relative_equilibrium(IsoscelesSpec(theta).shape, REPULSIVE)
    # compare the position of the apex body (body 3 in the isosceles chart)
    assert math.remainder(att.theta3 - attractive_pole, math.pi) == pytest.approx(0.0, abs=1e-12)
    assert math.remainder(rep.theta3 - repulsive_pole, math.pi) == pytest.approx(0.0, abs=1e-12)


def test_unit_charges_match_repulsive():
    unit = PotentialModel.charged((1.0, 1.0, 1.0))
    for theta in (0.4, 1.1, 2.3):
        shape = IsoscelesSpec(theta).shape
        p = relative_equilibrium(shape, unit)
        q = relative_equilibrium(shape, REPULSIVE)
        assert p.thetas == pytest.approx(q.thetas, abs=1e-14)
        assert p.omega_sq == pytest.approx(q.omega_sq, rel=1e-14)


class TestRegression:
    def test_all_rows_match(self):
        rows = appendix_regression()
        assert len(rows) >= 14
        assert max(r.abs_err for r in rows) < 1e-10

    def test_ratio_identity(self):
        rows = {r.name: r.computed for r in appendix_regression()}
        assert rows["(F12-F23)/(G12-G23)"] == pytest.approx(rows["(F31-F12)/(G31-G12)"], abs=1e-10)

    def test_named_values(self):
        rows = {r.name: r for r in appendix_regression()}
        assert rows["F12"].computed == pytest.approx(64 / 63, abs=1e-12)
        assert rows["cos(2a)"].computed == pytest.approx(-31 / 32, abs=1e-15)
        assert rows["omega^2"].computed == pytest.approx(106.447307, abs=1e-6)
        assert rows["F31"].computed < 0.0

    def test_high_precision_path(self):
        import mpmath

        hp = appendix_regression_mp(40)
        with mpmath.workdps(40):
            for row in appendix_regression():
                assert abs(mpmath.mpf(row.computed) - hp[row.name]) < 1e-10
            # double precision is enough: the float closed forms agree with 40 digits
            assert abs(hp["omega^2"] - mpmath.mpf(32) / 63 * mpmath.sqrt(5326 * mpmath.sqrt(17) + mpmath.mpf(153714) / 7)) < mpmath.mpf(10) ** -35
