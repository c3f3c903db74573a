"""Residual checks against the equations of motion, and the cos(a) = -1/8 fixture.

The residual for body ``k`` is::

    r_k = (omega^2 / 2) m_k sin(2 theta_k) - sum_{i != k} k_ki sin(theta_k - theta_i) / |sin(theta_k - theta_i)|^3

evaluated straight from the colatitudes, independently of the shape-level
machinery in :mod:`meridian_re.shape_analysis`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SingularityError
from .geometry import Configuration, normalize_angle
from .potential import ATTRACTIVE, PotentialModel, Variant

__all__ = [
    "DEFAULT_TOL",
    "ResidualReport",
    "RegressionRow",
    "verify_configuration",
    "appendix_regression",
    "appendix_regression_mp",
    "repulsive_shift_check",
    "shifted_by_quarter_turn",
]

DEFAULT_TOL = 1e-9
_MIN_SIN = 1e-6


@dataclass(frozen=True)
class ResidualReport:
    residuals: tuple[float, float, float]
    constraint: float
    max_abs: float
    tol: float
    passed: bool

    def __bool__(self) -> bool:
        return self.passed


def _pair_force(dtheta: float, coupling: float, variant: Variant) -> float:
    s = math.sin(dtheta)
    value = coupling * s / abs(s) ** 3
    return -value if variant is Variant.REPULSIVE else value


def verify_configuration(
    cfg: Configuration, model: PotentialModel = ATTRACTIVE, tol: float = DEFAULT_TOL
) -> ResidualReport:
    """Check ``cfg`` against the equations of motion and the momentum constraint.

    Passes iff ``max(|r_1|, |r_2|, |r_3|, |c| omega^2) < tol``.

    Raises:
        SingularityError: if two bodies collide or are antipodal.
    """
    th = cfg.thetas
    m = model.masses
    residuals = []
    for k in range(3):
        total = 0.0
        for i in range(3):
            if i == k:
                continue
            d = th[k] - th[i]
            if abs(math.sin(d)) < _MIN_SIN:
                pair = tuple(sorted((k + 1, i + 1)))
                raise SingularityError(f"bodies {pair[0]} and {pair[1]} collide or are antipodal", pair)
            total += _pair_force(d, model.coupling(k, i), model.variant)
        residuals.append(0.5 * cfg.omega_sq * m[k] * math.sin(2.0 * th[k]) - total)
    constraint = math.fsum(mk * math.sin(2.0 * t) for mk, t in zip(m, th))
    max_abs = max(max(abs(r) for r in residuals), abs(constraint) * cfg.omega_sq)
    return ResidualReport(tuple(residuals), constraint, max_abs, tol, max_abs < tol)


def shifted_by_quarter_turn(t_from: float, t_to: float, tol: float = 1e-12) -> bool:
    """``t_to == t_from + pi/2 (mod pi)`` within ``tol``."""
    d = math.remainder(t_to - t_from - 0.5 * math.pi, math.pi)
    return abs(d) < tol


def repulsive_shift_check(theta: float, tol: float = 1e-12) -> bool:
    """Compare attractive and repulsive isosceles equilibria of equal arc ``theta``.

    True when every colatitude moves by pi/2 (mod pi), omega^2 agrees and the
    branch sign flips (the sign is skipped where A = 0 leaves it undefined).
    """
    from .families import solve_isosceles
    from .shape_analysis import A_ZERO_THRESHOLD, kinetics, omega_and_s
    from .potential import REPULSIVE
    from .translation import relative_equilibrium

    attractive = solve_isosceles(theta)
    if attractive.theta3_undetermined:
        repulsive = relative_equilibrium(attractive.shape, REPULSIVE)
        return repulsive.theta3_undetermined and repulsive.omega_sq == 0.0

    shape = attractive.shape
    repulsive = relative_equilibrium(shape, REPULSIVE)
    if not verify_configuration(repulsive, REPULSIVE):
        return False
    if not all(shifted_by_quarter_turn(p, q, tol) for p, q in zip(attractive.thetas, repulsive.thetas)):
        return False
    if abs(attractive.omega_sq - repulsive.omega_sq) > tol * max(1.0, attractive.omega_sq):
        return False
    if kinetics(shape).A >= A_ZERO_THRESHOLD:
        if omega_and_s(shape, REPULSIVE).s != -omega_and_s(shape).s:
            return False
    return True


# ---------------------------------------------------------------------------
# cos(a) = -1/8 exact-value fixture
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegressionRow:
    name: str
    expected: float
    computed: float

    @property
    def abs_err(self) -> float:
        return abs(self.expected - self.computed)


def _closed_forms(sqrt, frac):
    """Closed radicals for the scalene equilibrium at cos(a) = -1/8, y > 0.

    ``sqrt`` and ``frac`` pick the arithmetic (float or mpmath).
    """
    r17 = sqrt(17)
    r7 = sqrt(7)
    big = sqrt(26894 * r17 - 110014)
    u = sqrt(311 - 63 * r17)
    v = sqrt(-185 + 49 * r17)
    w1 = sqrt(622 - 126 * r17)
    w2 = sqrt(-370 + 98 * r17)
    pre = frac(1, 64) * sqrt(7 / (98 * r17 - 306))
    return {
        "cos(2y)": (1921 - 441 * r17) / 256,
        "cos(a)": frac(-1, 8),
        "sin(a)": 3 * r7 / 8,
        "cos(2a)": frac(-31, 32),
        "sin(2a)": -3 * r7 / 32,
        "cos(a/2)": r7 / 4,
        "sin(a/2)": frac(3, 4),
        "cos(y)": sqrt(7 * (311 - 63 * r17) / 2) / 16,
        "sin(y)": 3 * sqrt((-185 + 49 * r17) / 2) / 16,
        "cos(x)": (7 * w1 - 9 * w2) / 128,
        "sin(x)": 3 * r7 * (w1 + w2) / 128,
        "cos(2theta31)": (441 * r17 - 63 * big - 1921) / 2048,
        "sin(2theta31)": -3 * r7 * (441 * r17 + big - 1921) / 2048,
        "cos(theta32)": (9 * w2 + 7 * w1) / 128,
        "sin(theta32)": -3 * (sqrt(4354 - 882 * r17) - sqrt(686 * r17 - 2590)) / 128,
        "cos(2theta32)": (441 * r17 + 63 * big - 1921) / 2048,
        "sin(2theta32)": 3 * r7 * (441 * r17 - big - 1921) / 2048,
        "A": 3 * sqrt((49 * r17 - 153) / 2) / 16,
        "F12": frac(64, 63),
        "F23": -8192 / (63 * (u - v) ** 2),
        # printed with a positive sign; the ratio identity below forces F31 < 0
        "F31": -8192 / (63 * (u + v) ** 2),
        "G12": -3 * r7 / 32,
        "G23": 3 * r7 * (441 * r17 - 1921 - big) / 2048,
        "G31": 3 * r7 * (441 * r17 - 1921 + big) / 2048,
        "(G12-G23)(G31-G12)": 63 * (6503 * r17 - 26815) / 16384,
        "(F12-F23)/(G12-G23)": frac(16, 189) * sqrt(55614 * r17 + frac(1605122, 7)),
        "(F31-F12)/(G31-G12)": frac(16, 189) * sqrt(55614 * r17 + frac(1605122, 7)),
        "omega^2": frac(32, 63) * sqrt(5326 * r17 + frac(153714, 7)),
        "sin(2theta1)": pre * (441 * r17 - 1857 + big),
        "sin(2theta2)": pre * (-441 * r17 + 1857 + big),
        "sin(2theta3)": -sqrt(1120 - 4361 / r17) / 32,
    }


def _computed_values() -> dict[str, float]:
    from .families import solve_scalene
    from .shape_analysis import kinetics, omega_and_s
    from .translation import shape_to_configuration

    a = math.acos(-1.0 / 8.0)
    shape = solve_scalene(a).positive
    x, y = shape.x, shape.y
    k = kinetics(shape)
    rate = omega_and_s(shape)
    cfg = shape_to_configuration(shape, rate)
    t32 = normalize_angle(x - a)
    return {
        "cos(2y)": math.cos(2 * y),
        "cos(a)": math.cos(a),
        "sin(a)": math.sin(a),
        "cos(2a)": math.cos(2 * a),
        "sin(2a)": math.sin(2 * a),
        "cos(a/2)": math.cos(a / 2),
        "sin(a/2)": math.sin(a / 2),
        "cos(y)": math.cos(y),
        "sin(y)": math.sin(y),
        "cos(x)": math.cos(x),
        "sin(x)": math.sin(x),
        "cos(2theta31)": math.cos(2 * x),
        "sin(2theta31)": math.sin(2 * x),
        "cos(theta32)": math.cos(t32),
        "sin(theta32)": math.sin(t32),
        "cos(2theta32)": math.cos(2 * t32),
        "sin(2theta32)": math.sin(2 * t32),
        "A": k.A,
        "F12": k.F12,
        "F23": k.F23,
        "F31": k.F31,
        "G12": k.G12,
        "G23": k.G23,
        "G31": k.G31,
        "(G12-G23)(G31-G12)": (k.G12 - k.G23) * (k.G31 - k.G12),
        "(F12-F23)/(G12-G23)": (k.F12 - k.F23) / (k.G12 - k.G23),
        "(F31-F12)/(G31-G12)": (k.F31 - k.F12) / (k.G31 - k.G12),
        "omega^2": rate.omega_sq,
        "sin(2theta1)": math.sin(2 * cfg.theta1),
        "sin(2theta2)": math.sin(2 * cfg.theta2),
        "sin(2theta3)": math.sin(2 * cfg.theta3),
    }


def appendix_regression() -> list[RegressionRow]:
    """Recompute every exact value of the cos(a) = -1/8, y > 0 equilibrium."""
    expected = _closed_forms(math.sqrt, lambda p, q: p / q)
    computed = _computed_values()
    return [RegressionRow(name, float(expected[name]), computed[name]) for name in expected]


def appendix_regression_mp(dps: int = 40) -> dict[str, object]:
    """The closed radicals at ``dps`` significant digits (mpmath)."""
    import mpmath

    with mpmath.workdps(dps):
        return _closed_forms(mpmath.sqrt, lambda p, q: mpmath.mpf(p) / q)
