"""Pair terms, the shape condition f = 0, and the rotation rate of a rigid rotator.

Bodies sit at ``(0, a, x)`` on the meridian. For a pair ``(i, j)``::

    G_ij = m_i m_j sin(2 theta_ji)
    F_ij = k_ij sin(theta_ji) U'(cos theta_ji)

with ``k_ij`` the model's pair coupling. A shape is a rigid rotator iff the
2x2 determinant ``f`` of the G- and F-differences vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AZeroCaseError, InternalInconsistencyError, NotARotatorError, SingularityError
from .geometry import TWO_PI, Shape, _raw_arcs
from .potential import ATTRACTIVE, PotentialModel

__all__ = [
    "A_ZERO_THRESHOLD",
    "F_ZERO_TOL",
    "ShapeKinetics",
    "RotationRate",
    "kinetics",
    "evaluate_f",
    "normalized_f",
    "evaluate_g",
    "evaluate_h",
    "omega_and_s",
    "a_zero_subcase",
]

A_ZERO_THRESHOLD = 1e-10
F_ZERO_TOL = 1e-9
_A_ZERO_MATCH = 1e-8

_PAIRS = ((0, 1), (1, 2), (2, 0))  # 12, 23, 31


@dataclass(frozen=True)
class ShapeKinetics:
    F12: float
    F23: float
    F31: float
    G12: float
    G23: float
    G31: float
    A: float
    cos_2alpha: float
    sin_2alpha: float

    @property
    def g_differences(self) -> tuple[float, float, float]:
        """``(G12 - G23, G23 - G31, G31 - G12)``."""
        return (self.G12 - self.G23, self.G23 - self.G31, self.G31 - self.G12)

    @property
    def f_differences(self) -> tuple[float, float, float]:
        return (self.F12 - self.F23, self.F23 - self.F31, self.F31 - self.F12)

    @property
    def f(self) -> float:
        dg12, _, dg31 = self.g_differences
        df12, _, df31 = self.f_differences
        return dg12 * df31 - dg31 * df12

    @property
    def force_scale(self) -> float:
        return abs(self.F12) + abs(self.F23) + abs(self.F31)


@dataclass(frozen=True)
class RotationRate:
    """Squared angular velocity and branch sign of a rigid rotator.

    ``ratio`` is ``s * omega_sq / (2 A)``. A fixed point has ``omega_sq == 0``.
    """

    omega_sq: float
    s: int
    ratio: float
    fixed_point: bool = False


def kinetics(shape: Shape, model: PotentialModel = ATTRACTIVE) -> ShapeKinetics:
    a, x = shape.a, shape.x
    positions = (0.0, a, x)
    m = model.masses

    G = []
    F = []
    for i, j in _PAIRS:
        theta_ji = positions[j] - positions[i]
        G.append(m[i] * m[j] * math.sin(2.0 * theta_ji))
        try:
            F.append(model.coupling(i, j) * model.kernel(theta_ji))
        except SingularityError as exc:
            pair = (i + 1, j + 1)
            raise SingularityError(
                f"bodies {pair[0]} and {pair[1]} collide or are antipodal (arc {theta_ji!r})", pair
            ) from exc

    P = m[0] + m[1] * math.cos(2.0 * a) + m[2] * math.cos(2.0 * x)
    Q = m[1] * math.sin(2.0 * a) + m[2] * math.sin(2.0 * x)
    A = math.hypot(P, Q)
    if A > 0.0:
        c2, s2 = P / A, Q / A
    else:
        c2 = s2 = math.nan
    return ShapeKinetics(F[0], F[1], F[2], G[0], G[1], G[2], A, c2, s2)


def a_zero_subcase(shape: Shape) -> str | None:
    """Name the equal-mass A = 0 shape matching ``shape``, if any."""
    arcs = sorted(_raw_arcs(shape))
    third = TWO_PI / 3.0
    if all(abs(arc - third) < _A_ZERO_MATCH for arc in arcs):
        return "equilateral"
    target = (math.pi / 3.0, math.pi / 3.0, third)
    if all(abs(arc - t) < _A_ZERO_MATCH for arc, t in zip(arcs, target)):
        return "isosceles-pi/3"
    return None


def _raise_a_zero(shape: Shape, model: PotentialModel) -> None:
    subcase = a_zero_subcase(shape)
    if subcase is None and model.masses == (1.0, 1.0, 1.0):
        raise InternalInconsistencyError(f"A vanishes for {shape} but it matches no known A = 0 shape")
    raise AZeroCaseError(f"amplitude A vanishes for {shape}; use translation.resolve_a_zero", subcase)


def evaluate_f(shape: Shape, model: PotentialModel = ATTRACTIVE) -> float:
    """Determinant ``(G12-G23)(F31-F12) - (G31-G12)(F12-F23)``.

    Raises:
        AZeroCaseError: when the amplitude A vanishes (equilateral and the
            pi/3-isosceles shapes for equal masses).
    """
    k = kinetics(shape, model)
    if k.A < A_ZERO_THRESHOLD:
        _raise_a_zero(shape, model)
    return k.f


def normalized_f(shape: Shape, model: PotentialModel = ATTRACTIVE) -> float:
    """``f`` divided by ``|F12| + |F23| + |F31|``; defined for every nondegenerate shape."""
    k = kinetics(shape, model)
    return k.f / k.force_scale


def _signed_sq(t: float) -> float:
    s = math.sin(t)
    return s * abs(s)


def evaluate_g(shape: Shape) -> float:
    """Numerator of ``f`` for equal masses under the attractive cotangent potential.

    ``f = g / (sin x|sin x| sin a|sin a| sin(x-a)|sin(x-a)|)``; unlike ``f``
    it stays bounded at collisions and antipodal pairs.
    """
    a, x = shape.a, shape.x
    sx, sa, sxa = _signed_sq(x), _signed_sq(a), _signed_sq(x - a)
    return sx * (math.sin(2 * x) + math.sin(2 * a)) * (sxa - sa) - sxa * (
        math.sin(2 * a) - math.sin(2 * (x - a))
    ) * (sa + sx)


def evaluate_h(a: float, y: float) -> float:
    """Scalene factor ``h`` of ``g = sin(2y) h / 4`` in the region ``0 < x < a``."""
    ca = math.cos(a)
    c2a = math.cos(2 * a)
    s2a = math.sin(2 * a)
    return (
        -ca * math.cos(4 * y)
        + 2.0 * (2.0 * c2a + s2a * s2a) * math.cos(2 * y)
        - ca * (math.cos(4 * a) - 5.0 * c2a + 7.0)
    )


def omega_and_s(
    shape: Shape, model: PotentialModel = ATTRACTIVE, tol: float = F_ZERO_TOL
) -> RotationRate:
    """Rotation rate of a rigid rotator from ``s omega^2 / (2A) = dF / dG``.

    The G-difference of largest magnitude is used as the denominator.

    Raises:
        NotARotatorError: if ``|f|`` normalized by the force scale exceeds ``tol``.
        AZeroCaseError: if the amplitude A vanishes.
    """
    k = kinetics(shape, model)
    if k.A < A_ZERO_THRESHOLD:
        _raise_a_zero(shape, model)
    scale = k.force_scale
    if abs(k.f) / scale >= tol:
        raise NotARotatorError(f"{shape} is not a rigid rotator (normalized f = {k.f / scale:.3e})")

    dG = k.g_differences
    dF = k.f_differences
    g_norm = max(abs(d) for d in dG)
    f_norm = max(abs(d) for d in dF)
    mass_scale = max(model.masses) ** 2
    if g_norm <= 1e-12 * mass_scale:
        if f_norm <= 1e-12 * scale:
            return RotationRate(0.0, 1, 0.0, fixed_point=True)
        raise NotARotatorError(f"{shape}: force differences without G-differences need infinite omega")

    idx = max(range(3), key=lambda i: abs(dG[i]))
    ratio = dF[idx] / dG[idx]
    s = 1 if ratio >= 0.0 else -1
    return RotationRate(2.0 * k.A * abs(ratio), s, ratio)
