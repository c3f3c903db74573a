"""Closed-form families of relative equilibria for equal masses.

Scalene rotators live on the curve ``h(a, y) = 0``, which is quadratic in
``cos(2y)``; isosceles rotators are given in closed form for every equal arc
except ``pi/2``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from ._roots import bisect, bracketed_roots
from .errors import AntipodalPairError, InternalInconsistencyError, OutOfFamilyRangeError, PreconditionError
from .geometry import TWO_PI, Configuration, RotatorKind, Shape, arc_angles, classify, normalize_angle
from .potential import ATTRACTIVE, PotentialModel
from .translation import relative_equilibrium

__all__ = [
    "CriticalAngle",
    "IsoscelesSpec",
    "ScalenePair",
    "Equilibrium",
    "ArcEnumeration",
    "FamilyRow",
    "critical_angle",
    "critical_cubic",
    "scalene_cos2y",
    "rejected_cos2y",
    "solve_scalene",
    "solve_isosceles",
    "enumerate_re_for_arc",
    "scalene_family_table",
]

_AC_AGREEMENT = 1e-12
_AT_CRITICAL = 1e-12
_SINGULAR_SIN = 1.4142135623e-6
# closer to the collision limit omega^2 exceeds 1e6 and absolute residuals
# drift past 1e-9 from rounding alone
DEFAULT_TABLE_START = -1e-2


# ---------------------------------------------------------------------------
# critical angle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CriticalAngle:
    cos_ac: float
    ac: float
    xc: float
    cos_ac_bisection: float


def critical_cubic(c: float) -> float:
    """``cos(3a) + 6 cos(2a) + 14 cos(a) + 8`` as a polynomial in ``c = cos(a)``."""
    return ((4.0 * c + 12.0) * c + 11.0) * c + 2.0


@functools.lru_cache(maxsize=1)
def critical_angle() -> CriticalAngle:
    """Largest arc ``a_c`` of the scalene family, by cube roots and by bisection.

    Raises:
        InternalInconsistencyError: if the two routes disagree beyond 1e-12.
    """
    r = math.sqrt(78.0) / 9.0
    closed = -1.0 + 0.5 * (np.cbrt(1.0 + r) + np.cbrt(1.0 - r))
    numeric = bisect(critical_cubic, -1.0, 0.0, xtol=1e-15)
    if abs(closed - numeric) > _AC_AGREEMENT:
        raise InternalInconsistencyError(f"cos(a_c): closed form {closed!r} vs bisection {numeric!r}")
    ac = math.acos(closed)
    return CriticalAngle(float(closed), ac, 0.5 * ac, numeric)


# ---------------------------------------------------------------------------
# scalene family
# ---------------------------------------------------------------------------


def scalene_cos2y(a: float) -> float:
    """Admissible root of ``h(a, y) = 0`` as a quadratic in ``cos(2y)``.

    Written as ``cos(a) (1 + 8 sin^2 a / (cos 2a - sqrt(D)))``, which is the
    textbook ``cos a + sin a tan a (cos 2a + sqrt(D))`` with the
    ``0 * inf`` at ``a = pi/2`` rationalized away.
    """
    c2 = math.cos(2.0 * a)
    disc = c2 * c2 - 4.0 * c2 - 4.0
    if disc < 0.0:
        return math.nan
    sa = math.sin(a)
    return math.cos(a) * (1.0 + 8.0 * sa * sa / (c2 - math.sqrt(disc)))


def rejected_cos2y(a: float) -> float:
    """The other root of the quadratic; never a cosine inside the family window."""
    c2 = math.cos(2.0 * a)
    disc = c2 * c2 - 4.0 * c2 - 4.0
    if disc < 0.0:
        return math.nan
    return math.cos(a) + math.sin(a) * math.tan(a) * (c2 - math.sqrt(disc))


@dataclass(frozen=True)
class ScalenePair:
    """The two scalene shapes with largest arc ``a`` (``x = a/2 + y`` and ``a/2 - y``).

    At ``a = a_c`` the pair collapses onto one isosceles shape and
    ``isosceles_limit`` is set.
    """

    a: float
    y: float
    positive: Shape
    negative: Shape
    isosceles_limit: bool = False

    @property
    def shapes(self) -> tuple[Shape, ...]:
        if self.isosceles_limit:
            return (self.positive,)
        return (self.positive, self.negative)


def solve_scalene(a_largest: float) -> ScalenePair:
    """Scalene rigid rotators whose largest arc is ``a_largest``.

    Raises:
        OutOfFamilyRangeError: unless ``pi/2 < a_largest < a_c`` (or equals
            ``a_c``, which yields the isosceles limit).
    """
    if not math.isfinite(a_largest):
        raise PreconditionError(f"a must be finite, got {a_largest!r}")
    ac = critical_angle().ac
    if abs(a_largest - ac) <= _AT_CRITICAL:
        shape = Shape(ac, 0.5 * ac)
        return ScalenePair(ac, 0.0, shape, shape, isosceles_limit=True)
    if not math.pi / 2 < a_largest < ac:
        raise OutOfFamilyRangeError(
            f"scalene equilibria need pi/2 < a < a_c = {ac:.6f}, got a = {a_largest!r}"
        )
    rhs = scalene_cos2y(a_largest)
    if not -1.0 <= rhs <= 1.0:
        if 1.0 < rhs < 1.0 + 1e-12:
            rhs = 1.0
        else:
            raise InternalInconsistencyError(f"cos(2y) = {rhs!r} outside [-1, 1] for a = {a_largest!r}")
    y = 0.5 * math.acos(rhs)
    half = 0.5 * a_largest
    return ScalenePair(a_largest, y, Shape(a_largest, half + y), Shape(a_largest, half - y))


def _scalene_arcs(L: float) -> tuple[float, float]:
    """Short arcs ``(L/2 + y, L/2 - y)`` of the scalene triangle with largest arc ``L``."""
    y = 0.5 * math.acos(min(1.0, scalene_cos2y(L)))
    return 0.5 * L + y, 0.5 * L - y


# ---------------------------------------------------------------------------
# isosceles family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IsoscelesSpec:
    """Isosceles triangle with body 3 midway: ``theta = theta2 - theta3 = theta3 - theta1``."""

    theta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.theta) and 0.0 < self.theta < math.pi):
            raise PreconditionError(f"theta must lie in (0, pi), got {self.theta!r}")

    @property
    def shape(self) -> Shape:
        return Shape(2.0 * self.theta, self.theta)


def _isosceles_omega_sq(theta: float) -> float:
    s2 = math.sin(2.0 * theta)
    st = math.sin(theta)
    return 2.0 * (1.0 / abs(s2) ** 3 + 1.0 / (st * st * s2))


def solve_isosceles(spec: IsoscelesSpec | float) -> Configuration:
    """Relative equilibrium of an isosceles shape (equal masses, attractive).

    Body 3 sits on a pole (``theta3 = 0``) for ``theta < 2pi/3`` and on the
    equator (``theta3 = pi/2``) for ``theta > 2pi/3``; ``theta = 2pi/3`` is the
    equilateral fixed point.

    Raises:
        AntipodalPairError: for ``theta = pi/2``.
    """
    if not isinstance(spec, IsoscelesSpec):
        spec = IsoscelesSpec(float(spec))
    theta = spec.theta
    if abs(math.sin(2.0 * theta)) <= _SINGULAR_SIN:
        raise AntipodalPairError("theta = pi/2 puts bodies 1 and 2 at antipodes", (1, 2))
    if abs(theta - TWO_PI / 3.0) <= 1e-12:
        return Configuration(-theta, theta, 0.0, 0.0, 1, theta3_undetermined=True)

    amplitude_sign = 1.0 + 2.0 * math.cos(2.0 * theta)
    if theta < TWO_PI / 3.0:
        omega_sq = _isosceles_omega_sq(theta)
        theta3 = 0.0
        s = 1 if amplitude_sign >= 0.0 else -1
    else:
        omega_sq = -_isosceles_omega_sq(theta)
        theta3 = 0.5 * math.pi
        s = -1 if amplitude_sign >= 0.0 else 1
    if abs(amplitude_sign) < 1e-10:
        s = 1  # A = 0: the branch sign is undefined
    return Configuration(
        normalize_angle(theta3 - theta), normalize_angle(theta3 + theta), theta3, omega_sq, s
    )


# ---------------------------------------------------------------------------
# enumeration for a given arc
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Equilibrium:
    shape: Shape
    configuration: Configuration
    kind: RotatorKind
    largest_arc: float


@dataclass(frozen=True)
class ArcEnumeration:
    """All relative equilibria with ``theta2 - theta1 = a``.

    ``excluded`` lists isosceles shapes dropped because two bodies would be
    antipodal (only at ``a = pi/2``).
    """

    a: float
    equilibria: tuple[Equilibrium, ...]
    excluded: tuple[Shape, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.equilibria)

    def __iter__(self):
        return iter(self.equilibria)

    def __getitem__(self, i):
        return self.equilibria[i]

    @property
    def scalene(self) -> tuple[Equilibrium, ...]:
        return tuple(e for e in self.equilibria if e.kind is RotatorKind.SCALENE)

    @property
    def isosceles(self) -> tuple[Equilibrium, ...]:
        return tuple(e for e in self.equilibria if e.kind is not RotatorKind.SCALENE)


def _is_singular(shape: Shape) -> bool:
    return any(abs(math.sin(t)) <= _SINGULAR_SIN for t in (shape.a, shape.x, shape.x - shape.a))


def _scalene_shapes_for_arc(a: float) -> list[Shape]:
    ac = critical_angle().ac
    if math.pi / 2 < a < ac:
        return list(solve_scalene(a).shapes)
    half_c = 0.5 * ac
    if abs(a - half_c) <= 1e-12 or a >= math.pi / 2:
        return []
    # a is one of the two short arcs of a triangle whose largest arc L is in (pi/2, a_c)
    which = 0 if a > half_c else 1
    lo, hi = math.pi / 2 + 1e-9, ac - 1e-12
    roots = bracketed_roots(lambda L: _scalene_arcs(L)[which] - a, lo, hi)
    shapes = []
    for L in roots:
        if abs(L - ac) < 1e-9:
            continue
        other = L - a
        shapes.extend((Shape(a, a + other), Shape(a, -other)))
    return shapes


def enumerate_re_for_arc(a: float, model: PotentialModel = ATTRACTIVE) -> ArcEnumeration:
    """Every relative equilibrium (canonical placement) with ``theta21 = a``.

    Four isosceles shapes (``x = 2a, a/2, a/2 - pi, -a``) plus the scalene
    pair whenever the scalene curve meets the line ``theta21 = a``.
    """
    if not (math.isfinite(a) and 0.0 < a < math.pi):
        raise PreconditionError(f"a must lie in (0, pi), got {a!r}")

    candidates: list[Shape] = []
    for x in (2.0 * a, 0.5 * a, 0.5 * a - math.pi, -a):
        shape = Shape(a, x)
        if not any(abs(normalize_angle(shape.x - c.x)) < 1e-12 for c in candidates):
            candidates.append(shape)

    equilibria = []
    excluded = []
    for shape in candidates:
        if _is_singular(shape):
            excluded.append(shape)
            continue
        equilibria.append(_equilibrium(shape, model))
    for shape in _scalene_shapes_for_arc(a):
        equilibria.append(_equilibrium(shape, model))
    return ArcEnumeration(a, tuple(equilibria), tuple(excluded))


def _equilibrium(shape: Shape, model: PotentialModel) -> Equilibrium:
    cls = classify(shape)
    cfg = relative_equilibrium(shape, model)
    return Equilibrium(shape, cfg, cls.kind, cls.largest_arc)


# ---------------------------------------------------------------------------
# family table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyRow:
    cos_a: float
    omega_sq: float
    s: int
    theta1: float
    theta2: float
    theta3: float
    largest_arc: float


def scalene_family_table(n: int, cos_a_start: float = DEFAULT_TABLE_START) -> list[FamilyRow]:
    """Scalene family (``y > 0`` branch) sampled uniformly in ``cos(a)``.

    Rows run from ``cos_a_start`` (near the collision limit ``a -> pi/2``)
    down to ``cos(a_c)``, whose row is the isosceles limit.
    """
    if n < 2:
        raise PreconditionError(f"n must be at least 2, got {n!r}")
    crit = critical_angle()
    if not crit.cos_ac < cos_a_start < 0.0:
        raise PreconditionError(f"cos_a_start must lie in (cos a_c, 0), got {cos_a_start!r}")
    rows = []
    for i, c in enumerate(np.linspace(cos_a_start, crit.cos_ac, n)):
        a = crit.ac if i == n - 1 else math.acos(float(c))
        shape = solve_scalene(a).positive
        cfg = relative_equilibrium(shape)
        rows.append(
            FamilyRow(float(c), cfg.omega_sq, cfg.s, cfg.theta1, cfg.theta2, cfg.theta3, max(arc_angles(shape)))
        )
    return rows
