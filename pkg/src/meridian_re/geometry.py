"""Shapes, configurations and angle bookkeeping on the rotating meridian.

A *shape* is the pair of mutual arcs ``(a, x) = (theta2 - theta1, theta3 - theta1)``.
A *configuration* adds the absolute colatitudes and the rotation rate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import PreconditionError, SingularityError

__all__ = [
    "TWO_PI",
    "normalize_angle",
    "Shape",
    "Configuration",
    "RotatorKind",
    "RotatorClassification",
    "arc_angles",
    "classify",
    "to_y",
    "from_y",
]

TWO_PI = 2.0 * math.pi
DEFAULT_CLASSIFY_TOL = 1e-9


def normalize_angle(t: float) -> float:
    """Reduce ``t`` modulo 2*pi into the half-open interval (-pi, pi]."""
    if not math.isfinite(t):
        raise PreconditionError(f"angle must be finite, got {t!r}")
    r = math.remainder(t, TWO_PI)
    if r <= -math.pi:
        r += TWO_PI
    return r


def _fold(t: float) -> float:
    # arc length in [0, pi]
    return abs(normalize_angle(t))


def to_y(a: float, x: float) -> float:
    """Symmetric coordinate ``y = x - a/2`` (normalized)."""
    return normalize_angle(x - 0.5 * a)


def from_y(a: float, y: float) -> float:
    return normalize_angle(y + 0.5 * a)


@dataclass(frozen=True)
class Shape:
    """Triangle on a great circle, up to rigid rotation.

    ``a`` is the arc from body 1 to body 2 and ``x`` the arc from body 1 to
    body 3, both normalized into (-pi, pi]. The canonical chart has
    ``0 < a < pi``; :meth:`canonical` relabels bodies 1 and 2 to get there.
    """

    a: float
    x: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", normalize_angle(self.a))
        object.__setattr__(self, "x", normalize_angle(self.x))

    @property
    def theta32(self) -> float:
        return normalize_angle(self.x - self.a)

    @property
    def y(self) -> float:
        return to_y(self.a, self.x)

    @property
    def is_canonical(self) -> bool:
        return 0.0 < self.a < math.pi

    def swap_23(self) -> "Shape":
        """Exchange the labels of bodies 2 and 3."""
        return Shape(self.x, self.a)

    def swap_12(self) -> "Shape":
        """Exchange the labels of bodies 1 and 2."""
        return Shape(-self.a, self.x - self.a)

    def canonical(self) -> "Shape":
        if self.a < 0.0:
            return self.swap_12()
        return self


@dataclass(frozen=True)
class Configuration:
    """A relative equilibrium: colatitudes, squared rotation rate, branch sign.

    When ``theta3_undetermined`` is set the configuration is a fixed point
    (``omega_sq == 0``) and the stored colatitudes are one representative of
    a continuum; any common shift is equally valid.
    """

    theta1: float
    theta2: float
    theta3: float
    omega_sq: float
    s: int
    theta3_undetermined: bool = False

    def __post_init__(self) -> None:
        if self.s not in (1, -1):
            raise PreconditionError(f"s must be +1 or -1, got {self.s!r}")
        if self.omega_sq < 0.0:
            raise PreconditionError(f"omega_sq must be nonnegative, got {self.omega_sq!r}")
        if self.theta3_undetermined and self.omega_sq != 0.0:
            raise PreconditionError("an undetermined placement requires omega_sq == 0")

    @property
    def thetas(self) -> tuple[float, float, float]:
        return (self.theta1, self.theta2, self.theta3)

    @property
    def shape(self) -> Shape:
        return Shape(self.theta2 - self.theta1, self.theta3 - self.theta1)

    def angular_momentum(self, masses: tuple[float, float, float] = (1.0, 1.0, 1.0)) -> float:
        """Residual of the constraint sum_k m_k sin(2 theta_k) = 0."""
        return math.fsum(m * math.sin(2.0 * t) for m, t in zip(masses, self.thetas))


class RotatorKind(str, enum.Enum):
    SCALENE = "scalene"
    ISOSCELES = "isosceles"
    EQUILATERAL = "equilateral"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class RotatorClassification:
    kind: RotatorKind
    largest_arc: float


def _raw_arcs(shape: Shape) -> tuple[float, float, float]:
    return (_fold(shape.a), _fold(shape.x), _fold(shape.x - shape.a))


def arc_angles(shape: Shape) -> tuple[float, float, float]:
    """Arcs ``(|theta21|, |theta31|, |theta32|)`` folded into (0, pi].

    Raises:
        SingularityError: if two bodies coincide.
    """
    arcs = _raw_arcs(shape)
    for arc, pair in zip(arcs, ((1, 2), (1, 3), (2, 3))):
        if arc == 0.0:
            raise SingularityError(f"bodies {pair[0]} and {pair[1]} collide", pair)
    return arcs


def classify(shape: Shape, tol: float = DEFAULT_CLASSIFY_TOL) -> RotatorClassification:
    if not tol > 0.0:
        raise PreconditionError(f"tol must be positive, got {tol!r}")
    arcs = _raw_arcs(shape)
    largest = max(arcs)
    if any(arc < tol or arc > math.pi - tol for arc in arcs):
        kind = RotatorKind.DEGENERATE
    elif all(abs(arc - TWO_PI / 3.0) < tol for arc in arcs):
        kind = RotatorKind.EQUILATERAL
    else:
        p, q, r = arcs
        equal_pairs = sum(abs(u - v) < tol for u, v in ((p, q), (q, r), (p, r)))
        kind = RotatorKind.ISOSCELES if equal_pairs else RotatorKind.SCALENE
    return RotatorClassification(kind, largest)
