"""Cotangent pair potential and its coupling variants.

The potential is written as a force function ``U(cos theta)`` (the sign
convention of celestial mechanics: the equations of motion carry ``+grad U``).
Per-pair coupling constants live in :meth:`PotentialModel.coupling`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import PreconditionError, SingularityError

__all__ = [
    "Variant",
    "PotentialModel",
    "ATTRACTIVE",
    "REPULSIVE",
    "potential_value",
    "potential_derivative",
    "force_kernel",
    "attractivity_check",
]

# |cos theta| at or above this is treated as a collision / antipodal pair
SINGULAR_COS = 1.0 - 1e-12
_SINGULAR_SIN = math.sqrt(1.0 - SINGULAR_COS * SINGULAR_COS)


class Variant(str, enum.Enum):
    ATTRACTIVE = "attractive"
    REPULSIVE = "repulsive"
    CHARGED = "charged"


def _kernel_sign(variant: Variant) -> float:
    # charged pairs carry their sign in the coupling constant
    return -1.0 if variant is Variant.REPULSIVE else 1.0


def _check_cos(c: float) -> None:
    if not math.isfinite(c):
        raise PreconditionError(f"cos(theta) must be finite, got {c!r}")
    if abs(c) >= SINGULAR_COS:
        raise SingularityError(f"|cos(theta)| = {abs(c)!r} is a collision or antipodal pair")


def potential_value(c: float, variant: Variant = Variant.ATTRACTIVE) -> float:
    """``U = c / sqrt(1 - c^2)``, negated for the repulsive variant."""
    _check_cos(c)
    return _kernel_sign(Variant(variant)) * c / math.sqrt(1.0 - c * c)


def potential_derivative(c: float, variant: Variant = Variant.ATTRACTIVE) -> float:
    """``dU/dc = (1 - c^2)^(-3/2)``, negated for the repulsive variant."""
    _check_cos(c)
    return _kernel_sign(Variant(variant)) * (1.0 - c * c) ** -1.5


def force_kernel(theta: float, variant: Variant = Variant.ATTRACTIVE) -> float:
    """``sin(theta) * U'(cos theta)`` evaluated from the sine.

    Equals ``sin(theta) / |sin(theta)|^3`` for the attractive kernel. Going
    through the sine avoids the cancellation in ``1 - cos^2`` at short arcs.
    """
    s = math.sin(theta)
    if abs(s) <= _SINGULAR_SIN:
        raise SingularityError(f"arc {theta!r} is a collision or antipodal pair")
    return _kernel_sign(Variant(variant)) / (s * abs(s))


def attractivity_check(theta: float, variant: Variant = Variant.ATTRACTIVE) -> int:
    """Sign of ``dU/dtheta`` on (0, pi); -1 means the pair attracts."""
    if not 0.0 < theta < math.pi:
        raise PreconditionError(f"theta must lie in (0, pi), got {theta!r}")
    # dU/dtheta = -sin(theta) U'(cos theta)
    derivative = -force_kernel(theta, variant)
    return -1 if derivative < 0.0 else 1


@dataclass(frozen=True)
class PotentialModel:
    """Pair interaction model with per-body masses and (optional) charges."""

    variant: Variant = Variant.ATTRACTIVE
    masses: tuple[float, float, float] = (1.0, 1.0, 1.0)
    charges: tuple[float, float, float] | None = field(default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "variant", Variant(self.variant))
        masses = tuple(float(m) for m in self.masses)
        if len(masses) != 3 or not all(math.isfinite(m) and m > 0.0 for m in masses):
            raise PreconditionError(f"masses must be three positive reals, got {self.masses!r}")
        object.__setattr__(self, "masses", masses)
        if self.variant is Variant.CHARGED:
            if self.charges is None or len(self.charges) != 3:
                raise PreconditionError("the charged model needs exactly three charges")
            charges = tuple(float(e) for e in self.charges)
            if not all(math.isfinite(e) for e in charges):
                raise PreconditionError(f"charges must be finite, got {self.charges!r}")
            object.__setattr__(self, "charges", charges)
        elif self.charges is not None:
            raise PreconditionError("charges are only meaningful for the charged model")

    @classmethod
    def charged(cls, charges, masses=(1.0, 1.0, 1.0)) -> "PotentialModel":
        return cls(Variant.CHARGED, tuple(masses), tuple(charges))

    def coupling(self, i: int, j: int) -> float:
        """Pair coupling multiplying the kernel (bodies indexed 0..2)."""
        if self.variant is Variant.CHARGED:
            return -self.charges[i] * self.charges[j]
        return self.masses[i] * self.masses[j]

    def kernel(self, theta: float) -> float:
        return force_kernel(theta, self.variant)

    @property
    def is_symmetric(self) -> bool:
        """All bodies interchangeable (equal masses and equal pair couplings)."""
        m = self.masses
        if not (m[0] == m[1] == m[2]):
            return False
        if self.variant is Variant.CHARGED:
            e = self.charges
            return abs(e[0]) == abs(e[1]) == abs(e[2]) and e[0] * e[1] == e[1] * e[2] == e[0] * e[2]
        return True


ATTRACTIVE = PotentialModel()
REPULSIVE = PotentialModel(Variant.REPULSIVE)
