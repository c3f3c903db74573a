"""Exception hierarchy.

Every error carries a short machine-readable ``code`` and the process exit
status the CLI maps it to.
"""

from __future__ import annotations


class MeridianError(Exception):
    code = "INTERNAL"
    exit_status = 6


class PreconditionError(MeridianError, ValueError):
    code = "PRECONDITION"
    exit_status = 2


class SingularityError(MeridianError, ArithmeticError):
    """A pair of bodies collides (arc 0) or is antipodal (arc pi)."""

    code = "SINGULAR"
    exit_status = 3

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class AntipodalPairError(SingularityError):
    pass


class OutOfFamilyRangeError(MeridianError, ValueError):
    code = "RANGE"
    exit_status = 4


class AZeroCaseError(MeridianError):
    """Amplitude A vanishes; the translation formula does not apply.

    ``subcase`` names the matched degenerate shape (``"equilateral"`` or
    ``"isosceles-pi/3"``) or is ``None`` for general models.
    """

    code = "A_ZERO"
    exit_status = 6

    def __init__(self, message: str, subcase: str | None = None):
        super().__init__(message)
        self.subcase = subcase


class NotARotatorError(PreconditionError):
    """The shape does not satisfy the shape condition f = 0."""


class InternalInconsistencyError(MeridianError):
    code = "INTERNAL"
    exit_status = 6
