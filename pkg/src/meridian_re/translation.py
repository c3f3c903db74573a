"""Shape -> configuration via the angular-momentum constraint.

For ``omega != 0`` the constraint ``sum_k m_k sin(2 theta_k) = 0`` reads
``A sin(2 theta1 + 2 alpha) = 0`` and fixes ``theta1`` modulo ``pi/2`` up to
the branch sign ``s``. Shapes with ``A = 0`` satisfy the constraint for every
``theta1``; there the equations of motion themselves fix the placement.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import AZeroCaseError, InternalInconsistencyError, PreconditionError
from .geometry import Configuration, Shape, normalize_angle
from .potential import ATTRACTIVE, PotentialModel
from .shape_analysis import (
    A_ZERO_THRESHOLD,
    RotationRate,
    a_zero_subcase,
    kinetics,
    omega_and_s,
)

__all__ = [
    "CONSTRAINT_TOL",
    "shape_to_configuration",
    "resolve_a_zero",
    "reflect_configuration",
    "relative_equilibrium",
]

CONSTRAINT_TOL = 1e-10


def _check_constraint(cfg: Configuration, model: PotentialModel) -> None:
    residual = cfg.angular_momentum(model.masses)
    if abs(residual) > CONSTRAINT_TOL * max(model.masses):
        raise InternalInconsistencyError(f"constraint residual {residual:.3e} for {cfg}")


def shape_to_configuration(
    shape: Shape, rate: RotationRate, model: PotentialModel = ATTRACTIVE
) -> Configuration:
    """Place ``shape`` on the meridian using the branch sign in ``rate``.

    The returned ``theta1`` lies in (-pi/2, pi/2]; the other solution,
    ``theta1 + pi``, is :func:`reflect_configuration` of this one.

    Raises:
        AZeroCaseError: if the amplitude A vanishes.
    """
    k = kinetics(shape, model)
    if k.A < A_ZERO_THRESHOLD:
        raise AZeroCaseError(f"amplitude A vanishes for {shape}", a_zero_subcase(shape))
    s = rate.s
    # cos(2 theta1) = s cos(2 alpha), sin(2 theta1) = -s sin(2 alpha)
    theta1 = 0.5 * math.atan2(-s * k.sin_2alpha, s * k.cos_2alpha)
    cfg = Configuration(
        theta1,
        normalize_angle(theta1 + shape.a),
        normalize_angle(theta1 + shape.x),
        rate.omega_sq,
        s,
    )
    _check_constraint(cfg, model)
    return cfg


def _force_sums(positions, model: PotentialModel) -> np.ndarray:
    out = np.zeros(3)
    for k in range(3):
        for i in range(3):
            if i != k:
                out[k] += model.coupling(k, i) * model.kernel(positions[k] - positions[i])
    return out


def resolve_a_zero(shape: Shape, model: PotentialModel = ATTRACTIVE) -> Configuration:
    """Solve the equations of motion directly for a shape with A = 0.

    With ``u = (omega^2/2) (cos 2theta1, sin 2theta1)`` the three equations
    are linear in ``u``; a vanishing right-hand side gives a fixed point.

    Raises:
        PreconditionError: if A is not below the threshold.
        InternalInconsistencyError: if the shape matches no A = 0 case or the
            equations admit no solution.
    """
    k = kinetics(shape, model)
    if k.A >= A_ZERO_THRESHOLD:
        raise PreconditionError(f"A = {k.A!r} is not zero; use shape_to_configuration")
    equal_masses = model.masses == (1.0, 1.0, 1.0)
    if equal_masses and a_zero_subcase(shape) is None:
        raise InternalInconsistencyError(f"{shape} has A = 0 but matches no enumerated case")

    phases = np.array([0.0, shape.a, shape.x])
    m = np.asarray(model.masses)
    rhs = _force_sums(phases, model)
    scale = np.abs(rhs).max()
    # m_k sin(2 theta1 + 2 phi_k) (omega^2/2) = rhs_k
    M = np.column_stack([m * np.sin(2 * phases), m * np.cos(2 * phases)])
    if scale <= 1e-12 * max(abs(model.coupling(i, j)) for i in range(3) for j in range(3) if i != j):
        return Configuration(0.0, shape.a, shape.x, 0.0, 1, theta3_undetermined=True)

    u, *_ = np.linalg.lstsq(M, rhs, rcond=None)
    if np.abs(M @ u - rhs).max() > 1e-9 * scale:
        raise InternalInconsistencyError(f"equations of motion have no solution for {shape}")
    half_omega_sq = math.hypot(u[0], u[1])
    theta1 = 0.5 * math.atan2(u[1], u[0])
    return Configuration(
        theta1,
        normalize_angle(theta1 + shape.a),
        normalize_angle(theta1 + shape.x),
        2.0 * half_omega_sq,
        1,
    )


def reflect_configuration(cfg: Configuration) -> Configuration:
    """Mirror through the equator: every colatitude shifted by pi."""
    return Configuration(
        normalize_angle(cfg.theta1 + math.pi),
        normalize_angle(cfg.theta2 + math.pi),
        normalize_angle(cfg.theta3 + math.pi),
        cfg.omega_sq,
        cfg.s,
        cfg.theta3_undetermined,
    )


def relative_equilibrium(shape: Shape, model: PotentialModel = ATTRACTIVE) -> Configuration:
    """Full pipeline: rotation rate, then placement, dispatching A = 0 shapes."""
    k = kinetics(shape, model)
    if k.A < A_ZERO_THRESHOLD:
        return resolve_a_zero(shape, model)
    rate = omega_and_s(shape, model)
    if rate.fixed_point:
        return Configuration(0.0, shape.a, shape.x, 0.0, 1, theta3_undetermined=True)
    return shape_to_configuration(shape, rate, model)
