"""Continuous rigid-body model.

Rotation matrices, Euler's equations for body rates, proper Euler
angle (Z-X-Z) kinematics, Newton's translation law, and a fixed-step
classical 4th-order integration of one control cycle.  Body frame:
X forward, Y right, Z down.  The fixed frame coincides with the body
frame at zero attitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .contracts import register_invariant

Vec3 = tuple[float, float, float]

DEFAULT_STEP = 0.25
DEFAULT_SUBSTEPS = 16
DEFAULT_GIMBAL_EPS = 1e-6


class GimbalLockError(ValueError):
    """Euler-angle rates are undefined: sin(theta) is inside the guard
    band while the in-plane angular velocity is nonzero."""

    def __init__(self, theta: float) -> None:
        self.theta = theta
        super().__init__(f"gimbal lock: angle rates undefined at theta={theta!r}")


@dataclass(frozen=True)
class BodyParams:
    """Mass (kg) and diagonal inertia (kg m^2).

    Defaults are placeholders sized for an astronaut plus backpack,
    tuned so the shipped scenarios exhibit the documented behavior;
    they are configuration values, not measured hardware data.
    """

    mass: float = 150.0
    inertia: Vec3 = (20.0, 12.5, 10.0)

    def __post_init__(self) -> None:
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        i1, i2, i3 = self.inertia
        if min(i1, i2, i3) <= 0:
            raise ValueError("inertia components must be positive")
        if i1 + i2 < i3 or i2 + i3 < i1 or i3 + i1 < i2:
            raise ValueError("inertia violates the rigid-body triangle inequality")


class EulerAngles(NamedTuple):
    phi: float
    theta: float
    psi: float


class KinematicState(NamedTuple):
    """Position and velocity (fixed frame), attitude angles, body
    angular velocity."""

    x: Vec3
    v: Vec3
    angles: Vec3
    omega: Vec3


PositionData = tuple  # 12 floats: x, v, angles, omega

ZERO_POSITION_DATA: PositionData = (0.0,) * 12


def state_to_position_data(state: KinematicState) -> PositionData:
    return tuple(state.x) + tuple(state.v) + tuple(state.angles) + tuple(state.omega)


def position_data_to_state(data: PositionData) -> KinematicState:
    if len(data) != 12:
        raise ValueError("position data must have exactly 12 components")
    return KinematicState(
        tuple(data[0:3]), tuple(data[3:6]), tuple(data[6:9]), tuple(data[9:12])
    )


register_invariant(
    "KinematicState",
    lambda s: isinstance(s, KinematicState)
    and all(math.isfinite(c) for part in s for c in part),
)

register_invariant(
    "PositionData",
    lambda d: isinstance(d, tuple)
    and len(d) == 12
    and all(math.isfinite(c) for c in d),
)

register_invariant(
    "BodyParams",
    lambda p: isinstance(p, BodyParams)
    and p.mass > 0
    and min(p.inertia) > 0,
)


def d1(theta: float) -> np.ndarray:
    """Coordinate turn about the first axis."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, -s, c]])


def d3(psi: float) -> np.ndarray:
    """Coordinate turn about the third axis."""
    c, s = math.cos(psi), math.sin(psi)
    return np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])


def body_to_fixed(angles: Vec3) -> np.ndarray:
    """Transform of body-frame vectors into the fixed frame: the
    transpose of D3(psi) D1(theta) D3(phi)."""
    phi, theta, psi = angles
    return (d3(psi) @ d1(theta) @ d3(phi)).T


def euler_rotation_rhs(omega: Vec3, torque: Vec3, inertia: Vec3) -> Vec3:
    """Body-rate derivative from Euler's equations:
    I dOmega/dt + Omega x I Omega = Q."""
    w1, w2, w3 = omega
    q1, q2, q3 = torque
    i1, i2, i3 = inertia
    return (
        (q1 - (i3 - i2) * w2 * w3) / i1,
        (q2 - (i1 - i3) * w3 * w1) / i2,
        (q3 - (i2 - i1) * w1 * w2) / i3,
    )


def omega_from_angle_rates(angles: Vec3, rates: Vec3) -> Vec3:
    """Body angular velocity from Euler-angle rates:
    Omega = D3(psi) D1(theta) (theta', 0, phi')^T + (0, 0, psi')^T."""
    _, theta, psi = angles
    phi_dot, theta_dot, psi_dot = rates
    ct, st = math.cos(theta), math.sin(theta)
    cp, sp = math.cos(psi), math.sin(psi)
    return (
        cp * theta_dot + sp * st * phi_dot,
        -sp * theta_dot + cp * st * phi_dot,
        ct * phi_dot + psi_dot,
    )


def angle_rates_from_omega(
    angles: Vec3, omega: Vec3, gimbal_eps: float = DEFAULT_GIMBAL_EPS
) -> Vec3:
    """Invert the rate map: (phi', theta', psi') from Omega.

    phi' divides by sin(theta); inside the guard band the inversion is
    only defined when its numerator is exactly zero (rest and pure
    third-axis spin), where the smooth limit phi' = 0 applies.
    """
    _, theta, psi = angles
    w1, w2, w3 = omega
    cp, sp = math.cos(psi), math.sin(psi)
    st, ct = math.sin(theta), math.cos(theta)
    numerator = w1 * sp + w2 * cp
    if abs(st) < gimbal_eps:
        if numerator != 0.0:
            raise GimbalLockError(theta)
        phi_dot = 0.0
    else:
        phi_dot = numerator / st
    theta_dot = w1 * cp - w2 * sp
    psi_dot = w3 - ct * phi_dot
    return (phi_dot, theta_dot, psi_dot)


def newton_rhs(angles: Vec3, f_body: Vec3, mass: float) -> Vec3:
    """Fixed-frame acceleration of the body under a body-frame force."""
    if mass <= 0:
        raise ValueError("mass must be positive")
    a = body_to_fixed(angles) @ np.asarray(f_body) / mass
    return (a[0], a[1], a[2])


def _clamped_rates(angles, omega, gimbal_eps: float):
    """Stage-level rate map: never raises.  Inside the guard band a
    nonzero numerator divides by the clamped sin(theta) so that a
    transit through the singular plane stays finite and deterministic."""
    _, theta, psi = angles
    w1, w2, w3 = omega
    cp, sp = math.cos(psi), math.sin(psi)
    st, ct = math.sin(theta), math.cos(theta)
    numerator = w1 * sp + w2 * cp
    if abs(st) < gimbal_eps:
        if numerator == 0.0:
            phi_dot = 0.0
        else:
            phi_dot = numerator / math.copysign(gimbal_eps, st if st != 0.0 else 1.0)
    else:
        phi_dot = numerator / st
    return (phi_dot, w1 * cp - w2 * sp, w3 - ct * phi_dot)


def _escape_gimbal(y: np.ndarray, q_body: Vec3, gimbal_eps: float) -> None:
    """Nudge theta off the singular plane at a substep boundary when
    the in-plane rotation cannot stay identically zero."""
    theta = y[7]
    st = math.sin(theta)
    if abs(st) >= gimbal_eps:
        return
    if y[9] == 0.0 and y[10] == 0.0 and q_body[0] == 0.0 and q_body[1] == 0.0:
        return  # motion confined to the third axis stays exact
    ct = math.cos(theta)
    direction = (1.0 if st >= 0.0 else -1.0) * (1.0 if ct >= 0.0 else -1.0)
    y[7] = theta + 2.0 * gimbal_eps * direction


def integrate_cycle(
    state: KinematicState,
    f_body: Vec3,
    q_body: Vec3,
    params: BodyParams,
    step: float = DEFAULT_STEP,
    substeps: int = DEFAULT_SUBSTEPS,
    gimbal_eps: float = DEFAULT_GIMBAL_EPS,
    gravity: Vec3 = (0.0, 0.0, 0.0),
) -> KinematicState:
    """Advance one control cycle under constant body force and torque.

    Classical 4th-order fixed-step integration of the coupled 12-state;
    each stage evaluates the four derivative blocks in order: body
    rates, Euler angles, velocity, position.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if substeps < 1:
        raise ValueError("substeps must be at least 1")
    h = step / substeps
    inertia = params.inertia
    mass = params.mass
    grav = np.asarray(gravity, dtype=float)
    f_arr = np.asarray(f_body, dtype=float)

    def rhs(y: np.ndarray) -> np.ndarray:
        omega = (y[9], y[10], y[11])
        angles = (y[6], y[7], y[8])
        omega_dot = euler_rotation_rhs(omega, q_body, inertia)
        angle_rates = _clamped_rates(angles, omega, gimbal_eps)
        v_dot = body_to_fixed(angles) @ f_arr / mass + grav
        out = np.empty(12)
        out[0:3] = y[3:6]
        out[3:6] = v_dot
        out[6:9] = angle_rates
        out[9:12] = omega_dot
        return out

    y = np.array(state_to_position_data(state), dtype=float)
    for _ in range(substeps):
        _escape_gimbal(y, q_body, gimbal_eps)
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return position_data_to_state(tuple(float(c) for c in y))
