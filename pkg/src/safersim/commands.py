"""Discrete command model.

Axis commands, the hand-grip-to-six-DOF mapping per control mode, and
the prioritized integration of hand-controller and automatic attitude
hold commands.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

from .contracts import register_invariant


class AxisCommand(enum.IntEnum):
    NEG = -1
    ZERO = 0
    POS = 1


class TranAxis(enum.Enum):
    X = "X"
    Y = "Y"
    Z = "Z"


class RotAxis(enum.Enum):
    ROLL = "ROLL"
    PITCH = "PITCH"
    YAW = "YAW"


class ControlMode(enum.Enum):
    TRAN = "TRAN"
    ROT = "ROT"


class ButtonPosition(enum.Enum):
    UP = "UP"
    DOWN = "DOWN"


# Total maps axis -> AxisCommand.  Kept as plain dicts so that partial
# maps are representable and rejected by the registered invariants.
TranCommand = dict[TranAxis, AxisCommand]
RotCommand = dict[RotAxis, AxisCommand]

TRAN_AXES = (TranAxis.X, TranAxis.Y, TranAxis.Z)
ROT_AXES = (RotAxis.ROLL, RotAxis.PITCH, RotAxis.YAW)


def _total_over(axes: tuple) -> "callable":
    def predicate(value: object) -> bool:
        return (
            isinstance(value, dict)
            and set(value) == set(axes)
            and all(isinstance(v, AxisCommand) for v in value.values())
        )

    return predicate


register_invariant("TranCommand", _total_over(TRAN_AXES))
register_invariant("RotCommand", _total_over(ROT_AXES))


def tran_command(
    x: AxisCommand = AxisCommand.ZERO,
    y: AxisCommand = AxisCommand.ZERO,
    z: AxisCommand = AxisCommand.ZERO,
) -> TranCommand:
    return {TranAxis.X: x, TranAxis.Y: y, TranAxis.Z: z}


def rot_command(
    roll: AxisCommand = AxisCommand.ZERO,
    pitch: AxisCommand = AxisCommand.ZERO,
    yaw: AxisCommand = AxisCommand.ZERO,
) -> RotCommand:
    return {RotAxis.ROLL: roll, RotAxis.PITCH: pitch, RotAxis.YAW: yaw}


@dataclass(frozen=True)
class SixDofCommand:
    tran: TranCommand
    rot: RotCommand

    def __post_init__(self) -> None:
        # Freeze against aliasing; invariant checks stay cheap.
        object.__setattr__(self, "tran", dict(self.tran))
        object.__setattr__(self, "rot", dict(self.rot))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SixDofCommand)
            and self.tran == other.tran
            and self.rot == other.rot
        )

    def __hash__(self) -> int:
        return hash(
            (
                tuple(self.tran[a] for a in TRAN_AXES),
                tuple(self.rot[a] for a in ROT_AXES),
            )
        )


NULL_COMMAND = SixDofCommand(tran_command(), rot_command())

register_invariant(
    "SixDofCommand",
    lambda v: isinstance(v, SixDofCommand)
    and _total_over(TRAN_AXES)(v.tran)
    and _total_over(ROT_AXES)(v.rot),
)


@dataclass(frozen=True)
class SwitchPositions:
    mode: ControlMode
    aah_button: ButtonPosition


class HandGripPosition(NamedTuple):
    """Four-axis grip: vertical and lateral deflections, twist, and
    the longitudinal push-pull axis."""

    vertical: AxisCommand
    twist: AxisCommand
    lateral: AxisCommand
    longitudinal: AxisCommand


NULL_GRIP = HandGripPosition(
    AxisCommand.ZERO, AxisCommand.ZERO, AxisCommand.ZERO, AxisCommand.ZERO
)


def grip_command(grip: HandGripPosition, mode: ControlMode) -> SixDofCommand:
    """Decode the grip per mode.

    X and pitch are available in both modes; the remaining two slots
    switch between translations (TRAN) and rotations (ROT).
    """
    if mode is ControlMode.TRAN:
        return SixDofCommand(
            tran_command(x=grip.longitudinal, y=grip.lateral, z=grip.vertical),
            rot_command(pitch=grip.twist),
        )
    return SixDofCommand(
        tran_command(x=grip.longitudinal),
        rot_command(roll=grip.vertical, pitch=grip.twist, yaw=grip.lateral),
    )


def integrated_commands(
    hcm: SixDofCommand,
    aah: RotCommand,
    active_axes: frozenset[RotAxis],
    ignore_hcm: frozenset[RotAxis],
) -> SixDofCommand:
    """Merge hand-controller and attitude-hold commands.

    Per rotation axis: an ignored grip axis defers entirely to the
    hold (ZERO when the axis is not actively held); otherwise a
    non-ZERO grip rotation wins; otherwise the hold's command applies
    on actively held axes.  Rotations take priority over translations:
    any non-ZERO integrated rotation suppresses all translations, and
    otherwise at most one translation passes, X first, then Y, then Z.
    """
    rot: RotCommand = {}
    for axis in ROT_AXES:
        held = aah[axis] if axis in active_axes else AxisCommand.ZERO
        if axis in ignore_hcm:
            rot[axis] = held
        elif hcm.rot[axis] is not AxisCommand.ZERO:
            rot[axis] = hcm.rot[axis]
        else:
            rot[axis] = held

    if any(rot[a] is not AxisCommand.ZERO for a in ROT_AXES):
        return SixDofCommand(tran_command(), rot)

    tran = tran_command()
    for axis in TRAN_AXES:
        if hcm.tran[axis] is not AxisCommand.ZERO:
            tran[axis] = hcm.tran[axis]
            break
    return SixDofCommand(tran, rot)
