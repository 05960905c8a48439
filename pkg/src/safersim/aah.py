"""Automatic Attitude Hold.

A push-button protocol engages the hold; a double click within the
click window disengages it.  While engaged, each axis the pilot
rotates by hand drops out of the hold permanently (until the next
engage), and axes already rotated at the moment of engagement are
ignored entirely so the hold owns them.  The control law itself is
bang-bang per axis on the sensed body rates.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from .commands import (
    ROT_AXES,
    AxisCommand,
    ButtonPosition,
    RotAxis,
    RotCommand,
    SixDofCommand,
    rot_command,
)
from .contracts import register_invariant

ALL_ROT_AXES = frozenset(ROT_AXES)

DEFAULT_DOUBLE_CLICK_CYCLES = 2  # 0.5 s at the 1/4 s control step


class AahEngageState(enum.Enum):
    OFF = "OFF"
    STARTED = "STARTED"
    ON = "ON"
    PRESSED_ONCE = "PRESSED_ONCE"
    CLOSING = "CLOSING"


_ENGAGED = frozenset(
    {
        AahEngageState.STARTED,
        AahEngageState.ON,
        AahEngageState.PRESSED_ONCE,
        AahEngageState.CLOSING,
    }
)


@dataclass(frozen=True)
class AahState:
    engage: AahEngageState = AahEngageState.OFF
    active_axes: frozenset = frozenset()
    ignore_hcm: frozenset = frozenset()
    press_clock: int = 0

    @property
    def engaged(self) -> bool:
        return self.engage in _ENGAGED


register_invariant(
    "AahState",
    lambda s: isinstance(s, AahState)
    and (s.engage is not AahEngageState.OFF or (not s.active_axes and not s.ignore_hcm))
    and s.active_axes <= ALL_ROT_AXES
    and s.ignore_hcm <= ALL_ROT_AXES,
)


class InertialRefSensors(NamedTuple):
    """Simulated sensor pack: body rates (rad/s), fixed-frame velocity
    (m/s) and acceleration (m/s^2)."""

    roll_rate: float = 0.0
    pitch_rate: float = 0.0
    yaw_rate: float = 0.0
    vx: float = 0.0
    vy: float = 0.0
    vz: float = 0.0
    ax: float = 0.0
    ay: float = 0.0
    az: float = 0.0


register_invariant(
    "InertialRefSensors",
    lambda s: isinstance(s, InertialRefSensors) and all(math.isfinite(v) for v in s),
)


@dataclass(frozen=True)
class AahThresholds:
    eps_roll: float = 0.05
    eps_pitch: float = 0.05
    eps_yaw: float = 0.05

    def __post_init__(self) -> None:
        if min(self.eps_roll, self.eps_pitch, self.eps_yaw) <= 0:
            raise ValueError("attitude-hold thresholds must be strictly positive")


def aah_transition(
    state: AahState,
    button: ButtonPosition,
    grip_cmd: SixDofCommand,
    clock: int,
    double_click_cycles: int = DEFAULT_DOUBLE_CLICK_CYCLES,
) -> AahState:
    """Advance the engage machine one control cycle.

    The button is level-sampled once per cycle; a second press within
    double_click_cycles of the first switches the hold off.  Engaged
    states knock any hand-rotated, non-ignored axis out of active_axes
    for good.
    """
    if double_click_cycles < 1:
        raise ValueError("double_click_cycles must be at least 1")
    down = button is ButtonPosition.DOWN
    within = clock - state.press_clock <= double_click_cycles
    e = state.engage

    if e is AahEngageState.OFF:
        if down:
            state = AahState(
                engage=AahEngageState.STARTED,
                active_axes=ALL_ROT_AXES,
                ignore_hcm=frozenset(
                    a for a in ROT_AXES if grip_cmd.rot[a] is not AxisCommand.ZERO
                ),
                press_clock=clock,
            )
    elif e is AahEngageState.STARTED:
        if not down:
            state = replace(state, engage=AahEngageState.ON)
    elif e is AahEngageState.ON:
        if down:
            state = replace(state, engage=AahEngageState.PRESSED_ONCE, press_clock=clock)
    elif e is AahEngageState.PRESSED_ONCE:
        if not down:
            state = replace(
                state,
                engage=AahEngageState.CLOSING if within else AahEngageState.ON,
            )
    else:  # CLOSING
        if down:
            if within:
                return AahState()
            state = replace(state, engage=AahEngageState.ON)
        elif not within:
            state = replace(state, engage=AahEngageState.ON)

    if state.engage in _ENGAGED:
        knocked = frozenset(
            a
            for a in state.active_axes
            if a not in state.ignore_hcm and grip_cmd.rot[a] is not AxisCommand.ZERO
        )
        if knocked:
            state = replace(state, active_axes=state.active_axes - knocked)
    return state


def _bang_bang(rate: float, eps: float) -> AxisCommand:
    # Fire against the sensed rotation; the band edges are inclusive.
    if rate <= -eps:
        return AxisCommand.POS
    if rate >= eps:
        return AxisCommand.NEG
    return AxisCommand.ZERO


def aah_control_out(
    sensors: InertialRefSensors, thresholds: AahThresholds = AahThresholds()
) -> RotCommand:
    return rot_command(
        roll=_bang_bang(sensors.roll_rate, thresholds.eps_roll),
        pitch=_bang_bang(sensors.pitch_rate, thresholds.eps_pitch),
        yaw=_bang_bang(sensors.yaw_rate, thresholds.eps_yaw),
    )
