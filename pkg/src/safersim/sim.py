"""The control cycle over the continuous plant.

One cycle: map the grip through the active mode, merge with the
attitude hold, select thrusters (contract-checked), advance the
engage machine, integrate the rigid body for one step, and derive the
next inertial sensor reading.  Also: scenario execution with fault
injection, and exhaustive enumeration of the selection logic.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, NamedTuple, Sequence

from .aah import (
    AahState,
    InertialRefSensors,
    aah_control_out,
    aah_transition,
)
from .commands import (
    NULL_GRIP,
    ROT_AXES,
    AxisCommand,
    ButtonPosition,
    ControlMode,
    HandGripPosition,
    RotAxis,
    RotCommand,
    SwitchPositions,
    grip_command,
    rot_command,
)
from .config import ScenarioStep, SimConfig
from .contracts import (
    ContractViolation,
    GuardedOperation,
    Target,
    check_invariant,
    comprehend,
    evaluate_guarded,
    register_invariant,
)
from .dynamics import (
    ZERO_POSITION_DATA,
    PositionData,
    newton_rhs,
    integrate_cycle,
    position_data_to_state,
    state_to_position_data,
)
from .thrusters import (
    ThrusterName,
    ThrusterSet,
    default_tables,
    load_geometry,
    load_tables,
    net_force_torque,
    packaged_geometry,
    selected_thrusters,
    thruster_consistency,
)


@dataclass(frozen=True)
class SaferState:
    """Complete simulator state after `clock` executed cycles."""

    clock: int = 0
    pos_data: PositionData = ZERO_POSITION_DATA
    sensors: InertialRefSensors = InertialRefSensors()
    step: float = 0.25
    history: tuple = (ZERO_POSITION_DATA,)
    aah: AahState = AahState()
    failed: frozenset = frozenset()
    last_fired: frozenset = frozenset()


register_invariant(
    "SaferState",
    lambda s: isinstance(s, SaferState)
    and s.clock >= 0
    and s.step > 0
    and len(s.history) == s.clock + 1
    and s.history[-1] == s.pos_data,
)


@dataclass(frozen=True)
class CycleReport:
    """Outcome of one executed cycle (state values post-cycle)."""

    clock: int
    fired: frozenset
    active_axes: frozenset
    ignore_hcm: frozenset
    pos_data: PositionData
    sensors: InertialRefSensors
    violations: tuple = ()


class EnumerationRow(NamedTuple):
    """One logic-only evaluation of the selection pipeline."""

    switches: SwitchPositions
    grip: HandGripPosition
    aah_cmd: RotCommand
    fired: frozenset
    violations: tuple


def _single_axis_grips() -> tuple[HandGripPosition, ...]:
    grips = [NULL_GRIP]
    for slot in range(4):
        for cmd in (AxisCommand.NEG, AxisCommand.POS):
            values = [AxisCommand.ZERO] * 4
            values[slot] = cmd
            grips.append(HandGripPosition(*values))
    return tuple(grips)


class SaferSim:
    """Stateful simulator bound to one configuration."""

    def __init__(self, config: SimConfig | None = None) -> None:
        self.config = config or SimConfig()
        self.geometry = (
            load_geometry(self.config.geometry_path)
            if self.config.geometry_path
            else packaged_geometry()
        )
        self.tables = (
            load_tables(self.config.tables_path)
            if self.config.tables_path
            else default_tables()
        )
        self._select_op = GuardedOperation(
            name="selected_thrusters",
            body=lambda hcm, aah, active, ignore: selected_thrusters(
                hcm, aah, active, ignore, self.tables
            ),
            postcondition=lambda args, result: len(result) <= 4
            and thruster_consistency(result, self.geometry),
        )
        self.state = self._fresh_state()

    def _fresh_state(self) -> SaferState:
        return SaferState(step=self.config.step)

    def reset(self) -> SaferState:
        """Back to rest: clock 0, zero state, hold off, no faults."""
        self.state = self._fresh_state()
        return self.state

    def set_fault(self, thruster: ThrusterName, broken: bool = True) -> SaferState:
        failed = (
            self.state.failed | {thruster}
            if broken
            else self.state.failed - {thruster}
        )
        self.state = replace(self.state, failed=failed)
        return self.state

    def _select_and_check(
        self, hcm_cmd, aah_cmd, aah_state: AahState
    ) -> tuple[ThrusterSet, tuple]:
        args = (hcm_cmd, aah_cmd, aah_state.active_axes, aah_state.ignore_hcm)
        result = evaluate_guarded(self._select_op, *args)
        if isinstance(result, ContractViolation):
            return self._select_op.body(*args), (result,)
        return result, ()

    def calc_new_position(
        self, state: SaferState, fired: ThrusterSet
    ) -> tuple[PositionData, InertialRefSensors]:
        """Integrate one cycle of thrust and read back the sensors.

        Rates and velocity come from the new state; the acceleration
        reading is the cycle's net thrust resolved through the new
        attitude.
        """
        f_body, q_body = net_force_torque(fired, self.geometry, state.failed)
        cfg = self.config
        kin = integrate_cycle(
            position_data_to_state(state.pos_data),
            f_body,
            q_body,
            cfg.body,
            cfg.step,
            cfg.substeps,
            cfg.gimbal_eps,
            cfg.gravity,
        )
        accel = newton_rhs(kin.angles, f_body, cfg.body.mass)
        sensors = InertialRefSensors(
            roll_rate=kin.omega[0],
            pitch_rate=kin.omega[1],
            yaw_rate=kin.omega[2],
            vx=kin.v[0],
            vy=kin.v[1],
            vz=kin.v[2],
            ax=accel[0] + cfg.gravity[0],
            ay=accel[1] + cfg.gravity[1],
            az=accel[2] + cfg.gravity[2],
        )
        return state_to_position_data(kin), sensors

    def control_cycle(
        self,
        switches: SwitchPositions,
        grip: HandGripPosition,
        aah_cmd: RotCommand | None = None,
        sensors: InertialRefSensors | None = None,
    ) -> CycleReport:
        """Execute one cycle.  Without an explicit hold command the
        bang-bang law is applied to the given (default: current)
        sensor reading."""
        state = self.state
        if sensors is None:
            sensors = state.sensors
        if aah_cmd is None:
            aah_cmd = aah_control_out(sensors, self.config.thresholds)
        hcm_cmd = grip_command(grip, switches.mode)
        fired, violations = self._select_and_check(hcm_cmd, aah_cmd, state.aah)
        new_aah = aah_transition(
            state.aah,
            switches.aah_button,
            hcm_cmd,
            state.clock,
            self.config.double_click_cycles,
        )
        new_pos, new_sensors = self.calc_new_position(state, fired)
        self.state = replace(
            state,
            clock=state.clock + 1,
            pos_data=new_pos,
            sensors=new_sensors,
            history=state.history + (new_pos,),
            aah=new_aah,
            last_fired=frozenset(fired),
        )
        check = check_invariant("SaferState", self.state)
        if isinstance(check, ContractViolation):
            violations = violations + (check,)
        return CycleReport(
            clock=self.state.clock,
            fired=frozenset(fired),
            active_axes=new_aah.active_axes,
            ignore_hcm=new_aah.ignore_hcm,
            pos_data=new_pos,
            sensors=new_sensors,
            violations=violations,
        )

    def sensor_control_cycle(
        self, switches: SwitchPositions, grip: HandGripPosition
    ) -> CycleReport:
        """One cycle closed over the simulator's own sensor reading."""
        return self.control_cycle(switches, grip)

    def run_scenario(
        self,
        steps: Sequence[ScenarioStep],
        fault_schedule: Mapping[int, Iterable] | None = None,
    ) -> list[CycleReport]:
        """Execute scenario steps in order.

        fault_schedule maps a 1-based cycle number to (thruster,
        broken) pairs applied before that cycle runs.  Violations are
        recorded per cycle; execution always continues.
        """
        reports: list[CycleReport] = []
        for step in steps:
            for _ in range(step.repeat):
                if fault_schedule:
                    for thruster, broken in fault_schedule.get(
                        self.state.clock + 1, ()
                    ):
                        self.set_fault(thruster, broken)
                if step.aah_override is not None:
                    report = self.control_cycle(
                        step.switches, step.grip, aah_cmd=step.aah_override
                    )
                else:
                    report = self.sensor_control_cycle(step.switches, step.grip)
                reports.append(report)
        return reports

    def control_cycle_test(
        self,
        switches: SwitchPositions,
        grip: HandGripPosition,
        aah_cmd: RotCommand,
    ) -> EnumerationRow:
        """Selection logic only, no state change: the hold is taken as
        fully engaged (all axes active, none ignored)."""
        hcm_cmd = grip_command(grip, switches.mode)
        snapshot = AahState(
            active_axes=frozenset(ROT_AXES), ignore_hcm=frozenset()
        )
        fired, violations = self._select_and_check(hcm_cmd, aah_cmd, snapshot)
        return EnumerationRow(switches, grip, aah_cmd, frozenset(fired), violations)

    def _enumeration_domains(self) -> tuple:
        axis = tuple(AxisCommand)
        return (
            tuple(ControlMode),
            tuple(ButtonPosition),
            axis,
            axis,
            axis,
            axis,
            axis,
            axis,
            axis,
        )

    def _row_from_tuple(self, t: tuple) -> EnumerationRow:
        mode, button, s1, s2, s3, s4, a1, a2, a3 = t
        return self.control_cycle_test(
            SwitchPositions(mode=mode, aah_button=button),
            HandGripPosition(s1, s2, s3, s4),
            rot_command(roll=a1, pitch=a2, yaw=a3),
        )

    def big_test(self) -> tuple[EnumerationRow, ...]:
        """Every mode, button, single-axis (or null) grip, and hold
        command triple: 2 x 2 x 9 x 27 = 972 evaluations."""
        axis = tuple(AxisCommand)
        rows = []
        for mode in ControlMode:
            for button in ButtonPosition:
                for grip in _single_axis_grips():
                    for a1 in axis:
                        for a2 in axis:
                            for a3 in axis:
                                rows.append(
                                    self.control_cycle_test(
                                        SwitchPositions(mode=mode, aah_button=button),
                                        grip,
                                        rot_command(roll=a1, pitch=a2, yaw=a3),
                                    )
                                )
        return tuple(rows)

    def huge_test(self) -> tuple[EnumerationRow, ...]:
        """The full Cartesian command space, built by comprehension:
        2 x 2 x 3^4 x 3^3 = 8748 evaluations."""
        result = comprehend(
            self._enumeration_domains(),
            lambda t: True,
            self._row_from_tuple,
            Target.SEQUENCE,
        )
        if isinstance(result, ContractViolation):  # pragma: no cover
            raise RuntimeError(str(result))
        return result
