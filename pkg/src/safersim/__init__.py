"""Contract-checked simulator of a self-rescue propulsion backpack.

Discrete thruster-selection and attitude-hold logic coupled to a
continuous rigid-body model, with scenario execution, fault injection,
exhaustive logic enumeration, a CLI, and an HTTP gateway.
"""

from .aah import AahState, AahThresholds, InertialRefSensors, aah_control_out
from .commands import (
    AxisCommand,
    ButtonPosition,
    ControlMode,
    HandGripPosition,
    RotAxis,
    SwitchPositions,
    TranAxis,
)
from .config import ScenarioStep, SimConfig, load_config, load_scenario
from .contracts import ContractViolation, ViolationKind
from .dynamics import BodyParams, GimbalLockError, KinematicState
from .sim import CycleReport, SaferSim, SaferState
from .thrusters import ThrusterName

__version__ = "0.1.0"

__all__ = [
    "AahState",
    "AahThresholds",
    "AxisCommand",
    "BodyParams",
    "ButtonPosition",
    "ContractViolation",
    "ControlMode",
    "CycleReport",
    "GimbalLockError",
    "HandGripPosition",
    "InertialRefSensors",
    "KinematicState",
    "RotAxis",
    "SaferSim",
    "SaferState",
    "ScenarioStep",
    "SimConfig",
    "SwitchPositions",
    "ThrusterName",
    "TranAxis",
    "ViolationKind",
    "aah_control_out",
    "load_config",
    "load_scenario",
    "__version__",
]
