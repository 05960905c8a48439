"""Configuration files, scenario files, and trajectory output.

Configuration is INI-style.  Scenario files are whitespace-separated
token lines with # comments.  Trajectory output is CSV with a frozen
column set; floats are written with repr so repeated runs of the same
build produce byte-identical files.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .aah import DEFAULT_DOUBLE_CLICK_CYCLES, AahThresholds
from .commands import (
    ROT_AXES,
    AxisCommand,
    ButtonPosition,
    ControlMode,
    HandGripPosition,
    RotCommand,
    SwitchPositions,
    rot_command,
)
from .dynamics import (
    DEFAULT_GIMBAL_EPS,
    DEFAULT_STEP,
    DEFAULT_SUBSTEPS,
    BodyParams,
    Vec3,
)

CONFIG_ENV_VAR = "SAFERSIM_CONFIG"


class ConfigError(ValueError):
    """Malformed or unknown configuration content."""


@dataclass(frozen=True)
class SimConfig:
    """Everything the simulator needs besides the scenario itself."""

    body: BodyParams = field(default_factory=BodyParams)
    step: float = DEFAULT_STEP
    substeps: int = DEFAULT_SUBSTEPS
    gimbal_eps: float = DEFAULT_GIMBAL_EPS
    gravity: Vec3 = (0.0, 0.0, 0.0)
    thresholds: AahThresholds = field(default_factory=AahThresholds)
    double_click_cycles: int = DEFAULT_DOUBLE_CLICK_CYCLES
    geometry_path: str | None = None  # None selects the packaged file
    tables_path: str | None = None

    def __post_init__(self) -> None:
        if self.step <= 0:
            raise ConfigError("step must be positive")
        if self.substeps < 1:
            raise ConfigError("substeps must be at least 1")
        if self.gimbal_eps <= 0:
            raise ConfigError("gimbal_eps must be positive")
        if self.double_click_cycles < 1:
            raise ConfigError("double_click_cycles must be at least 1")


_KNOWN_KEYS = {
    "body": {"mass", "inertia"},
    "integration": {"step", "substeps", "gimbal_eps", "gravity"},
    "aah": {"eps_roll", "eps_pitch", "eps_yaw", "double_click_cycles"},
    "data": {"geometry", "tables"},
}


def _parse_vec3(raw: str, where: str) -> Vec3:
    parts = raw.split()
    if len(parts) != 3:
        raise ConfigError(f"{where} must have exactly 3 components")
    try:
        return (float(parts[0]), float(parts[1]), float(parts[2]))
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def parse_config(text: str, base_dir: Path | None = None) -> SimConfig:
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None

    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown section [{section}]")
        for key in parser[section]:
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(f"unknown key {key!r} in [{section}]")

    def get(section: str, key: str) -> str | None:
        if parser.has_option(section, key):
            value = parser.get(section, key).strip()
            return value or None
        return None

    try:
        body = BodyParams(
            mass=float(get("body", "mass") or BodyParams.mass),
            inertia=(
                _parse_vec3(raw, "[body] inertia")
                if (raw := get("body", "inertia"))
                else BodyParams.inertia
            ),
        )
        thresholds = AahThresholds(
            eps_roll=float(get("aah", "eps_roll") or AahThresholds.eps_roll),
            eps_pitch=float(get("aah", "eps_pitch") or AahThresholds.eps_pitch),
            eps_yaw=float(get("aah", "eps_yaw") or AahThresholds.eps_yaw),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    def resolve(raw: str | None) -> str | None:
        if raw is None:
            return None
        path = Path(raw)
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        return str(path)

    try:
        return SimConfig(
            body=body,
            step=float(get("integration", "step") or DEFAULT_STEP),
            substeps=int(get("integration", "substeps") or DEFAULT_SUBSTEPS),
            gimbal_eps=float(get("integration", "gimbal_eps") or DEFAULT_GIMBAL_EPS),
            gravity=(
                _parse_vec3(raw, "[integration] gravity")
                if (raw := get("integration", "gravity"))
                else (0.0, 0.0, 0.0)
            ),
            thresholds=thresholds,
            double_click_cycles=int(
                get("aah", "double_click_cycles") or DEFAULT_DOUBLE_CLICK_CYCLES
            ),
            geometry_path=resolve(get("data", "geometry")),
            tables_path=resolve(get("data", "tables")),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: str | os.PathLike | None = None) -> SimConfig:
    """Load configuration from a file, from $SAFERSIM_CONFIG, or fall
    back to built-in defaults when neither names a file."""
    if path is None:
        env = os.environ.get(CONFIG_ENV_VAR)
        if not env:
            return SimConfig()
        path = env
    p = Path(path)
    return parse_config(p.read_text(), base_dir=p.parent)


class ScenarioParseError(ValueError):
    def __init__(self, line_no: int, reason: str) -> None:
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


@dataclass(frozen=True)
class ScenarioStep:
    """One scenario line: switch and grip settings held for a number
    of consecutive cycles, optionally overriding the rate-hold output."""

    switches: SwitchPositions
    grip: HandGripPosition
    aah_override: RotCommand | None = None
    repeat: int = 1

    def __post_init__(self) -> None:
        if self.repeat < 1:
            raise ValueError("repeat must be at least 1")


_AXIS_TOKENS = {"NEG": AxisCommand.NEG, "ZERO": AxisCommand.ZERO, "POS": AxisCommand.POS}


def _axis_token(token: str, line_no: int) -> AxisCommand:
    try:
        return _AXIS_TOKENS[token]
    except KeyError:
        raise ScenarioParseError(line_no, f"bad axis command {token!r}") from None


def parse_scenario(text: str) -> tuple[ScenarioStep, ...]:
    steps: list[ScenarioStep] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) not in (7, 10):
            raise ScenarioParseError(
                line_no, f"expected 7 or 10 tokens, got {len(tokens)}"
            )
        mode_token, button_token = tokens[0], tokens[1]
        if mode_token not in ControlMode.__members__:
            raise ScenarioParseError(line_no, f"bad mode {mode_token!r}")
        if button_token not in ButtonPosition.__members__:
            raise ScenarioParseError(line_no, f"bad button position {button_token!r}")
        grip = HandGripPosition(*(_axis_token(t, line_no) for t in tokens[2:6]))
        override = None
        if len(tokens) == 10:
            a1, a2, a3 = (_axis_token(t, line_no) for t in tokens[6:9])
            override = rot_command(roll=a1, pitch=a2, yaw=a3)
        try:
            repeat = int(tokens[-1])
        except ValueError:
            raise ScenarioParseError(
                line_no, f"bad repeat count {tokens[-1]!r}"
            ) from None
        if repeat < 1:
            raise ScenarioParseError(line_no, "repeat count must be at least 1")
        steps.append(
            ScenarioStep(
                switches=SwitchPositions(
                    mode=ControlMode[mode_token],
                    aah_button=ButtonPosition[button_token],
                ),
                grip=grip,
                aah_override=override,
                repeat=repeat,
            )
        )
    return tuple(steps)


def load_scenario(path: str | os.PathLike) -> tuple[ScenarioStep, ...]:
    return parse_scenario(Path(path).read_text())


TRAJECTORY_COLUMNS = (
    "clock",
    "t",
    "x",
    "y",
    "z",
    "vx",
    "vy",
    "vz",
    "phi",
    "theta",
    "psi",
    "omega1",
    "omega2",
    "omega3",
    "fired",
    "aah",
)


def format_trajectory(reports: Iterable, step: float) -> str:
    """CSV with one row per executed cycle (see TRAJECTORY_COLUMNS)."""
    lines = [",".join(TRAJECTORY_COLUMNS)]
    for report in reports:
        fired = ";".join(sorted(t.name for t in report.fired))
        aah = ";".join(a.name for a in ROT_AXES if a in report.active_axes)
        cells = [str(report.clock), repr(report.clock * step)]
        cells += [repr(float(c)) for c in report.pos_data]
        cells += [fired, aah]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def format_cycle_reports(reports: Sequence) -> str:
    """Human-oriented per-cycle report with a closing violation tally."""
    lines = []
    total = 0
    for report in reports:
        fired = " ".join(sorted(t.name for t in report.fired)) or "-"
        aah = " ".join(a.name for a in ROT_AXES if a in report.active_axes) or "-"
        line = f"cycle {report.clock}: fired [{fired}] aah [{aah}]"
        if report.violations:
            total += len(report.violations)
            line += " " + "; ".join(str(v) for v in report.violations)
        lines.append(line)
    lines.append(f"violations: {total}")
    return "\n".join(lines) + "\n"
