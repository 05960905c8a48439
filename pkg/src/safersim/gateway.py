"""HTTP gateway: simulator sessions over a small JSON API.

Sessions live in memory and expire after 30 idle minutes.  Mutating
requests on one session are serialized; reads never mutate.  Malformed
bodies come back as 400 naming the offending field, unknown sessions
as 404.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .aah import AahState, InertialRefSensors
from .commands import (
    ROT_AXES,
    AxisCommand,
    ButtonPosition,
    ControlMode,
    HandGripPosition,
    SwitchPositions,
    rot_command,
)
from .config import TRAJECTORY_COLUMNS, SimConfig
from .contracts import ContractViolation
from .dynamics import PositionData
from .sim import CycleReport, SaferSim, SaferState
from .thrusters import ThrusterName

SESSION_IDLE_SECONDS = 30 * 60


def pos_data_json(pd: PositionData) -> dict:
    return {
        "x": list(pd[0:3]),
        "v": list(pd[3:6]),
        "angles": list(pd[6:9]),
        "omega": list(pd[9:12]),
    }


def sensors_json(s: InertialRefSensors) -> dict:
    return {
        "rollRate": s.roll_rate,
        "pitchRate": s.pitch_rate,
        "yawRate": s.yaw_rate,
        "vx": s.vx,
        "vy": s.vy,
        "vz": s.vz,
        "ax": s.ax,
        "ay": s.ay,
        "az": s.az,
    }


def _axes_json(axes: frozenset) -> list[str]:
    return [a.name for a in ROT_AXES if a in axes]


def aah_json(a: AahState) -> dict:
    return {
        "engage": a.engage.name,
        "activeAxes": _axes_json(a.active_axes),
        "ignoreHcm": _axes_json(a.ignore_hcm),
        "pressClock": a.press_clock,
    }


def violation_json(v: ContractViolation) -> dict:
    return {"kind": v.kind.value, "location": v.location, "detail": v.detail}


def state_json(state: SaferState) -> dict:
    return {
        "clock": state.clock,
        "step": state.step,
        "posData": pos_data_json(state.pos_data),
        "sensors": sensors_json(state.sensors),
        "aah": aah_json(state.aah),
        "failed": sorted(t.name for t in state.failed),
        "lastFired": sorted(t.name for t in state.last_fired),
        "trajectoryLength": len(state.history),
    }


def report_json(r: CycleReport) -> dict:
    return {
        "clock": r.clock,
        "fired": sorted(t.name for t in r.fired),
        "activeAxes": _axes_json(r.active_axes),
        "ignoreHcm": _axes_json(r.ignore_hcm),
        "posData": pos_data_json(r.pos_data),
        "sensors": sensors_json(r.sensors),
        "violations": [violation_json(v) for v in r.violations],
    }


_GRIP_VALUES = {-1, 0, 1}


class CycleRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mode: str
    aahButton: str
    grip: list[int] = Field(min_length=4, max_length=4)
    aahOverride: list[int] | None = Field(default=None, min_length=3, max_length=3)
    count: int = Field(default=1, ge=1, le=10_000)

    @field_validator("mode")
    @classmethod
    def _mode_known(cls, v: str) -> str:
        if v not in ControlMode.__members__:
            raise ValueError(f"must be one of {sorted(ControlMode.__members__)}")
        return v

    @field_validator("aahButton")
    @classmethod
    def _button_known(cls, v: str) -> str:
        if v not in ButtonPosition.__members__:
            raise ValueError(f"must be one of {sorted(ButtonPosition.__members__)}")
        return v

    @field_validator("grip", "aahOverride")
    @classmethod
    def _axis_values(cls, v: list[int] | None) -> list[int] | None:
        if v is not None and any(c not in _GRIP_VALUES for c in v):
            raise ValueError("axis commands must be -1, 0, or 1")
        return v


class FaultRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    thruster: str
    broken: bool = True

    @field_validator("thruster")
    @classmethod
    def _thruster_known(cls, v: str) -> str:
        if v not in ThrusterName.__members__:
            raise ValueError("unknown thruster name")
        return v


@dataclass
class _Session:
    sim: SaferSim
    reports: list = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_used: float = field(default_factory=time.monotonic)


def create_app(config: SimConfig | None = None) -> FastAPI:
    app = FastAPI(title="safersim gateway")
    # The browser console is served as static files from wherever is
    # convenient; the gateway is a local, unauthenticated tool, so
    # answer any origin.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    config = config or SimConfig()
    sessions: dict[str, _Session] = {}
    store_lock = threading.Lock()

    @app.exception_handler(RequestValidationError)
    async def _on_bad_body(request, exc: RequestValidationError):
        first = exc.errors()[0]
        loc = ".".join(str(p) for p in first["loc"] if p != "body") or "body"
        return JSONResponse(
            status_code=400,
            content={"detail": f"invalid field {loc}: {first['msg']}"},
        )

    def _purge(now: float) -> None:
        with store_lock:
            for sid in [
                sid
                for sid, s in sessions.items()
                if now - s.last_used > SESSION_IDLE_SECONDS
            ]:
                del sessions[sid]

    def _get(session_id: str) -> _Session:
        now = time.monotonic()
        _purge(now)
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        session.last_used = now
        return session

    @app.post("/api/session")
    def create_session() -> dict:
        _purge(time.monotonic())
        session_id = uuid.uuid4().hex
        session = _Session(sim=SaferSim(config))
        with store_lock:
            sessions[session_id] = session
        return {"sessionId": session_id, "state": state_json(session.sim.state)}

    @app.get("/api/session/{session_id}/state")
    def get_state(session_id: str) -> dict:
        return state_json(_get(session_id).sim.state)

    @app.post("/api/session/{session_id}/cycle")
    def run_cycles(session_id: str, body: CycleRequest) -> list[dict]:
        session = _get(session_id)
        switches = SwitchPositions(
            mode=ControlMode[body.mode], aah_button=ButtonPosition[body.aahButton]
        )
        grip = HandGripPosition(*(AxisCommand(c) for c in body.grip))
        override = None
        if body.aahOverride is not None:
            a1, a2, a3 = (AxisCommand(c) for c in body.aahOverride)
            override = rot_command(roll=a1, pitch=a2, yaw=a3)
        with session.lock:
            reports = []
            for _ in range(body.count):
                if override is not None:
                    report = session.sim.control_cycle(switches, grip, override)
                else:
                    report = session.sim.sensor_control_cycle(switches, grip)
                reports.append(report)
            session.reports.extend(reports)
        return [report_json(r) for r in reports]

    @app.post("/api/session/{session_id}/fault")
    def set_fault(session_id: str, body: FaultRequest) -> dict:
        session = _get(session_id)
        with session.lock:
            state = session.sim.set_fault(ThrusterName[body.thruster], body.broken)
        return state_json(state)

    @app.post("/api/session/{session_id}/reset")
    def reset(session_id: str) -> dict:
        session = _get(session_id)
        with session.lock:
            state = session.sim.reset()
            session.reports.clear()
        return state_json(state)

    @app.get("/api/session/{session_id}/trajectory")
    def trajectory(session_id: str) -> dict:
        session = _get(session_id)
        step = session.sim.state.step
        rows = []
        for r in list(session.reports):
            fired = ";".join(sorted(t.name for t in r.fired))
            aah = ";".join(_axes_json(r.active_axes))
            rows.append([r.clock, r.clock * step, *r.pos_data, fired, aah])
        return {"columns": list(TRAJECTORY_COLUMNS), "rows": rows}

    return app
