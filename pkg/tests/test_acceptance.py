"""Acceptance suite: one test per required behavior, each at its
stated tolerance and runtime bound.  Expected values are written out
literally here, independent of the constants the package ships."""

import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from safersim.commands import (
    AxisCommand,
    ButtonPosition,
    ControlMode,
    HandGripPosition,
    SwitchPositions,
    TranAxis,
    tran_command,
)
from safersim.config import load_scenario
from safersim.contracts import (
    ContractViolation,
    GuardedOperation,
    ViolationKind,
    check_invariant,
    evaluate_guarded,
)
from safersim.dynamics import (
    BodyParams,
    KinematicState,
    angle_rates_from_omega,
    body_to_fixed,
    integrate_cycle,
    omega_from_angle_rates,
    state_to_position_data,
)
from safersim.sim import SaferSim
from safersim.thrusters import (
    TableGroup,
    ThrusterName,
    default_geometry,
    derive_table_from_geometry,
    thruster_consistency,
)

REPO = Path(__file__).resolve().parent.parent
NEG, ZERO, POS = AxisCommand.NEG, AxisCommand.ZERO, AxisCommand.POS


def _names(*names: str) -> frozenset:
    return frozenset(ThrusterName[n] for n in names)


def test_table_anchor_rows_regenerate_from_geometry():
    t0 = time.perf_counter()
    geom = default_geometry()
    bf = derive_table_from_geometry(geom, TableGroup.BF)
    lrud = derive_table_from_geometry(geom, TableGroup.LRUD)
    # the six published reference rows, written out by hand
    assert bf[(NEG, ZERO, ZERO)] == (_names("B4"), _names("B2", "B3"))
    assert bf[(ZERO, ZERO, ZERO)] == (frozenset(), frozenset())
    assert bf[(POS, NEG, ZERO)] == (_names("F1", "F2"), frozenset())
    assert lrud[(NEG, NEG, ZERO)] == (frozenset(), frozenset())
    assert lrud[(NEG, ZERO, ZERO)] == (_names("L1R", "L3R"), _names("L1F", "L3F"))
    assert lrud[(POS, ZERO, POS)] == (_names("R2R"), _names("R2F", "R4F"))
    assert time.perf_counter() - t0 < 1.0


def test_exhaustive_enumerations_count_and_stay_clean():
    t0 = time.perf_counter()
    sim = SaferSim()
    big = sim.big_test()
    huge = sim.huge_test()
    assert len(big) == 972
    assert len(huge) == 8748
    geom = sim.geometry
    for rows in (big, huge):
        for row in rows:
            assert row.violations == ()
            assert len(row.fired) <= 4
            assert thruster_consistency(row.fired, geom)
    assert time.perf_counter() - t0 < 10.0


def test_torque_free_motion_conserves_energy_and_momentum():
    t0 = time.perf_counter()
    params = BodyParams(mass=1.0, inertia=(1.0, 2.0, 3.0))
    rng = np.random.default_rng(3)
    state = KinematicState(
        (0.0,) * 3, (0.0,) * 3, (0.2, 1.0, 0.1), tuple(rng.uniform(-1.0, 1.0, 3))
    )
    inertia = np.diag(params.inertia)

    def energy(s: KinematicState) -> float:
        w = np.array(s.omega)
        return 0.5 * float(w @ inertia @ w)

    def momentum(s: KinematicState) -> float:
        return float(np.linalg.norm(inertia @ np.array(s.omega)))

    e0, h0 = energy(state), momentum(state)
    for _ in range(40):  # 10 s in 0.25 s cycles, 1/64 s substeps
        state = integrate_cycle(state, (0.0,) * 3, (0.0,) * 3, params)
        assert abs(energy(state) - e0) / e0 <= 1e-6
        assert abs(momentum(state) - h0) / h0 <= 1e-6
    assert time.perf_counter() - t0 < 1.0


def test_kinematic_rate_maps_invert_each_other():
    rng = np.random.default_rng(12)
    for _ in range(10_000):
        angles = (
            rng.uniform(-math.pi, math.pi),
            rng.uniform(0.1, math.pi - 0.1),
            rng.uniform(-math.pi, math.pi),
        )
        rates = tuple(rng.uniform(-2.0, 2.0, 3))
        back = angle_rates_from_omega(angles, omega_from_angle_rates(angles, rates))
        for a, b in zip(rates, back):
            assert abs(a - b) <= 1e-12 * max(1.0, abs(a))
        r = body_to_fixed(angles)
        assert np.abs(r @ r.T - np.eye(3)).max() <= 1e-12


def test_integration_converges_at_fourth_order():
    params = BodyParams(mass=1.0, inertia=(1.0, 2.0, 3.0))
    start = KinematicState(
        (0.1, -0.2, 0.05), (0.02, 0.01, -0.03), (0.3, 1.1, -0.4), (0.2, -0.1, 0.3)
    )
    force, torque = (0.4, -0.1, 0.2), (0.3, -0.2, 0.4)

    def run(substeps: int) -> np.ndarray:
        s = start
        for _ in range(8):
            s = integrate_cycle(s, force, torque, params, substeps=substeps)
        return np.array(state_to_position_data(s))

    coarse, medium, fine = run(16), run(32), run(64)
    shrink = np.linalg.norm(coarse - medium) / np.linalg.norm(medium - fine)
    assert math.log2(shrink) >= 3.5


def test_single_axis_thrust_matches_closed_form():
    sim = SaferSim()
    # lateral grip slot only: a balanced four-jet sideways quad
    out = sim.control_cycle(
        SwitchPositions(mode=ControlMode.TRAN, aah_button=ButtonPosition.UP),
        HandGripPosition(ZERO, ZERO, POS, ZERO),
    )
    force = 4 * 3.6
    expected = 0.5 * (force / sim.config.body.mass) * sim.config.step**2
    assert abs(out.pos_data[1] - expected) <= 1e-9 * expected


def test_scenario_replay_is_deterministic_and_yaw_changes_heading(tmp_path):
    scenario = REPO / "scenarios" / "sample-trajectory"
    outputs = []
    for name in ("first.csv", "second.csv"):
        out = tmp_path / name
        proc = subprocess.run(
            [
                sys.executable,
                "-m",
                "safersim.cli",
                "run",
                "--scenario",
                str(scenario),
                "--out",
                str(out),
            ],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]

    lines = outputs[0].decode().splitlines()
    assert len(lines) - 1 == 43  # header plus one row per cycle
    rows = [line.split(",") for line in lines[1:]]
    assert rows[-1][0] == "43"
    pre_yaw = next(r for r in rows if r[0] == "1")
    v0 = (float(pre_yaw[5]), float(pre_yaw[6]))
    v1 = (float(rows[-1][5]), float(rows[-1][6]))
    dot = v0[0] * v1[0] + v0[1] * v1[1]
    heading_change = math.degrees(
        math.acos(dot / (math.hypot(*v0) * math.hypot(*v1)))
    )
    assert heading_change > 10.0


def test_failed_thruster_hold_recovery_shape():
    t0 = time.perf_counter()
    sim = SaferSim()
    steps = load_scenario(REPO / "scenarios" / "broken-thruster")
    reports = sim.run_scenario(steps, fault_schedule={4: [(ThrusterName.F2, True)]})
    assert len(reports) == 25
    assert all(r.violations == () for r in reports)

    norms = {
        r.clock: math.hypot(
            r.sensors.roll_rate, r.sensors.pitch_rate, r.sensors.yaw_rate
        )
        for r in reports
    }
    fired = {r.clock: r.fired for r in reports}

    # the uncorrected fault winds the spin up through the engagement cycle
    assert all(norms[c] >= norms[c - 1] - 1e-12 for c in range(4, 10))
    # hold plus translation: the fault torque is compensated, no better
    assert all(norms[c] <= norms[9] + 1e-12 for c in range(10, 18))
    # hold alone: monotone spin-down until the rates sit inside the dead band
    quiet = [c for c in range(18, 26) if not fired[c]]
    assert quiet, "the hold never reached the dead band"
    first_quiet = quiet[0]
    assert all(norms[c] < norms[c - 1] for c in range(19, first_quiet))
    assert all(not fired[c] for c in range(first_quiet, 26))
    entering = next(r for r in reports if r.clock == first_quiet - 1).sensors
    assert all(
        abs(rate) < 0.05
        for rate in (entering.roll_rate, entering.pitch_rate, entering.yaw_rate)
    )
    assert time.perf_counter() - t0 < 5.0


def test_contract_kinds_and_command_totality():
    half = GuardedOperation(
        name="half",
        body=lambda n: n // 2,
        precondition=lambda args: args[0] % 2 == 0,
        postcondition=lambda args, result: result * 2 == args[0],
    )
    assert evaluate_guarded(half, 8) == 4
    pre = evaluate_guarded(half, 7)
    assert isinstance(pre, ContractViolation)
    assert pre.kind is ViolationKind.PRECONDITION

    lying = GuardedOperation(
        name="lying", body=lambda n: n, postcondition=lambda args, result: result < 0
    )
    post = evaluate_guarded(lying, 5)
    assert isinstance(post, ContractViolation)
    assert post.kind is ViolationKind.POSTCONDITION

    assert check_invariant("TranCommand", tran_command()) is True
    partial = {TranAxis.X: AxisCommand.ZERO, TranAxis.Y: AxisCommand.POS}
    inv = check_invariant("TranCommand", partial)
    assert isinstance(inv, ContractViolation)
    assert inv.kind is ViolationKind.INVARIANT
