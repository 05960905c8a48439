"""Command-line front end: scenario runs, logic enumeration, serving.

Exit codes: 0 clean, 1 malformed input (config, scenario, fault spec),
2 completed with contract violations.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .commands import ROT_AXES
from .config import (
    CONFIG_ENV_VAR,
    ConfigError,
    ScenarioParseError,
    format_cycle_reports,
    format_trajectory,
    load_config,
    load_scenario,
)
from .sim import EnumerationRow, SaferSim
from .thrusters import ThrusterName


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="safersim",
        description="Propulsion backpack simulator.",
        epilog=f"${CONFIG_ENV_VAR} names the default configuration file.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a scenario file")
    run.add_argument("--scenario", required=True, help="scenario file path")
    run.add_argument("--config", default=None, help="configuration file")
    run.add_argument(
        "--out",
        default=None,
        help="trajectory file path; the cycle report goes to <out>.report",
    )
    run.add_argument(
        "--fail",
        action="append",
        default=[],
        metavar="THRUSTER@CYCLE",
        help="fail a thruster before the given 1-based cycle (repeatable)",
    )

    enum = sub.add_parser("enumerate", help="exhaustively evaluate the logic")
    enum.add_argument("--mode", choices=("big", "huge"), default="huge")
    enum.add_argument("--config", default=None, help="configuration file")
    enum.add_argument("--out", default=None, help="write rows here instead of stdout")

    serve = sub.add_parser("serve", help="serve the HTTP gateway")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--config", default=None, help="configuration file")

    return parser


def _parse_fail(spec: str) -> tuple[ThrusterName, int]:
    name, sep, cycle_text = spec.partition("@")
    if not sep:
        raise ValueError(f"bad fault spec {spec!r}: expected THRUSTER@CYCLE")
    if name not in ThrusterName.__members__:
        raise ValueError(f"bad fault spec {spec!r}: unknown thruster {name!r}")
    try:
        cycle = int(cycle_text)
    except ValueError:
        raise ValueError(f"bad fault spec {spec!r}: bad cycle {cycle_text!r}") from None
    if cycle < 1:
        raise ValueError(f"bad fault spec {spec!r}: cycle must be at least 1")
    return ThrusterName[name], cycle


def _cmd_run(args: argparse.Namespace, sim: SaferSim) -> int:
    try:
        steps = load_scenario(args.scenario)
    except (ScenarioParseError, OSError) as exc:
        print(f"error: {args.scenario}: {exc}", file=sys.stderr)
        return 1
    schedule: dict[int, list] = {}
    for spec in args.fail:
        try:
            thruster, cycle = _parse_fail(spec)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        schedule.setdefault(cycle, []).append((thruster, True))

    reports = sim.run_scenario(steps, schedule)
    trajectory = format_trajectory(reports, sim.config.step)
    if args.out:
        Path(args.out).write_text(trajectory)
        Path(args.out + ".report").write_text(format_cycle_reports(reports))
    else:
        sys.stdout.write(trajectory)
    violations = sum(len(r.violations) for r in reports)
    if violations:
        print(f"violations: {violations}", file=sys.stderr)
        return 2
    return 0


def _format_row(row: EnumerationRow) -> str:
    grip = " ".join(c.name for c in row.grip)
    aah = " ".join(row.aah_cmd[axis].name for axis in ROT_AXES)
    fired = ";".join(sorted(t.name for t in row.fired)) or "-"
    line = (
        f"{row.switches.mode.name} {row.switches.aah_button.name}"
        f" | {grip} | {aah} -> {fired}"
    )
    if row.violations:
        line += "  ! " + "; ".join(str(v) for v in row.violations)
    return line


def _cmd_enumerate(args: argparse.Namespace, sim: SaferSim) -> int:
    rows = sim.big_test() if args.mode == "big" else sim.huge_test()
    violations = sum(len(r.violations) for r in rows)
    lines = [_format_row(r) for r in rows]
    lines.append(f"violations: {violations}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if violations == 0 else 2


def _cmd_serve(args: argparse.Namespace, sim: SaferSim) -> int:
    import uvicorn

    from .gateway import create_app

    uvicorn.run(create_app(sim.config), host=args.host, port=args.port)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        sim = SaferSim(config)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.command == "run":
        return _cmd_run(args, sim)
    if args.command == "enumerate":
        return _cmd_enumerate(args, sim)
    return _cmd_serve(args, sim)


if __name__ == "__main__":
    sys.exit(main())
