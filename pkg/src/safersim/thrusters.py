"""Thruster naming, geometry, selection tables, and wrench synthesis.

The backpack carries 24 on/off thrusters, four per face direction of a
rectangular body.  Selection is a pair of table lookups: the BF table
keyed by (X translation, pitch, yaw) picks fore/aft jets, the LRUD
table keyed by (Y translation, up translation, roll) picks the side,
top and bottom jets.  Only six table rows are fixed by the published
selection figures; the remaining rows are derived from geometry by
derive_table_from_geometry and frozen into a data file.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .commands import (
    ROT_AXES,
    AxisCommand,
    RotAxis,
    RotCommand,
    SixDofCommand,
    TranAxis,
    integrated_commands,
)
from .contracts import register_invariant

Vec3 = tuple[float, float, float]

_ZERO_TOL = 1e-9


class ThrusterName(enum.Enum):
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4 = "B4"
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    L1F = "L1F"
    L1R = "L1R"
    L3F = "L3F"
    L3R = "L3R"
    R2F = "R2F"
    R2R = "R2R"
    R4F = "R4F"
    R4R = "R4R"
    U1F = "U1F"
    U1R = "U1R"
    U3F = "U3F"
    U3R = "U3R"
    D2F = "D2F"
    D2R = "D2R"
    D4F = "D4F"
    D4R = "D4R"


ThrusterSet = frozenset  # of ThrusterName


@dataclass(frozen=True)
class Thruster:
    """Position (m, body frame, from the center of mass), exhaust
    direction (unit vector; applied force is opposite), thrust (N)."""

    position: Vec3
    direction: Vec3
    thrust: float


ThrusterGeometry = dict  # ThrusterName -> Thruster

# A selection table maps all 27 command triples to (mandatory, optional).
SelectionTable = dict  # (AxisCommand, AxisCommand, AxisCommand) -> (ThrusterSet, ThrusterSet)


class TableGroup(enum.Enum):
    BF = "BF"
    LRUD = "LRUD"


def _unit(v: Vec3) -> bool:
    return abs(v[0] ** 2 + v[1] ** 2 + v[2] ** 2 - 1.0) <= 2e-9


register_invariant(
    "ThrusterGeometry",
    lambda g: isinstance(g, dict)
    and set(g) == set(ThrusterName)
    and all(_unit(t.direction) and t.thrust > 0 for t in g.values()),
)

register_invariant(
    "ThrusterSet",
    lambda s: isinstance(s, frozenset)
    and len(s) <= 24
    and all(isinstance(n, ThrusterName) for n in s),
)

_ALL_TRIPLES = tuple(itertools.product(AxisCommand, repeat=3))

register_invariant(
    "SelectionTable",
    lambda t: isinstance(t, dict)
    and set(t) == set(_ALL_TRIPLES)
    and all(not (m & o) for m, o in t.values()),
)


# Half-extents of the thruster box (m) and per-jet thrust (N).  These
# are configuration defaults, not published hardware data.
BOX_HALF_EXTENTS: Vec3 = (0.15, 0.20, 0.30)
DEFAULT_THRUST = 3.6


def default_geometry(
    half_extents: Vec3 = BOX_HALF_EXTENTS, thrust: float = DEFAULT_THRUST
) -> ThrusterGeometry:
    """24 thrusters at the corners of a rectangular box.

    Body frame: X forward, Y right, Z down.  Names state the motion
    direction the jet produces (B = backward, i.e. force -X).  Corner
    numbering for fore/aft jets runs 1..4 over (y, z) quadrants; side
    and top/bottom jets are numbered by the face corner they share,
    with F/R suffix for the forward/rear mounting.
    """
    dx, dy, dz = half_extents
    corners = {1: (dy, -dz), 2: (-dy, -dz), 3: (dy, dz), 4: (-dy, dz)}
    geom: ThrusterGeometry = {}

    for i, (y, z) in corners.items():
        geom[ThrusterName[f"B{i}"]] = Thruster((-dx, y, z), (1.0, 0.0, 0.0), thrust)
        geom[ThrusterName[f"F{i}"]] = Thruster((dx, y, z), (-1.0, 0.0, 0.0), thrust)

    for i, x in (("F", dx), ("R", -dx)):
        # Leftward jets on the right face, rightward jets on the left.
        geom[ThrusterName[f"L1{i}"]] = Thruster((x, dy, -dz), (0.0, 1.0, 0.0), thrust)
        geom[ThrusterName[f"L3{i}"]] = Thruster((x, dy, dz), (0.0, 1.0, 0.0), thrust)
        geom[ThrusterName[f"R2{i}"]] = Thruster((x, -dy, -dz), (0.0, -1.0, 0.0), thrust)
        geom[ThrusterName[f"R4{i}"]] = Thruster((x, -dy, dz), (0.0, -1.0, 0.0), thrust)
        # Upward jets on the bottom face, downward jets on the top.
        geom[ThrusterName[f"U1{i}"]] = Thruster((x, dy, dz), (0.0, 0.0, 1.0), thrust)
        geom[ThrusterName[f"U3{i}"]] = Thruster((x, -dy, dz), (0.0, 0.0, 1.0), thrust)
        geom[ThrusterName[f"D2{i}"]] = Thruster((x, dy, -dz), (0.0, 0.0, -1.0), thrust)
        geom[ThrusterName[f"D4{i}"]] = Thruster((x, -dy, -dz), (0.0, 0.0, -1.0), thrust)

    return geom


def _cross(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def thruster_force(t: Thruster) -> Vec3:
    return (
        -t.thrust * t.direction[0],
        -t.thrust * t.direction[1],
        -t.thrust * t.direction[2],
    )


def thruster_torque(t: Thruster) -> Vec3:
    return _cross(t.position, thruster_force(t))


def net_force_torque(
    sel: ThrusterSet, geom: ThrusterGeometry, failed: ThrusterSet = frozenset()
) -> tuple[Vec3, Vec3]:
    """Net body-frame force and torque of the firing set.

    Failed thrusters may be selected but contribute nothing; valves
    are open or not, so contributions simply add.
    """
    fx = fy = fz = qx = qy = qz = 0.0
    for name in sel:
        if name in failed:
            continue
        t = geom[name]
        f = thruster_force(t)
        q = _cross(t.position, f)
        fx += f[0]
        fy += f[1]
        fz += f[2]
        qx += q[0]
        qy += q[1]
        qz += q[2]
    return (fx, fy, fz), (qx, qy, qz)


# --- table derivation -------------------------------------------------

class UnsatisfiableRowError(ValueError):
    """No sign-consistent thruster set exists for a command triple."""

    def __init__(self, group: TableGroup, triple: tuple) -> None:
        self.group = group
        self.triple = triple
        names = ", ".join(c.name for c in triple)
        super().__init__(f"{group.value} row ({names}) admits no thruster set")


class TableDivergenceError(ValueError):
    """Derived table disagrees with the fixed reference rows."""

    def __init__(self, rows: list) -> None:
        self.rows = rows
        super().__init__("derived table diverges on rows: " + "; ".join(rows))


_GROUP_PREFIXES = {TableGroup.BF: ("B", "F"), TableGroup.LRUD: ("L", "R", "U", "D")}

# Family of jets that produce each commanded translation direction.
# The third LRUD key is the up-positive translation command, opposite
# the body Z axis; the sign flip lives entirely in this table.
_TRANSLATION_FAMILY = {
    (TableGroup.BF, 0, AxisCommand.NEG): "B",
    (TableGroup.BF, 0, AxisCommand.POS): "F",
    (TableGroup.LRUD, 0, AxisCommand.NEG): "L",
    (TableGroup.LRUD, 0, AxisCommand.POS): "R",
    (TableGroup.LRUD, 1, AxisCommand.NEG): "D",
    (TableGroup.LRUD, 1, AxisCommand.POS): "U",
}


def _group_wrench(name: ThrusterName, geom: ThrusterGeometry, group: TableGroup) -> Vec3:
    """Wrench components on the three axes the group's table commands."""
    t = geom[name]
    f = thruster_force(t)
    q = _cross(t.position, f)
    if group is TableGroup.BF:
        return (f[0], q[1], q[2])  # X force, pitch, yaw
    return (f[1], -f[2], q[0])  # Y force, up force, roll


def _net(wrenches: Mapping, subset: Iterable[ThrusterName]) -> Vec3:
    a = b = c = 0.0
    for name in subset:
        w = wrenches[name]
        a += w[0]
        b += w[1]
        c += w[2]
    return (a, b, c)


def _sorted_key(subset: Iterable[ThrusterName]) -> tuple:
    return tuple(sorted(n.value for n in subset))


def _signs_ok(net: Vec3, triple: tuple, strict_axes: Iterable[int]) -> bool:
    for i in strict_axes:
        if triple[i] is AxisCommand.ZERO:
            if abs(net[i]) > _ZERO_TOL:
                return False
        elif net[i] * int(triple[i]) <= _ZERO_TOL:
            return False
    return True


def _derive_row(
    geom: ThrusterGeometry, group: TableGroup, triple: tuple
) -> tuple[ThrusterSet, ThrusterSet]:
    if all(c is AxisCommand.ZERO for c in triple):
        return frozenset(), frozenset()
    # Commanded translations pass the priority filter one at a time,
    # so LRUD rows with both translation axes set can never be looked
    # up; they stay empty rather than firing an unreachable blend.
    if group is TableGroup.LRUD and (
        triple[0] is not AxisCommand.ZERO and triple[1] is not AxisCommand.ZERO
    ):
        return frozenset(), frozenset()

    pool = [n for n in ThrusterName if n.value[0] in _GROUP_PREFIXES[group]]
    wrenches = {n: _group_wrench(n, geom, group) for n in pool}
    tran_axes = (0,) if group is TableGroup.BF else (0, 1)
    rot_axes = tuple(i for i in range(3) if i not in tran_axes)
    rotation_commanded = any(triple[i] is not AxisCommand.ZERO for i in rot_axes)

    # Mandatory: the smallest set matching the commanded signs exactly.
    # A pure fore/aft translation is the minimum-impulse case: any
    # single jet of the right sign does, torque left to the optionals.
    if group is TableGroup.BF and not rotation_commanded:
        constrained_axes: tuple = (0,)
    else:
        constrained_axes = (0, 1, 2)

    mandatory: ThrusterSet | None = None
    for card in range(1, 5):
        candidates = [
            frozenset(s)
            for s in itertools.combinations(pool, card)
            if _signs_ok(_net(wrenches, s), triple, constrained_axes)
        ]
        if candidates:
            mandatory = max(candidates, key=_sorted_key)
            break
    if mandatory is None:
        raise UnsatisfiableRowError(group, triple)

    # Optional: extra jets from the commanded translation's family that
    # add commanded-axis magnitude without disturbing the other axes.
    commanded_tran = [i for i in tran_axes if triple[i] is not AxisCommand.ZERO]
    if not commanded_tran:
        return mandatory, frozenset()
    family = _TRANSLATION_FAMILY[(group, tran_axes.index(commanded_tran[0]), triple[commanded_tran[0]])]
    opt_pool = [n for n in pool if n.value[0] == family and n not in mandatory]
    commanded = [i for i in range(3) if triple[i] is not AxisCommand.ZERO]

    def optional_ok(subset: tuple) -> bool:
        net = _net(wrenches, subset)
        for i in range(3):
            if triple[i] is AxisCommand.ZERO:
                if abs(net[i]) > _ZERO_TOL:
                    return False
            elif net[i] * int(triple[i]) < -_ZERO_TOL:
                return False
        return any(net[i] * int(triple[i]) > _ZERO_TOL for i in commanded)

    optional: ThrusterSet = frozenset()
    for card in range(len(opt_pool), 0, -1):
        candidates = [
            frozenset(s)
            for s in itertools.combinations(opt_pool, card)
            if optional_ok(s)
        ]
        if candidates:
            optional = min(candidates, key=_sorted_key)
            break
    return mandatory, optional


def _names(*names: str) -> ThrusterSet:
    return frozenset(ThrusterName[n] for n in names)


# The published selection figures fix exactly these six rows; every
# derived table must reproduce them.
ANCHOR_ROWS = {
    TableGroup.BF: {
        (AxisCommand.NEG, AxisCommand.ZERO, AxisCommand.ZERO): (
            _names("B4"),
            _names("B2", "B3"),
        ),
        (AxisCommand.ZERO, AxisCommand.ZERO, AxisCommand.ZERO): (
            frozenset(),
            frozenset(),
        ),
        (AxisCommand.POS, AxisCommand.NEG, AxisCommand.ZERO): (
            _names("F1", "F2"),
            frozenset(),
        ),
    },
    TableGroup.LRUD: {
        (AxisCommand.NEG, AxisCommand.NEG, AxisCommand.ZERO): (
            frozenset(),
            frozenset(),
        ),
        (AxisCommand.NEG, AxisCommand.ZERO, AxisCommand.ZERO): (
            _names("L1R", "L3R"),
            _names("L1F", "L3F"),
        ),
        (AxisCommand.POS, AxisCommand.ZERO, AxisCommand.POS): (
            _names("R2R"),
            _names("R2F", "R4F"),
        ),
    },
}


def derive_table_from_geometry(
    geom: ThrusterGeometry, group: TableGroup, check_anchors: bool = True
) -> SelectionTable:
    """Build the full 27-row selection table from geometry.

    mandatory = minimal jet set matching the commanded signs and
    zeroing the uncommanded group axes; ties prefer the rear/high
    corner numbering.  optional = largest same-family addition that
    only amplifies the command; ties prefer the forward mounting.
    With check_anchors the result is compared against the six fixed
    reference rows and any divergence is reported.
    """
    table: SelectionTable = {t: _derive_row(geom, group, t) for t in _ALL_TRIPLES}
    if check_anchors:
        bad = []
        for triple, expected in ANCHOR_ROWS[group].items():
            if table[triple] != expected:
                got_m, got_o = table[triple]
                bad.append(
                    f"{group.value}({', '.join(c.name for c in triple)}) -> "
                    f"({sorted(n.value for n in got_m)}, {sorted(n.value for n in got_o)})"
                )
        if bad:
            raise TableDivergenceError(bad)
    return table


# --- selection --------------------------------------------------------

def bf_thrusters(
    x: AxisCommand,
    pitch: AxisCommand,
    yaw: AxisCommand,
    table: SelectionTable | None = None,
) -> tuple[ThrusterSet, ThrusterSet]:
    if table is None:
        table = default_tables()[TableGroup.BF]
    return table[(x, pitch, yaw)]


def lrud_thrusters(
    y: AxisCommand,
    z_up: AxisCommand,
    roll: AxisCommand,
    table: SelectionTable | None = None,
) -> tuple[ThrusterSet, ThrusterSet]:
    if table is None:
        table = default_tables()[TableGroup.LRUD]
    return table[(y, z_up, roll)]


def selected_thrusters(
    hcm: SixDofCommand,
    aah: RotCommand,
    active_axes: frozenset,
    ignore_hcm: frozenset,
    tables: Mapping | None = None,
) -> ThrusterSet:
    """Thrusters to fire for the integrated command.

    Optional jets only join when the other group has no rotation to
    serve: roll gates the BF optionals, pitch/yaw gate the LRUD ones.
    """
    if tables is None:
        tables = default_tables()
    cmd = integrated_commands(hcm, aah, active_axes, ignore_hcm)
    bf_m, bf_o = bf_thrusters(
        cmd.tran[TranAxis.X],
        cmd.rot[RotAxis.PITCH],
        cmd.rot[RotAxis.YAW],
        tables[TableGroup.BF],
    )
    # the vertical table key is up-positive; the Z command is down-positive
    lu_m, lu_o = lrud_thrusters(
        cmd.tran[TranAxis.Y],
        AxisCommand(-cmd.tran[TranAxis.Z]),
        cmd.rot[RotAxis.ROLL],
        tables[TableGroup.LRUD],
    )
    bf = bf_m | bf_o if cmd.rot[RotAxis.ROLL] is AxisCommand.ZERO else bf_m
    lu = (
        lu_m | lu_o
        if cmd.rot[RotAxis.PITCH] is AxisCommand.ZERO
        and cmd.rot[RotAxis.YAW] is AxisCommand.ZERO
        else lu_m
    )
    return bf | lu


def thruster_consistency(sel: ThrusterSet, geom: ThrusterGeometry) -> bool:
    """True iff the set never fires directly opposing jets.

    Two jets conflict when their force directions are anti-parallel
    and no torque axis cooperates (componentwise torque products all
    non-positive); such a pair burns propellant to no effect.
    """
    jets = sorted(sel, key=lambda n: n.value)
    for a, b in itertools.combinations(jets, 2):
        fa, fb = thruster_force(geom[a]), thruster_force(geom[b])
        na = (fa[0] ** 2 + fa[1] ** 2 + fa[2] ** 2) ** 0.5
        nb = (fb[0] ** 2 + fb[1] ** 2 + fb[2] ** 2) ** 0.5
        dot = (fa[0] * fb[0] + fa[1] * fb[1] + fa[2] * fb[2]) / (na * nb)
        if dot >= -0.99:
            continue
        qa, qb = thruster_torque(geom[a]), thruster_torque(geom[b])
        if all(qa[k] * qb[k] <= _ZERO_TOL for k in range(3)):
            return False
    return True


# --- data files -------------------------------------------------------

_AXIS_BY_NAME = {c.name: c for c in AxisCommand}


def parse_geometry(text: str) -> ThrusterGeometry:
    """One record per thruster:
    ``thruster <name> <px> <py> <pz> <dx> <dy> <dz> <thrust>``.
    ``#`` starts a comment; blank lines are ignored.
    """
    geom: ThrusterGeometry = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 9 or fields[0] != "thruster":
            raise ValueError(f"geometry line {lineno}: expected 'thruster <name> <9 fields>'")
        try:
            name = ThrusterName[fields[1]]
        except KeyError:
            raise ValueError(f"geometry line {lineno}: unknown thruster {fields[1]!r}") from None
        if name in geom:
            raise ValueError(f"geometry line {lineno}: duplicate thruster {fields[1]}")
        px, py, pz, dx, dy, dz, thrust = (float(v) for v in fields[2:9])
        geom[name] = Thruster((px, py, pz), (dx, dy, dz), thrust)
    missing = set(ThrusterName) - set(geom)
    if missing:
        raise ValueError("geometry missing thrusters: " + ", ".join(sorted(n.value for n in missing)))
    for name, t in geom.items():
        if not _unit(t.direction):
            raise ValueError(f"geometry: {name.value} direction is not a unit vector")
        if t.thrust <= 0:
            raise ValueError(f"geometry: {name.value} thrust must be positive")
    return geom


def format_geometry(geom: ThrusterGeometry) -> str:
    lines = ["# thruster <name> <px> <py> <pz> <dx> <dy> <dz> <thrust>"]
    for name in ThrusterName:
        t = geom[name]
        lines.append(
            "thruster {:<4} {:>6} {:>6} {:>6}   {:>4} {:>4} {:>4}   {}".format(
                name.value, *(repr(v) for v in t.position), *(repr(v) for v in t.direction), repr(t.thrust)
            )
        )
    return "\n".join(lines) + "\n"


def parse_tables(text: str) -> dict:
    """One record per table row:
    ``<bf|lrud> <c1> <c2> <c3> | <mandatory names> | <optional names>``.
    """
    tables = {TableGroup.BF: {}, TableGroup.LRUD: {}}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 3:
            raise ValueError(f"tables line {lineno}: expected two '|' separators")
        head = parts[0].split()
        if len(head) != 4 or head[0] not in ("bf", "lrud"):
            raise ValueError(f"tables line {lineno}: expected '<bf|lrud> <c1> <c2> <c3>'")
        group = TableGroup.BF if head[0] == "bf" else TableGroup.LRUD
        try:
            triple = tuple(_AXIS_BY_NAME[c] for c in head[1:4])
        except KeyError:
            raise ValueError(f"tables line {lineno}: commands must be NEG/ZERO/POS") from None
        if triple in tables[group]:
            raise ValueError(f"tables line {lineno}: duplicate row")
        try:
            mandatory = frozenset(ThrusterName[n] for n in parts[1].split())
            optional = frozenset(ThrusterName[n] for n in parts[2].split())
        except KeyError as exc:
            raise ValueError(f"tables line {lineno}: unknown thruster {exc.args[0]!r}") from None
        if mandatory & optional:
            raise ValueError(f"tables line {lineno}: mandatory and optional overlap")
        tables[group][triple] = (mandatory, optional)
    for group, table in tables.items():
        if set(table) != set(_ALL_TRIPLES):
            raise ValueError(f"{group.value} table is not total over the 27 command triples")
    return tables


def format_tables(tables: Mapping) -> str:
    lines = ["# <bf|lrud> <c1> <c2> <c3> | <mandatory> | <optional>"]
    for group, key in ((TableGroup.BF, "bf"), (TableGroup.LRUD, "lrud")):
        for triple in _ALL_TRIPLES:
            mandatory, optional = tables[group][triple]
            lines.append(
                "{} {:<4} {:<4} {:<4} | {:<12} | {}".format(
                    key,
                    *(c.name for c in triple),
                    " ".join(sorted(n.value for n in mandatory)),
                    " ".join(sorted(n.value for n in optional)),
                ).rstrip()
            )
    return "\n".join(lines) + "\n"


def load_geometry(path: str | Path) -> ThrusterGeometry:
    return parse_geometry(Path(path).read_text())


def load_tables(path: str | Path) -> dict:
    return parse_tables(Path(path).read_text())


_DEFAULT_GEOMETRY: ThrusterGeometry | None = None
_DEFAULT_TABLES: dict | None = None


def packaged_data_path(filename: str) -> Path:
    return Path(str(resources.files("safersim").joinpath("data").joinpath(filename)))


def packaged_geometry() -> ThrusterGeometry:
    global _DEFAULT_GEOMETRY
    if _DEFAULT_GEOMETRY is None:
        _DEFAULT_GEOMETRY = load_geometry(packaged_data_path("geometry.txt"))
    return _DEFAULT_GEOMETRY


def default_tables() -> dict:
    global _DEFAULT_TABLES
    if _DEFAULT_TABLES is None:
        _DEFAULT_TABLES = load_tables(packaged_data_path("tables.txt"))
    return _DEFAULT_TABLES
