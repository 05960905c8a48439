"""Thruster geometry, wrench accounting, selection tables, and the
table derivation."""

import math

import pytest
from hypothesis import given, strategies as st

from safersim.commands import (
    NULL_COMMAND,
    ROT_AXES,
    AxisCommand,
    SixDofCommand,
    rot_command,
    tran_command,
)
from safersim.thrusters import (
    ANCHOR_ROWS,
    TableGroup,
    Thruster,
    ThrusterName,
    bf_thrusters,
    default_geometry,
    default_tables,
    derive_table_from_geometry,
    format_geometry,
    format_tables,
    lrud_thrusters,
    net_force_torque,
    packaged_geometry,
    parse_geometry,
    parse_tables,
    selected_thrusters,
    thruster_consistency,
    thruster_force,
    thruster_torque,
)

NEG, ZERO, POS = AxisCommand.NEG, AxisCommand.ZERO, AxisCommand.POS
ALL_AXES = frozenset(ROT_AXES)

names = st.sampled_from(tuple(ThrusterName))


def test_geometry_has_all_24_thrusters():
    geom = default_geometry()
    assert set(geom) == set(ThrusterName)
    for t in geom.values():
        assert math.isclose(sum(c * c for c in t.direction), 1.0)
        assert t.thrust > 0


def test_thrust_opposes_exhaust_direction():
    # B jets exhaust backward through +X, so they push forward... the
    # other way around: force is minus thrust times direction.
    geom = default_geometry()
    b1 = geom[ThrusterName.B1]
    assert b1.direction == (1.0, 0.0, 0.0)
    assert thruster_force(b1) == (-3.6, 0.0, 0.0)


def test_single_jet_torque_oracle():
    # B4 sits at the rear bottom-left corner: pure X force through a
    # lever of (y, z) = (-0.2, +0.3) pitches down and yaws left.
    geom = default_geometry()
    q = thruster_torque(geom[ThrusterName.B4])
    assert q[0] == pytest.approx(0.0, abs=1e-15)
    assert q[1] == pytest.approx(-1.08)
    assert q[2] == pytest.approx(-0.72)


def test_net_force_torque_of_balanced_quad():
    geom = default_geometry()
    quad = frozenset(
        {ThrusterName.R2R, ThrusterName.R4R, ThrusterName.R2F, ThrusterName.R4F}
    )
    f, q = net_force_torque(quad, geom)
    assert f == pytest.approx((0.0, 14.4, 0.0))
    assert q == pytest.approx((0.0, 0.0, 0.0))


def test_failed_thrusters_contribute_nothing():
    geom = default_geometry()
    sel = frozenset({ThrusterName.F1, ThrusterName.F2})
    f_all, _ = net_force_torque(sel, geom)
    f_one, _ = net_force_torque(sel, geom, failed=frozenset({ThrusterName.F2}))
    assert f_all[0] == pytest.approx(2 * f_one[0])


@given(st.frozensets(names), st.frozensets(names))
def test_net_force_torque_is_additive(a, b):
    geom = default_geometry()
    fa, qa = net_force_torque(a - b, geom)
    fb, qb = net_force_torque(b - a, geom)
    fu, qu = net_force_torque((a - b) | (b - a), geom)
    for i in range(3):
        assert fu[i] == pytest.approx(fa[i] + fb[i], abs=1e-12)
        assert qu[i] == pytest.approx(qa[i] + qb[i], abs=1e-12)


def test_derived_tables_match_packaged_data():
    geom = default_geometry()
    packaged = default_tables()
    for group in TableGroup:
        derived = derive_table_from_geometry(geom, group)
        assert derived == packaged[group]


def test_anchor_rows_reproduced():
    geom = default_geometry()
    for group in TableGroup:
        table = derive_table_from_geometry(geom, group)
        for triple, expected in ANCHOR_ROWS[group].items():
            assert table[triple] == expected


def test_pure_commands_select_expected_rows():
    bf = default_tables()[TableGroup.BF]
    lrud = default_tables()[TableGroup.LRUD]
    assert bf[(ZERO, NEG, ZERO)] == (
        frozenset({ThrusterName.B4, ThrusterName.F2}),
        frozenset(),
    )
    assert bf[(ZERO, ZERO, POS)] == (
        frozenset({ThrusterName.B3, ThrusterName.F4}),
        frozenset(),
    )
    assert lrud[(ZERO, ZERO, POS)] == (
        frozenset({ThrusterName.L3R, ThrusterName.R2R}),
        frozenset(),
    )
    assert lrud[(ZERO, ZERO, NEG)] == (
        frozenset({ThrusterName.L1R, ThrusterName.R4R}),
        frozenset(),
    )


def test_lrud_double_translation_rows_are_empty():
    # At most one translation survives integration, so those rows are
    # unreachable and deliberately empty.
    lrud = default_tables()[TableGroup.LRUD]
    for y in (NEG, POS):
        for z in (NEG, POS):
            for roll in (NEG, ZERO, POS):
                assert lrud[(y, z, roll)] == (frozenset(), frozenset())


def test_selection_unions_optionals_only_without_cross_rotation():
    # Forward translation alone: mandatory F4 plus both optionals.
    fired = selected_thrusters(
        SixDofCommand(tran_command(x=POS), rot_command()),
        rot_command(),
        ALL_AXES,
        frozenset(),
    )
    assert fired == frozenset({ThrusterName.F2, ThrusterName.F3, ThrusterName.F4})
    # Adding a roll command drops the BF optionals.
    fired = selected_thrusters(
        SixDofCommand(tran_command(x=POS), rot_command(roll=POS)),
        rot_command(),
        ALL_AXES,
        frozenset(),
    )
    assert ThrusterName.F2 not in fired and ThrusterName.F3 not in fired


def test_down_command_fires_down_jets():
    # Z command is down-positive; vertical table keys are up-positive.
    fired = selected_thrusters(
        SixDofCommand(tran_command(z=POS), rot_command()),
        rot_command(),
        ALL_AXES,
        frozenset(),
    )
    assert fired == frozenset(
        {ThrusterName.D2F, ThrusterName.D2R, ThrusterName.D4F, ThrusterName.D4R}
    )
    f, q = net_force_torque(fired, default_geometry())
    assert f[2] > 0 and q == pytest.approx((0.0, 0.0, 0.0))


def test_consistency_rejects_opposed_jets():
    geom = default_geometry()
    assert not thruster_consistency(
        frozenset({ThrusterName.B1, ThrusterName.F1}), geom
    )
    assert thruster_consistency(
        frozenset({ThrusterName.B3, ThrusterName.F4}), geom
    )
    assert thruster_consistency(
        frozenset({ThrusterName.L3R, ThrusterName.R2R}), geom
    )


def test_geometry_text_round_trip():
    geom = packaged_geometry()
    assert parse_geometry(format_geometry(geom)) == geom


def test_tables_text_round_trip():
    tables = default_tables()
    assert parse_tables(format_tables(tables)) == tables


def test_geometry_parse_rejects_missing_thrusters():
    lines = format_geometry(default_geometry()).splitlines()
    # drop the last data line so one thruster has no entry
    text = "\n".join(lines[:-1])
    with pytest.raises(ValueError, match="missing"):
        parse_geometry(text)


def test_geometry_parse_rejects_non_unit_direction():
    bad = dict(default_geometry())
    t = bad[ThrusterName.B1]
    bad[ThrusterName.B1] = Thruster(t.position, (1.0, 1.0, 0.0), t.thrust)
    with pytest.raises(ValueError):
        parse_geometry(format_geometry(bad))
