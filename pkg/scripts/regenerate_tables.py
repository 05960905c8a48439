"""Regenerate the packaged geometry and selection-table data files.

Run from the repo root after changing the default geometry:
    python scripts/regenerate_tables.py
The derivation refuses to write tables that diverge from the six
fixed reference rows.
"""

from pathlib import Path

from safersim.thrusters import (
    TableGroup,
    default_geometry,
    derive_table_from_geometry,
    format_geometry,
    format_tables,
)

DATA = Path(__file__).resolve().parent.parent / "src" / "safersim" / "data"


def main() -> None:
    geom = default_geometry()
    tables = {g: derive_table_from_geometry(geom, g) for g in TableGroup}
    (DATA / "geometry.txt").write_text(format_geometry(geom))
    (DATA / "tables.txt").write_text(format_tables(tables))
    print(f"wrote {DATA / 'geometry.txt'}")
    print(f"wrote {DATA / 'tables.txt'}")


if __name__ == "__main__":
    main()
