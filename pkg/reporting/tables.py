import json
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from config import (
    REFERENCE_TABLES_FILE, TABLE_GL_SIZES, TABLE_PGL_SIZES, TABLE_SL_SIZES, TABLE_SO_SIZES,
)
from groups.group_model import (
    Family, GroupSpec, Structure, adjoint_group, center_h1, center_real_classes, make_group,
)
from cohomology.point_cohomology import enumerate_classes
from cohomology.sequence import scalar_token
from cohomology.stabilizer import stabilizer_form
from utils.logger import setup_logger

logger = setup_logger("ReferenceTables")


@dataclass(frozen=True)
class Discrepancy:
    """A computed entry that differs from the printed table."""
    table: str
    group: str
    column: str
    printed: Tuple[str, ...]
    computed: Tuple[str, ...]
    note: str = ""

    def __str__(self):
        text = f"[{self.table}] {self.group} {self.column}: printed {list(self.printed)}, computed {list(self.computed)}"
        return f"{text} ({self.note})" if self.note else text


@dataclass(frozen=True)
class PointRow:
    group: str
    h1_center: Tuple[str, ...]
    classes: Dict[str, Tuple[str, ...]]
    h1_adjoint: Optional[Tuple[str, ...]]
    h2_center: Tuple[str, ...]
    printed: bool = True


@dataclass(frozen=True)
class Pi0Entry:
    group: str
    c: str
    label: str
    form: str
    pi0_size: Optional[int]
    pi0: str


@dataclass(frozen=True)
class TableReport:
    point_rows: Tuple[PointRow, ...]
    pi0_entries: Tuple[Pi0Entry, ...]
    discrepancies: Tuple[Discrepancy, ...] = field(default_factory=tuple)


def table_groups() -> List[GroupSpec]:
    """Every row of the two tables, in printed order."""
    groups = [make_group(Family.CSTAR, 1, Structure.COMPACT_TYPE), make_group(Family.CSTAR, 1, Structure.CONJUGATION)]
    groups += [make_group(Family.GL, n, Structure.COMPACT_TYPE) for n in TABLE_GL_SIZES]
    groups += [make_group(Family.SL, n, Structure.COMPACT_TYPE) for n in TABLE_SL_SIZES]
    groups += [make_group(Family.GL, n, Structure.CONJUGATION) for n in TABLE_GL_SIZES]
    groups += [make_group(Family.SO, m, Structure.CONJUGATION) for m in TABLE_SO_SIZES]
    groups += [make_group(Family.PGL, n, Structure.COMPACT_TYPE) for n in TABLE_PGL_SIZES]
    groups += [make_group(Family.PGL, n, Structure.CONJUGATION) for n in TABLE_PGL_SIZES]
    return groups


def load_reference_tables(path: str = REFERENCE_TABLES_FILE) -> Dict[str, Dict]:
    if not os.path.exists(path):
        logger.warning(f"Reference tables not found at {path}; rows are emitted without comparison")
        return {"point_table": {}, "pi0_table": {}}
    with open(path, "r", encoding="utf-8") as f:
        raw = json.load(f)
    return {
        "point_table": {row["group"]: row for row in raw.get("point_table", [])},
        "pi0_table": {row["group"]: row for row in raw.get("pi0_table", [])},
    }


def point_row(G: GroupSpec, printed: bool = True) -> PointRow:
    classes = {
        c.label.value: tuple(cls.label.token for cls in enumerate_classes(G, c))
        for c in center_real_classes(G)
    }
    adjoint = adjoint_group(G)
    h1_adjoint = None
    if adjoint is not None:
        h1_adjoint = tuple(cls.label.token for cls in enumerate_classes(adjoint, center_real_classes(adjoint)[0]))
    return PointRow(
        group=G.name,
        h1_center=tuple(scalar_token(z) for z in center_h1(G)),
        classes=classes,
        h1_adjoint=h1_adjoint,
        h2_center=tuple(c.label.value for c in center_real_classes(G)),
        printed=printed,
    )


def pi0_entries(G: GroupSpec) -> List[Pi0Entry]:
    entries = []
    for c in center_real_classes(G):
        for cls in enumerate_classes(G, c):
            form = stabilizer_form(G, cls)
            entries.append(Pi0Entry(
                group=G.name, c=c.label.value, label=cls.label.token,
                form=form.display_name, pi0_size=form.pi0_size, pi0=form.pi0_display,
            ))
    return entries


def _same_set(printed, computed) -> bool:
    return sorted(printed) == sorted(computed)


def compare_point_row(row: PointRow, reference: Optional[Dict]) -> List[Discrepancy]:
    if reference is None:
        return []
    note = reference.get("note", "")
    found = []

    def check(column, printed, computed):
        if printed is None:
            return
        if computed is None or not _same_set(printed, computed):
            found.append(Discrepancy("point", row.group, column, tuple(printed), tuple(computed or ()), note))

    check("H1(Z)", reference["h1_center"], row.h1_center)
    check("H2(Z)", reference["h2_center"], row.h2_center)
    check("H1(G_ad)", reference.get("h1_adjoint"), row.h1_adjoint)
    for c in sorted(set(reference["classes"]) | set(row.classes)):
        check(f"H1_c(G) c={c}", reference["classes"].get(c, []), row.classes.get(c, ()))
    return found


def _describe_pi0(value) -> Tuple[str, ...]:
    if value is None:
        return ()
    form, size = value
    return (form, f"pi0={'unknown' if size is None else size}")


def compare_pi0_entries(group: str, entries: List[Pi0Entry], reference: Optional[Dict]) -> List[Discrepancy]:
    if reference is None:
        return []
    note = reference.get("note", "")
    printed = {(c, label): (form, size) for c, label, form, size in reference["entries"]}
    computed = {(e.c, e.label): (e.form, e.pi0_size) for e in entries}

    found = []
    for key in sorted(set(printed) | set(computed)):
        if printed.get(key) != computed.get(key):
            found.append(Discrepancy("pi0", group, f"c={key[0]} {key[1]}",
                                     _describe_pi0(printed.get(key)), _describe_pi0(computed.get(key)), note))
    return found


def build_tables(path: str = REFERENCE_TABLES_FILE) -> TableReport:
    reference = load_reference_tables(path)
    rows, entries, discrepancies = [], [], []

    for G in table_groups():
        point_reference = reference["point_table"].get(G.name)
        printed = point_reference is not None and not point_reference.get("from_adjoint_column", False)
        row = point_row(G, printed=printed)
        rows.append(row)
        discrepancies += compare_point_row(row, point_reference)

        group_entries = pi0_entries(G)
        entries += group_entries
        discrepancies += compare_pi0_entries(G.name, group_entries, reference["pi0_table"].get(G.name))

    for flag in discrepancies:
        logger.warning(f"Discrepancy {flag}")
    return TableReport(point_rows=tuple(rows), pi0_entries=tuple(entries), discrepancies=tuple(discrepancies))
