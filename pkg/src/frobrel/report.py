"""Markdown rendering of classification tables.

Columns are ``Case | Unit | Counit | Multiplication | Partition function``.
Subsets print as ``{a,b}`` (``∅`` when empty) and the multiplication table
is flattened row by row with `` / `` between rows.
"""

from __future__ import annotations

import warnings
from typing import Iterable

from .classify import Census
from .frobenius import FrobData, LETTERS, isomorphic, relabel
from .relation import FinSet, bits
from .tables import TableRow, rows_for

HEADER = "| Case | Unit | Counit | Multiplication | Partition function |"
RULE = "|---|---|---|---|---|"


def format_subset(mask: int, labels: tuple[str, ...]) -> str:
    if not mask:
        return "∅"
    return "{" + ",".join(labels[i] for i in bits(mask)) + "}"


def format_mul(d: FrobData) -> str:
    labels = d.labels()
    n = d.n
    return " / ".join(
        " ".join(format_subset(d.table[x * n + y], labels) for y in range(n)) for x in range(n)
    )


def markdown_row(case: int | str, d: FrobData, partition: str) -> str:
    labels = d.labels()
    cells = [str(case), format_subset(d.unit, labels), format_subset(d.counit, labels), format_mul(d), partition]
    return "| " + " | ".join(cells) + " |"


def markdown_table(rows: Iterable[str]) -> str:
    return "\n".join([HEADER, RULE, *rows]) + "\n"


def reference_table(n: int) -> str:
    """The shipped reference rows for ``n`` elements, as transcribed."""
    return markdown_table(markdown_row(r.case, r.data(), r.partition) for r in rows_for(n))


def _in_reference_labels(d: FrobData, row: TableRow) -> FrobData:
    target = row.data()
    perm = isomorphic(d, target)
    if perm is None:
        raise ValueError(f"census entry is not isomorphic to reference case {row.case}")
    moved = relabel(d, perm)
    return FrobData(FinSet(d.n, tuple(LETTERS[: d.n])), moved.unit, moved.counit, moved.table)


def census_table(census: Census) -> str:
    """Render a census.

    Sizes with a reference table are ordered by reference case and shown in the
    reference labelling; other sizes follow census order with canonical labels.
    """
    from .tqft import partition_function

    reference = {r.case: r for r in rows_for(census.n)}
    lines = []
    if reference and all(e.annotations.get("reference_case") in reference for e in census.entries):
        keyed = sorted(census.entries, key=lambda e: reference[e.annotations["reference_case"]].case)
        for e in keyed:
            row = reference[e.annotations["reference_case"]]
            lines.append(markdown_row(row.case, _in_reference_labels(e.obj.data, row), e.annotations["partition"]))
        return markdown_table(lines)
    for index, e in enumerate(census.entries, 1):
        partition = e.annotations.get("partition")
        if partition is None:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                pf = partition_function(e.obj)
            partition = pf.proposition
        if not e.obj.commutative:
            partition += " (formal)"
        lines.append(markdown_row(e.annotations.get("index", index), e.obj.data, partition))
    return markdown_table(lines)
