"""
Table shaping and emitters for text, CSV and JSON output.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from mobius_zero.zstats import (BoundSeries, CensusRow, conjecture_status, format_nfact_over_e2,
                                percentage, round_decimal)

FORMATS = ("text", "csv", "json")


@dataclass
class Table:
    """
    Columns and rows of one output table. Notes are printed after the text
    format only; the CLI sends them to stderr for CSV and JSON.
    """
    columns: list
    rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)


def z_report(rows: list[CensusRow]) -> Table:
    table = Table(["Length", "Z(n)", "mu=0", "total", "Z(n) <= 0.6040"])
    for row in rows:
        status = "yes" if conjecture_status(row) else "no"
        table.rows.append([row.n, round_decimal(row.z, 4), row.mu_zero, row.total, status])
    return table


def nonopp_report(rows: list[CensusRow]) -> Table:
    table = Table(["Length", "=0", "≠0"])
    for row in rows:
        table.rows.append([row.n, row.nonopp_zero, row.nonopp_nonzero])
    return table


def szclass_report(rows: list[CensusRow]) -> Table:
    table = Table(["Length", "Obviously zero", "New", "Obviously zero %", "New %"])
    for row in rows:
        table.rows.append([row.n, row.obviously_zero, row.new,
                           percentage(row.obviously_zero, row.total), percentage(row.new, row.total)])
    return table


def simples_report(counts: list[int]) -> Table:
    table = Table(["n", "S(n)", "n!/e^2"])
    for n, count in enumerate(counts, start=1):
        table.rows.append([n, count, format_nfact_over_e2(n)])
    return table


def bound_report(series: BoundSeries) -> Table:
    table = Table(["k", "coefficient", "lower bound"])
    for k, term in series.terms.items():
        table.rows.append([k, str(term), round_decimal(series.partial_sums[k], 10)])
    for n, value in series.finite_n.items():
        table.notes.append(f"n={n}: ZSZ(n) >= {value} ({round_decimal(value, 4)})")
    return table


def _text(table: Table) -> str:
    cells = [[str(column) for column in table.columns]] + [[str(value) for value in row] for row in table.rows]
    widths = [max(len(line[i]) for line in cells) for i in range(len(table.columns))]
    lines = ["  ".join(value.rjust(width) for value, width in zip(line, widths)) for line in cells]
    lines.extend(table.notes)
    return "\n".join(lines) + "\n"


def _csv(table: Table) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    writer.writerows(table.rows)
    return buffer.getvalue()


def _json(table: Table) -> str:
    records = [dict(zip(table.columns, row)) for row in table.rows]
    return json.dumps(records, ensure_ascii=False, indent=2) + "\n"


def render(table: Table, fmt: str = "text") -> str:
    """
    Render a table; column order is fixed by the table.

    Args:
        table (Table): Columns and rows
        fmt (str): "text", "csv" or "json"

    Returns:
        str: The rendered table, newline-terminated
    """
    if fmt == "csv":
        return _csv(table)
    if fmt == "json":
        return _json(table)
    if fmt == "text":
        return _text(table)
    raise ValueError(f"Unknown output format {fmt!r}")
