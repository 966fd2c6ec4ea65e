"""Tabulated data (admissible sets, their counts, p_S(n), d(n)) and text/CSV/JSON rendering."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Any

from .admissible import (
    admissible_subsets,
    count_admissible,
    count_admissible_with_max,
    enumerate_admissible,
)
from .cache import CountCache
from .counting import count, maximizing_d, plateau_starts
from .perm_core import format_set

SCHEMA_VERSION = 1
FORMATS = ("plain", "csv", "json")


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list[Any]] = field(default_factory=list)

    def records(self) -> list[dict[str, Any]]:
        return [dict(zip(self.columns, row)) for row in self.rows]


def _cell(value: Any) -> str:
    if isinstance(value, (set, frozenset)):
        return format_set(value)
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    if value is None:
        return ""
    return str(value)


def _json_cell(value: Any) -> Any:
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if isinstance(value, (list, tuple)):
        return [_json_cell(v) for v in value]
    if isinstance(value, int) and not isinstance(value, bool) and abs(value) >= 2 ** 53:
        # keep big counts exact for JSON consumers
        return str(value)
    return value


def render_plain(table: Table) -> str:
    cells = [table.columns] + [[_cell(v) for v in row] for row in table.rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(table.columns))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue().rstrip("\n")


def table_json(table: Table) -> dict[str, Any]:
    return {
        "table": table.name,
        "columns": table.columns,
        "rows": [[_json_cell(v) for v in row] for row in table.rows],
    }


def pinsets_table(max_m: int = 9) -> Table:
    """Nonempty admissible sets listed by maximum m and size d."""
    table = Table("pinsets", ["m", "d", "sets"])
    for m in range(3, max_m + 1):
        for d in range(1, (m - 1) // 2 + 1):
            table.rows.append([m, d, enumerate_admissible(m, d)])
    return table


def admissible_count_rows(max_m: int = 12) -> Table:
    """p(m; d) by maximum and size, with row sums and binom(m-2, floor(m/2))."""
    max_d = max(1, (max_m - 1) // 2)
    table = Table("pmd", ["m"] + [f"d={d}" for d in range(max_d + 1)] + ["row_sum", "binomial"])
    for m in range(max_m + 1):
        row = [count_admissible(m, d) for d in range(max_d + 1)]
        # the m = 0 row is the empty set; its sum includes d = 0
        total = sum(row) if m == 0 else sum(row[1:])
        table.rows.append([m] + row + [total, count_admissible_with_max(m) if m >= 3 else None])
    return table


def pinnacle_count_table(n: int = 7, method: str = "linear", cache: CountCache | None = None) -> Table:
    """p_S(max S) and p_S(n) for every admissible S inside [n]."""
    cache = CountCache() if cache is None else cache
    table = Table("pS", ["S", "p_S(max S)", f"p_S({n})"])
    for S in admissible_subsets(n):
        at_max = None if not S else count(S, S.m, method=method, cache=cache)
        table.rows.append([S, at_max, count(S, n, method=method, cache=cache)])
    return table


def dmax_table(n_from: int = 4, n_to: int = 22) -> Table:
    table = Table("dmax", ["n", "d(n)", "max_count", "tie"])
    for n in range(n_from, n_to + 1):
        best = maximizing_d(n)
        table.rows.append([n, best.d, best.value, best.tie])
    return table


def plateau_table(n_max: int = 200) -> Table:
    table = Table("plateaus", ["n", "d(n)"])
    table.rows.extend([n, d] for n, d in plateau_starts(n_max))
    return table
