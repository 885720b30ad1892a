"""Golden table rows and their reproduction at the printed precision."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Optional

from .series import odd_reciprocal_sum, pi_estimate_decimal, pi_series

# (terms, n=1 column, n=5 column)
TABLE1 = (
    (10, "0.2273", "-0.013"),
    (50, "0.2451", "0.0051"),
    (100, "0.2475", "0.0075"),
    (1000, "0.2498", "0.00975"),
    (10_000, "0.249975", "0.009975"),
    (100_000, "0.2499975", "0.0099975"),
)

# (j, pi from S(j), pi from the adjacent average or None)
TABLE2 = (
    (1, "3.33", None),
    (2, "3.07", "3.20"),
    (3, "3.18", None),
    (4, "3.12", "3.149"),
    (5, "3.16", None),
    (6, "3.13", "3.144"),
    (7, "3.15", None),
    (8, "3.13", "3.143"),
    (9, "3.147", None),
    (10, "3.137", "3.142"),
    (19, "3.1429", None),
    (20, "3.1404", "3.1417"),
)

# (j, pi from the adjacent average)
TABLE3 = (
    (10, "3.142"),
    (100, "3.141593"),
    (1000, "3.141592654"),
    (10_000, "3.14159265359"),
    (100_000, "3.1415926535897938"),
)


@dataclass(frozen=True)
class TableRow:
    table: int
    key: str
    column: str
    computed: str
    printed: str
    value: Decimal

    @property
    def match(self) -> bool:
        return self.computed == self.printed


def render(value: Decimal, like: str) -> str:
    """Round ``value`` half-to-even to the number of decimals shown in ``like``."""
    places = len(like.split(".")[1]) if "." in like else 0
    q = Decimal(1).scaleb(-places)
    return str(value.quantize(q, rounding=ROUND_HALF_EVEN))


def table1() -> list[TableRow]:
    runs = {n: odd_reciprocal_sum(n, TABLE1[-1][0]) for n in (1, 5)}
    rows = []
    for terms, p1, p5 in TABLE1:
        for n, printed in ((1, p1), (5, p5)):
            r = runs[n]
            v = Decimal(float(r.partial_sums[terms - 1])) + Decimal(float(r.partial_lo[terms - 1]))
            rows.append(TableRow(1, str(terms), f"n={n}", render(v, printed), printed, v))
    return rows


def table2() -> list[TableRow]:
    run = pi_series(TABLE2[-1][0])
    rows = []
    for j, plain, avg in TABLE2:
        v = pi_estimate_decimal(run, j, averaged=False)
        rows.append(TableRow(2, str(j), "S", render(v, plain), plain, v))
        if avg is not None:
            v = pi_estimate_decimal(run, j, averaged=True)
            rows.append(TableRow(2, str(j), "average", render(v, avg), avg, v))
    return rows


def table3() -> list[TableRow]:
    run = pi_series(TABLE3[-1][0])
    rows = []
    for j, printed in TABLE3:
        v = pi_estimate_decimal(run, j, averaged=True)
        rows.append(TableRow(3, str(j), "average", render(v, printed), printed, v))
    return rows


def table(table_id: int) -> list[TableRow]:
    try:
        return {1: table1, 2: table2, 3: table3}[table_id]()
    except KeyError:
        raise ValueError(f"unknown table {table_id}") from None


def last_digit_gap(row: TableRow) -> Optional[int]:
    """Difference between computed and printed in units of the last printed digit."""
    places = len(row.printed.split(".")[1]) if "." in row.printed else 0
    return int((Decimal(row.computed) - Decimal(row.printed)).scaleb(places))
