"""Reference classification of Frobenius objects in Rel with two and three elements.

Rows are keyed ``(n, case)``.  Multiplication tables are written row by
row, separated by ``/``; each entry is a string of element letters, with
``-`` for the empty set.

Three entries are easy to get wrong by hand.  In three-element case 4 the
product ``ab`` is ``{b}``, as unitality forces.  The counit of three-element
cases 23 and 24 is ``{a, c}``; with ``{b, c}`` row ``a`` of the pairing
never meets the counit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .frobenius import FrobData, FrobObject, LETTERS


@dataclass(frozen=True)
class TableRow:
    n: int
    case: int
    unit: str
    counit: str
    mul: str
    partition: str
    constructions: tuple[str, ...] = ()

    @property
    def fixture_name(self) -> str:
        return f"table{self.n - 1}_case{self.case}"

    def data(self) -> FrobData:
        idx = {c: i for i, c in enumerate(LETTERS[: self.n])}
        rows = [r.split() for r in self.mul.split("/")]
        mul = [[[] if e == "-" else [idx[c] for c in e] for e in row] for row in rows]
        return FrobData.build(
            self.n,
            [idx[c] for c in self.unit],
            [idx[c] for c in self.counit],
            mul,
            tuple(LETTERS[: self.n]),
        )

    def obj(self) -> FrobObject:
        return FrobObject(self.data())


def _row(n, case, unit, counit, mul, partition, *constructions):
    return TableRow(n, case, unit, counit, mul, partition, tuple(constructions))


TWO_ELEMENT = (
    _row(2, 1, "a", "a", "a b / b a", "True", "group Z2", "groupoid"),
    _row(2, 2, "a", "a", "a b / b ab", "True"),
    _row(2, 3, "a", "b", "a b / b a", "g is odd", "group Z2", "groupoid"),
    _row(2, 4, "a", "b", "a b / b -", "g = 1"),
    _row(2, 5, "ab", "ab", "a - / - b", "True", "groupoid"),
)

THREE_ELEMENT = (
    _row(3, 1, "a", "a", "a b c / b a c / c c ab", "True"),
    _row(3, 2, "a", "a", "a b c / b a c / c c abc", "True"),
    _row(3, 3, "a", "a", "a b c / b ab c / c c ab", "True", "conjugacy classes of S3"),
    _row(3, 4, "a", "a", "a b c / b ab c / c c abc", "True"),
    _row(3, 5, "a", "a", "a b c / b ac bc / c bc ab", "True"),
    _row(3, 6, "a", "a", "a b c / b ac bc / c bc abc", "True"),
    _row(3, 7, "a", "a", "a b c / b abc bc / c bc abc", "True"),
    _row(3, 8, "a", "a", "a b c / b b abc / c abc bc", "True"),
    _row(3, 9, "a", "a", "a b c / b b abc / c abc c", "True"),
    _row(3, 10, "a", "a", "a b c / b c a / c a b", "True", "group Z3", "groupoid"),
    _row(3, 11, "a", "a", "a b c / b c ab / c ab bc", "True"),
    _row(3, 12, "a", "a", "a b c / b bc abc / c abc bc", "True"),
    _row(3, 13, "a", "b", "a b c / b - - / c - b", "g = 1"),
    _row(3, 14, "a", "b", "a b c / b - - / c - bc", "g ≥ 1"),
    _row(3, 15, "a", "b", "a b c / b a c / c c ab", "g ≥ 1"),
    _row(3, 16, "a", "b", "a b c / b a c / c c abc", "g ≥ 1"),
    _row(3, 17, "a", "b", "a b c / b c a / c a b", "g ≡ 1 (mod 3)", "group Z3", "groupoid"),
    _row(3, 18, "a", "b", "a b c / b c ac / c ac abc", "g ≥ 1"),
    _row(3, 19, "a", "b", "a b c / b ac ac / c ac ab", "g ≥ 1"),
    _row(3, 20, "a", "b", "a b c / b ac ac / c ac abc", "g ≥ 1"),
    _row(3, 21, "ab", "ab", "a - - / - b c / - c b", "True", "groupoid"),
    _row(3, 22, "ab", "ab", "a - - / - b c / - c bc", "True"),
    _row(3, 23, "ab", "ac", "a - - / - b c / - c b", "True", "groupoid"),
    _row(3, 24, "ab", "ac", "a - - / - b c / - c -", "True"),
    _row(3, 25, "abc", "abc", "a - - / - b - / - - c", "True", "groupoid"),
)

ALL_ROWS = TWO_ELEMENT + THREE_ELEMENT


def rows_for(n: int) -> tuple[TableRow, ...]:
    return tuple(r for r in ALL_ROWS if r.n == n)


def row(n: int, case: int) -> TableRow:
    for r in ALL_ROWS:
        if r.n == n and r.case == case:
            return r
    raise KeyError((n, case))
