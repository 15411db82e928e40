"""
Exact row reduction over Q on sparse rows.

Rows are added one at a time and reduced against the pivots found so far,
so a long system never has to be held as a dense matrix. Pivots go to the
earliest available column; columns that never receive a pivot are free and
are set to zero by `solve`.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Mapping

from bipartite_maps.errors import InconsistentSystemError, StructuralError

Row = dict[int, Fraction]
RowStatus = Literal["pivot", "redundant", "inconsistent"]


@dataclass
class RowEchelon:
    ncols: int
    pivots: dict[int, tuple[Row, Fraction]] = field(default_factory=dict)
    conflicts: int = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.pivots]

    def reduce(self, row: Mapping[int, Fraction], rhs: Fraction) -> tuple[Row, Fraction]:
        row = {c: Fraction(v) for c, v in row.items() if v}
        rhs = Fraction(rhs)
        while row:
            col = min(row)
            pivot = self.pivots.get(col)
            if pivot is None:
                break
            factor = row[col]
            pivot_row, pivot_rhs = pivot
            for c, v in pivot_row.items():
                value = row.get(c, 0) - factor * v
                if value:
                    row[c] = value
                else:
                    row.pop(c, None)
            rhs -= factor * pivot_rhs
        return row, rhs

    def add(self, row: Mapping[int, Fraction], rhs: Fraction = Fraction(0)) -> RowStatus:
        row, rhs = self.reduce(row, rhs)
        if not row:
            if rhs:
                self.conflicts += 1
                return "inconsistent"
            return "redundant"
        col = min(row)
        lead = row[col]
        self.pivots[col] = ({c: v / lead for c, v in row.items()}, rhs / lead)
        return "pivot"

    def solve(self) -> list[Fraction]:
        """Back substitution with every free column set to zero."""
        if self.conflicts:
            raise InconsistentSystemError(
                f"Linear system is inconsistent ({self.conflicts} conflicting rows)"
            )
        solution = [Fraction(0)] * self.ncols
        for col in sorted(self.pivots, reverse=True):
            row, rhs = self.pivots[col]
            solution[col] = rhs - sum(
                (v * solution[c] for c, v in row.items() if c != col), Fraction(0)
            )
        return solution


def solve_exact(rows: list[Mapping[int, Fraction]], rhs: list[Fraction], ncols: int) -> list[Fraction]:
    """Solve a full-rank system exactly; raises if inconsistent or underdetermined."""
    echelon = RowEchelon(ncols)
    for row, value in zip(rows, rhs):
        echelon.add(row, value)
    if echelon.rank < ncols:
        raise StructuralError(
            f"Linear system is underdetermined: rank {echelon.rank} < {ncols} unknowns"
        )
    return echelon.solve()
