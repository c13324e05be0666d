"""Sparse Gauss-Jordan elimination over the rationals."""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Solution:
    consistent: bool
    rank: int
    n_unknowns: int
    particular: dict[int, Fraction]

    @property
    def nullity(self) -> int:
        return self.n_unknowns - self.rank

    @property
    def unique(self) -> bool:
        return self.consistent and self.nullity == 0


def solve(
    equations: Iterable[tuple[Mapping[int, object], object]], n_unknowns: int
) -> Solution:
    """Solve ``sum_j a_j x_j = b`` for each ``(a, b)`` in ``equations``.

    Returns the reduced solution with free variables set to zero.
    """
    pivots: dict[int, tuple[dict[int, Fraction], Fraction]] = {}
    consistent = True
    for coeffs, rhs in equations:
        row = {j: Fraction(v) for j, v in coeffs.items() if v}
        b = Fraction(rhs)
        # pivot rows are kept fully reduced, so one pass clears all pivot columns
        for p in sorted(set(row) & set(pivots)):
            c = row[p]
            prow, pb = pivots[p]
            for j, v in prow.items():
                nv = row.get(j, 0) - c * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
            b -= c * pb
        if not row:
            if b:
                consistent = False
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {j: v * inv for j, v in row.items()}
        b *= inv
        # keep existing pivot rows fully reduced against the new pivot
        for q, (qrow, qb) in list(pivots.items()):
            c = qrow.get(p)
            if c:
                for j, v in row.items():
                    nv = qrow.get(j, 0) - c * v
                    if nv:
                        qrow[j] = nv
                    else:
                        qrow.pop(j, None)
                pivots[q] = (qrow, qb - c * b)
        pivots[p] = (row, b)
    particular = {p: b for p, (_, b) in pivots.items() if b} if consistent else {}
    return Solution(consistent, len(pivots), n_unknowns, particular)


def rank(rows: Iterable[Mapping[int, object]], n_cols: int) -> int:
    return solve(((r, 0) for r in rows), n_cols).rank
