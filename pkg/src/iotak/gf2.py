"""GF(2) linear algebra on int bitsets.

Vectors are Python ints (bit i = coordinate i), rows of a matrix are a
list of such ints. Pivoting is on the lowest set bit, so a reduced row
contains only columns >= its pivot column; back substitution walks
pivots in decreasing order.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional


class RowBasis:
    """Incremental row space with reduction against stored pivots."""

    __slots__ = ("pivots",)

    def __init__(self, rows: Iterable[int] = ()):
        self.pivots: Dict[int, int] = {}
        for r in rows:
            self.add(r)

    def reduce(self, vec: int) -> int:
        while vec:
            col = (vec & -vec).bit_length() - 1
            piv = self.pivots.get(col)
            if piv is None:
                return vec
            vec ^= piv
        return 0

    def add(self, vec: int) -> bool:
        """Insert vec; True if it enlarged the span."""
        vec = self.reduce(vec)
        if vec == 0:
            return False
        self.pivots[(vec & -vec).bit_length() - 1] = vec
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(rows: Iterable[int]) -> int:
    return RowBasis(rows).rank


def solve(rows: List[int], rhs: List[int], nvars: int) -> Optional[int]:
    """One solution of the affine system rows[k] . x = rhs[k], or None.

    The right-hand side rides along as an extra bit above all variable
    bits; a row reducing to that bit alone means 0 = 1.
    """
    aug = 1 << nvars
    basis = RowBasis()
    for row, b in zip(rows, rhs):
        vec = basis.reduce(row | (aug if b else 0))
        if vec == aug:
            return None
        if vec:
            basis.pivots[(vec & -vec).bit_length() - 1] = vec
    sol = 0
    for col in sorted(basis.pivots, reverse=True):
        row = basis.pivots[col]
        val = (row >> nvars) & 1
        val ^= (row & sol).bit_count() & 1
        if val:
            sol |= 1 << col
    return sol


def nullspace(rows: Iterable[int], nvars: int) -> List[int]:
    """Basis of the solution space of the homogeneous system."""
    basis = RowBasis(rows)
    pivot_cols = basis.pivots.keys()
    out = []
    for free in range(nvars):
        if free in pivot_cols:
            continue
        sol = 1 << free
        for col in sorted(basis.pivots, reverse=True):
            if (basis.pivots[col] & sol).bit_count() & 1:
                sol |= 1 << col
        out.append(sol)
    return out


def apply_rows(rows: List[int], vec: int) -> int:
    """Image of vec under the map e_k -> rows[k] (xor of selected rows)."""
    out = 0
    while vec:
        low = vec & -vec
        out ^= rows[low.bit_length() - 1]
        vec ^= low
    return out


def transpose(rows: List[int], ncols: int) -> List[int]:
    out = [0] * ncols
    for k, row in enumerate(rows):
        while row:
            low = row & -row
            out[low.bit_length() - 1] |= 1 << k
            row ^= low
    return out
