"""Exact linear systems over Q, solved by fraction-free (Bareiss) elimination."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Hashable, Mapping, Sequence


@dataclass
class LinearSystem:
    """Rows are sparse maps column-index -> coefficient; ``rhs`` defaults to zeros."""

    unknowns: Sequence[Hashable]
    rows: list[Mapping[int, Fraction]] = field(default_factory=list)
    rhs: list[Fraction] = field(default_factory=list)

    def add_row(self, row: Mapping[int, Fraction], value=0) -> None:
        for col in row:
            if not 0 <= col < len(self.unknowns):
                raise IndexError(f"column {col} outside {len(self.unknowns)} unknowns")
        self.rows.append(dict(row))
        self.rhs.append(Fraction(value))

    def residual(self, x: Sequence[Fraction]) -> list[Fraction]:
        return [sum((c * x[k] for k, c in row.items()), Fraction(0)) - b for row, b in zip(self.rows, self.rhs)]


@dataclass
class Solution:
    consistent: bool
    particular: list[Fraction] | None
    nullspace: list[list[Fraction]]
    pivots: list[int]
    rank: int


def _integer_row(row: Mapping[int, Fraction], b: Fraction, ncols: int) -> list[int]:
    dense = [Fraction(0)] * (ncols + 1)
    for k, c in row.items():
        dense[k] += Fraction(c)
    dense[ncols] = Fraction(b)
    scale = lcm(*(c.denominator for c in dense))
    return [int(c * scale) for c in dense]


def echelon(matrix: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination on an integer matrix (in place).

    Only the first ``ncols`` columns are pivot candidates; any trailing
    columns (right-hand sides) are carried along.  Returns the matrix and
    the pivot columns.
    """
    m = len(matrix)
    width = len(matrix[0]) if matrix else 0
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == m:
            break
        piv = next((k for k in range(r, m) if matrix[k][c]), None)
        if piv is None:
            continue
        if piv != r:
            matrix[r], matrix[piv] = matrix[piv], matrix[r]
        p = matrix[r][c]
        top = matrix[r]
        for k in range(r + 1, m):
            row = matrix[k]
            a = row[c]
            for col in range(c, width):
                q, rem = divmod(p * row[col] - a * top[col], prev)
                if rem:
                    raise ArithmeticError("Bareiss division was not exact")
                row[col] = q
        prev = p
        pivots.append(c)
        r += 1
    return matrix, pivots


def _back_substitute(matrix, pivots, ncols, values, with_rhs: bool) -> list[Fraction]:
    x = list(values)
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        row = matrix[r]
        s = Fraction(row[ncols]) if with_rhs else Fraction(0)
        for col in range(c + 1, ncols):
            if row[col] and x[col]:
                s -= row[col] * x[col]
        x[c] = s / row[c]
    return x


def solve_linear(system: LinearSystem) -> Solution:
    ncols = len(system.unknowns)
    matrix = [_integer_row(row, b, ncols) for row, b in zip(system.rows, system.rhs)]
    matrix, pivots = echelon(matrix, ncols)
    rank = len(pivots)
    for row in matrix[rank:]:
        if row[ncols]:
            return Solution(False, None, _nullspace(matrix, pivots, ncols), pivots, rank)
    zeros = [Fraction(0)] * ncols
    particular = _back_substitute(matrix, pivots, ncols, zeros, with_rhs=True)
    return Solution(True, particular, _nullspace(matrix, pivots, ncols), pivots, rank)


def _nullspace(matrix, pivots, ncols) -> list[list[Fraction]]:
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        seed = [Fraction(0)] * ncols
        seed[free] = Fraction(1)
        basis.append(_back_substitute(matrix, pivots, ncols, seed, with_rhs=False))
    return basis
