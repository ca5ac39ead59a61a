"""Exponent matrices of derivations and the cone-triviality test on them.

For a square nonnegative integer matrix A the test asks whether the cone
``{Y >= 0 : (A - I) Y <= 0}`` is just the origin.  It is decided exactly by
Fourier-Motzkin elimination on the slice ``sum(Y) = 1`` (nonempty iff the
cone has a nonzero ray), with back-substitution producing a witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .deriv import Derivation
from .poly import Monomial, top_monomials

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ExponentMatrix:
    entries: Matrix
    # chosen (monomial, coefficient) for each row
    provenance: tuple[tuple[Monomial, Fraction], ...] = ()

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "; ".join(" ".join(str(e) for e in row) for row in self.entries)


@dataclass(frozen=True)
class StarVerdict:
    holds: bool
    witness: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a witness is present exactly when the condition fails")


def _as_matrix(a) -> Matrix:
    if isinstance(a, ExponentMatrix):
        a = a.entries
    rows = tuple(tuple(int(e) for e in row) for row in a)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("matrix must be square and nonempty")
    if any(e < 0 for r in rows for e in r):
        raise ValueError("matrix entries must be nonnegative")
    return rows


def is_cone_witness(a, y: Sequence[int]) -> bool:
    """y >= 0, y != 0 and (A - I) y <= 0, checked in integers."""
    m = _as_matrix(a)
    if len(y) != len(m) or any(v < 0 for v in y) or not any(y):
        return False
    for j, row in enumerate(m):
        if sum(e * v for e, v in zip(row, y)) - y[j] > 0:
            return False
    return True


# An inequality is (coeffs, const) meaning sum(coeffs[k] * y_k) + const <= 0.
Ineq = tuple[tuple[Fraction, ...], Fraction]


def _normalize(coeffs: list[Fraction], const: Fraction) -> Ineq:
    vals = list(coeffs) + [const]
    den = lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g:
        ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1])


def _eliminate(system: list[Ineq], k: int) -> list[Ineq]:
    pos, neg, rest = [], [], []
    for coeffs, const in system:
        c = coeffs[k]
        (pos if c > 0 else neg if c < 0 else rest).append((coeffs, const))
    out = set(rest)
    for cp, kp in pos:
        for cn, kn in neg:
            a, b = cp[k], -cn[k]
            coeffs = [b * u + a * v for u, v in zip(cp, cn)]
            coeffs[k] = Fraction(0)
            out.add(_normalize(coeffs, b * kp + a * kn))
    return sorted(out)


def _cone_point(m: Matrix) -> list[Fraction] | None:
    """A rational point of the cone with coordinates summing to 1, or None."""
    n = len(m)
    system: list[Ineq] = []
    for j, row in enumerate(m):
        coeffs = [Fraction(e) for e in row]
        coeffs[j] -= 1
        system.append(_normalize(coeffs, Fraction(0)))
    for j in range(n):
        coeffs = [Fraction(0)] * n
        coeffs[j] = Fraction(-1)
        system.append(_normalize(coeffs, Fraction(0)))
    # y_0 = 1 - sum of the others
    reduced: list[Ineq] = []
    for coeffs, const in system:
        first = coeffs[0]
        new = [Fraction(0)] + [c - first for c in coeffs[1:]]
        reduced.append(_normalize(new, const + first))
    stages = [sorted(set(reduced))]
    for k in range(1, n):
        stages.append(_eliminate(stages[-1], k))
    if any(const > 0 for _, const in stages[-1]):
        return None
    # stages[k - 1] involves y_k .. y_{n-1}; pick the smallest feasible value
    y = [Fraction(0)] * n
    for k in range(n - 1, 0, -1):
        lo, hi = None, None
        for coeffs, const in stages[k - 1]:
            c = coeffs[k]
            if c == 0:
                continue
            bound = -(const + sum(coeffs[t] * y[t] for t in range(k + 1, n))) / c
            if c > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        y[k] = lo if lo is not None else (hi if hi is not None else Fraction(0))
    y[0] = 1 - sum(y[1:])
    return y


def check_star(a) -> StarVerdict:
    m = _as_matrix(a)
    point = _cone_point(m)
    if point is None:
        return StarVerdict(True)
    den = lcm(*(v.denominator for v in point))
    ints = [int(v * den) for v in point]
    g = 0
    for v in ints:
        g = gcd(g, v)
    witness = tuple(v // g for v in ints)
    if not is_cone_witness(m, witness):
        raise ArithmeticError(f"elimination produced an invalid witness {witness}")
    return StarVerdict(False, witness)


class ZeroImageError(ValueError):
    pass


def candidate_matrices(d: Derivation) -> list[ExponentMatrix]:
    """All exponent matrices from one top-degree monomial per image."""
    choices = []
    for j, h in enumerate(d.images, start=1):
        if h.is_zero():
            raise ZeroImageError(f"d(x{j}) = 0, no exponent matrix is defined")
        choices.append(top_monomials(h))
    out = []
    for pick in itertools.product(*choices):
        out.append(ExponentMatrix(tuple(m for m, _ in pick), tuple(pick)))
    return out


def exists_star_matrix(d: Derivation) -> ExponentMatrix | None:
    for cand in candidate_matrices(d):
        if check_star(cand).holds:
            return cand
    return None


def parse_matrix(text: str) -> Matrix:
    """``"2 1; 3 0"`` -> ((2, 1), (3, 0))."""
    rows = [r.split() for r in text.split(";") if r.strip()]
    try:
        return _as_matrix([[int(e) for e in r] for r in rows])
    except ValueError as exc:
        raise ValueError(f"bad matrix {text!r}: {exc}") from None
