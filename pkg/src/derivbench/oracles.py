"""Bounded-degree decision oracles built on exact linear algebra.

Each oracle asks whether some polynomial of total degree <= D satisfies a
linear condition involving a derivation.  A positive answer comes with an
exact, re-verified witness; a negative answer only certifies the stated
bound and never claims more.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .deriv import DegreeCap, Derivation, apply
from .linalg import LinearSystem, solve_linear
from .poly import ArityError, Monomial, Polynomial, degree_in, monomials_upto


class WitnessError(AssertionError):
    """A witness failed exact re-verification (indicates an internal bug)."""


@dataclass(frozen=True)
class OracleVerdict:
    found: bool
    bound: int
    witness: Polynomial | None = None
    extras: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "WitnessFound" if self.found else "InfeasibleUpTo"

    def __str__(self) -> str:
        if not self.found:
            return f"InfeasibleUpTo({self.bound})"
        extra = "".join(f", {k}={v}" for k, v in self.extras.items())
        return f"WitnessFound(r={self.witness}{extra})"


def _infeasible(bound: int) -> OracleVerdict:
    return OracleVerdict(False, bound)


def _combine(basis: Sequence[Monomial], coeffs: Sequence[Fraction], arity: int) -> Polynomial:
    return Polynomial(arity, {m: c for m, c in zip(basis, coeffs) if c})


def _linear_images(basis: Sequence[Monomial], op: Callable[[Polynomial], Polynomial], arity: int):
    return [op(Polynomial.monomial(m)) for m in basis]


def _coefficient_rows(images: Sequence[Polynomial], keep: Callable[[Monomial], bool]):
    """Rows forcing the coefficient of every monomial rejected by ``keep`` to vanish."""
    rows: dict[Monomial, dict[int, Fraction]] = {}
    for col, img in enumerate(images):
        for mono, c in img.items():
            if not keep(mono):
                rows.setdefault(mono, {})[col] = c
    return [rows[m] for m in sorted(rows)]


def _affine_solve(basis, images, target: Polynomial) -> Polynomial | None:
    """Solve sum_k c_k images[k] = target; free coefficients are zero."""
    by_mono: dict[Monomial, dict[int, Fraction]] = {}
    for col, img in enumerate(images):
        for mono, c in img.items():
            by_mono.setdefault(mono, {})[col] = c
    for mono, _ in target.items():
        by_mono.setdefault(mono, {})
    system = LinearSystem(basis)
    for mono in sorted(by_mono):
        system.add_row(by_mono[mono], target.coeff(mono))
    sol = solve_linear(system)
    if not sol.consistent:
        return None
    return _combine(basis, sol.particular, target.arity)


def _normalize_leading(p: Polynomial) -> Polynomial:
    _, lc = p.leading()
    return p * (1 / lc)


def image_membership(d: Derivation, target: Polynomial, bound: int) -> OracleVerdict:
    """Is there r with total degree <= bound and d(r) = target?

    The witness takes zero for every free coefficient (in particular no
    constant term).
    """
    if target.arity != d.arity:
        raise ArityError("target and derivation live in different rings")
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    n = d.arity
    basis = [m for m in monomials_upto(n, bound) if sum(m)]
    r = _affine_solve(basis, _linear_images(basis, d, n), target)
    if r is None:
        return _infeasible(bound)
    if apply(d, r) != target:
        raise WitnessError(f"image witness {r} does not map to {target}")
    return OracleVerdict(True, bound, r, {"target": target})


def subring_image_scan(d: Derivation, i: int, cap: DegreeCap, bound: int) -> OracleVerdict:
    """Is there r (deg <= bound) with d(r) = g(x_i) nonzero and deg g <= cap?

    Solves for the space of r whose image lies in k[x_i] (respecting a finite
    cap), then looks for an element with nonzero image.  With an infinite
    cap any degree of g is accepted.  The witness is the basis element whose
    image has least degree, scaled so that g is monic.
    """
    n = d.arity
    if not 1 <= i <= n:
        raise IndexError(f"variable index {i} out of range 1..{n}")
    if bound < 0:
        raise ValueError("bound must be nonnegative")

    def keep(mono: Monomial) -> bool:
        return all(e == 0 for k, e in enumerate(mono) if k != i - 1) and cap.admits(mono[i - 1])

    basis = [m for m in monomials_upto(n, bound) if sum(m)]
    images = _linear_images(basis, d, n)
    system = LinearSystem(basis)
    for row in _coefficient_rows(images, keep):
        system.add_row(row)
    sol = solve_linear(system)
    best = None
    for vec in sol.nullspace:
        r = _combine(basis, vec, n)
        g = apply(d, r)
        if g.is_zero():
            continue
        if best is None or degree_in(g, i) < degree_in(best[1], i):
            best = (r, g)
    if best is None:
        return _infeasible(bound)
    r, g = best
    scale = 1 / g.leading()[1]
    r, g = r * scale, g * scale
    if apply(d, r) != g or not keep_all(g, keep):
        raise WitnessError(f"subring witness {r} fails re-verification")
    return OracleVerdict(True, bound, r, {"g": g})


def keep_all(p: Polynomial, keep: Callable[[Monomial], bool]) -> bool:
    return all(keep(m) for m, _ in p.items())


def kernel_into_subring(
    dn: Derivation, j: int, f_bound: int, h_bound: int, base_arity: int | None = None
) -> OracleVerdict:
    """Is there a non-constant f in k[x1..xj] (deg <= f_bound) with dn(f) in k[x_j], deg <= h_bound?

    When ``base_arity`` (the i of the chain) is given, j must lie in
    i+1 .. n.  The witness f is scaled to graded-lex leading coefficient 1.
    """
    n = dn.arity
    lo = 1 if base_arity is None else base_arity + 1
    if not lo <= j <= n:
        raise IndexError(f"index {j} outside the admissible range {lo}..{n}")
    if f_bound < 0 or h_bound < 0:
        raise ValueError("bounds must be nonnegative")

    def keep(mono: Monomial) -> bool:
        return all(e == 0 for k, e in enumerate(mono) if k != j - 1) and mono[j - 1] <= h_bound

    basis = [m for m in monomials_upto(n, f_bound, range(1, j + 1)) if sum(m)]
    images = _linear_images(basis, dn, n)
    system = LinearSystem(basis)
    for row in _coefficient_rows(images, keep):
        system.add_row(row)
    sol = solve_linear(system)
    if not sol.nullspace:
        return _infeasible(f_bound)
    f = _normalize_leading(_combine(basis, sol.nullspace[0], n))
    h = apply(dn, f)
    if f.is_constant() or not keep_all(h, keep):
        raise WitnessError(f"kernel witness {f} fails re-verification")
    return OracleVerdict(True, f_bound, f, {"h": h})


def shamsuddin_obstruction(d: Derivation, a: Polynomial, b: Polynomial, bound: int) -> OracleVerdict:
    """Is there r (deg <= bound) with d(r) = a*r + b?

    Free coefficients of the witness are set to zero.
    """
    n = d.arity
    if a.arity != n or b.arity != n:
        raise ArityError("a and b must live in the ring of d")
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    basis = monomials_upto(n, bound)
    r = _affine_solve(basis, _linear_images(basis, lambda m: apply(d, m) - a * m, n), b)
    if r is None:
        return _infeasible(bound)
    if apply(d, r) != a * r + b:
        raise WitnessError(f"Shamsuddin witness {r} fails re-verification")
    return OracleVerdict(True, bound, r, {"a": a, "b": b})
