"""Ring endomorphisms, commutation with derivations, and triangular search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .deriv import Derivation, apply
from .linalg import LinearSystem, solve_linear
from .poly import ArityError, Polynomial, degree_in, monomials_upto, substitute


@dataclass(frozen=True)
class PolyMap:
    """Endomorphism of k[x1..xn] given by ``images[j-1] = rho(x_j)``."""

    images: tuple[Polynomial, ...]

    def __post_init__(self):
        images = tuple(self.images)
        n = len(images)
        if n == 0 or any(p.arity != n for p in images):
            raise ArityError("all images must live in the same ring as the map's domain")
        object.__setattr__(self, "images", images)

    @property
    def arity(self) -> int:
        return len(self.images)

    def __call__(self, f: Polynomial) -> Polynomial:
        return substitute(f, self.images)

    @classmethod
    def identity(cls, n: int) -> PolyMap:
        return cls(tuple(Polynomial.var(n, j) for j in range(1, n + 1)))

    @classmethod
    def translation(cls, n: int, c) -> PolyMap:
        """(x1, ..., x_{n-1}, x_n + c)."""
        ident = cls.identity(n).images
        return cls(ident[:-1] + (ident[-1] + Fraction(c),))

    def is_identity(self) -> bool:
        return self == PolyMap.identity(self.arity)

    def translation_constant(self) -> Fraction | None:
        """c when the map is (x1, ..., x_n + c), else None."""
        n = self.arity
        ident = PolyMap.identity(n).images
        if self.images[:-1] != ident[:-1]:
            return None
        diff = self.images[-1] - ident[-1]
        return diff.constant_term() if diff.is_constant() else None


def compose(rho: PolyMap, sigma: PolyMap) -> PolyMap:
    """rho after sigma: x_j -> rho(sigma(x_j))."""
    if rho.arity != sigma.arity:
        raise ArityError(f"arity mismatch: {rho.arity} vs {sigma.arity}")
    return PolyMap(tuple(rho(s) for s in sigma.images))


@dataclass(frozen=True)
class TriangularMap:
    """rho(x_j) = diag[j-1] * x_j + tails[j-1] with tails[j-1] in k[x1..x_{j-1}]."""

    diag: tuple[Fraction, ...]
    tails: tuple[Polynomial, ...]

    def __post_init__(self):
        diag = tuple(Fraction(a) for a in self.diag)
        tails = tuple(self.tails)
        n = len(diag)
        if n == 0 or len(tails) != n:
            raise ArityError("diag and tails must have the same positive length")
        for j, (a, t) in enumerate(zip(diag, tails), start=1):
            if a == 0:
                raise ValueError(f"diagonal coefficient of x{j} is zero")
            if t.arity != n:
                raise ArityError(f"tail of x{j} has arity {t.arity}, expected {n}")
            if any(v >= j for v in t.variables()):
                raise ValueError(f"tail of x{j} may only involve x1..x{j - 1}")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "tails", tails)

    @property
    def arity(self) -> int:
        return len(self.diag)

    def as_map(self) -> PolyMap:
        n = self.arity
        return PolyMap(tuple(Polynomial.var(n, j) * a + t for j, (a, t) in enumerate(zip(self.diag, self.tails), 1)))

    @classmethod
    def from_map(cls, rho: PolyMap) -> TriangularMap | None:
        """Recognize a triangular map; None if rho is not of that shape."""
        n = rho.arity
        diag, tails = [], []
        for j, img in enumerate(rho.images, start=1):
            x = Polynomial.var(n, j)
            a = img.coeff(x.leading()[0])
            tail = img - x * a
            if a == 0 or any(v >= j for v in tail.variables()):
                return None
            diag.append(a)
            tails.append(tail)
        return cls(tuple(diag), tuple(tails))


def invert_triangular(rho: TriangularMap) -> TriangularMap:
    """Back-substitution: sigma(x_j) = (x_j - tail_j(sigma(x_1), ..)) / alpha_j."""
    n = rho.arity
    images: list[Polynomial] = []
    for j, (a, tail) in enumerate(zip(rho.diag, rho.tails), start=1):
        pad = images + [Polynomial.zero(n)] * (n - len(images))
        sub = substitute(tail, pad)
        images.append((Polynomial.var(n, j) - sub) * (1 / a))
    inv = TriangularMap.from_map(PolyMap(tuple(images)))
    assert inv is not None
    return inv


@dataclass(frozen=True)
class CommuteResult:
    commutes: bool
    index: int | None = None
    difference: Polynomial | None = None

    def __bool__(self) -> bool:
        return self.commutes


def commute_check(rho: PolyMap | TriangularMap, d: Derivation) -> CommuteResult:
    """Compare d(rho(x_j)) with rho(d(x_j)); report the first mismatch."""
    if isinstance(rho, TriangularMap):
        rho = rho.as_map()
    if rho.arity != d.arity:
        raise ArityError(f"arity mismatch: map {rho.arity}, derivation {d.arity}")
    for j, (img, h) in enumerate(zip(rho.images, d.images), start=1):
        diff = apply(d, img) - rho(h)
        if not diff.is_zero():
            return CommuteResult(False, j, diff)
    return CommuteResult(True)


def translation_samples_needed(d: Derivation) -> int:
    """Sample count that certifies the x_n-translation identity for every c.

    The commutator entries are polynomials in c of degree at most
    max_j deg_{x_n} d(x_j).
    """
    n = d.arity
    return max(max(degree_in(h, n), 0) for h in d.images) + 1


def translation_family_check(d: Derivation, samples: Iterable) -> bool:
    return all(commute_check(PolyMap.translation(d.arity, c), d) for c in samples)


def _coefficient_solutions(sol, allowed: Sequence[Fraction]) -> Iterable[list[Fraction]]:
    """Solutions of a solved system whose coordinates all lie in ``allowed``."""
    allowed_set = set(allowed)
    free_cols = [c for c in range(len(sol.particular)) if c not in set(sol.pivots)]
    for values in itertools.product(allowed, repeat=len(free_cols)):
        x = list(sol.particular)
        for t, vec in zip(values, sol.nullspace):
            if t:
                x = [a + t * b for a, b in zip(x, vec)]
        if all(v in allowed_set for v in x):
            yield x


def enumerate_commuting_triangular(d: Derivation, tail_degree: int, coeffs: Iterable) -> list[TriangularMap]:
    """Every triangular map over the finite grid that commutes with d.

    Diagonal entries range over the nonzero members of ``coeffs``; each tail
    coefficient ranges over ``coeffs``; tails have total degree <= tail_degree.
    Variables are assigned in order.  When d(x_j) only involves earlier
    variables the tail of x_j is obtained by an exact linear solve (the
    equation is linear in its coefficients); otherwise the grid is scanned
    and each commutation equation is tested once its variables are assigned.
    """
    if tail_degree < 0:
        raise ValueError("tail degree must be nonnegative")
    n = d.arity
    values = sorted({Fraction(c) for c in coeffs})
    alphas = [a for a in values if a != 0]
    tail_monos = [monomials_upto(n, tail_degree, range(1, j)) for j in range(1, n + 1)]
    needs = [h.variables() | {j} for j, h in enumerate(d.images, start=1)]
    # equation j can be checked right after variable ready_at[j] is assigned
    ready_at = [max(v) for v in needs]
    linear = [max(h.variables(), default=0) < j for j, h in enumerate(d.images, start=1)]
    found: list[TriangularMap] = []

    def equation_holds(j: int, images: list[Polynomial]) -> bool:
        full = images + [Polynomial.zero(n)] * (n - len(images))
        return apply(d, images[j - 1]) == substitute(d.images[j - 1], full)

    def candidates(j: int, images: list[Polynomial]):
        x = Polynomial.var(n, j)
        monos = tail_monos[j - 1]
        basis = [Polynomial.monomial(m) for m in monos]
        if linear[j - 1]:
            full = images + [Polynomial.zero(n)] * (n - len(images))
            rhs_base = substitute(d.images[j - 1], full)
            dbasis = [apply(d, b) for b in basis]
            for a in alphas:
                target = rhs_base - d.images[j - 1] * a
                system = LinearSystem(monos)
                rows: dict = {}
                for col, img in enumerate(dbasis):
                    for mono, c in img.items():
                        rows.setdefault(mono, {})[col] = c
                for mono, _ in target.items():
                    rows.setdefault(mono, {})
                for mono in sorted(rows):
                    system.add_row(rows[mono], target.coeff(mono))
                sol = solve_linear(system)
                if not sol.consistent:
                    continue
                for cs in _coefficient_solutions(sol, values):
                    yield a, Polynomial(n, dict(zip(monos, cs))), x * a
        else:
            for a in alphas:
                for cs in itertools.product(values, repeat=len(monos)):
                    yield a, Polynomial(n, dict(zip(monos, cs))), x * a

    def search(j: int, diag: list, tails: list, images: list[Polynomial]):
        if j > n:
            found.append(TriangularMap(tuple(diag), tuple(tails)))
            return
        checks = [e for e in range(1, n + 1) if ready_at[e - 1] == j and not (e == j and linear[j - 1])]
        for a, tail, ax in candidates(j, images):
            nxt = images + [ax + tail]
            if all(equation_holds(e, nxt) for e in checks):
                search(j + 1, diag + [a], tails + [tail], nxt)

    search(1, [], [], [])
    for rho in found:
        if not commute_check(rho, d):
            raise AssertionError(f"enumerated map {rho} does not commute")
    return found
