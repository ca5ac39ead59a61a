"""Shared strategies and brute-force reference implementations."""

import itertools
from fractions import Fraction
from pathlib import Path

from hypothesis import settings
from hypothesis import strategies as st

from derivbench.deriv import Derivation, apply
from derivbench.isotropy import PolyMap, TriangularMap, commute_check
from derivbench.poly import Polynomial, monomials_upto

FIXTURES = Path(__file__).parent / "fixtures"

# pinned: the same 200 cases on every run
PROPERTY = settings(max_examples=200, derandomize=True, deadline=None)

ARITY = 3

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def polys(arity=ARITY, max_exp=3, max_terms=5):
    mono = st.tuples(*[st.integers(0, max_exp)] * arity)
    return st.dictionaries(mono, rationals, max_size=max_terms).map(lambda t: Polynomial(arity, t))


def derivations(arity=ARITY):
    return st.lists(polys(arity, 2, 3), min_size=arity, max_size=arity).map(lambda im: Derivation(tuple(im)))


def evaluate(f: Polynomial, point) -> Fraction:
    total = Fraction(0)
    for mono, c in f.items():
        term = Fraction(c)
        for x, e in zip(point, mono):
            term *= Fraction(x) ** e
        total += term
    return total


def brute_cone_witness(a, limit=10):
    """Smallest-sum nonzero integer y in [0, limit]^n with (A - I) y <= 0, else None."""
    n = len(a)
    for y in sorted(itertools.product(range(limit + 1), repeat=n), key=lambda v: (sum(v), v)):
        if not any(y):
            continue
        if all(sum(a[r][c] * y[c] for c in range(n)) <= y[r] for r in range(n)):
            return y
    return None


def brute_commuting_triangular(d: Derivation, tail_degree: int, coeffs):
    """Every grid triangular map, tested one by one."""
    n = d.arity
    values = sorted({Fraction(c) for c in coeffs})
    alphas = [v for v in values if v]
    per_var = []
    for j in range(1, n + 1):
        monos = monomials_upto(n, tail_degree, range(1, j))
        opts = []
        for a in alphas:
            for cs in itertools.product(values, repeat=len(monos)):
                opts.append((a, Polynomial(n, dict(zip(monos, cs)))))
        per_var.append(opts)
    out = []
    for choice in itertools.product(*per_var):
        rho = TriangularMap(tuple(a for a, _ in choice), tuple(t for _, t in choice))
        if commute_check(rho, d):
            out.append(rho)
    return out


def map_key(rho):
    if isinstance(rho, TriangularMap):
        rho = rho.as_map()
    return tuple(str(p) for p in rho.images)


__all__ = [
    "FIXTURES", "PROPERTY", "ARITY", "rationals", "polys", "derivations", "evaluate",
    "brute_cone_witness", "brute_commuting_triangular", "map_key", "apply", "PolyMap",
]


# criterion number -> (passed, title, seconds); filled by the acceptance suite
ACCEPTANCE: dict = {}
