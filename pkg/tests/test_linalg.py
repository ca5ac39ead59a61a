import random
from fractions import Fraction

import pytest

from derivbench.linalg import LinearSystem, echelon, solve_linear


def naive_rank(rows):
    """Textbook Gauss-Jordan over Fraction."""
    m = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((k for k in range(rank, len(m)) if m[k][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for k in range(len(m)):
            if k != rank and m[k][c]:
                f = m[k][c] / m[rank][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[rank])]
        rank += 1
    return rank


def random_system(rng, nrows, ncols):
    system = LinearSystem(list(range(ncols)))
    dense = []
    for _ in range(nrows):
        row = {c: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for c in range(ncols) if rng.random() < 0.6}
        b = Fraction(rng.randint(-4, 4), rng.randint(1, 2))
        system.add_row(row, b)
        dense.append([row.get(c, 0) for c in range(ncols)] + [b])
    return system, dense


@pytest.mark.parametrize("seed", range(200))
def test_random_systems_against_naive_elimination(seed):
    rng = random.Random(seed)
    system, dense = random_system(rng, rng.randint(1, 6), rng.randint(1, 6))
    ncols = len(system.unknowns)
    sol = solve_linear(system)
    rank_a = naive_rank([r[:ncols] for r in dense])
    rank_ab = naive_rank(dense)
    assert sol.rank == rank_a
    assert sol.consistent == (rank_a == rank_ab)
    assert len(sol.nullspace) == ncols - rank_a
    if sol.consistent:
        assert all(v == 0 for v in system.residual(sol.particular))
    homogeneous = LinearSystem(system.unknowns, system.rows, [Fraction(0)] * len(system.rows))
    for vec in sol.nullspace:
        assert all(v == 0 for v in homogeneous.residual(vec))
    if sol.nullspace:
        assert naive_rank(sol.nullspace) == len(sol.nullspace)


def test_inconsistent_pair():
    s = LinearSystem(["a", "b"])
    s.add_row({0: 1, 1: 1}, 1)
    s.add_row({0: 2, 1: 2}, 3)
    assert not solve_linear(s).consistent


def test_free_variables_default_to_zero():
    s = LinearSystem(["a", "b", "c"])
    s.add_row({0: 1, 2: 2}, 4)
    sol = solve_linear(s)
    assert sol.particular == [4, 0, 0]
    assert sol.pivots == [0]


def test_echelon_pivots():
    m, piv = echelon([[0, 2, 4], [0, 1, 2], [3, 0, 1]], 3)
    assert piv == [0, 1]


def test_bad_column():
    with pytest.raises(IndexError):
        LinearSystem(["a"]).add_row({1: 1})
