import itertools
import random

import pytest

from derivbench.deriv import Derivation
from derivbench.poly import Polynomial
from derivbench.starcone import (
    ZeroImageError,
    candidate_matrices,
    check_star,
    exists_star_matrix,
    is_cone_witness,
    parse_matrix,
)
from helpers import brute_cone_witness

x1, x2 = Polynomial.var(2, 1), Polynomial.var(2, 2)


def agrees_with_brute_force(a):
    verdict = check_star(a)
    brute = brute_cone_witness(a)
    assert verdict.holds == (brute is None), (a, verdict, brute)
    if not verdict.holds:
        assert is_cone_witness(a, verdict.witness)


@pytest.mark.parametrize("a", [tuple(zip(*[iter(e)] * 2)) for e in itertools.product(range(4), repeat=4)])
def test_all_small_2x2(a):
    agrees_with_brute_force(a)


def test_random_3x3():
    rng = random.Random(0)
    for _ in range(100):
        agrees_with_brute_force([[rng.randint(0, 3) for _ in range(3)] for _ in range(3)])


def test_family_matrices_hold():
    for m1 in range(1, 11):
        for m2 in range(1, 11):
            assert check_star([[m2, 1], [m1, 0]]).holds
            assert check_star([[1, m2], [m1, 0]]).holds
    for m in range(2, 11):
        assert check_star([[m, 1], [m - 1, 0]]).holds


def test_degenerate_matrices_fail_with_unit_witness():
    assert check_star([[1, 0], [0, 1]]).witness == (1, 0)
    assert check_star([[0, 0], [0, 0]]).witness == (1, 0)
    assert check_star([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).witness == (1, 0, 0)


def test_witness_is_primitive():
    v = check_star([[0, 2], [0, 0]])
    assert not v.holds and is_cone_witness([[0, 2], [0, 0]], v.witness)


def test_candidates_and_ties():
    # top-degree ties in d(x1) give two matrices; only the second satisfies the condition
    d = Derivation((x1**3 + x1**2 * x2, x1))
    cands = [c.entries for c in candidate_matrices(d)]
    assert cands == [((3, 0), (1, 0)), ((2, 1), (1, 0))]
    assert exists_star_matrix(d).entries == ((2, 1), (1, 0))


def test_cor29_matrix():
    d = Derivation((1 + x1**2 * x2, x1**3))
    assert str(exists_star_matrix(d)) == "2 1; 3 0"


def test_linear_derivation_has_no_star_matrix():
    assert exists_star_matrix(Derivation((x1, x2))) is None


def test_zero_image():
    with pytest.raises(ZeroImageError):
        candidate_matrices(Derivation((x1, Polynomial.zero(2))))


def test_parse_matrix():
    assert parse_matrix("2 1; 3 0") == ((2, 1), (3, 0))
    for bad in ("2 1; 3", "a b; c d", "-1 0; 0 0", ""):
        with pytest.raises(ValueError):
            parse_matrix(bad)
