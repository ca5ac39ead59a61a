import pytest
from hypothesis import given

from derivbench.deriv import ChainError, DegreeCap, Derivation, ExtensionChain, apply, extend, restricts_to
from derivbench.poly import Polynomial, partial
from helpers import PROPERTY, derivations, polys, rationals

x1, x2 = Polynomial.var(2, 1), Polynomial.var(2, 2)
COR29 = Derivation((1 + x1**2 * x2, x1**3))


@PROPERTY
@given(derivations(), polys(), polys())
def test_leibniz(d, f, g):
    assert apply(d, f * g) == g * apply(d, f) + f * apply(d, g)


@PROPERTY
@given(derivations(), polys(), polys(), rationals, rationals)
def test_linearity(d, f, g, a, b):
    assert apply(d, f * a + g * b) == apply(d, f) * a + apply(d, g) * b
    assert apply(d, Polynomial.const(3, a)) == 0


@PROPERTY
@given(polys())
def test_coordinate_derivation_is_partial(f):
    for j in (1, 2, 3):
        images = tuple(Polynomial.const(3, int(k == j)) for k in (1, 2, 3))
        assert apply(Derivation(images), f) == partial(f, j)


def test_generators_map_to_images():
    assert COR29(x1) == 1 + x1**2 * x2
    assert COR29(x2) == x1**3
    assert COR29.image(2) == x1**3


def test_extension_images_and_restriction():
    x = [Polynomial.var(4, j) for j in (1, 2, 3, 4)]
    chain = ExtensionChain(COR29, (Polynomial.var(2, 2), Polynomial.var(3, 3) ** 2))
    dn = extend(chain)
    assert dn.arity == 4
    assert dn.images[2] == x[1]
    assert dn.images[3] == x[2] ** 2
    assert restricts_to(dn, COR29)
    assert restricts_to(dn, chain.partial_extension(1))
    assert not restricts_to(dn, Derivation((x1, x2)))


def test_chain_rejections():
    with pytest.raises(ChainError):
        ExtensionChain(COR29, (Polynomial.const(2, 1),))
    with pytest.raises(ChainError):
        ExtensionChain(COR29, (x1,))  # must be univariate in x2
    with pytest.raises(ChainError):
        ExtensionChain(COR29, (x2**2,), DegreeCap(1))
    with pytest.raises(ChainError):
        ExtensionChain(COR29, (Polynomial.var(3, 3),))  # wrong arity
    ExtensionChain(COR29, (Polynomial.const(2, 1),), strict=False)


def test_degree_cap():
    assert DegreeCap().admits(100)
    assert DegreeCap(1).admits(1) and not DegreeCap(1).admits(2)
    assert str(DegreeCap.infinite()) == "inf" and str(DegreeCap(3)) == "3"


def leibniz_reference(d, f):
    """Term-recursive: d(x_j * m) = d(x_j) * m + x_j * d(m)."""
    n = d.arity
    total = Polynomial.zero(n)
    for mono, c in f.items():
        acc, done = Polynomial.zero(n), Polynomial.const(n, 1)
        for j, e in enumerate(mono, start=1):
            for _ in range(e):
                acc = acc * Polynomial.var(n, j) + done * d.images[j - 1]
                done = done * Polynomial.var(n, j)
        total = total + acc * c
    return total


@PROPERTY
@given(derivations(), polys())
def test_chain_rule_matches_term_recursion(d, f):
    assert apply(d, f) == leibniz_reference(d, f)
