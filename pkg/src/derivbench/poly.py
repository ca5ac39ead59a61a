"""Sparse multivariate polynomials over Q.

Variables are positional: ``x1 .. xn`` correspond to indices ``1 .. n``.
Monomials are exponent tuples; coefficients are ``fractions.Fraction``.
Terms are kept in graded-lex order (x1 > x2 > ... > xn), highest first,
which makes equality and hashing independent of construction order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]

# Degree of the zero polynomial.  Never -1.
NEG_INF = float("-inf")


class ArityError(ValueError):
    pass


def grlex_key(m: Monomial) -> tuple:
    return (sum(m), m)


def _check_index(arity: int, j: int) -> None:
    if not 1 <= j <= arity:
        raise IndexError(f"variable index {j} out of range 1..{arity}")


class Polynomial:
    """Immutable polynomial in ``arity`` variables with rational coefficients."""

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[Monomial, Scalar] | Iterable = ()):
        if arity < 1:
            raise ArityError("arity must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for mono, c in items:
            mono = tuple(mono)
            if len(mono) != arity or any(e < 0 for e in mono):
                raise ArityError(f"bad monomial {mono} for arity {arity}")
            acc[mono] = acc.get(mono, 0) + Fraction(c)
        ordered = sorted((m for m, c in acc.items() if c != 0), key=grlex_key, reverse=True)
        self.arity = arity
        self._terms = {m: acc[m] for m in ordered}
        self._hash = None

    # construction helpers

    @classmethod
    def _raw(cls, arity: int, terms: dict) -> Polynomial:
        # terms already pruned of zeros; only ordering is restored
        p = cls.__new__(cls)
        p.arity = arity
        p._terms = {m: terms[m] for m in sorted(terms, key=grlex_key, reverse=True)}
        p._hash = None
        return p

    @classmethod
    def zero(cls, arity: int) -> Polynomial:
        return cls(arity)

    @classmethod
    def const(cls, arity: int, c: Scalar) -> Polynomial:
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def var(cls, arity: int, j: int) -> Polynomial:
        _check_index(arity, j)
        mono = tuple(1 if k == j - 1 else 0 for k in range(arity))
        return cls(arity, {mono: 1})

    @classmethod
    def monomial(cls, mono: Sequence[int], c: Scalar = 1) -> Polynomial:
        return cls(len(mono), {tuple(mono): c})

    # queries

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._terms)

    def coeff(self, mono: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coeff((0,) * self.arity)

    def variables(self) -> set[int]:
        """1-based indices of variables that actually occur."""
        return {k + 1 for m in self._terms for k, e in enumerate(m) if e}

    def leading(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = next(iter(self._terms))
        return m, self._terms[m]

    # arithmetic

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.arity != self.arity:
                raise ArityError(f"arity mismatch: {self.arity} vs {other.arity}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(self.arity, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.arity, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.arity, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial.zero(self.arity)
            return Polynomial._raw(self.arity, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw(self.arity, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.const(self.arity, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.arity, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.arity == other.arity and list(self._terms.items()) == list(other._terms.items())

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, tuple(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self.arity}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    # ring-shape changes

    def lift(self, arity: int) -> Polynomial:
        """Embed into a ring with more variables (zero-padded exponents)."""
        if arity < self.arity:
            raise ArityError("cannot lift to a smaller ring")
        pad = (0,) * (arity - self.arity)
        return Polynomial._raw(arity, {m + pad: c for m, c in self._terms.items()})

    def truncate_arity(self, arity: int) -> Polynomial:
        """Inverse of lift; fails if a dropped variable occurs."""
        if any(any(m[arity:]) for m in self._terms):
            raise ArityError(f"polynomial involves variables beyond x{arity}")
        return Polynomial._raw(arity, {m[:arity]: c for m, c in self._terms.items()})


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.arity != g.arity:
        raise ArityError(f"arity mismatch: {f.arity} vs {g.arity}")
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.arity != g.arity:
        raise ArityError(f"arity mismatch: {f.arity} vs {g.arity}")
    return f * g


def partial(f: Polynomial, j: int) -> Polynomial:
    """Formal derivative with respect to x_j (1-based)."""
    _check_index(f.arity, j)
    k = j - 1
    out = {}
    for m, c in f.items():
        e = m[k]
        if e:
            out[m[:k] + (e - 1,) + m[k + 1:]] = c * e
    return Polynomial._raw(f.arity, out)


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Evaluate f at ``x_j -> images[j-1]``."""
    if len(images) != f.arity:
        raise ArityError(f"expected {f.arity} images, got {len(images)}")
    arities = {g.arity for g in images}
    if len(arities) != 1:
        raise ArityError("images must share one arity")
    (target,) = arities
    powers: list[dict[int, Polynomial]] = [{} for _ in images]

    def power(k: int, e: int) -> Polynomial:
        cache = powers[k]
        if e not in cache:
            cache[e] = images[k] ** e
        return cache[e]

    result = Polynomial.zero(target)
    for m, c in f.items():
        term = Polynomial.const(target, c)
        for k, e in enumerate(m):
            if e:
                term = term * power(k, e)
        result = result + term
    return result


def degree_in(f: Polynomial, j: int):
    _check_index(f.arity, j)
    if f.is_zero():
        return NEG_INF
    return max(m[j - 1] for m, _ in f.items())


def total_degree(f: Polynomial):
    if f.is_zero():
        return NEG_INF
    return max(sum(m) for m, _ in f.items())


def top_monomials(f: Polynomial) -> list[tuple[Monomial, Fraction]]:
    """Terms of maximal total degree, in graded-lex order (highest first)."""
    if f.is_zero():
        raise ValueError("zero polynomial has no top-degree part")
    deg = total_degree(f)
    return [(m, c) for m, c in f.items() if sum(m) == deg]


def monomials_upto(arity: int, degree: int, variables: Iterable[int] | None = None) -> list[Monomial]:
    """All monomials of total degree <= degree, graded-lex ascending.

    ``variables`` restricts support to the given 1-based indices.
    """
    allowed = sorted(set(variables)) if variables is not None else list(range(1, arity + 1))
    out: list[Monomial] = []

    def rec(pos: int, left: int, acc: list[int]):
        if pos == len(allowed):
            mono = [0] * arity
            for idx, e in zip(allowed, acc):
                mono[idx - 1] = e
            out.append(tuple(mono))
            return
        for e in range(left + 1):
            acc.append(e)
            rec(pos + 1, left - e, acc)
            acc.pop()

    if degree >= 0:
        rec(0, degree, [])
    out.sort(key=grlex_key)
    return out


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: Polynomial, names: Sequence[str] | None = None) -> str:
    """Canonical text form, re-parseable by ``derivbench.dsl.parse_polynomial``."""
    if names is None:
        names = [f"x{k}" for k in range(1, f.arity + 1)]
    if f.is_zero():
        return "0"
    out = []
    for idx, (m, c) in enumerate(f.items()):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(m, names)
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
