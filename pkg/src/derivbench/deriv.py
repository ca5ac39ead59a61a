"""k-derivations of polynomial rings and the chain extension construction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .poly import ArityError, Polynomial, degree_in, partial


class ChainError(ValueError):
    pass


@dataclass(frozen=True)
class Derivation:
    """A derivation given by its generator images: ``images[j-1] = d(x_j)``."""

    images: tuple[Polynomial, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if not images:
            raise ArityError("a derivation needs at least one variable")
        n = len(images)
        for k, h in enumerate(images):
            if h.arity != n:
                raise ArityError(f"image of x{k + 1} has arity {h.arity}, expected {n}")
        object.__setattr__(self, "images", images)

    @property
    def arity(self) -> int:
        return len(self.images)

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply(self, f)

    def image(self, j: int) -> Polynomial:
        return self.images[j - 1]

    @classmethod
    def from_images(cls, images: Sequence[Polynomial]) -> Derivation:
        return cls(tuple(images))

    def lift(self, arity: int) -> Derivation:
        """Same derivation on a larger ring, killing the new variables."""
        if arity < self.arity:
            raise ArityError("cannot lift to a smaller ring")
        extra = (Polynomial.zero(arity),) * (arity - self.arity)
        return Derivation(tuple(h.lift(arity) for h in self.images) + extra)


def apply(d: Derivation, f: Polynomial) -> Polynomial:
    """d(f) computed as sum_j df/dx_j * d(x_j)."""
    if f.arity != d.arity:
        raise ArityError(f"arity mismatch: derivation {d.arity}, polynomial {f.arity}")
    out = Polynomial.zero(d.arity)
    for j, h in enumerate(d.images, start=1):
        if h.is_zero():
            continue
        df = partial(f, j)
        if not df.is_zero():
            out = out + df * h
    return out


def is_univariate_in(p: Polynomial, j: int) -> bool:
    return p.variables() <= {j}


@dataclass(frozen=True)
class DegreeCap:
    """Bound on deg g_i; ``bound=None`` means unbounded."""

    bound: int | None = None

    def __post_init__(self):
        if self.bound is not None and self.bound < 0:
            raise ValueError("degree cap must be nonnegative")

    @classmethod
    def infinite(cls) -> DegreeCap:
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.bound is not None

    def admits(self, degree) -> bool:
        return self.bound is None or degree <= self.bound

    def __str__(self) -> str:
        return "inf" if self.bound is None else str(self.bound)


@dataclass(frozen=True)
class ExtensionChain:
    """Base derivation on x1..xi plus links g_i(x_i), ..., g_{n-1}(x_{n-1}).

    ``links[t]`` lives in the base ring's variable count plus ``t`` and must be
    a non-constant polynomial in ``x_{i+t}`` alone.  ``strict=False`` allows
    constant links (and the zero link); the classification engine refuses
    such chains.
    """

    base: Derivation
    links: tuple[Polynomial, ...] = ()
    cap: DegreeCap = field(default_factory=DegreeCap)
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(self.links))
        i = self.base.arity
        for t, g in enumerate(self.links):
            var = i + t
            if g.arity != var:
                raise ChainError(f"link {t} must live in {var} variables, got arity {g.arity}")
            if not is_univariate_in(g, var):
                raise ChainError(f"link {t} must be a polynomial in x{var} only")
            if self.strict and g.is_constant():
                raise ChainError(f"link {t} is constant; links must be non-constant in x{var}")
        if self.links and not self.cap.admits(degree_in(self.links[0], i)):
            raise ChainError(
                f"deg_x{i} of the first link is {degree_in(self.links[0], i)}, exceeding the cap {self.cap}"
            )

    @property
    def base_arity(self) -> int:
        return self.base.arity

    @property
    def arity(self) -> int:
        return self.base.arity + len(self.links)

    def partial_extension(self, t: int) -> Derivation:
        """d_{i+t}: the base extended by the first t links."""
        return extend(ExtensionChain(self.base, self.links[:t], self.cap, self.strict))


def extend(chain: ExtensionChain) -> Derivation:
    n = chain.arity
    images = [h.lift(n) for h in chain.base.images]
    images.extend(g.lift(n) for g in chain.links)
    return Derivation(tuple(images))


def restricts_to(dn: Derivation, di: Derivation, i: int | None = None) -> bool:
    """True when the first i images of dn involve only x1..xi and equal di."""
    i = di.arity if i is None else i
    if di.arity != i or i > dn.arity:
        return False
    for h_n, h_i in zip(dn.images[:i], di.images):
        if any(v > i for v in h_n.variables()):
            return False
        if h_n != h_i.lift(dn.arity):
            return False
    return True

