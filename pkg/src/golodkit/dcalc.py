"""The d^r difference-quotient operators, their permuted twists and d_sigma(I).

d^r(f) takes the terms of f supported in x_r..x_n that involve x_r and divides
them by x_r. The operators are uniquely pinned by the reconstruction rule
f = sum_r d^r(f) x_r together with d^r(f) containing no variable below x_r.
"""

from __future__ import annotations

from .errors import PreconditionError
from .monomial import MonomialIdeal
from .ring import (
    Polynomial,
    exact_div_var,
    require_proper,
    zero_prefix_sub,
)


class Permutation:
    """A bijection of {1..n}, stored as the image sequence sigma(1..n)."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise PreconditionError(f"{images} is not a permutation of 1..{n}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def reversal(cls, n: int) -> "Permutation":
        return cls(range(n, 0, -1))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, im in enumerate(self.images, start=1):
            inv[im - 1] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(im == i for i, im in enumerate(self.images, start=1))

    def __eq__(self, other):
        return isinstance(other, Permutation) and other.images == self.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return ",".join(str(i) for i in self.images)


def relabel(f: Polynomial, sigma: Permutation) -> Polynomial:
    """Substitute x_j -> x_{sigma(j)} in f."""
    if sigma.n != f.ring.n:
        raise PreconditionError("permutation size does not match the ring")
    out = {}
    for e, c in f.terms.items():
        new = [0] * len(e)
        for j, x in enumerate(e):
            new[sigma(j + 1) - 1] = x
        out[tuple(new)] = c
    return Polynomial(f.ring, out)


def relabel_exps(e, sigma: Permutation):
    new = [0] * len(e)
    for j, x in enumerate(e):
        new[sigma(j + 1) - 1] = x
    return tuple(new)


def d_op(f: Polynomial, r: int) -> Polynomial:
    """d^r(f) for f in the maximal ideal, 1 <= r <= n."""
    require_proper(f)
    numerator = zero_prefix_sub(f, r) - zero_prefix_sub(f, r + 1)
    if numerator.is_zero():
        return f.ring.zero()
    return exact_div_var(numerator, r)


def d_sigma_op(f: Polynomial, r: int, sigma: Permutation) -> Polynomial:
    """The sigma-twisted operator: relabel by sigma^{-1}, apply d^r, relabel back."""
    if sigma.is_identity():
        return d_op(f, r)
    return relabel(d_op(relabel(f, sigma.inverse()), r), sigma)


def d_all(f: Polynomial) -> list[Polynomial]:
    """[d^1(f), ..., d^n(f)]."""
    return [d_op(f, r) for r in range(1, f.ring.n + 1)]


def d_ideal(ideal, sigma: Permutation | None = None):
    """The ideal generated by all d_sigma^r of the generators.

    Accepts a MonomialIdeal (result is again a MonomialIdeal) or any object
    with .ring and .gens yielding proper polynomials (result is of the same
    kind, built through its .replace_gens hook). Always contains the input.
    """
    if isinstance(ideal, MonomialIdeal):
        ring = ideal.ring
        sigma = sigma or Permutation.identity(ring.n)
        gens = []
        for e in ideal.gens:
            f = ring.monomial(e)
            for r in range(1, ring.n + 1):
                g = d_sigma_op(f, r, sigma)
                if not g.is_zero():
                    (exp,) = g.terms
                    gens.append(exp)
        return MonomialIdeal.from_gens(ring, gens)
    ring = ideal.ring
    sigma = sigma or Permutation.identity(ring.n)
    gens = []
    for f in ideal.gens:
        for r in range(1, ring.n + 1):
            g = d_sigma_op(f, r, sigma)
            if not g.is_zero() and g not in gens:
                gens.append(g)
    return ideal.replace_gens(gens)
