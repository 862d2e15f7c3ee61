"""Seeded random instances for the property suites and the CLI fixtures."""

from __future__ import annotations

import random

from .dcalc import Permutation
from .monomial import MonomialIdeal, minimal_gens
from .ring import PolyRing, Polynomial


def random_monomial(rng: random.Random, n: int, max_deg: int, min_deg: int = 1):
    deg = rng.randint(min_deg, max_deg)
    e = [0] * n
    for _ in range(deg):
        e[rng.randrange(n)] += 1
    return tuple(e)


def random_monomial_ideal(
    rng: random.Random,
    ring: PolyRing,
    max_gens: int = 4,
    max_deg: int = 4,
    min_deg: int = 1,
) -> MonomialIdeal:
    count = rng.randint(1, max_gens)
    gens = [random_monomial(rng, ring.n, max_deg, min_deg) for _ in range(count)]
    return MonomialIdeal(ring, minimal_gens(gens))


def random_polynomial(
    rng: random.Random,
    ring: PolyRing,
    max_terms: int = 5,
    max_deg: int = 4,
    proper: bool = True,
) -> Polynomial:
    """Nonzero polynomial; with proper=True the constant term stays zero."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            e = random_monomial(rng, ring.n, max_deg, 1 if proper else 0)
            c = rng.randint(-9, 9)
            if c:
                terms[e] = terms.get(e, 0) + c
        f = ring.poly(terms)
        if not f.is_zero():
            return f


def random_permutation(rng: random.Random, n: int) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(images)
