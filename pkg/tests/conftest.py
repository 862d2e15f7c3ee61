"""Shared fixtures and independent oracles used across the suite.

The oracles here deliberately avoid the code paths they check: membership by
raw divisibility enumeration, the monomial shortcut for the d-operators, and
colon/intersection semantics straight from the definitions.
"""

import itertools
import random

import pytest

from golodkit.monomial import MonomialIdeal, monomials_of_degree
from golodkit.ring import GF, DEFAULT_TEST_PRIME, PolyRing, QQ, mono_deg, mono_support


@pytest.fixture
def rng():
    return random.Random(20260810)


def ring_q(n, prefix="x"):
    return PolyRing(QQ, [f"{prefix}{i}" for i in range(1, n + 1)])


def ring_p(n, p=DEFAULT_TEST_PRIME, prefix="x"):
    return PolyRing(GF(p), [f"{prefix}{i}" for i in range(1, n + 1)])


def mono_d_rule(ring, e, r):
    """Monomial shortcut: d^r(u) = u/x_r when r is the least variable of u,
    otherwise zero. Kept as an oracle independent of the quotient path."""
    support = mono_support(e)
    if not support or support[0] != r:
        return ring.zero()
    out = list(e)
    out[r - 1] -= 1
    return ring.monomial(out)


def members_upto(I: MonomialIdeal, maxdeg):
    """All monomials of I with total degree <= maxdeg, by raw divisibility."""
    out = set()
    for d in range(maxdeg + 1):
        for e in monomials_of_degree(I.ring.n, d):
            if any(all(g[i] <= e[i] for i in range(len(e))) for g in I.gens):
                out.add(e)
    return out


def ideals_equal_upto(A: MonomialIdeal, B: MonomialIdeal, maxdeg) -> bool:
    return members_upto(A, maxdeg) == members_upto(B, maxdeg)


def brute_colon_members(A: MonomialIdeal, B: MonomialIdeal, maxdeg):
    """{u : uv in A for every generator v of B}, enumerated directly."""
    out = set()
    for d in range(maxdeg + 1):
        for e in monomials_of_degree(A.ring.n, d):
            if all(
                A.contains(tuple(x + y for x, y in zip(e, v))) for v in B.gens
            ):
                out.add(e)
    return out


def box_monomials(limits):
    """Every exponent tuple below the componentwise limits (inclusive)."""
    return itertools.product(*(range(b + 1) for b in limits))


def max_total_degree(I: MonomialIdeal) -> int:
    return max(mono_deg(e) for e in I.gens)
