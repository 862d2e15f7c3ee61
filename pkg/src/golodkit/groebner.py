"""Buchberger's algorithm, multivariate division and ideal containment.

Desk-scale implementation: normal pair selection, both classical pair
criteria, a global reduction-step budget, and reduced bases for canonical
output. Monomial inputs short-circuit to divisibility tests.
"""

from __future__ import annotations

from .errors import (
    NonProperElementError,
    PreconditionError,
    ResourceLimitError,
)
from .monomial import MonomialIdeal
from .ring import GREVLEX, Polynomial, mono_div, mono_divides, mono_lcm, mono_mul

DEFAULT_STEP_BUDGET = 10**6


class IdealGens:
    """An ideal presented by polynomial generators inside the maximal ideal."""

    __slots__ = ("ring", "gens")

    def __init__(self, ring, gens, strict=True):
        gens = tuple(gens)
        if not gens:
            raise PreconditionError("need at least one generator")
        for k, f in enumerate(gens, start=1):
            if f.ring != ring:
                raise PreconditionError(f"generator {k} lives in {f.ring}, not {ring}")
            if f.is_zero():
                raise PreconditionError(f"generator {k} is zero")
            if strict and f.constant_term() != ring.field.zero:
                raise NonProperElementError(
                    f"generator {k} ({f}) has a nonzero constant term"
                )
        self.ring = ring
        self.gens = gens

    def replace_gens(self, gens) -> "IdealGens":
        """Same-kind ideal with derived generators; properness not re-imposed."""
        return IdealGens(self.ring, gens, strict=False)

    def as_monomial_ideal(self) -> MonomialIdeal | None:
        """The same ideal as a MonomialIdeal when every generator is a term."""
        if all(f.is_monomial() for f in self.gens):
            gens = [e for f in self.gens for e in f.terms]
            return MonomialIdeal.from_gens(self.ring, gens)
        return None

    def is_homogeneous(self) -> bool:
        return all(f.is_homogeneous() for f in self.gens)

    def __eq__(self, other):
        return (
            isinstance(other, IdealGens)
            and other.ring == self.ring
            and other.gens == self.gens
        )

    def __repr__(self):
        return "(" + ", ".join(str(f) for f in self.gens) + ")"


class GroebnerBasis:
    __slots__ = ("ring", "order", "basis", "reduced")

    def __init__(self, ring, order, basis, reduced):
        self.ring = ring
        self.order = order
        self.basis = tuple(basis)
        self.reduced = reduced

    def __repr__(self):
        return "GB{" + ", ".join(str(f) for f in self.basis) + "}"


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self, k=1):
        self.used += k
        if self.used > self.limit:
            raise ResourceLimitError(
                f"reduction budget of {self.limit} steps exhausted"
            )


def division(f: Polynomial, divisors, order=GREVLEX, budget=None):
    """Multivariate division: f = sum q_i g_i + r with no r-term reducible.

    Returns (quotients, remainder). The identity is exact and is what the
    test oracle re-expands.
    """
    ring = f.ring
    quotients = [ring.zero() for _ in divisors]
    remainder = ring.zero()
    p = f
    leads = [g.leading(order) for g in divisors]
    while not p.is_zero():
        e, c = p.leading(order)
        for i, (le, lc) in enumerate(leads):
            if mono_divides(le, e):
                t = mono_div(e, le)
                coeff = c / lc
                quotients[i] = quotients[i] + ring.monomial(t, coeff)
                p = p - divisors[i].mul_monomial(t, coeff)
                if budget is not None:
                    budget.spend()
                break
        else:
            mono = ring.monomial(e, c)
            remainder = remainder + mono
            p = p - mono
    return quotients, remainder


def _monic(f: Polynomial, order) -> Polynomial:
    _, c = f.leading(order)
    return f * (f.ring.field.one / c)


def buchberger(I: IdealGens, order=GREVLEX, budget=DEFAULT_STEP_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis of I with the normal selection strategy."""
    meter = _Budget(budget)
    G = []
    for f in I.gens:
        _, r = division(f, G, order, meter)
        if not r.is_zero():
            G.append(_monic(r, order))

    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    done = set()

    def lead(i):
        return G[i].leading(order)[0]

    while pairs:
        i, j = min(pairs, key=lambda p: order.key(mono_lcm(lead(p[0]), lead(p[1]))))
        pairs.remove((i, j))
        done.add((i, j))
        li, lj = lead(i), lead(j)
        lcm = mono_lcm(li, lj)
        # product criterion: coprime leading monomials
        if lcm == mono_mul(li, lj):
            continue
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if mono_divides(lead(k), lcm):
                p1 = (min(i, k), max(i, k))
                p2 = (min(j, k), max(j, k))
                if p1 not in pairs and p2 not in pairs:
                    skip = True
                    break
        if skip:
            continue
        # all basis elements are monic, so the S-polynomial needs no scaling
        spoly = G[i].mul_monomial(mono_div(lcm, li)) - G[j].mul_monomial(mono_div(lcm, lj))
        _, r = division(spoly, G, order, meter)
        if not r.is_zero():
            G.append(_monic(r, order))
            new = len(G) - 1
            pairs.update((k, new) for k in range(new))

    # minimalize: keep only generators with minimal leading monomials; iterate
    # ascending so every potential divisor is seen first
    keep = []
    for g in sorted(G, key=lambda f: order.key(f.leading(order)[0])):
        lg = g.leading(order)[0]
        if not any(mono_divides(h.leading(order)[0], lg) for h in keep):
            keep.append(g)
    # tail-reduce to the unique reduced basis (leads are untouched by division)
    reduced = []
    for i, g in enumerate(keep):
        _, r = division(g, keep[:i] + keep[i + 1 :], order, meter)
        reduced.append(r)
    reduced.sort(key=lambda f: order.key(f.leading(order)[0]), reverse=True)
    return GroebnerBasis(I.ring, order, reduced, reduced=True)


def normal_form(f: Polynomial, G: GroebnerBasis, budget=DEFAULT_STEP_BUDGET) -> Polynomial:
    """Remainder of f modulo G; zero iff f lies in the ideal of G."""
    if f.ring != G.ring:
        raise PreconditionError("polynomial and basis live in different rings")
    _, r = division(f, G.basis, G.order, _Budget(budget))
    return r


def ideal_subset(A, B, order=GREVLEX, budget=DEFAULT_STEP_BUDGET):
    """Decide A subseteq B; returns (bool, witness generator or None).

    Monomial fast path: divisibility only. Otherwise every generator of A is
    reduced modulo a Groebner basis of B.
    """
    if isinstance(A, MonomialIdeal) and isinstance(B, MonomialIdeal):
        ok, e = A.subset_of(B)
        return ok, (None if ok else A.ring.monomial(e))
    A_polys = A.as_polys() if isinstance(A, MonomialIdeal) else list(A.gens)
    if isinstance(B, MonomialIdeal):
        for f in A_polys:
            if not B.contains_poly(f):
                return False, f
        return True, None
    G = buchberger(B, order, budget)
    for f in A_polys:
        if not normal_form(f, G, budget).is_zero():
            return False, f
    return True, None
