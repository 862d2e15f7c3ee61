"""Monomial ideal calculus: products, intersections, colons, saturation,
associated primes, symbolic powers and integral closure.

Generators are exponent tuples kept divisibility-minimal. The unit ideal is a
legal *result* (generator 1); checker entry points reject it separately.
"""

from __future__ import annotations

import itertools

from .errors import PreconditionError
from .linalg import lp_feasible
from .ring import (
    GREVLEX,
    PolyRing,
    mono_deg,
    mono_div,
    mono_divides,
    mono_gcd,
    mono_lcm,
    mono_mul,
    mono_support,
)


def minimal_gens(gens):
    """Divisibility-minimal subset generating the same ideal."""
    out = []
    for e in sorted(set(gens), key=lambda e: (mono_deg(e), e)):
        if not any(mono_divides(g, e) for g in out):
            out.append(e)
    return out


class MonomialIdeal:
    """A monomial ideal held by its minimal generating set."""

    __slots__ = ("ring", "gens")

    def __init__(self, ring: PolyRing, gens):
        self.ring = ring
        self.gens = tuple(sorted(gens, key=GREVLEX.key, reverse=True))

    @classmethod
    def from_gens(cls, ring: PolyRing, gens) -> "MonomialIdeal":
        gens = [tuple(e) for e in gens]
        for e in gens:
            if len(e) != ring.n or any(x < 0 for x in e):
                raise PreconditionError(f"bad exponent vector {e}")
        return cls(ring, minimal_gens(gens))

    @classmethod
    def from_polys(cls, polys) -> "MonomialIdeal":
        ring = polys[0].ring
        gens = []
        for f in polys:
            if not f.is_monomial():
                raise PreconditionError(f"{f} is not a monomial")
            gens.extend(f.terms)
        return cls.from_gens(ring, gens)

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return bool(self.gens) and mono_deg(self.gens[0]) == 0

    @property
    def is_proper(self) -> bool:
        return not self.is_unit

    def contains(self, e) -> bool:
        return any(mono_divides(g, e) for g in self.gens)

    def contains_poly(self, f) -> bool:
        """Membership of a polynomial: every term must lie in the ideal."""
        return all(self.contains(e) for e in f.terms)

    def subset_of(self, other: "MonomialIdeal"):
        """(True, None) or (False, witness exponent tuple)."""
        for e in self.gens:
            if not other.contains(e):
                return False, e
        return True, None

    def as_polys(self):
        return [self.ring.monomial(e) for e in self.gens]

    def max_exps(self):
        if not self.gens:
            return (0,) * self.ring.n
        return tuple(max(g[i] for g in self.gens) for i in range(self.ring.n))

    def is_artinian(self) -> bool:
        """True iff some pure power of every variable lies in the ideal."""
        return all(
            any(mono_support(g) == (i,) for g in self.gens)
            for i in range(1, self.ring.n + 1)
        )

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and other.ring == self.ring
            and other.gens == self.gens
        )

    def __hash__(self):
        return hash((self.ring, self.gens))

    def __repr__(self):
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(str(self.ring.monomial(e)) for e in self.gens) + ")"


def unit_ideal(ring: PolyRing) -> MonomialIdeal:
    return MonomialIdeal(ring, [(0,) * ring.n])


def maximal_ideal(ring: PolyRing) -> MonomialIdeal:
    gens = []
    for i in range(ring.n):
        e = [0] * ring.n
        e[i] = 1
        gens.append(tuple(e))
    return MonomialIdeal(ring, gens)


def _same_ring(A: MonomialIdeal, B: MonomialIdeal):
    if A.ring != B.ring:
        raise PreconditionError("ideals live in different rings")


# ---------------------------------------------------------------------------
# basic operations


def min_gens(ring: PolyRing, gens) -> MonomialIdeal:
    return MonomialIdeal.from_gens(ring, gens)


def mi_product(A: MonomialIdeal, B: MonomialIdeal) -> MonomialIdeal:
    _same_ring(A, B)
    return MonomialIdeal(A.ring, minimal_gens(
        [mono_mul(a, b) for a in A.gens for b in B.gens]))


def mi_power(A: MonomialIdeal, k: int) -> MonomialIdeal:
    if k < 1:
        raise PreconditionError("power must be >= 1")
    out = A
    for _ in range(k - 1):
        out = mi_product(out, A)
    return out


def mi_intersect(A: MonomialIdeal, B: MonomialIdeal) -> MonomialIdeal:
    _same_ring(A, B)
    return MonomialIdeal(A.ring, minimal_gens(
        [mono_lcm(a, b) for a in A.gens for b in B.gens]))


def mi_colon(A: MonomialIdeal, B: MonomialIdeal) -> MonomialIdeal:
    """A : B, intersecting the single-generator colons A : v."""
    _same_ring(A, B)
    out = None
    for v in B.gens:
        col = MonomialIdeal(A.ring, minimal_gens(
            [mono_div(u, mono_gcd(u, v)) for u in A.gens]))
        out = col if out is None else mi_intersect(out, col)
    if out is None:
        raise PreconditionError("colon by the zero ideal")
    return out


def mi_saturate(A: MonomialIdeal, B: MonomialIdeal):
    """Stable value of A : B^t, plus the stabilization exponent t0."""
    t = 0
    J = A
    while True:
        J2 = mi_colon(J, B)
        if J2 == J:
            return J, t
        J = J2
        t += 1


# ---------------------------------------------------------------------------
# irreducible decomposition and associated primes


def irreducible_decomposition(A: MonomialIdeal):
    """Irredundant irreducible components of a proper nonzero monomial ideal.

    Splits a generator with at least two variables into coprime parts and
    recurses; components whose intersection of complements already contains
    them are pruned.
    """
    if A.is_zero or A.is_unit:
        raise PreconditionError("decomposition needs a proper nonzero ideal")
    comps = []
    stack = [A.gens]
    seen = set()
    while stack:
        gens = tuple(sorted(stack.pop()))
        if gens in seen:
            continue
        seen.add(gens)
        split = next((e for e in gens if len(mono_support(e)) > 1), None)
        if split is None:
            comps.append(MonomialIdeal(A.ring, minimal_gens(gens)))
            continue
        i = mono_support(split)[0] - 1
        part = [0] * A.ring.n
        part[i] = split[i]
        rest = list(split)
        rest[i] = 0
        stack.append(minimal_gens(list(gens) + [tuple(part)]))
        stack.append(minimal_gens(list(gens) + [tuple(rest)]))

    comps = list({c.gens: c for c in comps}.values())
    # prune components containing the intersection of the others
    changed = True
    while changed:
        changed = False
        for i, c in enumerate(comps):
            others = comps[:i] + comps[i + 1 :]
            if not others:
                break
            inter = others[0]
            for o in others[1:]:
                inter = mi_intersect(inter, o)
            if inter.subset_of(c)[0]:
                comps.pop(i)
                changed = True
                break
    return comps


def associated_primes(A: MonomialIdeal):
    """Associated primes of S/A as (variable index tuple, is_minimal) pairs."""
    supports = sorted(
        {tuple(sorted({i for g in c.gens for i in mono_support(g)}))
         for c in irreducible_decomposition(A)}
    )
    out = []
    for s in supports:
        minimal = not any(set(t) < set(s) for t in supports)
        out.append((s, minimal))
    return out


def _prime_ideal(ring: PolyRing, variables) -> MonomialIdeal:
    gens = []
    for v in variables:
        e = [0] * ring.n
        e[v - 1] = 1
        gens.append(tuple(e))
    return MonomialIdeal(ring, gens)


def symbolic_power(A: MonomialIdeal, k: int) -> MonomialIdeal:
    """Saturation of A^k at the intersection of its embedded associated primes."""
    if k < 1:
        raise PreconditionError("symbolic power needs k >= 1")
    Ak = mi_power(A, k)
    embedded = [s for s, minimal in associated_primes(Ak) if not minimal]
    if not embedded:
        return Ak
    J = _prime_ideal(A.ring, embedded[0])
    for s in embedded[1:]:
        J = mi_intersect(J, _prime_ideal(A.ring, s))
    return mi_saturate(Ak, J)[0]


# ---------------------------------------------------------------------------
# integral closure via the Newton polyhedron


def in_newton_polyhedron(A: MonomialIdeal, e) -> bool:
    """Exact test for e in conv(generator exponents) + R^n_{>=0}."""
    gens = A.gens
    m = len(gens)
    A_ub = [[gens[j][i] for j in range(m)] for i in range(A.ring.n)]
    b_ub = list(e)
    return lp_feasible(A_ub, b_ub, [[1] * m], [1])


def integral_closure(A: MonomialIdeal) -> MonomialIdeal:
    """All monomials whose exponent vectors lie in the Newton polyhedron.

    Minimal generators of the closure have exponents bounded by the
    componentwise maximum of the generator exponents, so a box enumeration
    in increasing degree with divisibility pruning is complete.
    """
    if not A.is_proper or A.is_zero:
        raise PreconditionError("integral closure needs a proper nonzero ideal")
    box = A.max_exps()
    mindeg = min(mono_deg(g) for g in A.gens)
    candidates = sorted(itertools.product(*(range(b + 1) for b in box)),
                        key=lambda e: (mono_deg(e), e))
    found = []
    for e in candidates:
        if mono_deg(e) < mindeg:
            continue
        if any(mono_divides(g, e) for g in found):
            continue
        if A.contains(e) or in_newton_polyhedron(A, e):
            found.append(e)
    return MonomialIdeal(A.ring, minimal_gens(found))


# ---------------------------------------------------------------------------
# monomial enumeration helpers


def monomials_of_degree(n: int, d: int):
    """All exponent tuples of length n with total degree d."""
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def std_monomials(A: MonomialIdeal, d: int):
    """Monomials of degree d outside A, in canonical order."""
    return [e for e in monomials_of_degree(A.ring.n, d) if not A.contains(e)]
