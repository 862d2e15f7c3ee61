"""Golod certificates: d_sigma-Golod and strongly d-Golod checks, stable
ideals, and the two constructive families (stretched quotients, weighted sums
of per-variable ideals).

A certificate packages the generators of d_sigma(I), the containment verdict
for d_sigma(I)^2 in I, and on failure a concrete violating product. It can be
re-verified from scratch via `GolodCertificate.recheck`.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

from .dcalc import Permutation, d_ideal
from .errors import CrossCheckMismatchError, PreconditionError, UnsupportedInputError
from .groebner import IdealGens, ideal_subset
from .monomial import (
    MonomialIdeal,
    maximal_ideal,
    mi_power,
    mi_product,
    minimal_gens,
)
from .ring import PolyRing, QQ, mono_div, mono_mul, mono_support


@dataclass(frozen=True)
class GolodCertificate:
    """Outcome of a d_sigma(I)^2 subseteq I containment check."""

    ideal: object                 # MonomialIdeal or IdealGens
    sigma: object                 # Permutation, or the string "all"
    holds: bool
    d_gens: tuple = ()            # generators of d_sigma(I) (one sigma only)
    witness: object = None        # violating product on failure
    witness_factors: tuple = ()   # the two d-generators whose product escapes

    def recheck(self) -> bool:
        """Re-verify the verdict from scratch via ideal containment."""
        if self.sigma == "all":
            return check_strongly_d_golod(self.ideal).holds == self.holds
        return check_d_sigma_golod(self.ideal, self.sigma).holds == self.holds

    def describe(self) -> str:
        tag = "holds" if self.holds else "fails"
        if self.holds or self.witness is None:
            return f"d_sigma-Golod {tag} (sigma={self.sigma})"
        return f"d_sigma-Golod {tag} (sigma={self.sigma}); witness {self.witness} not in the ideal"


def _ring_of(ideal) -> PolyRing:
    return ideal.ring


def _require_proper(ideal):
    if isinstance(ideal, MonomialIdeal):
        if ideal.is_zero or ideal.is_unit:
            raise PreconditionError("checker input must be a proper nonzero ideal")
    else:
        for f in ideal.gens:
            if f.constant_term() != ideal.ring.field.zero:
                raise PreconditionError("checker input must lie in the maximal ideal")


def check_d_sigma_golod(ideal, sigma: Permutation | None = None) -> GolodCertificate:
    """Certify d_sigma(I)^2 subseteq I, or exhibit a violating product."""
    _require_proper(ideal)
    ring = ideal.ring
    sigma = sigma or Permutation.identity(ring.n)
    if isinstance(ideal, IdealGens):
        mono = ideal.as_monomial_ideal()
        if mono is not None:
            cert = check_d_sigma_golod(mono, sigma)
            return GolodCertificate(ideal, sigma, cert.holds, cert.d_gens,
                                    cert.witness, cert.witness_factors)
    D = d_ideal(ideal, sigma)

    if isinstance(ideal, MonomialIdeal):
        d_gens = tuple(ring.monomial(e) for e in D.gens)
        for a, b in itertools.combinations_with_replacement(D.gens, 2):
            prod = mono_mul(a, b)
            if not ideal.contains(prod):
                return GolodCertificate(
                    ideal, sigma, False, d_gens,
                    witness=ring.monomial(prod),
                    witness_factors=(ring.monomial(a), ring.monomial(b)),
                )
        return GolodCertificate(ideal, sigma, True, d_gens)

    d_gens = tuple(D.gens)
    squares = [a * b for a, b in itertools.combinations_with_replacement(d_gens, 2)]
    square_ideal = ideal.replace_gens(squares)
    ok, witness = ideal_subset(square_ideal, ideal)
    if ok:
        return GolodCertificate(ideal, sigma, True, d_gens)
    for a, b in itertools.combinations_with_replacement(d_gens, 2):
        if a * b == witness:
            return GolodCertificate(ideal, sigma, False, d_gens,
                                    witness=witness, witness_factors=(a, b))
    return GolodCertificate(ideal, sigma, False, d_gens, witness=witness)


def _strongly_combinatorial(I: MonomialIdeal):
    """Generator-pair criterion: uv/(x_i x_j) in I for all divisors x_i|u, x_j|v."""
    for u, v in itertools.combinations_with_replacement(I.gens, 2):
        prod = mono_mul(u, v)
        for i in mono_support(u):
            for j in mono_support(v):
                quot = list(prod)
                quot[i - 1] -= 1
                quot[j - 1] -= 1
                if not I.contains(tuple(quot)):
                    return False, (u, v, i, j, tuple(quot))
    return True, None


def check_strongly_d_golod(ideal) -> GolodCertificate:
    """Decide d_sigma-Golodness for every permutation at once.

    Monomial ideals use the generator-pair divisibility criterion; for n <= 5
    the verdict is cross-checked against the exhaustive sweep over all n!
    permutations, and any disagreement is a hard error. Non-monomial ideals
    fall back to the exhaustive sweep (n <= 6).
    """
    _require_proper(ideal)
    ring = ideal.ring
    if isinstance(ideal, IdealGens):
        mono = ideal.as_monomial_ideal()
        if mono is not None:
            cert = check_strongly_d_golod(mono)
            return GolodCertificate(ideal, "all", cert.holds, cert.d_gens,
                                    cert.witness, cert.witness_factors)
        if ring.n > 6:
            raise UnsupportedInputError(
                "exhaustive permutation sweep limited to n <= 6 for non-monomial ideals"
            )
        warnings.warn(
            f"non-monomial strongly-d-Golod check sweeps all {ring.n}! permutations",
            stacklevel=2,
        )
        for images in itertools.permutations(range(1, ring.n + 1)):
            cert = check_d_sigma_golod(ideal, Permutation(images))
            if not cert.holds:
                return GolodCertificate(ideal, "all", False, cert.d_gens,
                                        cert.witness, cert.witness_factors)
        return GolodCertificate(ideal, "all", True)

    ok, info = _strongly_combinatorial(ideal)
    if ring.n <= 5:
        sweep_ok = True
        sweep_cert = None
        for images in itertools.permutations(range(1, ring.n + 1)):
            cert = check_d_sigma_golod(ideal, Permutation(images))
            if not cert.holds:
                sweep_ok, sweep_cert = False, cert
                break
        if sweep_ok != ok:
            raise CrossCheckMismatchError(
                f"combinatorial criterion says {ok}, permutation sweep says {sweep_ok} "
                f"for {ideal}"
            )
    if ok:
        return GolodCertificate(ideal, "all", True)
    u, v, i, j, quot = info
    return GolodCertificate(
        ideal, "all", False,
        witness=ring.monomial(quot),
        witness_factors=(ring.monomial(mono_div(u, _unit_vec(ring.n, i))),
                         ring.monomial(mono_div(v, _unit_vec(ring.n, j)))),
    )


def _unit_vec(n, i):
    e = [0] * n
    e[i - 1] = 1
    return tuple(e)


def is_stable(I: MonomialIdeal) -> bool:
    """Exchange-closed: x_i * u / x_{m(u)} stays in I for i <= m(u).

    Checked on the generators and re-verified transitively on every monomial
    of I up to the maximum generator degree.
    """
    if I.is_zero or I.is_unit:
        raise PreconditionError("stability is asked of proper nonzero ideals")

    def exchanges_ok(e) -> bool:
        m = mono_support(e)[-1]
        for i in range(1, m):
            moved = list(e)
            moved[m - 1] -= 1
            moved[i - 1] += 1
            if not I.contains(tuple(moved)):
                return False
        return True

    if not all(exchanges_ok(e) for e in I.gens):
        return False
    from .monomial import monomials_of_degree
    maxdeg = max(sum(e) for e in I.gens)
    for d in range(1, maxdeg + 1):
        for e in monomials_of_degree(I.ring.n, d):
            if I.contains(e) and not exchanges_ok(e):
                return False
    return True


def stable_golod_cert(I: MonomialIdeal, J: MonomialIdeal) -> GolodCertificate:
    """Certificate for I*J when I is stable and I subseteq J.

    The order-reversing permutation sends each generator u to u/x_{m(u)}, so a
    stable I is d_sigma-Golod for it; the product then inherits the property.
    """
    if not is_stable(I):
        raise PreconditionError("first ideal is not stable")
    ok, wit = I.subset_of(J)
    if not ok:
        raise PreconditionError(f"containment I subseteq J fails at {wit}")
    sigma = Permutation.reversal(I.ring.n)
    base = check_d_sigma_golod(I, sigma)
    if not base.holds:
        raise PreconditionError(
            "stable ideal failed its own d_sigma check (degree-1 generators "
            f"make d_sigma(I) improper): witness {base.witness}"
        )
    return check_d_sigma_golod(mi_product(I, J), sigma)


def stretched_ideal(n: int, s: int, artinian: bool, field=QQ) -> IdealGens:
    """Defining ideal of a stretched graded quotient in coordinates where
    it is monomial: (x_1..x_{n-1})^2 + x_n(x_1..x_{n-1}) (+ x_n^{s+1})."""
    if n < 2:
        raise PreconditionError("need n >= 2")
    if artinian and s < 1:
        raise PreconditionError("need s >= 1 in the Artinian case")
    ring = PolyRing(field, [f"x{i}" for i in range(1, n + 1)])
    gens = []
    for i in range(1, n):
        for j in range(i, n):
            e = [0] * n
            e[i - 1] += 1
            e[j - 1] += 1
            gens.append(ring.monomial(e))
    for i in range(1, n):
        e = [0] * n
        e[i - 1] = 1
        e[n - 1] = 1
        gens.append(ring.monomial(e))
    if artinian:
        e = [0] * n
        e[n - 1] = s + 1
        gens.append(ring.monomial(e))
    return IdealGens(ring, gens)


def stretched_permutation(n: int) -> Permutation:
    """Variable order x_n, x_1, ..., x_{n-1} as a permutation."""
    return Permutation([n] + list(range(1, n)))


def sum_family_ideal(parts, k: int):
    """J = sum_i x_i * J_i with J_i supported on x_i..x_n; returns J^k plus
    its identity-permutation certificate, which must hold for k >= 2."""
    if k < 2:
        raise PreconditionError("need k >= 2")
    if not parts:
        raise PreconditionError("need at least one part")
    ring = parts[0].ring
    if len(parts) != ring.n:
        raise PreconditionError(f"need exactly n={ring.n} part ideals")
    gens = []
    for i, Ji in enumerate(parts, start=1):
        if Ji.ring != ring:
            raise PreconditionError("part ideals live in different rings")
        for e in Ji.gens:
            if any(x > 0 for x in e[: i - 1]):
                raise PreconditionError(
                    f"part {i} uses a variable below x{i}: {ring.monomial(e)}"
                )
            gens.append(mono_mul(e, _unit_vec(ring.n, i)))
    J = MonomialIdeal(ring, minimal_gens(gens))
    if J.is_zero:
        raise PreconditionError("all parts are zero")
    Jk = mi_power(J, k)
    cert = check_d_sigma_golod(Jk, Permutation.identity(ring.n))
    return Jk, cert


def nn_ideal(ring: PolyRing) -> MonomialIdeal:
    """The graded maximal ideal as a monomial ideal."""
    return maximal_ideal(ring)
