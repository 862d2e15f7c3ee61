"""Monomial K-basis of a graded quotient R = S/I, with product reduction.

For monomial I the basis in each degree is the set of standard monomials and
products either die or stay monomial. For a general homogeneous ideal the
basis comes from the lead terms of a Groebner basis and products reduce via
normal forms.
"""

from __future__ import annotations

from .errors import UnsupportedInputError
from .groebner import GroebnerBasis, IdealGens, buchberger, normal_form
from .monomial import MonomialIdeal, monomials_of_degree, std_monomials
from .ring import GREVLEX, mono_mul


class QuotientBasis:
    def __init__(self, I, order=GREVLEX):
        if isinstance(I, MonomialIdeal):
            self.ring = I.ring
            self.monomial_ideal = I
            self.gb = None
            self.lead = I
        elif isinstance(I, IdealGens):
            mono = I.as_monomial_ideal()
            self.ring = I.ring
            if mono is not None:
                self.monomial_ideal = mono
                self.gb = None
                self.lead = mono
            else:
                if not I.is_homogeneous():
                    raise UnsupportedInputError(
                        "graded quotient basis needs a homogeneous ideal"
                    )
                self.monomial_ideal = None
                self.gb = buchberger(I, order)
                self.lead = MonomialIdeal.from_gens(
                    self.ring, [g.leading(order)[0] for g in self.gb.basis]
                )
        else:
            raise UnsupportedInputError(f"unsupported ideal type {type(I)!r}")
        self._cache = {}

    def monomials(self, d: int):
        """Standard monomials of degree d (empty for negative d)."""
        if d < 0:
            return []
        if d not in self._cache:
            self._cache[d] = std_monomials(self.lead, d)
        return self._cache[d]

    def dim(self, d: int) -> int:
        return len(self.monomials(d))

    def is_artinian(self) -> bool:
        return self.lead.is_artinian()

    def top_socle_degree(self) -> int:
        """Largest d with R_d != 0; only meaningful in the Artinian case."""
        d = 0
        top = 0
        while True:
            if self.dim(d):
                top = d
                d += 1
            else:
                return top

    def reduce_monomial(self, e):
        """Image of x^e in the standard basis: {exponent: coefficient}."""
        if self.monomial_ideal is not None:
            if self.monomial_ideal.contains(e):
                return {}
            return {e: self.ring.field.one}
        nf = normal_form(self.ring.monomial(e), self.gb)
        return dict(nf.terms)

    def mul_var(self, w, r: int):
        """Reduction of x_r * x^w over the standard basis."""
        e = list(w)
        e[r - 1] += 1
        return self.reduce_monomial(tuple(e))

    def mul_mono(self, w, u):
        return self.reduce_monomial(mono_mul(w, u))
