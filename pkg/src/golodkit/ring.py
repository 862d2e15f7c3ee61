"""Exact coefficient fields, monomials, term orders and sparse polynomial arithmetic.

The ambient ring is S = K[x_1,...,x_n] with K the rationals or a prime field.
All coefficients are exact; floating point never appears. Monomials are plain
exponent tuples of length n, polynomials are sparse dicts mapping exponent
tuples to nonzero field elements. Everything is immutable after construction.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    NonProperElementError,
    NotDivisibleError,
    PreconditionError,
    RingMismatchError,
)

# ---------------------------------------------------------------------------
# coefficient fields


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class FpElement:
    """Element of the prime field F_p, stored as a reduced int."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _check(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise RingMismatchError(f"mixed characteristics {self.p} and {other.p}")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        w = self._check(other)
        return NotImplemented if w is NotImplemented else FpElement(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._check(other)
        return NotImplemented if w is NotImplemented else FpElement(self.v - w, self.p)

    def __rsub__(self, other):
        w = self._check(other)
        return NotImplemented if w is NotImplemented else FpElement(w - self.v, self.p)

    def __mul__(self, other):
        w = self._check(other)
        return NotImplemented if w is NotImplemented else FpElement(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        w = self._check(other)
        if w is NotImplemented:
            return NotImplemented
        w %= self.p
        if w == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpElement(self.v * pow(w, self.p - 2, self.p), self.p)

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return str(self.v)


class RationalField:
    """The field Q with Fraction elements."""

    char = 0
    name = "Q"

    def coerce(self, a):
        return Fraction(a)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The field F_p for a prime p."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.name = f"F{p}"

    def coerce(self, a):
        if isinstance(a, FpElement):
            if a.p != self.p:
                raise RingMismatchError("element from a different prime field")
            return a
        if isinstance(a, Fraction):
            if a.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by the characteristic")
            return FpElement(a.numerator * pow(a.denominator, self.p - 2, self.p), self.p)
        return FpElement(int(a), self.p)

    @property
    def zero(self):
        return FpElement(0, self.p)

    @property
    def one(self):
        return FpElement(1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()

#: default prime for randomized property suites; any 5-digit prime works
DEFAULT_TEST_PRIME = 32003


def GF(p: int) -> PrimeField:
    return PrimeField(p)


# ---------------------------------------------------------------------------
# monomials as exponent tuples

Monomial = tuple  # exponent tuple of length ring.n


def mono_deg(e) -> int:
    return sum(e)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b) -> bool:
    """True iff x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """Exponent vector of x^a / x^b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_support(e):
    """1-based indices of variables occurring in x^e."""
    return tuple(i + 1 for i, x in enumerate(e) if x > 0)


# ---------------------------------------------------------------------------
# term orders


class TermOrder:
    """Total multiplicative order on monomials with 1 minimal.

    ``key`` maps an exponent tuple to a sort key; larger key = larger monomial.
    """

    def __init__(self, kind: str):
        if kind not in ("lex", "grevlex"):
            raise PreconditionError(f"unknown term order {kind!r}")
        self.kind = kind

    def key(self, e):
        if self.kind == "lex":
            return e
        return (sum(e), tuple(-x for x in reversed(e)))

    def cmp_gt(self, a, b) -> bool:
        return self.key(a) > self.key(b)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return self.kind


LEX = TermOrder("lex")
GREVLEX = TermOrder("grevlex")


# ---------------------------------------------------------------------------
# polynomial ring and elements


class PolyRing:
    """S = K[x_1,...,x_n] with a fixed variable order."""

    def __init__(self, field, names):
        names = tuple(names)
        if len(names) < 1:
            raise PreconditionError("need at least one variable")
        if len(set(names)) != len(names):
            raise PreconditionError("variable names must be distinct")
        self.field = field
        self.names = names
        self.n = len(names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        if c == self.field.zero:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.n: c})

    def var(self, r: int) -> "Polynomial":
        """The variable x_r, 1-based."""
        if not 1 <= r <= self.n:
            raise PreconditionError(f"variable index {r} out of range 1..{self.n}")
        e = [0] * self.n
        e[r - 1] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def monomial(self, expts, coeff=1) -> "Polynomial":
        expts = tuple(expts)
        if len(expts) != self.n or any(x < 0 for x in expts):
            raise PreconditionError(f"bad exponent vector {expts}")
        c = self.field.coerce(coeff)
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {expts: c})

    def poly(self, terms) -> "Polynomial":
        """Build from {exponent tuple: coefficient-like}, dropping zeros."""
        out = {}
        for e, c in terms.items():
            c = self.field.coerce(c)
            if c != self.field.zero:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.names == self.names
        )

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"{self.field.name}[{','.join(self.names)}]"


def _check_same_ring(f, g):
    if f.ring != g.ring:
        raise RingMismatchError(f"operands in {f.ring} and {g.ring}")


class Polynomial:
    """Sparse polynomial; no zero coefficients are ever stored."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self):
        return self.terms.get((0,) * self.ring.n, self.ring.field.zero)

    def degree(self):
        """Total degree, or -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_deg(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {mono_deg(e) for e in self.terms}
        return len(degs) <= 1

    def leading(self, order=GREVLEX):
        """(exponent tuple, coefficient) of the leading term."""
        if not self.terms:
            raise PreconditionError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def sorted_terms(self, order=GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, FpElement)):
            other = self.ring.const(other)
        _check_same_ring(self, other)
        zero = self.ring.field.zero
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, zero) + c
            if s == zero:
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial(self.ring, out)

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, FpElement)):
            other = self.ring.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FpElement)):
            c = self.ring.field.coerce(other)
            if c == self.ring.field.zero:
                return self.ring.zero()
            return Polynomial(self.ring, {e: a * c for e, a in self.terms.items()})
        _check_same_ring(self, other)
        zero = self.ring.field.zero
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                s = out.get(e, zero) + c1 * c2
                if s == zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PreconditionError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def mul_monomial(self, e, coeff=None):
        """Multiply by coeff * x^e without building a Polynomial for it."""
        c = self.ring.field.one if coeff is None else coeff
        return Polynomial(self.ring, {mono_mul(t, e): a * c for t, a in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                return self == self.ring.const(other)
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- printing -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for i, x in enumerate(e):
                if x == 1:
                    factors.append(names[i])
                elif x > 1:
                    factors.append(f"{names[i]}^{x}")
            mono = "*".join(factors)
            neg = isinstance(c, Fraction) and c < 0
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == self.ring.field.one:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return str(self)


# ---------------------------------------------------------------------------
# spec-level operations


def poly_arith(kind: str, f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact ring arithmetic dispatch; kind in {add, sub, mul}."""
    _check_same_ring(f, g)
    if kind == "add":
        return f + g
    if kind == "sub":
        return f - g
    if kind == "mul":
        return f * g
    raise PreconditionError(f"unknown arithmetic kind {kind!r}")


def zero_prefix_sub(f: Polynomial, r: int) -> Polynomial:
    """Substitute x_1 = ... = x_{r-1} = 0, keeping the tail variables.

    r = 1 is the identity, r = n+1 keeps only the constant term.
    """
    n = f.ring.n
    if not 1 <= r <= n + 1:
        raise PreconditionError(f"index {r} out of range 1..{n + 1}")
    if r == 1:
        return f
    kept = {e: c for e, c in f.terms.items() if all(x == 0 for x in e[: r - 1])}
    return Polynomial(f.ring, kept)


def exact_div_var(f: Polynomial, r: int) -> Polynomial:
    """Divide f by x_r exactly; every term must be divisible by x_r."""
    n = f.ring.n
    if not 1 <= r <= n:
        raise PreconditionError(f"index {r} out of range 1..{n}")
    out = {}
    for e, c in f.terms.items():
        if e[r - 1] == 0:
            witness = Polynomial(f.ring, {e: c})
            raise NotDivisibleError(
                f"term {witness} is not divisible by {f.ring.names[r - 1]}",
                witness=witness,
            )
        out[e[: r - 1] + (e[r - 1] - 1,) + e[r:]] = c
    return Polynomial(f.ring, out)


def require_proper(f: Polynomial):
    """Raise unless f has zero constant term (f lies in the maximal ideal)."""
    if f.constant_term() != f.ring.field.zero:
        raise NonProperElementError(f"nonzero constant term in {f}")
