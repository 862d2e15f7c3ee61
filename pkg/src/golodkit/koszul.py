"""Koszul complex machinery: the contraction boundary, explicit cycle and
chain construction from a minimal free resolution, homology dimensions by
exact rank computations, and the basis / zero-map verifications.

The cycle attached to basis element j in homological degree i is

    z_ij = sum over r_1 < ... < r_i and index chains j_1, ..., j_{i-1} of
           d^{r_1}(a^(1)[j_0, j_1]) ... d^{r_i}(a^(i)[j_{i-1}, j])  dx_{r_1}...dx_{r_i}

with a^(k) the matrices of the resolution and j_0 = 1. It is evaluated by a
right-to-left sweep whose intermediate layers are exactly the components of
the lifted chain, so the chain identities double as a self-test of the sweep.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .dcalc import Permutation, d_op, relabel, relabel_exps
from .errors import (
    CrossCheckMismatchError,
    DegreeBoundError,
    NonMinimalResolutionError,
    PreconditionError,
    UnsupportedInputError,
)
from .linalg import Sifter, kernel_basis, rank as mat_rank
from .monomial import MonomialIdeal, mono_deg, std_monomials
from .resolution import FreeComplex, minimalize, taylor_complex
from .ring import Polynomial, mono_div, mono_divides, mono_mul


class KoszulElement:
    """Element of Omega_i (tensor S/I after reduction): increasing variable
    tuples mapped to polynomial coefficients."""

    __slots__ = ("ring", "i", "coeffs")

    def __init__(self, ring, i, coeffs):
        clean = {}
        for R, c in coeffs.items():
            R = tuple(R)
            if list(R) != sorted(set(R)):
                raise PreconditionError(f"index tuple {R} is not strictly increasing")
            if len(R) != i:
                raise PreconditionError(f"index tuple {R} has length != {i}")
            if not c.is_zero():
                clean[R] = c
        self.ring = ring
        self.i = i
        self.coeffs = clean

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        if other.i != self.i or other.ring != self.ring:
            raise PreconditionError("cannot add Koszul elements of different kinds")
        out = dict(self.coeffs)
        for R, c in other.coeffs.items():
            s = out.get(R, self.ring.zero()) + c
            if s.is_zero():
                out.pop(R, None)
            else:
                out[R] = s
        return KoszulElement(self.ring, self.i, out)

    def __neg__(self):
        return KoszulElement(self.ring, self.i, {R: -c for R, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, poly: Polynomial) -> "KoszulElement":
        return KoszulElement(
            self.ring, self.i, {R: c * poly for R, c in self.coeffs.items()}
        )

    def reduce_mod(self, I: MonomialIdeal) -> "KoszulElement":
        """Drop every coefficient term lying in the monomial ideal."""
        out = {}
        for R, c in self.coeffs.items():
            kept = {e: a for e, a in c.terms.items() if not I.contains(e)}
            if kept:
                out[R] = Polynomial(self.ring, kept)
        return KoszulElement(self.ring, self.i, out)

    def __eq__(self, other):
        return (
            isinstance(other, KoszulElement)
            and other.ring == self.ring
            and other.i == self.i
            and other.coeffs == self.coeffs
        )

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for R in sorted(self.coeffs):
            c = self.coeffs[R]
            wedge = "".join(f"d{self.ring.names[r - 1]}" for r in R)
            body = str(c) if len(c.terms) == 1 and not str(c).startswith("-") else f"({c})"
            parts.append(f"{body} {wedge}".strip())
        return " + ".join(parts)

    __repr__ = __str__


def koszul_boundary(z: KoszulElement) -> KoszulElement:
    """Contraction: dx_{r_1}..dx_{r_i} -> sum (-1)^{k+1} x_{r_k} dx_{..no r_k..}."""
    if z.i < 1:
        raise PreconditionError("boundary needs homological degree >= 1")
    ring = z.ring
    out = {}
    zero = ring.zero()
    for R, c in z.coeffs.items():
        for k, r in enumerate(R):
            rest = R[:k] + R[k + 1 :]
            term = c.mul_monomial(_unit(ring.n, r))
            if k % 2 == 1:
                term = -term
            s = out.get(rest, zero) + term
            if s.is_zero():
                out.pop(rest, None)
            else:
                out[rest] = s
    return KoszulElement(ring, z.i - 1, out)


def _unit(n, r):
    e = [0] * n
    e[r - 1] = 1
    return tuple(e)


# ---------------------------------------------------------------------------
# cycles and chains from a minimal resolution


def _require_minimal(C: FreeComplex):
    zero = C.ring.field.zero
    for i in range(1, C.length + 1):
        for row in C.diff(i):
            for entry in row:
                if not entry.is_zero() and entry.constant_term() != zero:
                    raise NonMinimalResolutionError(
                        f"unit entry {entry} in differential {i}"
                    )


def _d_tables(C: FreeComplex):
    """tables[k-1][r-1] = matrix of d^r applied entrywise to diff k."""
    n = C.ring.n
    tables = []
    for k in range(1, C.length + 1):
        mat = C.diff(k)
        per_r = []
        for r in range(1, n + 1):
            per_r.append(
                [[d_op(entry, r) if not entry.is_zero() else entry for entry in row]
                 for row in mat]
            )
        tables.append(per_r)
    return tables


@dataclass
class KoszulChain:
    """Lifted chain (z_0, ..., z_i) with z_t in Omega_t tensor F_{i-t};
    component t maps (variable tuple, basis index of F_{i-t}) to polynomials."""

    ring: object
    i: int
    j: int
    components: tuple  # components[t]: dict[(R, jidx)] -> Polynomial

    def top_cycle(self) -> KoszulElement:
        """z_i as an element of Omega_i (F_0 has rank one)."""
        coeffs = {R: c for (R, a), c in self.components[self.i].items() if a == 0}
        return KoszulElement(self.ring, self.i, coeffs)


def build_chain(C: FreeComplex, i: int, j: int) -> KoszulChain:
    """All components of the lifted chain for basis element (i, j), verified
    against the lifting identities and the sign-twisted cycle condition."""
    _require_minimal(C)
    if not 1 <= i <= C.length:
        raise PreconditionError(f"homological degree {i} out of range 1..{C.length}")
    if not 1 <= j <= C.ranks[i]:
        raise PreconditionError(f"basis index {j} out of range 1..{C.ranks[i]}")
    ring = C.ring
    n = ring.n
    tables = _d_tables(C)

    # layer k holds the component in Omega_{i-k} tensor F_k; start at k = i
    layers = [None] * (i + 1)
    layers[i] = {((), j - 1): ring.one()}
    for k in range(i, 0, -1):
        nxt = {}
        zero = ring.zero()
        for (R, b), c in layers[k].items():
            top = R[0] if R else n + 1
            for r in range(1, top):
                dmat = tables[k - 1][r - 1]
                for a in range(C.ranks[k - 1]):
                    dval = dmat[a][b]
                    if dval.is_zero():
                        continue
                    key = ((r,) + R, a)
                    s = nxt.get(key, zero) + dval * c
                    if s.is_zero():
                        nxt.pop(key, None)
                    else:
                        nxt[key] = s
        layers[k - 1] = nxt

    components = tuple(layers[i - t] for t in range(i + 1))
    chain = KoszulChain(ring, i, j, components)
    _verify_chain_identities(chain, C)
    return chain


def _apply_id_delta(component, C, k):
    """(id tensor delta_k) on a component mapping into F_k."""
    ring = C.ring
    mat = C.diff(k)
    zero = ring.zero()
    out = {}
    for (R, b), c in component.items():
        for a in range(C.ranks[k - 1]):
            entry = mat[a][b]
            if entry.is_zero():
                continue
            key = (R, a)
            s = out.get(key, zero) + entry * c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return out


def _apply_boundary_id(component, ring):
    """(boundary tensor id) on a component, acting on the wedge factor."""
    zero = ring.zero()
    out = {}
    for (R, b), c in component.items():
        for t, r in enumerate(R):
            rest = R[:t] + R[t + 1 :]
            term = c.mul_monomial(_unit(ring.n, r))
            if t % 2 == 1:
                term = -term
            key = (rest, b)
            s = out.get(key, zero) + term
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return out


def _scale_component(component, factor):
    if factor == 1:
        return dict(component)
    return {key: -c for key, c in component.items()}


def _verify_chain_identities(chain: KoszulChain, C: FreeComplex):
    """Exact equalities over S; failure is a hard error."""
    ring, i = chain.ring, chain.i
    # unsigned lifting identities
    for t in range(i):
        lhs = _apply_id_delta(chain.components[t], C, i - t)
        rhs = _apply_boundary_id(chain.components[t + 1], ring)
        if lhs != rhs:
            raise CrossCheckMismatchError(
                f"lifting identity failed at component {t} of z[{i}][{chain.j}]"
            )
    # sign-twisted condition making the tuple a cycle of the total complex
    eps = [1] * (i + 1)
    for t in range(i):
        eps[t + 1] = eps[t] * (1 if t % 2 == 0 else -1)
    for t in range(i):
        lhs = _apply_id_delta(_scale_component(chain.components[t], eps[t]), C, i - t)
        rhs = _apply_boundary_id(
            _scale_component(chain.components[t + 1], eps[t + 1]), ring
        )
        sign = 1 if t % 2 == 0 else -1
        rhs = _scale_component(rhs, sign)
        if lhs != rhs:
            raise CrossCheckMismatchError(
                f"signed cycle condition failed at component {t} of z[{i}][{chain.j}]"
            )


def build_cycle(C: FreeComplex, i: int, j: int) -> KoszulElement:
    """The explicit cycle z_ij attached to basis element (i, j)."""
    return build_chain(C, i, j).top_cycle()


def is_cycle_mod(z: KoszulElement, I: MonomialIdeal) -> bool:
    """Does the image of z in Omega tensor S/I have vanishing boundary?"""
    return all(I.contains_poly(c) for c in koszul_boundary(z).coeffs.values())


def cycle_dump(C: FreeComplex, only_i=None) -> str:
    lines = []
    for i in range(1, C.length + 1):
        if only_i is not None and i != only_i:
            continue
        for j in range(1, C.ranks[i] + 1):
            lines.append(f"z[{i}][{j}] = {build_cycle(C, i, j)}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# homology by exact linear algebra


@dataclass
class HomologyReport:
    dims: tuple                   # dim H_i for i = 0..n
    table: dict                   # (i, internal degree) -> dim
    basis: dict = field(default_factory=dict)   # i -> list of KoszulElement
    degree_bound: int = -1

    def dim(self, i: int) -> int:
        return self.dims[i] if 0 <= i < len(self.dims) else 0


def _block_basis(I: MonomialIdeal, b, i):
    """Tuples R with |R| = i, R below b, and x^b / x^R outside I."""
    support = [r for r in range(1, I.ring.n + 1) if b[r - 1] >= 1]
    out = []
    for R in itertools.combinations(support, i):
        quot = list(b)
        for r in R:
            quot[r - 1] -= 1
        if not I.contains(tuple(quot)):
            out.append(R)
    return out


def _block_boundary_columns(I, b, i, src, tgt_index, field):
    """Columns of the boundary from the degree-(i) block into the (i-1) block."""
    cols = []
    zero, one = field.zero, field.one
    for R in src:
        col = [zero] * len(tgt_index)
        for k, r in enumerate(R):
            rest = R[:k] + R[k + 1 :]
            a = tgt_index.get(rest)
            if a is not None:
                col[a] = one if k % 2 == 0 else -one
        cols.append(col)
    return cols


def koszul_homology(I, degree_bound=None, with_basis=False) -> HomologyReport:
    """Dimensions of H_i(Omega tensor S/I) by exact kernel/image ranks.

    Monomial ideals are processed blockwise per multidegree inside the
    exponent box of the generator joins, which covers every multidegree where
    homology can live; the two degrees past the bound act as a guard.
    """
    if isinstance(I, MonomialIdeal):
        return _koszul_homology_monomial(I, degree_bound, with_basis)
    return _koszul_homology_graded(I, degree_bound, with_basis)


def _koszul_homology_monomial(I: MonomialIdeal, degree_bound, with_basis):
    if I.is_zero or I.is_unit:
        raise PreconditionError("homology is computed for proper nonzero ideals")
    ring = I.ring
    n = ring.n
    field = ring.field
    box = I.max_exps()
    default_bound = sum(box)
    bound = default_bound if degree_bound is None else degree_bound
    explicit = degree_bound is not None

    dims = [0] * (n + 1)
    table = {}
    basis = {i: [] for i in range(n + 1)}
    for b in itertools.product(*(range(x + 2) for x in box)):
        total = sum(b)
        if total > bound + 2:
            continue
        bases = [_block_basis(I, b, i) for i in range(n + 2)]
        indexes = [{R: a for a, R in enumerate(Bs)} for Bs in bases]
        for i in range(n + 1):
            if not bases[i]:
                continue
            cols_in = _block_boundary_columns(I, b, i + 1, bases[i + 1], indexes[i], field) \
                if i + 1 <= n else []
            rank_in = mat_rank(cols_in, len(bases[i])) if cols_in else 0
            if i == 0:
                null_i = len(bases[0])
            else:
                cols_out = _block_boundary_columns(I, b, i, bases[i], indexes[i - 1], field)
                rank_out = mat_rank(cols_out, len(bases[i - 1])) if bases[i - 1] else 0
                null_i = len(bases[i]) - rank_out
            h = null_i - rank_in
            if h:
                if total > bound:
                    if explicit:
                        raise DegreeBoundError(
                            f"homology found in degree {total} beyond the bound {bound}"
                        )
                    raise AssertionError("homology escaped the generator-join box")
                dims[i] += h
                table[(i, total)] = table.get((i, total), 0) + h
                if with_basis:
                    basis[i].extend(_block_homology_basis(I, b, i, bases, indexes, field, h))
    return HomologyReport(tuple(dims), table, basis if with_basis else {}, bound)


def _block_homology_basis(I, b, i, bases, indexes, field, want):
    """Representative cycles spanning H_i in one multidegree block."""
    ring = I.ring
    span = Sifter(len(bases[i]))
    if i + 1 <= ring.n:
        for col in _block_boundary_columns(I, b, i + 1, bases[i + 1], indexes[i], field):
            span.sift(col)
    if i == 0:
        kernel = [[field.one]]
    else:
        cols_out = _block_boundary_columns(I, b, i, bases[i], indexes[i - 1], field)
        rows = [list(col) for col in zip(*cols_out)] if cols_out and bases[i - 1] else []
        kernel = kernel_basis(rows, len(bases[i]), field)
    out = []
    for vec in kernel:
        if span.sift(vec):
            coeffs = {}
            for a, R in enumerate(bases[i]):
                if vec[a] != 0:
                    quot = list(b)
                    for r in R:
                        quot[r - 1] -= 1
                    coeffs[R] = ring.monomial(tuple(quot), vec[a])
            out.append(KoszulElement(ring, i, coeffs))
            if len(out) == want:
                break
    return out


def _koszul_homology_graded(I, degree_bound, with_basis):
    """Total-degree slices via a Groebner quotient basis (homogeneous input)."""
    from .quotient import QuotientBasis

    if not I.is_homogeneous():
        raise UnsupportedInputError("homology needs a graded (homogeneous) ideal")
    if degree_bound is None:
        raise PreconditionError("a degree bound is required for non-monomial ideals")
    ring = I.ring
    n = ring.n
    field = ring.field
    qb = QuotientBasis(I)

    def slice_basis(i, d):
        out = []
        for R in itertools.combinations(range(1, n + 1), i):
            for w in qb.monomials(d - i):
                out.append((R, w))
        return out

    def boundary_cols(i, d, src, tgt_index):
        cols = []
        zero = field.zero
        for (R, w) in src:
            col = [zero] * len(tgt_index)
            for k, r in enumerate(R):
                rest = R[:k] + R[k + 1 :]
                reduced = qb.mul_var(w, r)
                for e, c in reduced.items():
                    col[tgt_index[(rest, e)]] = col[tgt_index[(rest, e)]] + (
                        c if k % 2 == 0 else -c
                    )
            cols.append(col)
        return cols

    dims = [0] * (n + 1)
    table = {}
    for d in range(degree_bound + 3):
        bases = {i: slice_basis(i, d) for i in range(min(n, d) + 2)}
        indexes = {i: {bkey: a for a, bkey in enumerate(Bs)} for i, Bs in bases.items()}
        for i in range(min(n, d) + 1):
            if not bases.get(i):
                continue
            cols_in = (
                boundary_cols(i + 1, d, bases[i + 1], indexes[i])
                if bases.get(i + 1)
                else []
            )
            rank_in = mat_rank(cols_in, len(bases[i])) if cols_in else 0
            if i == 0:
                null_i = len(bases[0])
            else:
                cols_out = boundary_cols(i, d, bases[i], indexes[i - 1])
                rank_out = mat_rank(cols_out, len(bases[i - 1])) if bases[i - 1] else 0
                null_i = len(bases[i]) - rank_out
            h = null_i - rank_in
            if h:
                if d > degree_bound:
                    raise DegreeBoundError(
                        f"homology found in degree {d} beyond the bound {degree_bound}"
                    )
                dims[i] += h
                table[(i, d)] = table.get((i, d), 0) + h
    return HomologyReport(tuple(dims), table, {}, degree_bound)


# ---------------------------------------------------------------------------
# verification entry points


@dataclass
class BasisReport:
    ok: bool
    betti: tuple
    homology: tuple
    failures: list = field(default_factory=list)


def verify_basis(I: MonomialIdeal) -> BasisReport:
    """Check that the constructed cycles are cycles, independent in homology,
    and exactly as numerous as the Betti numbers."""
    C = minimalize(taylor_complex(I))
    H = koszul_homology(I)
    failures = []
    betti = tuple(C.ranks) + (0,) * (I.ring.n + 1 - len(C.ranks))
    for i in range(len(betti)):
        if betti[i] != H.dim(i):
            failures.append(f"b_{i} = {betti[i]} but dim H_{i} = {H.dim(i)}")

    mdegs = C.multidegrees()
    field = I.ring.field
    for i in range(1, C.length + 1):
        by_mdeg = {}
        for j in range(1, C.ranks[i] + 1):
            z = build_cycle(C, i, j).reduce_mod(I)
            if not is_cycle_mod(z, I):
                failures.append(f"z[{i}][{j}] is not a cycle mod I")
                continue
            if z.is_zero():
                failures.append(f"z[{i}][{j}] reduces to zero mod I")
                continue
            by_mdeg.setdefault(mdegs[i][j - 1], []).append((j, z))
        for b, members in by_mdeg.items():
            Bs = _block_basis(I, b, i)
            idx = {R: a for a, R in enumerate(Bs)}
            span = Sifter(len(Bs))
            if i + 1 <= I.ring.n:
                below = _block_basis(I, b, i + 1)
                for col in _block_boundary_columns(I, b, i + 1, below, idx, field):
                    span.sift(col)
            for j, z in members:
                vec = [field.zero] * len(Bs)
                for R, c in z.coeffs.items():
                    ((_, coeff),) = c.terms.items()
                    vec[idx[R]] = coeff
                if not span.sift(vec):
                    failures.append(
                        f"class of z[{i}][{j}] is dependent in H_{i} at degree {b}"
                    )
    return BasisReport(not failures, betti, H.dims, failures)


@dataclass
class ZeroMapEntry:
    i: int
    j: int
    tuple_R: tuple
    coefficient: Polynomial
    witness: Polynomial


@dataclass
class ZeroMapReport:
    sigma: Permutation
    ok: bool
    entries: list


def verify_zero_map(I: MonomialIdeal, sigma: Permutation | None = None) -> ZeroMapReport:
    """Every coefficient of every cycle lies in d_sigma(I); the induced map on
    homology therefore vanishes. Failure contradicts a proved statement and is
    raised as a hard error."""
    from .dcalc import d_ideal

    ring = I.ring
    sigma = sigma or Permutation.identity(ring.n)
    inv = sigma.inverse()
    relabeled = MonomialIdeal.from_gens(ring, [relabel_exps(e, inv) for e in I.gens])
    C = minimalize(taylor_complex(relabeled))
    D = d_ideal(relabeled)  # equals d_sigma(I) after relabeling back
    entries = []
    for i in range(1, C.length + 1):
        for j in range(1, C.ranks[i] + 1):
            z = build_cycle(C, i, j)
            for R, c in z.coeffs.items():
                if not D.contains_poly(c):
                    raise CrossCheckMismatchError(
                        f"coefficient {c} of z[{i}][{j}] escapes d_sigma(I)"
                    )
                witness = _dividing_generator(D, c)
                entries.append(
                    ZeroMapEntry(
                        i,
                        j,
                        tuple(sigma(r) for r in R),
                        relabel(c, sigma),
                        relabel(witness, sigma) if witness is not None else None,
                    )
                )
    return ZeroMapReport(sigma, True, entries)


def _dividing_generator(D: MonomialIdeal, c: Polynomial):
    for e in c.terms:
        for g in D.gens:
            if mono_divides(g, e):
                return D.ring.monomial(g)
    return None
