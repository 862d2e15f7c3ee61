"""Truncated integer series, the Serre upper bound, degreewise Poincare
series of the residue field, Hilbert series, ring profiles and the stretched
closed forms.

The Poincare coefficients come from building the minimal graded free
resolution of K over R = S/I step by step: each step computes the kernel of
the previous map on finite graded pieces by exact elimination and extracts
minimal generators as the new columns. Artinian quotients are resolved
exactly; otherwise pieces are truncated at a recorded internal degree bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PreconditionError, UnsupportedInputError
from .linalg import Sifter, SifterP, kernel_basis, kernel_mod_p
from .monomial import MonomialIdeal
from .quotient import QuotientBasis
from .ring import PrimeField, mono_deg
from .resolution import betti_numbers


class TruncatedSeries:
    """Integer power series known through degree trunc."""

    __slots__ = ("trunc", "coeffs")

    def __init__(self, coeffs, trunc=None):
        coeffs = [int(c) for c in coeffs]
        if trunc is None:
            trunc = len(coeffs) - 1
        if trunc < 0:
            raise PreconditionError("truncation degree must be >= 0")
        coeffs = coeffs[: trunc + 1] + [0] * (trunc + 1 - len(coeffs))
        self.trunc = trunc
        self.coeffs = tuple(coeffs)

    @classmethod
    def one(cls, trunc):
        return cls([1], trunc)

    def __add__(self, other):
        t = min(self.trunc, other.trunc)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], t)

    def __mul__(self, other):
        t = min(self.trunc, other.trunc)
        out = [0] * (t + 1)
        for i, a in enumerate(self.coeffs[: t + 1]):
            if a == 0:
                continue
            for j in range(t + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(out, t)

    def inverse(self):
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise PreconditionError(
                f"inverse needs constant term +-1 over the integers, got {c0}"
            )
        out = [c0]
        for k in range(1, self.trunc + 1):
            s = sum(self.coeffs[j] * out[k - j] for j in range(1, k + 1))
            out.append(-c0 * s)
        return TruncatedSeries(out, self.trunc)

    def truncate(self, t):
        return TruncatedSeries(self.coeffs[: t + 1], min(t, self.trunc))

    def leq(self, other) -> bool:
        t = min(self.trunc, other.trunc)
        return all(a <= b for a, b in zip(self.coeffs[: t + 1], other.coeffs[: t + 1]))

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and other.trunc == self.trunc
            and other.coeffs == self.coeffs
        )

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}t" if c != 1 else "t")
            else:
                parts.append(f"{c}t^{i}" if c != 1 else f"t^{i}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(t^{self.trunc + 1})"

    __repr__ = __str__


def series_ops(kind: str, a: TruncatedSeries, b: TruncatedSeries | None = None):
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inv":
        return a.inverse()
    raise PreconditionError(f"unknown series operation {kind!r}")


def geometric(ratio: int, trunc: int) -> TruncatedSeries:
    """1 / (1 - ratio*t)."""
    return TruncatedSeries([1, -ratio], trunc).inverse()


def serre_bound(betti, n: int, trunc: int) -> TruncatedSeries:
    """(1+t)^n / (1 - t(P - 1)) with P the polynomial sum of the Betti numbers."""
    one_plus_t = TruncatedSeries([1, 1], trunc)
    acc = TruncatedSeries.one(trunc)
    for _ in range(n):
        acc = acc * one_plus_t
    denom = [1] + [0] * trunc
    for i, b in enumerate(betti):
        if i >= 1 and i + 1 <= trunc:
            denom[i + 1] -= b
    return acc * TruncatedSeries(denom, trunc).inverse()


def sally_series(n: int, tau: int, trunc: int) -> TruncatedSeries:
    """Closed form for stretched quotients: 1/(1-nt) if tau = n, else
    1/(1-nt+t^2)."""
    if n < 1:
        raise PreconditionError("need n >= 1")
    if tau == n:
        return geometric(n, trunc)
    return TruncatedSeries([1, -n, 1], trunc).inverse()


def hilbert_series(I, trunc: int) -> TruncatedSeries:
    """dim_K (S/I)_d for d <= trunc by standard monomial counting."""
    qb = QuotientBasis(I)
    return TruncatedSeries([qb.dim(d) for d in range(trunc + 1)], trunc)


# ---------------------------------------------------------------------------
# minimal graded resolution of K over R = S/I, degree by degree


@dataclass
class PoincareResult:
    series: TruncatedSeries
    requested: int
    achieved: int
    artinian: bool
    degree_bound: int | None      # None when the computation was complete
    partial: bool = False

    def __str__(self):
        tag = "complete" if self.degree_bound is None else (
            f"internal degrees <= {self.degree_bound}"
        )
        return f"{self.series} [{tag}]"


class _Column:
    """Basis element of a resolution step: internal degree plus entries, a
    {standard monomial: coefficient} dict per referenced component below."""

    __slots__ = ("degree", "entries")

    def __init__(self, degree, entries):
        self.degree = degree
        self.entries = entries


CELL_BUDGET = 50_000_000


def poincare_k(I, trunc: int = 8, hmax: int = 8, degree_bound=None,
               cell_budget: int = CELL_BUDGET, progress=None) -> PoincareResult:
    """Coefficients dim Tor_i^R(K, K) for i <= min(trunc, hmax).

    Artinian quotients are computed exactly; otherwise internal degrees are
    truncated at `degree_bound` (default: trunc + max generator degree), which
    is recorded in the result. When the cell budget runs out the series is
    returned honestly partial at the reached homological step. `progress`, if
    given, is called with a short message after each resolution step.
    """
    qb = QuotientBasis(I)
    fieldp = qb.ring.field.p if isinstance(qb.ring.field, PrimeField) else None
    artinian = qb.is_artinian()
    if artinian:
        top = qb.top_socle_degree()
        bound = None
    else:
        top = None
        if degree_bound is None:
            degree_bound = trunc + max(mono_deg(e) for e in qb.lead.gens)
        bound = degree_bound

    steps = min(trunc, hmax)
    coeffs = [1]
    layers = _augmentation_kernel(qb, fieldp, bound)
    partial = False
    while len(coeffs) <= steps:
        new_cols = _minimal_generators(qb, layers, fieldp)
        coeffs.append(len(new_cols))
        if progress is not None:
            progress(f"resolution step {len(coeffs) - 1}: {len(new_cols)} generators")
        if len(coeffs) > steps or not new_cols:
            break
        maxdeg = max(c.degree for c in new_cols) + top if artinian else bound
        layers, ok = _syzygy_kernels(qb, new_cols, maxdeg, fieldp, cell_budget)
        if not ok:
            partial = True
            break

    if not partial:
        coeffs.extend([0] * (steps + 1 - len(coeffs)))
    achieved = len(coeffs) - 1
    series = TruncatedSeries(coeffs, achieved)
    return PoincareResult(series, trunc, achieved, artinian, bound, partial)


def _zero_vec(length, fieldp, field):
    if fieldp:
        return np.zeros(length, dtype=np.int64)
    return [field.zero] * length


def _augmentation_kernel(qb, fieldp, bound):
    """Kernel layers of R -> K: in each degree d >= 1 it is all of R_d."""
    layers = {}
    d = 1
    while True:
        if bound is not None and d > bound:
            break
        monos = qb.monomials(d)
        if not monos:
            break  # standard graded: once a piece is zero, all later are
        basis = [(0, w) for w in monos]
        vectors = []
        for a in range(len(basis)):
            vec = _zero_vec(len(basis), fieldp, qb.ring.field)
            vec[a] = 1 if fieldp else qb.ring.field.one
            vectors.append(vec)
        layers[d] = (basis, vectors)
        d += 1
    return layers


def _minimal_generators(qb, layers, fieldp):
    """Minimal generators of a syzygy module from its per-degree kernels.

    New generators in degree d are kernel vectors outside the span of
    x_r * (kernel of degree d-1); the span grows as generators are accepted,
    which keeps them independent modulo the decomposable part.
    """
    ring = qb.ring
    new_cols = []
    for d in sorted(layers):
        basis, vectors = layers[d]
        index = {bk: a for a, bk in enumerate(basis)}
        span = SifterP(len(basis), fieldp) if fieldp else Sifter(len(basis))
        if d - 1 in layers:
            pbasis, pvectors = layers[d - 1]
            for v in pvectors:
                for r in range(1, ring.n + 1):
                    shifted = _zero_vec(len(basis), fieldp, ring.field)
                    for a, coeff in _iter_nonzero(v, fieldp):
                        comp, w = pbasis[a]
                        for e2, c2 in qb.mul_var(w, r).items():
                            pos = index[(comp, e2)]
                            if fieldp:
                                shifted[pos] = (shifted[pos] + coeff * _int_of(c2)) % fieldp
                            else:
                                shifted[pos] = shifted[pos] + coeff * c2
                    span.sift(shifted)
        for v in vectors:
            if span.sift(v):
                entries = {}
                for a, coeff in _iter_nonzero(v, fieldp):
                    comp, w = basis[a]
                    entries.setdefault(comp, {})[w] = (
                        ring.field.coerce(coeff) if fieldp else coeff
                    )
                new_cols.append(_Column(d, entries))
    return new_cols


def _iter_nonzero(vec, fieldp):
    if fieldp:
        arr = np.asarray(vec)
        for a in np.nonzero(arr)[0]:
            yield int(a), int(arr[a])
    else:
        for a, c in enumerate(vec):
            if c != 0:
                yield a, c


def _int_of(c):
    return c.v if hasattr(c, "v") else int(c)


def _syzygy_kernels(qb, cols, maxdeg, fieldp, cell_budget):
    """Per-degree kernels of the map that sends each column to its entries.

    Component degrees of the codomain are recovered from the entries (the
    data is graded, so any nonzero entry determines them).
    """
    ring = qb.ring
    comp_degree = {}
    for col in cols:
        for comp, entry in col.entries.items():
            if comp not in comp_degree:
                w = next(iter(entry))
                comp_degree[comp] = col.degree - mono_deg(w)
    comp_list = sorted(comp_degree)
    layers = {}
    cells = 0
    for d in range(min(c.degree for c in cols), maxdeg + 1):
        src = [(ell, w) for ell, col in enumerate(cols)
               for w in qb.monomials(d - col.degree)]
        if not src:
            continue
        tgt = [(comp, w) for comp in comp_list
               for w in qb.monomials(d - comp_degree[comp])]
        tgt_index = {bk: a for a, bk in enumerate(tgt)}
        cells += len(src) * max(len(tgt), 1)
        if cells > cell_budget:
            return layers, False
        if not tgt:
            vectors = []
            for a in range(len(src)):
                vec = _zero_vec(len(src), fieldp, ring.field)
                vec[a] = 1 if fieldp else ring.field.one
                vectors.append(vec)
            layers[d] = (src, vectors)
            continue
        if fieldp:
            M = np.zeros((len(tgt), len(src)), dtype=np.int64)
            for ci, (ell, w) in enumerate(src):
                for comp, entry in cols[ell].entries.items():
                    for e, c in entry.items():
                        for e2, c2 in qb.mul_mono(w, e).items():
                            pos = tgt_index[(comp, e2)]
                            M[pos, ci] = (M[pos, ci] + _int_of(c) * _int_of(c2)) % fieldp
            vectors = list(kernel_mod_p(M, fieldp))
        else:
            zero = ring.field.zero
            rows = [[zero] * len(src) for _ in tgt]
            for ci, (ell, w) in enumerate(src):
                for comp, entry in cols[ell].entries.items():
                    for e, c in entry.items():
                        for e2, c2 in qb.mul_mono(w, e).items():
                            pos = tgt_index[(comp, e2)]
                            rows[pos][ci] = rows[pos][ci] + c * c2
            vectors = kernel_basis(rows, len(src), ring.field)
        if vectors:
            layers[d] = (src, vectors)
    return layers, True


# ---------------------------------------------------------------------------
# equality report and ring profile


@dataclass
class GolodEqualityReport:
    serre: TruncatedSeries
    computed: PoincareResult
    equal_up_to: int | None
    leq_everywhere: bool
    note: str = ""

    @property
    def equal(self) -> bool:
        return self.equal_up_to is not None


def golod_equality(I, trunc: int = 8, degree_bound=None) -> GolodEqualityReport:
    """Compare the computed Poincare series against the Serre bound.

    Equality at truncation level is evidence, never a proof; the report says
    "Golod-consistent to degree N" and nothing stronger.
    """
    mono = I if isinstance(I, MonomialIdeal) else I.as_monomial_ideal()
    if mono is None:
        raise UnsupportedInputError(
            "the Serre bound needs Betti numbers, available for monomial ideals"
        )
    betti = betti_numbers(mono)
    pk = poincare_k(I, trunc, trunc, degree_bound=degree_bound)
    t = min(trunc, pk.series.trunc)
    serre = serre_bound(betti, mono.ring.n, trunc).truncate(t)
    computed = pk.series.truncate(t)
    leq = computed.leq(serre)
    equal_up_to = t if computed == serre else None
    note = (
        f"Golod-consistent to degree {t} (truncation-level evidence only)"
        if equal_up_to is not None
        else f"series differ within degree {t}"
    )
    return GolodEqualityReport(serre, pk, equal_up_to, leq, note)


@dataclass
class RingProfile:
    n: int
    artinian: bool
    tau: int
    s: int | None
    stretched: bool
    stretched_degenerate: bool    # maximal ideal squared is already zero
    socle_bound: int | None       # socle search bound when not Artinian


def ring_profile(I, socle_bound=None) -> RingProfile:
    """Embedding data of R = S/I: socle dimension tau, top degree s, and
    whether the square of the maximal ideal is principal.

    For standard graded R the square of the maximal ideal is everything in
    degrees >= 2, so it is principal exactly when dim R_2 <= 1; R_2 = 0 is
    reported as the degenerate case."""
    qb = QuotientBasis(I)
    artinian = qb.is_artinian()
    if artinian:
        s = qb.top_socle_degree()
        degrees = range(0, s + 1)
        used_bound = None
    else:
        s = None
        maxgen = max(mono_deg(e) for e in qb.lead.gens)
        used_bound = socle_bound if socle_bound is not None else maxgen + 2
        degrees = range(0, used_bound + 1)
    tau = sum(_socle_dim(qb, d) for d in degrees)
    dim2 = qb.dim(2)
    return RingProfile(
        n=qb.ring.n,
        artinian=artinian,
        tau=tau,
        s=s,
        stretched=dim2 <= 1,
        stretched_degenerate=dim2 == 0,
        socle_bound=used_bound,
    )


def _socle_dim(qb: QuotientBasis, d: int) -> int:
    """dim of {v in R_d : x_r v = 0 for all r}, exact."""
    monos = qb.monomials(d)
    if not monos:
        return 0
    if qb.monomial_ideal is not None:
        return sum(
            1
            for w in monos
            if all(not qb.mul_var(w, r) for r in range(1, qb.ring.n + 1))
        )
    targets = qb.monomials(d + 1)
    tgt_index = {w: a for a, w in enumerate(targets)}
    zero = qb.ring.field.zero
    rows = [[zero] * len(monos) for _ in range(len(targets) * qb.ring.n)]
    for col, w in enumerate(monos):
        for r in range(1, qb.ring.n + 1):
            for e, c in qb.mul_var(w, r).items():
                rows[(r - 1) * len(targets) + tgt_index[e]][col] = c
    return len(kernel_basis(rows, len(monos), qb.ring.field))
