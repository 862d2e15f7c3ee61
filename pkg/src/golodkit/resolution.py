"""Finite free complexes over S: Taylor construction, minimalization by unit
cancellation, Betti numbers, and degreewise validation.

Matrices are stored rows x cols with entry (k, j) the coefficient of the k-th
target basis element in the image of the j-th source basis element. Basis
degree labels are derived from the entries, never stored, so the text format
round-trips bit-exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ParseError, PreconditionError
from .linalg import rank as mat_rank
from .monomial import MonomialIdeal, monomials_of_degree, std_monomials
from .ring import Polynomial, mono_deg, mono_div, mono_mul

TAYLOR_GEN_LIMIT = 20


class FreeComplex:
    """A complex of free S-modules F_len -> ... -> F_1 -> F_0."""

    __slots__ = ("ring", "ranks", "diffs")

    def __init__(self, ring, ranks, diffs):
        ranks = tuple(ranks)
        diffs = tuple(tuple(tuple(row) for row in d) for d in diffs)
        if len(diffs) != len(ranks) - 1:
            raise PreconditionError("need one differential per positive level")
        for i, d in enumerate(diffs, start=1):
            if len(d) != ranks[i - 1] or any(len(row) != ranks[i] for row in d):
                raise PreconditionError(f"differential {i} has the wrong shape")
        self.ring = ring
        self.ranks = ranks
        self.diffs = diffs

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def diff(self, i: int):
        """The map F_i -> F_{i-1}, 1-based."""
        return self.diffs[i - 1]

    def dd_is_zero(self) -> bool:
        zero = self.ring.zero()
        for i in range(1, self.length):
            A, B = self.diff(i), self.diff(i + 1)
            for k in range(self.ranks[i - 1]):
                for j in range(self.ranks[i + 1]):
                    acc = zero
                    for t in range(self.ranks[i]):
                        acc = acc + A[k][t] * B[t][j]
                    if not acc.is_zero():
                        return False
        return True

    def total_degrees(self):
        """Per-level basis degrees, propagated from degree 0 at level 0.

        Returns None when some entry is inhomogeneous or the labels clash.
        """
        degs = [[0] * self.ranks[0]]
        for i in range(1, len(self.ranks)):
            d = self.diff(i)
            level = [None] * self.ranks[i]
            for j in range(self.ranks[i]):
                for k in range(self.ranks[i - 1]):
                    entry = d[k][j]
                    if entry.is_zero():
                        continue
                    if not entry.is_homogeneous():
                        return None
                    cand = entry.degree() + degs[i - 1][k]
                    if level[j] is None:
                        level[j] = cand
                    elif level[j] != cand:
                        return None
                if level[j] is None:
                    return None
            degs.append(level)
        return degs

    def multidegrees(self):
        """Exponent-vector labels when every entry is a single term."""
        n = self.ring.n
        degs = [[(0,) * n] * self.ranks[0]]
        for i in range(1, len(self.ranks)):
            d = self.diff(i)
            level = [None] * self.ranks[i]
            for j in range(self.ranks[i]):
                for k in range(self.ranks[i - 1]):
                    entry = d[k][j]
                    if entry.is_zero():
                        continue
                    if not entry.is_monomial():
                        return None
                    (e,) = entry.terms
                    cand = mono_mul(e, degs[i - 1][k])
                    if level[j] is None:
                        level[j] = cand
                    elif level[j] != cand:
                        return None
                if level[j] is None:
                    return None
            degs.append(level)
        return degs

    def unit_entries(self):
        """(level, row, col) positions holding nonzero constants."""
        out = []
        for i in range(1, self.length + 1):
            d = self.diff(i)
            for j in range(self.ranks[i]):
                for k in range(self.ranks[i - 1]):
                    entry = d[k][j]
                    if not entry.is_zero() and entry.degree() == 0:
                        out.append((i, k, j))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, FreeComplex)
            and other.ring == self.ring
            and other.ranks == self.ranks
            and other.diffs == self.diffs
        )

    def __repr__(self):
        return f"FreeComplex(ranks={self.ranks})"


@dataclass
class MinimalityReport:
    minimal: bool
    offenders: list = field(default_factory=list)  # (level, row, col) unit entries


@dataclass
class ValidationReport:
    dd_zero: bool
    coker_ok: bool
    exact: bool
    minimality: MinimalityReport
    degree_bound: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.dd_zero and self.coker_ok and self.exact


# ---------------------------------------------------------------------------
# Taylor complex


def taylor_complex(I: MonomialIdeal) -> FreeComplex:
    """Taylor resolution of S/I on subsets of the minimal generators."""
    if I.is_zero or I.is_unit:
        raise PreconditionError("Taylor complex needs a proper nonzero ideal")
    gens = I.gens
    m = len(gens)
    if m > TAYLOR_GEN_LIMIT:
        raise PreconditionError(
            f"{m} generators exceed the 2^m basis limit ({TAYLOR_GEN_LIMIT})"
        )
    ring = I.ring

    def lcm_of(subset):
        out = (0,) * ring.n
        for t in subset:
            out = tuple(max(a, b) for a, b in zip(out, gens[t]))
        return out

    levels = [list(itertools.combinations(range(m), k)) for k in range(m + 1)]
    ranks = [len(level) for level in levels]
    diffs = []
    for k in range(1, m + 1):
        index = {s: a for a, s in enumerate(levels[k - 1])}
        mat = [[ring.zero() for _ in levels[k]] for _ in levels[k - 1]]
        for j, subset in enumerate(levels[k]):
            big = lcm_of(subset)
            for t, g in enumerate(subset):
                rest = subset[:t] + subset[t + 1 :]
                quot = mono_div(big, lcm_of(rest))
                sign = 1 if (k - 1 - t) % 2 == 0 else -1
                mat[index[rest]][j] = ring.monomial(quot, sign)
        diffs.append(mat)
    C = FreeComplex(ring, ranks, diffs)
    if not C.dd_is_zero():
        raise AssertionError("Taylor construction produced a non-complex")
    return C


# ---------------------------------------------------------------------------
# minimalization


def minimalize(C: FreeComplex) -> FreeComplex:
    """Split off unit entries until the complex is minimal.

    Cancelling a unit u at position (k, j) of delta_i removes basis element j
    of F_i and k of F_{i-1}; delta_i picks up the correction -c u^{-1} r,
    delta_{i+1} loses row j, delta_{i-1} loses column k. Homology is
    unchanged. Units are cancelled lowest level first, leftmost column first.
    """
    ranks = [list(range(b)) for b in C.ranks]  # surviving basis, by original index
    diffs = [[list(row) for row in d] for d in C.diffs]

    def find_unit():
        for i in range(1, len(ranks)):
            d = diffs[i - 1]
            for j in range(len(d[0]) if d else 0):
                for k in range(len(d)):
                    entry = d[k][j]
                    if not entry.is_zero() and entry.degree() == 0:
                        return i, k, j
        return None

    while True:
        pos = find_unit()
        if pos is None:
            break
        i, k, j = pos
        d = diffs[i - 1]
        u = d[k][j].constant_term()
        uinv = C.ring.field.one / u
        for a in range(len(d)):
            if a == k or d[a][j].is_zero():
                continue
            factor = d[a][j] * uinv
            for b in range(len(d[a])):
                if b != j and not d[k][b].is_zero():
                    d[a][b] = d[a][b] - factor * d[k][b]
        diffs[i - 1] = [
            [row[b] for b in range(len(row)) if b != j]
            for a, row in enumerate(d)
            if a != k
        ]
        if i < len(diffs):
            diffs[i] = [row for a, row in enumerate(diffs[i]) if a != j]
        if i >= 2:
            diffs[i - 2] = [
                [row[b] for b in range(len(row)) if b != k] for row in diffs[i - 2]
            ]
        ranks[i].pop(j)
        ranks[i - 1].pop(k)

    new_ranks = [len(r) for r in ranks]
    while len(new_ranks) > 1 and new_ranks[-1] == 0:
        new_ranks.pop()
        diffs.pop()
    return FreeComplex(C.ring, new_ranks, diffs)


def minimality_report(C: FreeComplex) -> MinimalityReport:
    offenders = C.unit_entries()
    return MinimalityReport(minimal=not offenders, offenders=offenders)


def betti_numbers(I: MonomialIdeal):
    """Ranks of the minimalized Taylor resolution of S/I."""
    return minimalize(taylor_complex(I)).ranks


# ---------------------------------------------------------------------------
# validation


def _graded_piece_basis(ranks_i, degs_i, d, n):
    """[(j, monomial)] basis of the degree-d piece of a free module."""
    out = []
    for j in range(ranks_i):
        rem = d - degs_i[j]
        if rem < 0:
            continue
        for w in monomials_of_degree(n, rem):
            out.append((j, w))
    return out


def _graded_map_rank(C, i, d, degs, field):
    """Rank of the degree-d piece of delta_i, exact over the base field."""
    n = C.ring.n
    src = _graded_piece_basis(C.ranks[i], degs[i], d, n)
    tgt = _graded_piece_basis(C.ranks[i - 1], degs[i - 1], d, n)
    if not src or not tgt:
        return 0, len(src)
    tgt_index = {b: a for a, b in enumerate(tgt)}
    mat = C.diff(i)
    cols = []
    zero = field.zero
    for (j, w) in src:
        col = [zero] * len(tgt)
        for k in range(C.ranks[i - 1]):
            entry = mat[k][j]
            for e, c in entry.terms.items():
                col[tgt_index[(k, mono_mul(e, w))]] = c
        cols.append(col)
    # rank of the transpose equals the rank
    return mat_rank(cols, len(tgt)), len(src)


def _quotient_dim(I: MonomialIdeal, d: int) -> int:
    return len(std_monomials(I, d))


def _multigraded_block_rank(C, i, b, mdegs, field):
    """Rank and source dimension of the multidegree-b block of delta_i."""
    src = [j for j in range(C.ranks[i]) if all(x <= y for x, y in zip(mdegs[i][j], b))]
    tgt = [k for k in range(C.ranks[i - 1])
           if all(x <= y for x, y in zip(mdegs[i - 1][k], b))]
    if not src or not tgt:
        return 0, len(src)
    tgt_index = {k: a for a, k in enumerate(tgt)}
    mat = C.diff(i)
    zero = field.zero
    cols = []
    for j in src:
        col = [zero] * len(tgt)
        for k in tgt:
            entry = mat[k][j]
            if not entry.is_zero():
                ((_, c),) = entry.terms.items()
                col[tgt_index[k]] = c
        cols.append(col)
    return mat_rank(cols, len(tgt)), len(src)


def _validate_blocks(C, I, blocks, rank_fn, dim0_fn, quot_fn, failures):
    """Shared exactness/cokernel sweep over graded blocks of any kind."""
    coker_ok = True
    exact = True
    for b in blocks:
        ranks_b = {}
        dims_b = {}
        for i in range(1, C.length + 1):
            ranks_b[i], dims_b[i] = rank_fn(i, b)
        quotient = dim0_fn(b) - ranks_b.get(1, 0)
        if quotient != quot_fn(b):
            coker_ok = False
            failures.append(
                f"coker(delta_1) has dimension {quotient} != {quot_fn(b)} at degree {b}"
            )
        for i in range(1, C.length + 1):
            null_i = dims_b[i] - ranks_b[i]
            rank_next = ranks_b[i + 1] if i + 1 <= C.length else 0
            if null_i != rank_next:
                exact = False
                failures.append(
                    f"H_{i} nonzero at degree {b} (kernel {null_i}, image {rank_next})"
                )
    return coker_ok, exact


def validate_complex(C: FreeComplex, I: MonomialIdeal, degree_bound=None) -> ValidationReport:
    """Check delta.delta = 0, coker(delta_1) = S/I, and vanishing homology
    degreewise up to the bound (all homology of these complexes lives below
    the maximal basis degree; two extra degrees act as a guard).

    Multihomogeneous complexes are validated blockwise per multidegree over
    the exponent box of the basis labels, which covers every multidegree up
    to a block isomorphism that translates along the unbounded directions.
    """
    failures = []
    dd = C.dd_is_zero()
    if not dd:
        failures.append("delta composed with delta is nonzero")
    report = minimality_report(C)
    degs = C.total_degrees()
    if degs is None:
        return ValidationReport(dd, False, False, report, -1,
                                failures + ["complex is not graded"])
    if C.ranks[0] != 1:
        return ValidationReport(dd, False, False, report, -1,
                                failures + ["level 0 must have rank one"])
    field = C.ring.field
    if not dd:
        return ValidationReport(False, False, False, report,
                                degree_bound or -1, failures)

    mdegs = C.multidegrees()
    if mdegs is not None:
        n = C.ring.n
        box = [max(level[j][r] for level in mdegs for j in range(len(level)))
               for r in range(n)]
        blocks = itertools.product(*(range(b + 2) for b in box))
        coker_ok, exact = _validate_blocks(
            C, I, blocks,
            rank_fn=lambda i, b: _multigraded_block_rank(C, i, b, mdegs, field),
            dim0_fn=lambda b: 1,
            quot_fn=lambda b: 0 if I.contains(b) else 1,
            failures=failures,
        )
        bound = sum(box) + 2
    else:
        if degree_bound is None:
            degree_bound = max(max(level) for level in degs) + 2
        coker_ok, exact = _validate_blocks(
            C, I, range(degree_bound + 1),
            rank_fn=lambda i, d: _graded_map_rank(C, i, d, degs, field),
            dim0_fn=lambda d: len(
                _graded_piece_basis(C.ranks[0], degs[0], d, C.ring.n)
            ),
            quot_fn=lambda d: _quotient_dim(I, d),
            failures=failures,
        )
        bound = degree_bound
    return ValidationReport(dd, coker_ok, exact, report, bound, failures)


# ---------------------------------------------------------------------------
# text format: `complex` / `ring ...` / `ranks: ...` / `diff i:` rows


def format_complex(C: FreeComplex) -> str:
    from .parser import format_ring

    lines = ["complex", format_ring(C.ring), "ranks: " + " ".join(map(str, C.ranks))]
    for i in range(1, C.length + 1):
        lines.append(f"diff {i}:")
        for row in C.diff(i):
            lines.append(", ".join(str(p) for p in row))
    return "\n".join(lines) + "\n"


def parse_complex(text: str) -> FreeComplex:
    from .parser import parse_expression, parse_ring_line

    lines = text.splitlines()
    pos = 0

    def next_content():
        nonlocal pos
        while pos < len(lines) and not lines[pos].strip():
            pos += 1
        if pos >= len(lines):
            raise ParseError("unexpected end of complex file", len(lines), 1)
        pos += 1
        return lines[pos - 1].strip(), pos

    first, ln = next_content()
    if first != "complex":
        raise ParseError("expected the literal 'complex'", ln, 1)
    ring_line, ln = next_content()
    ring = parse_ring_line(ring_line, ln)
    ranks_line, ln = next_content()
    if not ranks_line.startswith("ranks:"):
        raise ParseError("expected 'ranks: b0 b1 ...'", ln, 1)
    try:
        ranks = [int(t) for t in ranks_line[len("ranks:"):].split()]
    except ValueError:
        raise ParseError("ranks must be integers", ln, 1) from None
    if not ranks:
        raise ParseError("empty ranks line", ln, 1)
    diffs = []
    for i in range(1, len(ranks)):
        header, ln = next_content()
        if header != f"diff {i}:":
            raise ParseError(f"expected 'diff {i}:'", ln, 1)
        rows = []
        for _ in range(ranks[i - 1]):
            row_text, ln = next_content()
            entries = row_text.split(",")
            if len(entries) != ranks[i]:
                raise ParseError(
                    f"row has {len(entries)} entries, expected {ranks[i]}", ln, 1
                )
            rows.append([parse_expression(e, ring, ln) for e in entries])
        diffs.append(rows)
    return FreeComplex(ring, ranks, diffs)
