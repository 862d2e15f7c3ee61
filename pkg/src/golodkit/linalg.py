"""Exact linear algebra: RREF, kernels and LP feasibility over Q or F_p.

The generic routines work on dense lists of field elements (Fraction or
FpElement) and are meant for the small per-degree blocks that dominate this
package. A numpy-backed mod-p path covers the larger eliminations inside the
Poincare-series engine.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


# ---------------------------------------------------------------------------
# generic dense elimination


def row_reduce(rows, ncols):
    """Reduced row echelon form; returns (rref rows, pivot column list)."""
    R = [list(r) for r in rows]
    pivots = []
    pr = 0
    for c in range(ncols):
        if pr == len(R):
            break
        pv = next((i for i in range(pr, len(R)) if R[i][c] != 0), None)
        if pv is None:
            continue
        R[pr], R[pv] = R[pv], R[pr]
        inv = R[pr][c]
        if inv != 1:
            R[pr] = [v / inv for v in R[pr]]
        for i in range(len(R)):
            if i != pr and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[pr])]
        pivots.append(c)
        pr += 1
    return R[:pr], pivots


def rank(rows, ncols) -> int:
    if not rows:
        return 0
    return len(row_reduce(rows, ncols)[1])


def kernel_basis(rows, ncols, field):
    """Basis of the right kernel {x : A x = 0} as a list of coordinate lists."""
    one, zero = field.one, field.zero
    if not rows:
        return [[one if j == i else zero for j in range(ncols)] for i in range(ncols)]
    R, pivots = row_reduce(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for r, p in zip(R, pivots):
            if r[free] != 0:
                v[p] = -r[free]
        basis.append(v)
    return basis


class Sifter:
    """Incremental span membership; sift(v) reports whether v enlarges it.

    Rows are kept monic and indexed by pivot; a vector is reduced against the
    row owning its current leading coordinate only, which is linear-time for
    sparse vectors.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.by_pivot = {}

    def sift(self, v, add=True) -> bool:
        v = list(v)
        while True:
            p = next((i for i, a in enumerate(v) if a != 0), None)
            if p is None:
                return False
            row = self.by_pivot.get(p)
            if row is None:
                if add:
                    inv = v[p]
                    if inv != 1:
                        v = [a / inv for a in v]
                    self.by_pivot[p] = v
                return True
            f = v[p]
            v = [a - f * b for a, b in zip(v, row)]

    @property
    def rank(self) -> int:
        return len(self.by_pivot)


# ---------------------------------------------------------------------------
# numpy mod-p path (entries stay < p <= 2**31, products fit int64)


def rref_mod_p(M: np.ndarray, p: int):
    """RREF of an int matrix mod p; returns (rref copy, pivot columns)."""
    M = np.array(M, dtype=np.int64) % p
    nrows, ncols = M.shape
    pivots = []
    pr = 0
    for c in range(ncols):
        if pr == nrows:
            break
        nz = np.nonzero(M[pr:, c])[0]
        if nz.size == 0:
            continue
        i = pr + int(nz[0])
        if i != pr:
            M[[pr, i]] = M[[i, pr]]
        inv = pow(int(M[pr, c]), p - 2, p)
        M[pr] = (M[pr] * inv) % p
        col = M[:, c].copy()
        col[pr] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            M[rows] = (M[rows] - np.outer(col[rows], M[pr])) % p
        pivots.append(c)
        pr += 1
    return M[:pr], pivots


def rank_mod_p(M: np.ndarray, p: int) -> int:
    if M.size == 0:
        return 0
    return len(rref_mod_p(M, p)[1])


def kernel_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Right kernel basis mod p, one vector per row."""
    nrows, ncols = M.shape
    if nrows == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref_mod_p(M, p)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    K = np.zeros((len(free), ncols), dtype=np.int64)
    for k, c in enumerate(free):
        K[k, c] = 1
        for r, pc in enumerate(pivots):
            K[k, pc] = (-int(R[r, c])) % p
    return K


class SifterP:
    """Mod-p counterpart of Sifter, on numpy int64 vectors."""

    def __init__(self, ncols, p):
        self.p = p
        self.ncols = ncols
        self.by_pivot = {}

    def sift(self, v, add=True) -> bool:
        v = np.array(v, dtype=np.int64) % self.p
        while True:
            nz = np.nonzero(v)[0]
            if nz.size == 0:
                return False
            pc = int(nz[0])
            row = self.by_pivot.get(pc)
            if row is None:
                if add:
                    v = (v * pow(int(v[pc]), self.p - 2, self.p)) % self.p
                    self.by_pivot[pc] = v
                return True
            v = (v - int(v[pc]) * row) % self.p

    @property
    def rank(self) -> int:
        return len(self.by_pivot)


# ---------------------------------------------------------------------------
# exact rational LP feasibility (phase-1 simplex, Bland's rule)


def lp_feasible(A_ub, b_ub, A_eq, b_eq) -> bool:
    """Decide feasibility of {x >= 0, A_ub x <= b_ub, A_eq x = b_eq} over Q.

    Small dense phase-1 simplex with Bland's rule, so it always terminates.
    Inputs are sequences of rational-like numbers; exact throughout.
    """
    nx = len(A_ub[0]) if A_ub else len(A_eq[0])
    ns = len(A_ub)
    rows = []
    for i, (a, b) in enumerate(zip(A_ub, b_ub)):
        r = [Fraction(v) for v in a] + [Fraction(0)] * ns
        r[nx + i] = Fraction(1)
        rows.append((r, Fraction(b)))
    for a, b in zip(A_eq, b_eq):
        rows.append(([Fraction(v) for v in a] + [Fraction(0)] * ns, Fraction(b)))

    m = len(rows)
    width = nx + ns
    T = []
    for i, (r, b) in enumerate(rows):
        if b < 0:
            r, b = [-v for v in r], -b
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(r + art + [b])
    total = width + m
    basis = [width + i for i in range(m)]

    # reduced-cost row for minimizing the sum of artificials
    red = [Fraction(0)] * (total + 1)
    for i in range(m):
        for j in range(total + 1):
            red[j] -= T[i][j]
    for i in range(m):
        red[width + i] = Fraction(0)

    blocked = [False] * total  # artificials may not re-enter once they leave
    while True:
        enter = next(
            (j for j in range(total) if not blocked[j] and red[j] < 0), None
        )
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][total] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded phase-1 objective cannot happen; defensive
            return False
        piv = T[leave][enter]
        if piv != 1:
            T[leave] = [v / piv for v in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * b for a, b in zip(T[i], T[leave])]
        if red[enter] != 0:
            f = red[enter]
            red = [a - f * b for a, b in zip(red, T[leave])]
        if basis[leave] >= width:
            blocked[basis[leave]] = True
        basis[leave] = enter

    residual = sum(T[i][total] for i in range(m) if basis[i] >= width)
    return residual == 0
