"""Lattice algorithms over the integers.

LLL reduction in exact rational arithmetic, column-style Hermite normal
form with transformation matrix, integer kernel bases, and the combined
kernel-plus-particular-solution computation for A x = b.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Tuple

from .exact import (
    DimensionError,
    IntMatrix,
    IntVector,
    RankError,
    _bezout,
    gram_schmidt,
    mat_vec,
    vec,
)


@dataclass(frozen=True)
class LLLParams:
    """Reduction quality parameter.

    delta = 1 (strongest reduction) still terminates on integer input; the
    polynomial bound only holds below 1.
    """

    delta: Fraction = Fraction(3, 4)

    def __post_init__(self):
        d = Fraction(self.delta)
        if not Fraction(1, 4) < d <= 1:
            raise ValueError("delta must lie in (1/4, 1], got %s" % d)
        object.__setattr__(self, "delta", d)


def lll_reduce(basis: IntMatrix, params: LLLParams = None) -> IntMatrix:
    """LLL-reduce the columns of ``basis`` (they must be linearly independent).

    Exact rational arithmetic throughout; the Gram-Schmidt coefficients are
    carried along incrementally and updated in place on size reductions and
    swaps, so no orthogonalization is recomputed from scratch.  Deterministic:
    column k is size-reduced against k-1..0, then the exchange condition
    ||b*_k||^2 >= (delta - mu_{k,k-1}^2) ||b*_{k-1}||^2 is tested.
    """
    if params is None:
        params = LLLParams()
    delta = params.delta
    n = basis.cols
    gs = gram_schmidt(basis)  # validates independence (RankError otherwise)
    if n <= 1:
        return basis
    b = [list(basis.col(j)) for j in range(n)]
    mu = [list(r) for r in gs.mu]
    bn = list(gs.norms_sq)

    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            if 2 * abs(mu[k][j]) > 1:
                q = round(mu[k][j])
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for t in range(j):
                    mu[k][t] -= q * mu[j][t]
                mu[k][j] -= q
        if bn[k] >= (delta - mu[k][k - 1] ** 2) * bn[k - 1]:
            k += 1
            continue
        m = mu[k][k - 1]
        bnew = bn[k] + m * m * bn[k - 1]
        mu[k][k - 1] = m * bn[k - 1] / bnew
        bn[k] = bn[k - 1] * bn[k] / bnew
        bn[k - 1] = bnew
        b[k - 1], b[k] = b[k], b[k - 1]
        for j in range(k - 1):
            mu[k - 1][j], mu[k][j] = mu[k][j], mu[k - 1][j]
        for i in range(k + 1, n):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
        k = max(k - 1, 1)
    return IntMatrix.from_cols([tuple(c) for c in b], rows=basis.rows)


def is_lll_reduced(basis: IntMatrix, params: LLLParams = None) -> bool:
    """Independent check of both LLL conditions, via a fresh orthogonalization."""
    if params is None:
        params = LLLParams()
    gs = gram_schmidt(basis)
    half = Fraction(1, 2)
    for j in range(basis.cols):
        for k in range(j):
            if abs(gs.mu[j][k]) > half:
                return False
        if j >= 1:
            lhs = gs.norms_sq[j] + gs.mu[j][j - 1] ** 2 * gs.norms_sq[j - 1]
            if lhs < params.delta * gs.norms_sq[j - 1]:
                return False
    return True


# ---------------------------------------------------------------------------
# Hermite normal form (column operations, lower triangular)


@dataclass(frozen=True)
class HnfResult:
    """A * u = (d | 0) with u unimodular and d lower triangular, nonnegative,
    each diagonal entry the strict maximum of its row."""

    d: IntMatrix
    u: IntMatrix


def _column_echelon(a: IntMatrix):
    """Reduce ``a`` to canonical column echelon form by unimodular column ops.

    Returns (h, u, pivots) as nested lists / list: h = a @ u, pivots[t] is the
    row of the pivot in column t.  Works for any shape and rank; columns past
    the rank come out zero.
    """
    m, n = a.rows, a.cols
    h = [list(r) for r in a.data]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def colop_swap(j0, j1):
        for row in h:
            row[j0], row[j1] = row[j1], row[j0]
        for row in u:
            row[j0], row[j1] = row[j1], row[j0]

    def colop_neg(j):
        for row in h:
            row[j] = -row[j]
        for row in u:
            row[j] = -row[j]

    def colop_axpy(dst, src, q):
        # column dst -= q * column src
        if q == 0:
            return
        for row in h:
            row[dst] -= q * row[src]
        for row in u:
            row[dst] -= q * row[src]

    def colop_combine(i, jt, jo):
        # unimodular 2x2 mix so that column jt picks up gcd(h[i][jt], h[i][jo])
        # at row i and column jo becomes zero there
        g, p, q = _bezout(h[i][jt], h[i][jo])
        aa, bb = h[i][jt] // g, h[i][jo] // g
        for row in h:
            x, y = row[jt], row[jo]
            row[jt], row[jo] = p * x + q * y, aa * y - bb * x
        for row in u:
            x, y = row[jt], row[jo]
            row[jt], row[jo] = p * x + q * y, aa * y - bb * x

    pivots: List[int] = []
    t = 0
    for i in range(m):
        if t == n:
            break
        j0 = next((j for j in range(t, n) if h[i][j] != 0), None)
        if j0 is None:
            continue
        if j0 != t:
            colop_swap(j0, t)
        for j in range(t + 1, n):
            if h[i][j] != 0:
                colop_combine(i, t, j)
        if h[i][t] < 0:
            colop_neg(t)
        for j in range(t):
            colop_axpy(j, t, h[i][j] // h[i][t])
        pivots.append(i)
        t += 1
    return h, u, pivots


def hnf(a: IntMatrix) -> HnfResult:
    """Hermite normal form of a full-row-rank matrix: a @ u = (d | 0)."""
    h, u, pivots = _column_echelon(a)
    if len(pivots) < a.rows or pivots != list(range(a.rows)):
        missing = next(i for i in range(a.rows) if i not in pivots)
        raise RankError("matrix does not have full row rank (row %d)" % missing, index=missing)
    d = IntMatrix.from_rows([row[: a.rows] for row in h], cols=a.rows)
    return HnfResult(d, IntMatrix.from_rows(u, cols=a.cols))


def lattice_hnf(basis: IntMatrix) -> IntMatrix:
    """Canonical basis of the lattice generated by the columns of ``basis``.

    Two matrices generate the same column lattice iff their canonical bases
    are identical, which makes this the equality test for lattices.
    """
    h, _, pivots = _column_echelon(basis)
    r = len(pivots)
    return IntMatrix.from_rows([row[:r] for row in h], cols=r)


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Lattice basis of {x integer | a x = 0} (all of it, not a sublattice)."""
    _, u, pivots = _column_echelon(a)
    r = len(pivots)
    return IntMatrix.from_rows([row[r:] for row in u], cols=a.cols - r)


class IntegerSolver:
    """Repeated integer solves of a x = rhs against a fixed matrix.

    The column echelon form is computed once; each solve is then a cheap
    forward substitution with divisibility checks plus a full residual
    check (so inconsistent right-hand sides are caught even on the rows
    that carry no pivot).
    """

    def __init__(self, a: IntMatrix):
        self.a = a
        self.h, self.u, self.pivots = _column_echelon(a)

    def solve(self, rhs) -> Optional[IntVector]:
        if len(rhs) != self.a.rows:
            raise DimensionError("rhs length %d for %d rows" % (len(rhs), self.a.rows))
        h, u, pivots = self.h, self.u, self.pivots
        n = self.a.cols
        w = [0] * n
        for t, i in enumerate(pivots):
            val = rhs[i] - sum(h[i][j] * w[j] for j in range(t))
            if val % h[i][t] != 0:
                return None
            w[t] = val // h[i][t]
        x = tuple(sum(u[i][j] * w[j] for j in range(n)) for i in range(n))
        if mat_vec(self.a, x) != tuple(rhs):
            return None
        return x


def solve_integer(a: IntMatrix, rhs: IntVector) -> Optional[IntVector]:
    """One integer solution of a x = rhs, or None when none exists."""
    return IntegerSolver(a).solve(rhs)


# ---------------------------------------------------------------------------
# Kernel lattice basis plus particular solution of A x = b


@dataclass(frozen=True)
class KernelSolveResult:
    """Kernel basis and particular solution for an integer system A x = b.

    q        -- n x (n-m) matrix whose columns are a reduced basis of the
                kernel lattice of A
    x0       -- integer vector with A x0 = scale_k * b
    feasible -- True iff scale_k == 1, i.e. x0 actually solves A x = b
    scale_k  -- smallest positive integer k such that A x = k b has an
                integer solution (1 when feasible)
    """

    q: IntMatrix
    x0: IntVector
    feasible: bool
    scale_k: int


def kernel_and_solution(a: IntMatrix, b, strategy: str = "embedding",
                        params: LLLParams = None) -> KernelSolveResult:
    """Compute a reduced kernel basis of A together with a solution of A x = b.

    strategy "embedding" runs LLL once on an (n+m+1) x (n+1) weighted
    embedding whose reduced basis exposes both the kernel and the solution;
    strategy "hnf" takes the kernel columns from the HNF transformation
    matrix and back-substitutes for the solution.  Both agree on the kernel
    lattice and on scale_k, which the test suite cross-checks.
    """
    b = vec(b)
    if len(b) != a.rows:
        raise DimensionError("rhs length %d for %d rows" % (len(b), a.rows))
    if strategy == "embedding":
        return _solve_embedding(a, b, params)
    if strategy == "hnf":
        return _solve_hnf(a, b, params)
    raise ValueError("unknown strategy %r" % strategy)


def _solve_hnf(a: IntMatrix, b: IntVector, params) -> KernelSolveResult:
    m, n = a.rows, a.cols
    res = hnf(a)
    kern = IntMatrix.from_rows([row[m:] for row in res.u.data], cols=n - m)
    if kern.cols > 0:
        kern = lll_reduce(kern, params)
    # forward substitution through the triangular d, tracking denominators
    y: List[Fraction] = []
    for i in range(m):
        val = Fraction(b[i]) - sum(res.d.data[i][j] * y[j] for j in range(i))
        y.append(val / res.d.data[i][i])
    k = lcm(*(f.denominator for f in y)) if y else 1
    w = [int(k * f) for f in y] + [0] * (n - m)
    x0 = mat_vec(res.u, w)
    return KernelSolveResult(kern, x0, k == 1, k)


def _solve_embedding(a: IntMatrix, b: IntVector, params) -> KernelSolveResult:
    m, n = a.rows, a.cols
    # reject rank-deficient input up front; the embedding would only fail opaquely
    _, _, pivots = _column_echelon(a)
    if pivots != list(range(m)):
        missing = next(i for i in range(m) if i not in pivots)
        raise RankError("matrix does not have full row rank (row %d)" % missing, index=missing)
    biggest = max([1] + [abs(e) for row in a.data for e in row] + [abs(e) for e in b])
    n1 = 2 * n * biggest
    for _attempt in range(4):
        n2 = n1 * n1
        emb_cols = []
        for j in range(n):
            col = [1 if i == j else 0 for i in range(n)] + [0] + [n2 * a.data[i][j] for i in range(m)]
            emb_cols.append(col)
        emb_cols.append([0] * n + [n1] + [-n2 * b[i] for i in range(m)])
        red = lll_reduce(IntMatrix.from_cols(emb_cols, rows=n + m + 1), params)
        kernel_cols = []
        sol = None
        ok = True
        for j in range(red.cols):
            col = red.col(j)
            x, tval, bottom = col[:n], col[n], col[n + 1 :]
            if any(bottom):
                continue
            if tval == 0:
                kernel_cols.append(x)
            elif sol is None:
                sol = (x, tval // n1)
            else:
                ok = False
        if ok and sol is not None and len(kernel_cols) == n - m:
            x, t = sol
            k = abs(t)
            x0 = tuple(e if t > 0 else -e for e in x)
            if mat_vec(a, x0) != tuple(k * e for e in b):
                raise ArithmeticError("embedding produced an inconsistent solution column")
            q = IntMatrix.from_cols(kernel_cols, rows=n)
            return KernelSolveResult(q, x0, k == 1, k)
        n1 = n1 * n1  # weights too small to separate the blocks; square and retry
    raise ArithmeticError("embedding failed to separate kernel and solution after 4 weight levels")
