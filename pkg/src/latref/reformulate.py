"""Reformulation of integer equality systems through their kernel lattice.

Given A x = b over the integers, the kernel lattice of A and one integer
solution x0 describe the full solution set.  Splitting a reduced kernel
basis Q into short columns R and long columns S yields a smaller system
P x = P x0 + T mu whose integer solutions project onto exactly the same
x-set; the long directions survive as the aggregated variables mu.  When
the input is a single row and one long column, the multipliers expose a
two-generator decomposition of the row, which the knapsack module turns
into width and Frobenius statements.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .exact import (
    DimensionError,
    DomainError,
    IntMatrix,
    IntVector,
    RankError,
    identity,
    mat_mul,
    mat_vec,
    norm_sq,
    transpose,
    vec,
)
from .knapsack import Decomposition, ValidationError, make_decomposition
from .lattice import (
    IntegerSolver,
    LLLParams,
    hnf,
    kernel_and_solution,
    kernel_basis,
    lll_reduce,
)


class IntegralityError(ArithmeticError):
    """An integer solution guaranteed by construction failed to exist."""


class IntegerInfeasibleError(Exception):
    """A x = b has no integer solution; A x = scale_k * b does."""

    def __init__(self, scale_k: int, witness: IntVector):
        super().__init__(
            "system has no integer solution (scale_k = %d admits one)" % scale_k
        )
        self.scale_k = scale_k
        self.witness = witness


@dataclass(frozen=True)
class EqualitySystem:
    """A x = b with optional per-variable integer bounds.

    A must have full row rank; bounds, when present, cover every variable
    (use None entries for unbounded directions).
    """

    a: IntMatrix
    b: IntVector
    var_lower: Optional[tuple] = None
    var_upper: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "b", vec(self.b))
        if len(self.b) != self.a.rows:
            raise DimensionError(
                "b has length %d for %d rows" % (len(self.b), self.a.rows)
            )
        for name in ("var_lower", "var_upper"):
            v = getattr(self, name)
            if v is not None:
                v = tuple(v)
                if len(v) != self.a.cols:
                    raise DimensionError("%s must have one entry per variable" % name)
                object.__setattr__(self, name, v)
        if self.var_lower is not None and self.var_upper is not None:
            for lo, hi in zip(self.var_lower, self.var_upper):
                if lo is not None and hi is not None and lo > hi:
                    raise DomainError("variable bounds cross: %s > %s" % (lo, hi))
        hnf(self.a)  # full row rank or RankError

    @property
    def m(self) -> int:
        return self.a.rows

    @property
    def n(self) -> int:
        return self.a.cols


@dataclass(frozen=True)
class ExtendedFormulation:
    """P x = P x0 + T mu over the integers, equivalent to the source system.

    p is (m+s) x n, m_mat the m x (m+s) recombination with A = m_mat @ p,
    t the (m+s) x s basis of the kernel lattice of m_mat, px0 = p @ x0.
    """

    p: IntMatrix
    m_mat: IntMatrix
    t: IntMatrix
    x0: IntVector
    s: int
    px0: IntVector


@dataclass(frozen=True)
class BasisSplit:
    """Reduced kernel basis, column-partitioned into short and long blocks."""

    short: IntMatrix
    long: IntMatrix

    @property
    def r(self) -> int:
        return self.short.cols

    @property
    def s(self) -> int:
        return self.long.cols


@dataclass(frozen=True)
class FixedSplit:
    """Put exactly s columns (the longest ones) into the long block."""

    s: int


@dataclass(frozen=True)
class RatioSplit:
    """Split at the largest jump of squared column norms of ratio >= rho;
    with no such jump every column is long."""

    rho: int = 100


def project_affine(c: IntMatrix, d: IntMatrix, b) -> Tuple[IntMatrix, IntVector]:
    """Eliminate the y-variables from {x | exists y: C x + D y = b}.

    Left-multiplies by a kernel basis of D^T; over the reals the returned
    system has exactly the same x-solution set.
    """
    b = vec(b)
    if d.rows != c.rows or len(b) != c.rows:
        raise DimensionError("C, D, b must agree on the number of rows")
    delta = kernel_basis(transpose(d))
    dt = transpose(delta)
    return mat_mul(dt, c), mat_vec(dt, b)


def split_basis(q: IntMatrix, policy) -> BasisSplit:
    """Partition the columns of a reduced kernel basis into short | long.

    Columns are first stably sorted by ascending squared norm.  FixedSplit
    takes the last s columns as long; RatioSplit looks for the largest
    index where consecutive squared norms jump by a factor >= rho and
    splits there, declaring everything long when no jump exists.
    """
    cols = sorted(q.col_list(), key=norm_sq)
    d = len(cols)
    if isinstance(policy, FixedSplit):
        s = policy.s
        if not 0 <= s <= d:
            raise DomainError("fixed split s = %d outside [0, %d]" % (s, d))
    elif isinstance(policy, RatioSplit):
        s = d
        for j in range(d - 1, 0, -1):
            if norm_sq(cols[j]) >= policy.rho * norm_sq(cols[j - 1]):
                s = d - j
                break
    else:
        raise TypeError("policy must be FixedSplit or RatioSplit, got %r" % (policy,))
    return BasisSplit(
        IntMatrix.from_cols(cols[: d - s], rows=q.rows),
        IntMatrix.from_cols(cols[d - s :], rows=q.rows),
    )


def dual_kernel(r: IntMatrix, params: LLLParams = None) -> IntMatrix:
    """Reduced basis of {y integer | R^T y = 0}, as columns of an n x (n-r) matrix.

    For an empty R this is all of Z^n and the identity is returned.
    """
    n = r.rows
    if r.cols == 0:
        return identity(n)
    kern = kernel_basis(transpose(r))
    if kern.cols != n - r.cols:
        raise RankError("short block has dependent columns")
    reduced = lll_reduce(kern, params)
    # Negating a column changes neither reducedness nor the lattice; fixing
    # the sign of the trailing entry makes the output deterministic up to
    # the order LLL settles on.
    cols = []
    for c in reduced.col_list():
        last = next((x for x in reversed(c) if x != 0), 0)
        cols.append(tuple(-x for x in c) if last < 0 else c)
    return IntMatrix.from_cols(cols, rows=n)


def solve_multipliers(p: IntMatrix, a: IntMatrix) -> IntMatrix:
    """The unique M with M P = A, solved row-by-row over the integers.

    P must have full row rank; failure to find an integer solution means
    the inputs were not produced by the reformulation pipeline.
    """
    solver = IntegerSolver(transpose(p))
    rows = []
    for i in range(a.rows):
        y = solver.solve(a.row(i))
        if y is None:
            raise IntegralityError("row %d of A is not an integer combination of P's rows" % i)
        rows.append(y)
    return IntMatrix.from_rows(rows, cols=p.rows)


def build_extended(sys: EqualitySystem, split: BasisSplit, q: IntMatrix,
                   x0, params: LLLParams = None) -> ExtendedFormulation:
    """Assemble the extended formulation for a chosen kernel split.

    P spans the dual of the short block, M recombines A = M P, T = P S.
    When the Hermite form of P is (D|0) with D != I the whole system is
    rescaled by D^{-1} (P must hit all of Z^{m+s} for integer-equivalence
    statements downstream), and M, T are re-derived from the rescaled P.
    """
    x0 = vec(x0)
    if mat_vec(sys.a, x0) != sys.b:
        raise ValidationError("x0 does not solve A x = b")
    for col in q.col_list():
        if any(mat_vec(sys.a, col)):
            raise ValidationError("kernel matrix has a column outside the kernel")
    own = sorted(q.col_list())
    got = sorted(split.short.col_list() + split.long.col_list())
    if own != got:
        raise ValidationError("split columns do not match the kernel basis")

    p = transpose(dual_kernel(split.short, params))
    res = hnf(p)
    if res.d.data != identity(p.rows).data:
        p = _left_divide(res.d, p)
    m_mat = solve_multipliers(p, sys.a)
    t = mat_mul(p, split.long)
    return ExtendedFormulation(p, m_mat, t, x0, split.s, mat_vec(p, x0))


def _left_divide(d: IntMatrix, p: IntMatrix) -> IntMatrix:
    """D^{-1} P for lower-triangular D; entries are guaranteed integral."""
    k = d.rows
    out = []
    for j in range(p.cols):
        col = p.col(j)
        y: List[Fraction] = []
        for i in range(k):
            val = Fraction(col[i]) - sum(d.data[i][t] * y[t] for t in range(i))
            y.append(val / d.data[i][i])
        if any(f.denominator != 1 for f in y):
            raise IntegralityError("Hermite rescaling of P produced non-integers")
        out.append(tuple(int(f) for f in y))
    return IntMatrix.from_cols(out, rows=k)


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of enumerating a box: every discrepancy witness, both ways."""

    points_checked: int
    missing: Tuple[IntVector, ...]  # in the original solution set, not in the extended one
    extra: Tuple[IntVector, ...]    # representable by the extended system, not a solution

    @property
    def equivalent(self) -> bool:
        return not self.missing and not self.extra


def verify_formulation_equivalence(sys: EqualitySystem, ef: ExtendedFormulation,
                                   lo, hi) -> EquivalenceReport:
    """Enumerate every integer point of the box [lo, hi] and compare
    membership in {x | A x = b} against solvability of T mu = P x - P x0.
    """
    lo, hi = vec(lo), vec(hi)
    if len(lo) != sys.n or len(hi) != sys.n:
        raise DimensionError("box bounds must have one entry per variable")
    tsolver = IntegerSolver(ef.t)
    arows = sys.a.data
    prows = ef.p.data
    b = sys.b
    px0 = ef.px0
    missing = []
    extra = []
    count = 0
    for x in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        count += 1
        in_x = all(sum(r[i] * x[i] for i in range(len(x))) == bi for r, bi in zip(arows, b))
        rhs = tuple(
            sum(r[i] * x[i] for i in range(len(x))) - p0 for r, p0 in zip(prows, px0)
        )
        in_ext = tsolver.solve(rhs) is not None
        if in_x and not in_ext:
            missing.append(x)
        elif in_ext and not in_x:
            extra.append(x)
    return EquivalenceReport(count, tuple(missing), tuple(extra))


@dataclass(frozen=True)
class DetectionResult:
    """Everything detect_decomposition learned about a system."""

    formulation: ExtendedFormulation
    split: BasisSplit
    q: IntMatrix
    decomposition: Optional[Decomposition]
    decomposition_error: Optional[str]


def detect_decomposition(sys: EqualitySystem, policy=None,
                         strategy: str = "embedding",
                         params: LLLParams = None) -> DetectionResult:
    """Run the full detection pipeline on A x = b.

    Computes a reduced kernel basis and a particular solution, splits the
    basis by the given policy (ratio 100 by default), and builds the
    extended formulation.  For one-row systems split with s = 1 the
    two-generator decomposition record is attached, with the multiplier
    rows ordered so that m1 >= m2.  Raises IntegerInfeasibleError when
    the system has no integer solution at all.
    """
    if policy is None:
        policy = RatioSplit()
    ks = kernel_and_solution(sys.a, sys.b, strategy=strategy, params=params)
    if not ks.feasible:
        raise IntegerInfeasibleError(ks.scale_k, ks.x0)
    split = split_basis(ks.q, policy)
    ef = build_extended(sys, split, ks.q, ks.x0, params)
    deco = None
    err = None
    if sys.m == 1 and split.s == 1:
        m1, m2 = ef.m_mat.data[0]
        p1, p2 = ef.p.row(0), ef.p.row(1)
        if abs(m1) < abs(m2):
            m1, m2, p1, p2 = m2, m1, p2, p1
        try:
            deco = make_decomposition(sys.a.row(0), p1, p2, m1, m2)
        except (ValidationError, ValueError) as e:
            err = str(e)
    return DetectionResult(ef, split, ks.q, deco, err)
