"""Exact LP-based feasibility testing for the original and reformulated systems.

Everything here runs in rational arithmetic: the simplex solver keeps a dense
Fraction tableau and uses Bland's rule, so it terminates without tolerances,
and every answer carries a certificate that is re-verified before it is
returned.  Branch and bound sits on top of that, solving one feasibility LP
per node plus two bound probes for the chosen branching variable.

Variables are addressed by name: "x0", "x1", ... for the structural columns
and "mu0", "mu1", ... for the multipliers of an extended formulation.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import DimensionError, DomainError, IntMatrix, mat_vec
from .lattice import LLLParams, kernel_and_solution
from .reformulate import (
    EqualitySystem,
    ExtendedFormulation,
    FixedSplit,
    IntegerInfeasibleError,
    build_extended,
    split_basis,
)

Rat = Fraction
Bound = Optional[Fraction]

_AT_LOWER, _AT_UPPER, _FREE, _BASIC = 0, 1, 2, 3


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise DomainError("expected an exact rational, got %r" % (x,))


def _opt_rat(x) -> Bound:
    return None if x is None else _rat(x)


@dataclass(frozen=True)
class LpProblem:
    """max/min objective . x  subject to  eq_lhs x = eq_rhs, bounds on x.

    var_bounds holds one (lower, upper) pair per column; None means the
    direction is unbounded.
    """

    objective: Tuple[Rat, ...]
    eq_lhs: Tuple[Tuple[Rat, ...], ...]
    eq_rhs: Tuple[Rat, ...]
    var_bounds: Tuple[Tuple[Bound, Bound], ...]

    def __post_init__(self):
        obj = tuple(_rat(c) for c in self.objective)
        lhs = tuple(tuple(_rat(v) for v in row) for row in self.eq_lhs)
        rhs = tuple(_rat(v) for v in self.eq_rhs)
        bounds = tuple((_opt_rat(lo), _opt_rat(hi)) for lo, hi in self.var_bounds)
        n = len(obj)
        if any(len(row) != n for row in lhs) or len(bounds) != n:
            raise DimensionError("objective, rows and bounds disagree on column count")
        if len(rhs) != len(lhs):
            raise DimensionError("rhs length does not match row count")
        for lo, hi in bounds:
            if lo is not None and hi is not None and lo > hi:
                raise DomainError("variable bounds cross: %s > %s" % (lo, hi))
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "eq_lhs", lhs)
        object.__setattr__(self, "eq_rhs", rhs)
        object.__setattr__(self, "var_bounds", bounds)

    @property
    def ncols(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[Rat] = None
    point: Optional[Tuple[Rat, ...]] = None
    dual: Optional[Tuple[Rat, ...]] = None
    farkas: Optional[Tuple[Rat, ...]] = None
    ray: Optional[Tuple[Rat, ...]] = None


class _Simplex:
    """Bounded-variable two-phase simplex on a dense rational tableau.

    The artificial columns are kept for the whole solve; after phase 1 they
    are fixed to zero, which both blocks re-entry and keeps B^-1 readable
    off the tableau for the dual and Farkas certificates.
    """

    def __init__(self, p: LpProblem):
        self.p = p
        self.m = len(p.eq_lhs)
        self.n = p.ncols
        self.ncols = self.n + self.m
        self.lo: List[Bound] = [b[0] for b in p.var_bounds] + [Fraction(0)] * self.m
        self.hi: List[Bound] = [b[1] for b in p.var_bounds] + [None] * self.m
        self.status = []
        self.val: List[Rat] = []  # current value of every column
        for j in range(self.n):
            lo, hi = self.lo[j], self.hi[j]
            if lo is not None:
                self.status.append(_AT_LOWER)
                self.val.append(lo)
            elif hi is not None:
                self.status.append(_AT_UPPER)
                self.val.append(hi)
            else:
                self.status.append(_FREE)
                self.val.append(Fraction(0))

        resid = [
            p.eq_rhs[i] - sum(p.eq_lhs[i][j] * self.val[j] for j in range(self.n))
            for i in range(self.m)
        ]
        self.art_sign = [1 if r >= 0 else -1 for r in resid]
        # tab = B^-1 [A | S] with B the (signed) artificial columns, so the
        # artificial block starts as the identity.
        self.tab: List[List[Rat]] = []
        for i in range(self.m):
            s = self.art_sign[i]
            row = [s * p.eq_lhs[i][j] for j in range(self.n)]
            row += [Fraction(1) if k == i else Fraction(0) for k in range(self.m)]
            self.tab.append(row)
        self.basis = list(range(self.n, self.ncols))
        for i in range(self.m):
            self.status.append(_BASIC)
            self.val.append(abs(resid[i]))

    # -- certificates ------------------------------------------------------

    def _dual(self, cost: List[Rat]) -> List[Rat]:
        """y = c_B B^-1, read off the artificial block of the tableau."""
        y = []
        for i in range(self.m):
            col = self.n + i
            y.append(
                self.art_sign[i]
                * sum(cost[self.basis[k]] * self.tab[k][col] for k in range(self.m))
            )
        return y

    def _column_dot(self, y: Sequence[Rat], j: int) -> Rat:
        return sum(y[i] * self.p.eq_lhs[i][j] for i in range(self.m))

    # -- core iteration ----------------------------------------------------

    def _reduced_costs(self, cost: List[Rat]) -> List[Rat]:
        d = []
        for j in range(self.ncols):
            z = sum(cost[self.basis[k]] * self.tab[k][j] for k in range(self.m))
            d.append(cost[j] - z)
        return d

    def _entering(self, d: List[Rat]) -> Optional[Tuple[int, int]]:
        for j in range(self.ncols):
            st = self.status[j]
            if st == _BASIC:
                continue
            lo, hi = self.lo[j], self.hi[j]
            if lo is not None and hi is not None and lo == hi:
                continue  # fixed column, can never improve
            if st == _AT_LOWER and d[j] > 0:
                return j, 1
            if st == _AT_UPPER and d[j] < 0:
                return j, -1
            if st == _FREE and d[j] != 0:
                return j, (1 if d[j] > 0 else -1)
        return None

    def _step(self, j: int, dire: int) -> Optional[int]:
        """One ratio-test move for entering column j; returns the pivot row,
        or None when the move was a bound flip.  Raises on an unbounded ray
        by returning -1 sentinel instead (caller decides)."""
        col = [self.tab[i][j] for i in range(self.m)]
        best: Bound = None
        leave_var = None
        leave_row = None
        if dire > 0 and self.hi[j] is not None:
            best, leave_var = self.hi[j] - self.val[j], j
        elif dire < 0 and self.lo[j] is not None:
            best, leave_var = self.val[j] - self.lo[j], j
        for i in range(self.m):
            delta = -dire * col[i]  # change of basic i per unit step
            if delta == 0:
                continue
            b = self.basis[i]
            if delta < 0:
                if self.lo[b] is None:
                    continue
                theta = (self.val[b] - self.lo[b]) / (-delta)
            else:
                if self.hi[b] is None:
                    continue
                theta = (self.hi[b] - self.val[b]) / delta
            if best is None or theta < best or (theta == best and b < leave_var):
                best, leave_var, leave_row = theta, b, i
        if best is None:
            return -1  # unbounded direction
        theta = best
        newval = self.val[j] + dire * theta
        for i in range(self.m):
            self.val[self.basis[i]] -= dire * col[i] * theta
        self.val[j] = newval
        if leave_var == j:  # bound flip, basis unchanged
            if self.status[j] != _FREE:
                self.status[j] = _AT_UPPER if dire > 0 else _AT_LOWER
            return None
        i = leave_row
        b = self.basis[i]
        self.status[b] = (
            _AT_LOWER
            if (self.lo[b] is not None and self.val[b] == self.lo[b])
            else _AT_UPPER
        )
        self.status[j] = _BASIC
        self.basis[i] = j
        piv = self.tab[i][j]
        self.tab[i] = [v / piv for v in self.tab[i]]
        for k in range(self.m):
            if k != i and self.tab[k][j] != 0:
                f = self.tab[k][j]
                self.tab[k] = [a - f * b2 for a, b2 in zip(self.tab[k], self.tab[i])]
        return i

    def _optimize(self, cost: List[Rat]):
        """Run to optimality for max cost.x; returns ("optimal",) or
        ("unbounded", j, dire) for the escaping column."""
        while True:
            d = self._reduced_costs(cost)
            pick = self._entering(d)
            if pick is None:
                return ("optimal",)
            j, dire = pick
            if self._step(j, dire) == -1:
                return ("unbounded", j, dire)

    # -- public driver -----------------------------------------------------

    def solve_max(self) -> LpResult:
        bad = self._phase1()
        if bad is not None:
            return bad
        return self.reoptimize(self.p.objective)

    def _phase1(self) -> Optional[LpResult]:
        phase1 = [Fraction(0)] * self.n + [Fraction(-1)] * self.m
        out = self._optimize(phase1)
        if out[0] != "optimal":
            raise ArithmeticError("phase 1 cannot be unbounded")
        infeas = sum(self.val[self.n + i] for i in range(self.m))
        if infeas > 0:
            y = self._dual(phase1)
            farkas = tuple(-v for v in y)
            self._check_farkas(farkas)
            return LpResult(status="infeasible", farkas=farkas)
        for i in range(self.m):
            self.hi[self.n + i] = Fraction(0)
        return None

    def reoptimize(self, objective: Sequence[Rat]) -> LpResult:
        """Maximize another objective from the current feasible basis.  Only
        valid after a solve that did not report infeasible."""
        cost = list(objective) + [Fraction(0)] * self.m
        out = self._optimize(cost)
        if out[0] == "unbounded":
            _, j, dire = out
            ray = [Fraction(0)] * self.ncols
            ray[j] = Fraction(dire)
            for i in range(self.m):
                ray[self.basis[i]] = -dire * self.tab[i][j]
            ray = tuple(ray[: self.n])
            self._check_ray(ray, objective)
            return LpResult(status="unbounded", ray=ray)
        point = tuple(self.val[: self.n])
        value = sum(c * v for c, v in zip(objective, point))
        y = tuple(self._dual(cost))
        self._check_optimal(point, value, y, cost)
        return LpResult(status="optimal", value=value, point=point, dual=y)

    # -- verification ------------------------------------------------------

    def _check_primal(self, point: Sequence[Rat]):
        p = self.p
        for i in range(self.m):
            if sum(p.eq_lhs[i][j] * point[j] for j in range(self.n)) != p.eq_rhs[i]:
                raise ArithmeticError("primal point violates equality row %d" % i)
        for j, (lo, hi) in enumerate(p.var_bounds):
            if (lo is not None and point[j] < lo) or (hi is not None and point[j] > hi):
                raise ArithmeticError("primal point violates bounds on column %d" % j)

    def _check_optimal(self, point, value, y, cost):
        self._check_primal(point)
        total = sum(y[i] * self.p.eq_rhs[i] for i in range(self.m))
        for j in range(self.n):
            dj = cost[j] - self._column_dot(y, j)
            st = self.status[j]
            fixed = self.lo[j] is not None and self.lo[j] == self.hi[j]
            if st == _BASIC and dj != 0:
                raise ArithmeticError("nonzero reduced cost on a basic column")
            if not fixed:
                if st == _AT_LOWER and dj > 0:
                    raise ArithmeticError("improving column left at lower bound")
                if st == _AT_UPPER and dj < 0:
                    raise ArithmeticError("improving column left at upper bound")
                if st == _FREE and dj != 0:
                    raise ArithmeticError("nonzero reduced cost on a free column")
            if st != _BASIC:
                total += dj * self.val[j]
        if total != value:
            raise ArithmeticError("duality gap in verified optimum")

    def _check_farkas(self, y: Sequence[Rat]):
        """sup over the bound box of y.Ax must fall strictly below y.b."""
        cap = Fraction(0)
        for j in range(self.n):
            g = self._column_dot(y, j)
            if g == 0:
                continue
            lo, hi = self.p.var_bounds[j]
            if g > 0:
                if hi is None:
                    raise ArithmeticError("Farkas vector unbounded above")
                cap += g * hi
            else:
                if lo is None:
                    raise ArithmeticError("Farkas vector unbounded below")
                cap += g * lo
        rhs = sum(y[i] * self.p.eq_rhs[i] for i in range(self.m))
        if not cap < rhs:
            raise ArithmeticError("Farkas certificate failed verification")

    def _check_ray(self, ray: Sequence[Rat], objective: Sequence[Rat]):
        p = self.p
        for i in range(self.m):
            if sum(p.eq_lhs[i][j] * ray[j] for j in range(self.n)) != 0:
                raise ArithmeticError("unbounded ray leaves the equality space")
        gain = sum(c * r for c, r in zip(objective, ray))
        if not gain > 0:
            raise ArithmeticError("unbounded ray does not improve the objective")
        for j in range(self.n):
            lo, hi = p.var_bounds[j]
            if (ray[j] > 0 and hi is not None) or (ray[j] < 0 and lo is not None):
                raise ArithmeticError("unbounded ray escapes a finite bound")


def lp_solve(p: LpProblem, sense: str = "max") -> LpResult:
    """Exact simplex with Bland's rule; certificates are verified internally.

    For sense "min" the problem is solved as max of the negated objective;
    value and dual are flipped back so the caller sees min-sense numbers.
    """
    if sense not in ("max", "min"):
        raise DomainError("sense must be 'max' or 'min'")
    if sense == "min":
        neg = LpProblem(
            tuple(-c for c in p.objective), p.eq_lhs, p.eq_rhs, p.var_bounds
        )
        res = lp_solve(neg, "max")
        if res.status == "optimal":
            return LpResult(
                status="optimal",
                value=-res.value,
                point=res.point,
                dual=tuple(-y for y in res.dual),
            )
        return res
    return _Simplex(p).solve_max()


# ---------------------------------------------------------------------------
# branch and bound


@dataclass(frozen=True)
class BnbConfig:
    """branch_priority is a tuple of variable names tried in order; None
    selects the default (mu by descending kernel-column norm, then x by
    index).  search and value_selection accept their single documented
    values; they exist so configs serialize meaningfully."""

    branch_priority: Optional[Tuple[str, ...]] = None
    node_limit: int = 1_000_000
    search: str = "dfs"
    value_selection: str = "floor_first"

    def __post_init__(self):
        if self.node_limit < 1:
            raise DomainError("node_limit must be at least 1")
        if self.search != "dfs":
            raise DomainError("only dfs search is implemented")
        if self.value_selection != "floor_first":
            raise DomainError("only floor_first value selection is implemented")
        if self.branch_priority is not None:
            object.__setattr__(self, "branch_priority", tuple(self.branch_priority))


@dataclass(frozen=True)
class BnbResult:
    status: str  # "feasible" | "infeasible" | "node_limit"
    nodes: int
    proof_depth: int
    x: Optional[Tuple[int, ...]] = None
    mu: Optional[Tuple[int, ...]] = None


def _system_bounds(sys: EqualitySystem) -> List[Tuple[Bound, Bound]]:
    """Bounds for the x block; absent bounds default to the nonnegative
    orthant, the native domain of every problem treated here."""
    n = sys.n
    lower = sys.var_lower if sys.var_lower is not None else (0,) * n
    upper = sys.var_upper if sys.var_upper is not None else (None,) * n
    out = []
    for lo, hi in zip(lower, upper):
        out.append((_opt_rat(lo), _opt_rat(hi)))
    return out


class _BnbSpace:
    """Column layout, base bounds and integer re-verification for one run."""

    def __init__(self, sys: EqualitySystem, ef: Optional[ExtendedFormulation]):
        self.sys = sys
        self.ef = ef
        xnames = ["x%d" % j for j in range(sys.n)]
        if ef is None:
            self.names = xnames
            self.rows = tuple(
                tuple(Fraction(v) for v in row) for row in sys.a.data
            )
            self.rhs = tuple(Fraction(v) for v in sys.b)
            self.base = _system_bounds(sys)
        else:
            munames = ["mu%d" % j for j in range(ef.s)]
            self.names = xnames + munames
            rows = []
            for i in range(ef.p.rows):
                row = [Fraction(v) for v in ef.p.row(i)]
                row += [Fraction(-ef.t.data[i][k]) for k in range(ef.s)]
                rows.append(tuple(row))
            self.rows = tuple(rows)
            self.rhs = tuple(Fraction(v) for v in ef.px0)
            self.base = _system_bounds(sys) + [(None, None)] * ef.s
        self.index = {name: j for j, name in enumerate(self.names)}

    def default_priority(self) -> Tuple[str, ...]:
        if self.ef is None:
            return tuple(self.names)
        mus = ["mu%d" % j for j in reversed(range(self.ef.s))]
        xs = ["x%d" % j for j in range(self.sys.n)]
        return tuple(mus + xs)

    def problem(self, over: Dict[int, Tuple[Bound, Bound]], obj_col: Optional[int]):
        bounds = list(self.base)
        for j, bb in over.items():
            bounds[j] = bb
        obj = [Fraction(0)] * len(self.names)
        if obj_col is not None:
            obj[obj_col] = Fraction(1)
        return LpProblem(tuple(obj), self.rows, self.rhs, tuple(bounds))

    def verify_integral(self, point: Sequence[Rat]) -> Tuple[Tuple[int, ...], Optional[Tuple[int, ...]]]:
        ints = []
        for v in point:
            if v.denominator != 1:
                raise ArithmeticError("claimed integral point has a fraction")
            ints.append(int(v))
        x = tuple(ints[: self.sys.n])
        if mat_vec(self.sys.a, x) != tuple(self.sys.b):
            raise ArithmeticError("integer certificate violates A x = b")
        for xi, (lo, hi) in zip(x, _system_bounds(self.sys)):
            if (lo is not None and xi < lo) or (hi is not None and xi > hi):
                raise ArithmeticError("integer certificate violates bounds")
        if self.ef is None:
            return x, None
        mu = tuple(ints[self.sys.n :])
        lhs = mat_vec(self.ef.p, x)
        rhs = tuple(
            self.ef.px0[i] + sum(self.ef.t.data[i][k] * mu[k] for k in range(self.ef.s))
            for i in range(self.ef.p.rows)
        )
        if lhs != rhs:
            raise ArithmeticError("integer certificate violates P x = P x0 + T mu")
        return x, mu


def _floor(v: Rat) -> int:
    return v.numerator // v.denominator


def _ceil(v: Rat) -> int:
    return -((-v.numerator) // v.denominator)


def _max_bound(a: Bound, b: Bound) -> Bound:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _min_bound(a: Bound, b: Bound) -> Bound:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def bnb_feasibility(
    sys: EqualitySystem,
    ef: Optional[ExtendedFormulation] = None,
    cfg: Optional[BnbConfig] = None,
) -> BnbResult:
    """Depth-first feasibility search; every variable is integer-constrained.

    Each node solves one feasibility LP.  If the LP point is fractional on
    some priority variable, that variable's exact integer range inside the
    node is probed with two more LPs (charged to the same node); an empty
    range prunes immediately, which is what lets width-0 instances die at
    the root.  Children fix v <= floor and v >= ceil of the LP value, floor
    side explored first.
    """
    cfg = cfg or BnbConfig()
    space = _BnbSpace(sys, ef)
    priority = cfg.branch_priority or space.default_priority()
    for name in priority:
        if name not in space.index:
            raise DomainError("unknown variable %r in branch_priority" % name)
    prio_cols = [space.index[name] for name in priority]
    # names never listed still need integrality; scan them after the list
    trailing = [j for j in range(len(space.names)) if j not in set(prio_cols)]

    stack: List[Tuple[int, Dict[int, Tuple[Bound, Bound]]]] = [(0, {})]
    nodes = 0
    max_depth = 0
    while stack:
        if nodes >= cfg.node_limit:
            return BnbResult(status="node_limit", nodes=nodes, proof_depth=max_depth)
        depth, over = stack.pop()
        nodes += 1
        max_depth = max(max_depth, depth)
        sx = _Simplex(space.problem(over, None))
        res = sx.solve_max()
        if res.status == "infeasible":
            continue
        if res.status != "optimal":
            raise ArithmeticError("feasibility LP with zero objective cannot be unbounded")
        point = res.point
        branch = None
        for j in prio_cols + trailing:
            if point[j].denominator != 1:
                branch = j
                break
        if branch is None:
            x, mu = space.verify_integral(point)
            return BnbResult(
                status="feasible", nodes=nodes, proof_depth=depth, x=x, mu=mu
            )

        # probe the exact LP range of the branch variable, reusing the
        # node's feasible basis for both directions
        ej = [Fraction(0)] * len(space.names)
        ej[branch] = Fraction(1)
        hi_lp = sx.reoptimize(tuple(ej))
        ej[branch] = Fraction(-1)
        lo_lp = sx.reoptimize(tuple(ej))
        hi_int = _floor(hi_lp.value) if hi_lp.status == "optimal" else None
        lo_int = _ceil(-lo_lp.value) if lo_lp.status == "optimal" else None
        if hi_int is not None and lo_int is not None and hi_int < lo_int:
            continue  # no integer value available for this variable

        cur_lo, cur_hi = over.get(branch, space.base[branch])
        v = point[branch]
        fl, ce = _floor(v), _ceil(v)

        def tighter(lo: Bound, hi: Bound) -> Tuple[Bound, Bound]:
            if lo_int is not None:
                lo = Fraction(lo_int) if lo is None else max(lo, Fraction(lo_int))
            if hi_int is not None:
                hi = Fraction(hi_int) if hi is None else min(hi, Fraction(hi_int))
            return lo, hi

        up_lo, up_hi = tighter(_max_bound(cur_lo, Fraction(ce)), cur_hi)
        dn_lo, dn_hi = tighter(cur_lo, _min_bound(cur_hi, Fraction(fl)))
        if up_lo is None or up_hi is None or up_lo <= up_hi:
            child = dict(over)
            child[branch] = (up_lo, up_hi)
            stack.append((depth + 1, child))
        if dn_lo is None or dn_hi is None or dn_lo <= dn_hi:
            child = dict(over)
            child[branch] = (dn_lo, dn_hi)
            stack.append((depth + 1, child))  # floor child on top: popped first
    return BnbResult(status="infeasible", nodes=nodes, proof_depth=max_depth)


# ---------------------------------------------------------------------------
# market split instances

_MASK64 = (1 << 64) - 1


def _splitmix64(seed: int):
    """splitmix64 stream: state += 0x9E3779B97F4A7C15, output mixed with
    the 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB multiply-xorshift pair."""
    state = seed & _MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


def gen_market_split(m: int, seed: int) -> EqualitySystem:
    """Binary equality system with m rows, n = 10(m-1) columns, entries
    uniform on [0, 99] and each rhs half its row sum (rounded down).

    The stream is splitmix64 on the given seed, consumed row-major, so the
    same seed reproduces the same instance everywhere.
    """
    if m < 2:
        raise DomainError("market split needs at least two rows")
    n = 10 * (m - 1)
    gen = _splitmix64(seed)
    rows = [[next(gen) % 100 for _ in range(n)] for _ in range(m)]
    b = tuple(sum(row) // 2 for row in rows)
    return EqualitySystem(
        IntMatrix.from_rows(rows), b, var_lower=(0,) * n, var_upper=(1,) * n
    )


# ---------------------------------------------------------------------------
# formulation comparison


@dataclass(frozen=True)
class ComparisonRow:
    label: str
    status: str
    nodes: int
    proof_depth: int


@dataclass(frozen=True)
class ComparisonTable:
    rows: Tuple[ComparisonRow, ...]

    def to_json_obj(self):
        return {
            "rows": [
                {
                    "formulation": r.label,
                    "status": r.status,
                    "nodes": r.nodes,
                    "proof_depth": r.proof_depth,
                }
                for r in self.rows
            ]
        }

    def to_text(self) -> str:
        head = ("formulation", "status", "nodes", "proof_depth")
        table = [head] + [
            (r.label, r.status, str(r.nodes), str(r.proof_depth)) for r in self.rows
        ]
        widths = [max(len(row[i]) for row in table) for i in range(4)]
        lines = [
            "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
            for row in table
        ]
        return "\n".join(lines)


def compare_formulations(
    sys: EqualitySystem,
    s_values: Sequence[int],
    cfg: Optional[BnbConfig] = None,
    params: Optional[LLLParams] = None,
) -> ComparisonTable:
    """Run the same feasibility question through the original system, the
    full substitution (branching on multipliers only), and one extended
    formulation per requested s.  Decided statuses must agree; node-limited
    rows are reported as-is.
    """
    cfg = cfg or BnbConfig()
    ks = kernel_and_solution(sys.a, sys.b, params=params)
    if not ks.feasible:
        raise IntegerInfeasibleError(ks.scale_k, ks.x0)
    d = sys.n - sys.m

    rows = [_row("original", bnb_feasibility(sys, None, cfg))]

    full = build_extended(sys, split_basis(ks.q, FixedSplit(d)), ks.q, ks.x0)
    mu_only = BnbConfig(
        branch_priority=tuple("mu%d" % j for j in reversed(range(d))),
        node_limit=cfg.node_limit,
        search=cfg.search,
        value_selection=cfg.value_selection,
    )
    rows.append(_row("ahl", bnb_feasibility(sys, full, mu_only)))

    for s in s_values:
        ef = build_extended(sys, split_basis(ks.q, FixedSplit(s)), ks.q, ks.x0)
        rows.append(_row("ext s=%d" % s, bnb_feasibility(sys, ef, cfg)))

    decided = {r.status for r in rows if r.status != "node_limit"}
    if len(decided) > 1:
        raise ArithmeticError(
            "formulations disagree on feasibility: %s"
            % ", ".join("%s=%s" % (r.label, r.status) for r in rows)
        )
    return ComparisonTable(tuple(rows))


def _row(label: str, res: BnbResult) -> ComparisonRow:
    return ComparisonRow(
        label=label, status=res.status, nodes=res.nodes, proof_depth=res.proof_depth
    )
