"""Exact rational linear programming.

Two-phase primal simplex over `fractions.Fraction`, dense tableau, Dantzig
pricing that permanently switches to Bland's rule after a streak of
degenerate pivots (guaranteeing termination).  Duals are read off the final
basis through the artificial columns.

Every optimal solve is verified in-solver: primal feasibility, dual
feasibility, and exact equality of the primal and dual objectives.  When a
model has many more constraints than variables it is solved through its
transposed dual, which produces the same certified primal/dual pair at a
fraction of the pivot cost.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

Number = Union[int, float, str, Fraction]

LE = "<="
GE = ">="
EQ = "="

MAX_PIVOTS = 200_000
_BLAND_AFTER = 12  # consecutive degenerate pivots before switching rules

_ZERO = Fraction(0)
_ONE = Fraction(1)


def frac(x: Number) -> Fraction:
    """Exact conversion; floats convert via their binary value."""
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class LPRow:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self) -> None:
        if self.relation not in (LE, GE, EQ):
            raise ValueError(f"relation must be one of <=, >=, =, got {self.relation!r}")


@dataclass(frozen=True)
class LinearProgram:
    """min/max objective over rows of (coeffs, relation, rhs), variables >= lower.

    Lower bounds default to 0 and must be nonnegative; optional upper bounds
    are materialized as extra rows by the solver.
    """

    num_vars: int
    objective: tuple[Fraction, ...]
    rows: tuple[LPRow, ...]
    sense: str = "min"
    lower: Optional[tuple[Fraction, ...]] = None
    upper: Optional[tuple[Optional[Fraction], ...]] = None

    def __post_init__(self) -> None:
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {self.sense!r}")
        if len(self.objective) != self.num_vars:
            raise ValueError("objective width does not match num_vars")
        for r in self.rows:
            if len(r.coeffs) != self.num_vars:
                raise ValueError("constraint width does not match num_vars")
        for bounds in (self.lower, self.upper):
            if bounds is not None and len(bounds) != self.num_vars:
                raise ValueError("bounds width does not match num_vars")
        if self.lower is not None and any(lb < 0 for lb in self.lower):
            raise ValueError("negative lower bounds are not supported")


def make_lp(
    objective: Sequence[Number],
    rows: Sequence[tuple[Sequence[Number], str, Number]],
    sense: str = "min",
    lower: Optional[Sequence[Number]] = None,
    upper: Optional[Sequence[Optional[Number]]] = None,
) -> LinearProgram:
    obj = tuple(frac(c) for c in objective)
    lprows = tuple(
        LPRow(tuple(frac(a) for a in coeffs), rel, frac(b)) for coeffs, rel, b in rows
    )
    lo = None if lower is None else tuple(frac(x) for x in lower)
    up = None if upper is None else tuple(None if x is None else frac(x) for x in upper)
    return LinearProgram(len(obj), obj, lprows, sense, lo, up)


@dataclass(frozen=True)
class LPSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    primal: Optional[tuple[Fraction, ...]] = None
    dual: Optional[tuple[Fraction, ...]] = None  # one entry per input row
    objective: Optional[Fraction] = None


class _PivotLimit(RuntimeError):
    pass


def _pivot(rows: list[list[Fraction]], z: list[Fraction], basis: list[int], r: int, col: int) -> None:
    prow = rows[r]
    piv = prow[col]
    if piv != 1:
        inv = 1 / piv
        prow = [v * inv for v in prow]
        rows[r] = prow
    basis[r] = col
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[col]
        if f:
            rows[i] = [a - f * b for a, b in zip(row, prow)]
    f = z[col]
    if f:
        z[:] = [a - f * b for a, b in zip(z, prow)]


def _run_simplex(
    rows: list[list[Fraction]],
    z: list[Fraction],
    basis: list[int],
    allowed: int,
) -> str:
    """Pivot to optimality; `allowed` is the number of admissible entering columns."""
    bland = False
    streak = 0
    for _ in range(MAX_PIVOTS):
        enter = -1
        if bland:
            for j in range(allowed):
                if z[j] < 0:
                    enter = j
                    break
        else:
            best = _ZERO
            for j in range(allowed):
                v = z[j]
                if v < best:
                    best = v
                    enter = j
        if enter < 0:
            return "optimal"
        ratio = None
        leave = -1
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                r = row[-1] / a
                if ratio is None or r < ratio or (r == ratio and basis[i] < basis[leave]):
                    ratio = r
                    leave = i
        if leave < 0:
            return "unbounded"
        if ratio == 0:
            streak += 1
            if streak >= _BLAND_AFTER:
                bland = True
        else:
            streak = 0
        _pivot(rows, z, basis, leave, enter)
    raise _PivotLimit(f"simplex exceeded {MAX_PIVOTS} pivots")


def _core_solve(
    a: list[list[Fraction]], b: list[Fraction], c: list[Fraction]
) -> tuple[str, Optional[list[Fraction]], Optional[list[Fraction]], Optional[Fraction]]:
    """min c.x  s.t.  a x >= b, x >= 0.

    Returns (status, x, y, objective) with y >= 0, y^T a <= c and
    y.b == c.x == objective when optimal (verified exactly).
    """
    m = len(a)
    k = len(c)
    ncols = k + 2 * m + 1  # x | surplus | artificial | rhs
    rows: list[list[Fraction]] = []
    sign: list[int] = []
    for i in range(m):
        s = 1 if b[i] >= 0 else -1
        sign.append(s)
        row = [_ZERO] * ncols
        ai = a[i]
        for j in range(k):
            v = ai[j]
            if v:
                row[j] = v if s == 1 else -v
        row[k + i] = Fraction(-s)
        row[k + m + i] = _ONE
        row[-1] = b[i] if s == 1 else -b[i]
        rows.append(row)
    basis = [k + m + i for i in range(m)]

    # phase 1: minimize the artificial total
    z = [_ZERO] * ncols
    for row in rows:
        for j in range(k + m):
            v = row[j]
            if v:
                z[j] -= v
        z[-1] -= row[-1]
    _run_simplex(rows, z, basis, k + m)
    if -z[-1] != 0:
        return "infeasible", None, None, None

    # drive basic artificials out (rows that resist are redundant and inert)
    for i in range(m):
        if basis[i] >= k + m:
            row = rows[i]
            for j in range(k + m):
                if row[j]:
                    _pivot(rows, z, basis, i, j)
                    break

    # phase 2
    z = [_ZERO] * ncols
    for j in range(k):
        z[j] = c[j]
    for i, bi in enumerate(basis):
        if bi < k and c[bi]:
            f = c[bi]
            row = rows[i]
            z[:] = [u - f * v for u, v in zip(z, row)]
    status = _run_simplex(rows, z, basis, k + m)
    if status == "unbounded":
        return "unbounded", None, None, None

    x = [_ZERO] * k
    for i, bi in enumerate(basis):
        if bi < k:
            x[bi] = rows[i][-1]
    y = [Fraction(-z[k + m + i]) * sign[i] for i in range(m)]
    obj = -z[-1]

    # exact certificate of optimality
    for i in range(m):
        lhs = sum(a[i][j] * x[j] for j in range(k) if a[i][j])
        if lhs < b[i]:
            raise AssertionError("simplex returned a primal-infeasible point")
        if y[i] < 0:
            raise AssertionError("simplex returned a negative dual")
    for j in range(k):
        red = c[j] - sum(y[i] * a[i][j] for i in range(m) if a[i][j])
        if red < 0:
            raise AssertionError("simplex returned a dual-infeasible vector")
    if sum(y[i] * b[i] for i in range(m)) != obj or sum(c[j] * x[j] for j in range(k)) != obj:
        raise AssertionError("strong duality failed (primal and dual objectives differ)")
    return "optimal", x, y, obj


def _solve_core_transposed(
    a: list[list[Fraction]], b: list[Fraction], c: list[Fraction]
) -> tuple[str, Optional[list[Fraction]], Optional[list[Fraction]], Optional[Fraction]]:
    """Solve min c.x, a x >= b, x >= 0 through its dual max b.y, a^T y <= c."""
    m = len(a)
    k = len(c)
    at = [[-a[i][j] for i in range(m)] for j in range(k)]
    bt = [-cj for cj in c]
    ct = [-bi for bi in b]
    status, yt, xt, objt = _core_solve(at, bt, ct)
    if status == "optimal":
        assert yt is not None and xt is not None and objt is not None
        # the dual program's primal is our dual and vice versa
        return "optimal", xt, yt, -objt
    if status == "unbounded":
        # dual unbounded and feasible: the original program is infeasible
        return "infeasible", None, None, None
    # dual infeasible: original is unbounded or infeasible; caller retries directly
    return "ambiguous", None, None, None


def solve_lp(lp: LinearProgram) -> LPSolution:
    """Solve exactly.  Deterministic for a fixed input.

    Dual values follow the textbook convention for the stated sense: for a
    minimization, >= rows have duals >= 0, <= rows have duals <= 0 and
    equality rows are free; signs flip for a maximization.  Duals of
    internally generated bound rows are folded away.
    """
    k = lp.num_vars
    minimize = lp.sense == "min"
    c = list(lp.objective) if minimize else [-v for v in lp.objective]

    rows: list[tuple[tuple[Fraction, ...], str, Fraction]] = [
        (r.coeffs, r.relation, r.rhs) for r in lp.rows
    ]
    n_user = len(rows)
    if lp.lower is not None:
        for j, lb in enumerate(lp.lower):
            if lb > 0:
                unit = tuple(_ONE if t == j else _ZERO for t in range(k))
                rows.append((unit, GE, lb))
    if lp.upper is not None:
        for j, ub in enumerate(lp.upper):
            if ub is not None:
                unit = tuple(_ONE if t == j else _ZERO for t in range(k))
                rows.append((unit, LE, ub))

    # canonical core: all rows as >=, equalities split in two
    a: list[list[Fraction]] = []
    b: list[Fraction] = []
    origin: list[tuple[int, int]] = []  # (row index, +1/-1 orientation)
    for idx, (coeffs, rel, rhs) in enumerate(rows):
        if rel in (GE, EQ):
            a.append(list(coeffs))
            b.append(rhs)
            origin.append((idx, 1))
        if rel in (LE, EQ):
            a.append([-v for v in coeffs])
            b.append(-rhs)
            origin.append((idx, -1))

    status, x, ycore, obj = (
        _solve_core_transposed(a, b, c) if len(a) > k else ("ambiguous", None, None, None)
    )
    if status == "ambiguous":
        status, x, ycore, obj = _core_solve(a, b, c)

    if status != "optimal":
        return LPSolution(status=status)
    assert x is not None and ycore is not None and obj is not None

    duals = [_ZERO] * len(rows)
    for (idx, orient), yv in zip(origin, ycore):
        duals[idx] += yv if orient == 1 else -yv
    # check the extended system's dual objective before dropping bound rows
    if sum(d * r[2] for d, r in zip(duals, rows)) != obj:
        raise AssertionError("dual objective mismatch on the extended system")

    if not minimize:
        obj = -obj
        duals = [-d for d in duals]
    return LPSolution(
        status="optimal",
        primal=tuple(x),
        dual=tuple(duals[:n_user]),
        objective=obj,
    )


def in_convex_hull(
    point: Sequence[Number], generators: Sequence[Sequence[Number]]
) -> Optional[tuple[Fraction, ...]]:
    """Exact convex-combination weights for `point` over `generators`, or None.

    Feasibility program: lambda >= 0, sum lambda = 1, sum lambda_i g_i = point.
    """
    p = [frac(v) for v in point]
    gens = [[frac(v) for v in g] for g in generators]
    d = len(p)
    for g in gens:
        if len(g) != d:
            raise ValueError("generator dimension does not match the point")
    if not gens:
        return None
    m = len(gens)
    rows: list[tuple[list[Fraction], str, Fraction]] = []
    for t in range(d):
        rows.append(([g[t] for g in gens], EQ, p[t]))
    rows.append(([_ONE] * m, EQ, _ONE))
    lp = make_lp([0] * m, rows, sense="min")
    sol = solve_lp(lp)
    if sol.status != "optimal":
        return None
    lam = sol.primal
    assert lam is not None
    assert sum(lam) == 1 and all(v >= 0 for v in lam)
    for t in range(d):
        assert sum(l * g[t] for l, g in zip(lam, gens)) == p[t]
    return lam
