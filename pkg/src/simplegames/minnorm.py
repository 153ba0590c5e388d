"""Minimum-norm point of the winning-payoff polyhedron, with an exact certificate.

Q denotes the payoffs p >= 0 giving every winning coalition at least 1.  The
unique smallest-norm point p* of Q is approximated by Frank-Wolfe with
pairwise (away) steps over Q intersected with the unit box; clamping into the
box preserves feasibility and cannot increase the norm, so the restriction is
sound.  The linear oracle is an LP solved exactly, and the deliverable is not
a convergence argument but a certificate: for the returned point p the gap

    <p, p> - min_{q in Q} <p, q>

is computed by one exact LP and bounded by the requested tolerance, which
also bounds ||p - p*||^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import BudgetExceededError
from .games import Coalition, SimpleGame, _winning_table
from .lp import GE, LE, LPRow, LinearProgram, frac, in_convex_hull, solve_lp

DEFAULT_TOLERANCE = 1e-6
MAX_ITERATIONS = 100_000
TIGHTNESS_BUDGET = 20  # tightness_check enumerates all 2^n coalitions

# payoffs are handled as exact rationals; sequences of ints/floats are
# converted on entry (floats exactly, via their binary value)
PayoffVector = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class MinNormCertificate:
    point: tuple[Fraction, ...]
    squared_norm: Fraction
    lp_value: Fraction  # min over Q of <point, q>
    gap: Fraction
    certified: bool
    gap_history: tuple[Fraction, ...] = ()  # recorded best-so-far gaps, non-increasing

    def to_json_dict(self) -> dict:
        rat = lambda v: f"{v.numerator}/{v.denominator}"
        return {
            "point": [rat(v) for v in self.point],
            "squared_norm": rat(self.squared_norm),
            "lp_value": rat(self.lp_value),
            "gap": rat(self.gap),
            "certified": self.certified,
        }


def is_feasible(game: SimpleGame, payoff: Sequence) -> bool:
    """True iff payoff >= 0 and every minimal winning coalition gets at least 1."""
    p = [frac(v) for v in payoff]
    if len(p) != game.n:
        raise ValueError(f"payoff has {len(p)} entries for a {game.n}-player game")
    if any(v < 0 for v in p):
        return False
    for w in game.minimal_winning:
        if sum((p[i - 1] for i in w.players()), _ZERO) < 1:
            return False
    return True


def _oracle_lp(game: SimpleGame, box: bool) -> list[LPRow]:
    n = game.n
    rows = []
    for w in game.minimal_winning:
        coeffs = [_ZERO] * n
        for i in w.players():
            coeffs[i - 1] = _ONE
        rows.append(LPRow(tuple(coeffs), GE, _ONE))
    if box:
        for j in range(n):
            unit = tuple(_ONE if t == j else _ZERO for t in range(n))
            rows.append(LPRow(unit, LE, _ONE))
    return rows


def _min_over_q(game: SimpleGame, direction: Sequence[Fraction], box: bool):
    """Exact vertex and value of min <direction, q> over Q (optionally boxed)."""
    rows = _oracle_lp(game, box)
    sol = solve_lp(LinearProgram(game.n, tuple(direction), tuple(rows)))
    if sol.status != "optimal":
        raise AssertionError(f"oracle LP should be optimal, got {sol.status}")
    assert sol.primal is not None and sol.objective is not None
    return sol.primal, sol.objective


def min_norm_point(
    game: SimpleGame,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = MAX_ITERATIONS,
) -> tuple[tuple[Fraction, ...], MinNormCertificate]:
    """Certified approximate minimum-norm feasible payoff.

    Returns (point, certificate) with point in Q exactly (a rational convex
    combination of exactly-feasible vertices) and certificate.gap <= tolerance
    unless the iteration budget runs out first.
    """
    if game.n > 24:
        raise BudgetExceededError(f"min_norm_point is capped at n <= 24, got {game.n}")
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    n = game.n
    tol = Fraction(tolerance) if not isinstance(tolerance, Fraction) else tolerance

    # vertex cache: exact coordinates plus a float copy for the iteration
    cache: dict[tuple[Fraction, ...], list[float]] = {}

    def oracle(direction: list[float]):
        d = tuple(frac(max(v, 0.0)) for v in direction)
        vertex, value = _min_over_q(game, d, box=True)
        if vertex not in cache:
            cache[vertex] = [float(v) for v in vertex]
        return vertex, value

    v0, _ = _min_over_q(game, tuple([_ONE] * n), box=True)
    cache[v0] = [float(v) for v in v0]
    weights: dict[tuple[Fraction, ...], float] = {v0: 1.0}
    x = list(cache[v0])

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    def inner_descent(iters_left: int) -> int:
        """Pairwise steps over cached vertices until stall; returns steps used."""
        used = 0
        while used < iters_left:
            s_vtx = min(cache, key=lambda v: (dot(x, cache[v]), v))
            a_vtx = max(weights, key=lambda v: (dot(x, cache[v]), v))
            sf, af = cache[s_vtx], cache[a_vtx]
            d = [a - b for a, b in zip(sf, af)]
            dd = dot(d, d)
            xd = dot(x, d)
            if dd <= 0 or -xd <= 1e-14 * max(1.0, dot(x, x)):
                break
            gamma = min(weights[a_vtx], -xd / dd)
            if gamma <= 0:
                break
            weights[a_vtx] -= gamma
            if weights[a_vtx] <= 1e-18:
                del weights[a_vtx]
            weights[s_vtx] = weights.get(s_vtx, 0.0) + gamma
            for j in range(n):
                x[j] += gamma * d[j]
            used += 1
            if used % 128 == 0:  # drift control
                for j in range(n):
                    x[j] = sum(wt * cache[v][j] for v, wt in weights.items())
        return used

    def exact_point() -> tuple[Fraction, ...]:
        lams = {v: Fraction(wt).limit_denominator(10**12) for v, wt in weights.items()}
        total = sum(lams.values())
        pt = [_ZERO] * n
        for v, lam in lams.items():
            if lam <= 0:
                continue
            for j in range(n):
                pt[j] += lam * v[j]
        return tuple(c / total for c in pt)

    history: list[Fraction] = []
    best: Optional[tuple[tuple[Fraction, ...], Fraction, Fraction, Fraction]] = None

    def certify() -> bool:
        nonlocal best
        pt = exact_point()
        sq = sum((c * c for c in pt), _ZERO)
        _, value = _min_over_q(game, pt, box=False)
        gap = sq - value
        if best is None or gap < best[3]:
            best = (pt, sq, value, gap)
            history.append(gap)
        return gap <= tol

    it = 0
    certified = False
    stalled = False
    while it < max_iterations:
        it += inner_descent(max_iterations - it) + 1
        known = len(cache)
        vtx, value = oracle(x)
        float_gap = dot(x, x) - float(value)
        # a known vertex means the inner pass already stalled at the cache
        # optimum, so the true gap is tiny; otherwise the fresh vertex lets
        # the next inner pass make progress
        if float_gap <= float(tol) * 0.9 or len(cache) == known:
            if certify():
                certified = True
                break
            if len(cache) == known:
                if stalled:  # no new vertex twice in a row: no progress left
                    break
                stalled = True
        else:
            stalled = False

    if not certified:
        if best is not None and best[3] <= tol:
            certified = True
        else:
            gap_txt = f"{float(best[3]):.3g}" if best is not None else "unknown"
            raise BudgetExceededError(
                f"min-norm iteration budget exhausted before tolerance; best gap {gap_txt}"
            )
    assert best is not None
    pt, sq, value, gap = best
    assert is_feasible(game, pt)
    cert = MinNormCertificate(
        point=pt,
        squared_norm=sq,
        lp_value=value,
        gap=gap,
        certified=gap <= tol,
        gap_history=tuple(history),
    )
    return pt, cert


def strengthened_bound(game: SimpleGame, payoff: Sequence) -> Fraction:
    """p(N) minus the least <p, q> over feasible q; at the min-norm point this
    is <p, 1-p> up to the certificate gap and never exceeds n/4."""
    p = [frac(v) for v in payoff]
    if not is_feasible(game, p):
        raise ValueError("payoff is not feasible (needs p >= 0 and p(W) >= 1 on winning sets)")
    _, value = _min_over_q(game, tuple(p), box=False)
    return sum(p, _ZERO) - value


def _all_coalitions_by_class(game: SimpleGame) -> tuple[list[int], list[int]]:
    """Masks of every winning and every losing coalition, via the subset table."""
    size = 1 << game.n
    table = _winning_table(game).to_bytes((size + 7) // 8, "little")
    winning, losing = [], []
    for s in range(size):
        if table[s >> 3] >> (s & 7) & 1:
            winning.append(s)
        else:
            losing.append(s)
    return winning, losing


def tightness_check(
    game: SimpleGame, budget: Optional[int] = None
) -> tuple[bool, Optional[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]]]:
    """Whether alpha attains n/4: (2/n)*ones must be a convex combination of
    winning characteristic vectors and (1/2)*ones one of losing vectors.

    Returns (True, (winning_weights, losing_weights)) or (False, None).  The
    weight tuples align with all winning / losing coalitions in ascending
    mask order.  Cost grows as 2^n; refuse beyond the budget.
    """
    cap = TIGHTNESS_BUDGET if budget is None else budget
    if game.n > cap:
        raise BudgetExceededError(f"tightness_check is capped at n <= {cap}, got {game.n}")
    n = game.n
    winning, losing = _all_coalitions_by_class(game)
    vec = lambda mask: tuple((mask >> j) & 1 for j in range(n))
    w_target = [Fraction(2, n)] * n
    l_target = [Fraction(1, 2)] * n
    lam_w = in_convex_hull(w_target, [vec(m) for m in winning])
    if lam_w is None:
        return False, None
    lam_l = in_convex_hull(l_target, [vec(m) for m in losing])
    if lam_l is None:
        return False, None
    return True, (lam_w, lam_l)


def coalition_weights_nonzero(
    game: SimpleGame, weights: Sequence[Fraction], losing: bool
) -> list[tuple[Coalition, Fraction]]:
    """Pair nonzero hull weights with their coalitions (helper for reporting)."""
    winning_masks, losing_masks = _all_coalitions_by_class(game)
    masks = losing_masks if losing else winning_masks
    return [
        (Coalition(m), w) for m, w in zip(masks, weights) if w != 0
    ]
