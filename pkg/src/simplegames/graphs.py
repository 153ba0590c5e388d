"""Graphic simple games: the minimal winning coalitions are the edges of a graph.

Losing coalitions are then exactly the independent sets, so the threshold
value is computed by a cutting-plane loop whose separation oracle is a
maximum-weight independent set solver: Koenig/max-flow duality on bipartite
graphs, branch and bound with a greedy clique-cover bound otherwise.  The
module also builds the two-copy gadget whose threshold is half the
independence number, searches for induced disjoint-edge families, enumerates
maximal independent sets, and decides "alpha <= a" for a fixed bound a.
"""

from __future__ import annotations

import json
import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence, Union

from .alpha import AlphaCertificate
from .errors import BudgetExceededError
from .games import Coalition, SimpleGame, new_game
from .lp import GE, LPRow, LinearProgram, frac, solve_lp

MWIS_EXACT_BUDGET = 40
KP2_BUDGET = 5
MAX_CUT_ROUNDS = 10_000
DEFAULT_MIS_LIMIT = 200_000

_ZERO = Fraction(0)
_ONE = Fraction(1)

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n, edges canonically sorted."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"vertex count must be a positive int, got {self.n!r}")
        seen = set()
        for e in self.edges:
            u, v = e
            if not (1 <= u < v <= self.n):
                raise ValueError(f"edge {e!r} is not a pair 1 <= u < v <= {self.n}")
            if e in seen:
                raise ValueError(f"duplicate edge {e!r}")
            seen.add(e)


def make_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    canon = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        canon.add((min(u, v), max(u, v)))
    return Graph(n, tuple(sorted(canon)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return make_graph(n, edges)


def path_graph(n: int) -> Graph:
    if n < 2:
        raise ValueError("a path needs at least 2 vertices")
    return make_graph(n, [(i, i + 1) for i in range(1, n)])


def random_graph(n: int, m: int, seed: int) -> Graph:
    all_pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    if m > len(all_pairs):
        raise ValueError(f"{m} edges do not fit in a simple graph on {n} vertices")
    rng = random.Random(f"graph:{n}:{m}:{seed}")
    return make_graph(n, rng.sample(all_pairs, m))


def random_bipartite_graph(n: int, m: int, seed: int) -> Graph:
    rng = random.Random(f"bipartite:{n}:{m}:{seed}")
    verts = list(range(1, n + 1))
    rng.shuffle(verts)
    left = set(verts[: max(1, n // 2)])
    cross = [
        (min(u, v), max(u, v))
        for u in sorted(left)
        for v in sorted(set(verts) - left)
    ]
    cross = sorted(set(cross))
    m = min(m, len(cross))
    return make_graph(n, rng.sample(cross, m))


@lru_cache(maxsize=512)
def _adj_masks(g: Graph) -> tuple[int, ...]:
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    return tuple(adj)


def bipartition(g: Graph) -> Optional[tuple[int, ...]]:
    """2-coloring (entry per vertex) or None if an odd cycle exists."""
    color = [-1] * g.n
    adj = _adj_masks(g)
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            m = adj[u]
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return None
    return tuple(color)


@dataclass(frozen=True)
class WeightedVertexSet:
    vertices: Coalition
    weight: Fraction


def graphic_game(g: Graph) -> SimpleGame:
    """The simple game whose minimal winning antichain is the edge set."""
    if not g.edges:
        raise ValueError("an edgeless graph has no winning coalitions")
    return new_game(g.n, [Coalition.of(u, v) for u, v in g.edges])


def _validate_weights(g: Graph, weights: Sequence) -> list[Fraction]:
    w = [frac(x) for x in weights]
    if len(w) != g.n:
        raise ValueError(f"{len(w)} weights for {g.n} vertices")
    if any(x < 0 for x in w):
        raise ValueError("vertex weights must be nonnegative")
    return w


def mwis_bipartite(g: Graph, weights: Sequence) -> WeightedVertexSet:
    """Maximum-weight independent set of a bipartite graph, exactly.

    Complement of a minimum-weight vertex cover obtained from a max-flow
    min-cut computation (Edmonds-Karp over exact rationals, which terminates
    in O(VE) augmentations independent of capacities).
    """
    w = _validate_weights(g, weights)
    color = bipartition(g)
    if color is None:
        raise ValueError("graph is not bipartite")
    n = g.n
    source, sink = 0, n + 1
    cap: list[dict[int, Fraction]] = [dict() for _ in range(n + 2)]

    def add_edge(a: int, b: int, capacity: Fraction) -> None:
        cap[a][b] = cap[a].get(b, _ZERO) + capacity
        cap[b].setdefault(a, _ZERO)

    big = sum(w, _ONE)
    for v in range(1, n + 1):
        if color[v - 1] == 0:
            add_edge(source, v, w[v - 1])
        else:
            add_edge(v, sink, w[v - 1])
    for u, v in g.edges:
        a, b = (u, v) if color[u - 1] == 0 else (v, u)
        add_edge(a, b, big)

    flow_value = _ZERO
    while True:
        parent: dict[int, int] = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            u = queue.popleft()
            for v, c in cap[u].items():
                if c > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if sink not in parent:
            break
        bottleneck = None
        v = sink
        while v != source:
            u = parent[v]
            c = cap[u][v]
            bottleneck = c if bottleneck is None else min(bottleneck, c)
            v = u
        v = sink
        while v != source:
            u = parent[v]
            cap[u][v] -= bottleneck
            cap[v][u] += bottleneck
            v = u
        flow_value += bottleneck

    reachable = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v, c in cap[u].items():
            if c > 0 and v not in reachable:
                reachable.add(v)
                queue.append(v)
    chosen = 0
    for v in range(1, n + 1):
        in_cover = (v not in reachable) if color[v - 1] == 0 else (v in reachable)
        if not in_cover:
            chosen |= 1 << (v - 1)
    adj = _adj_masks(g)
    assert all(adj[v] & chosen == 0 for v in range(n) if chosen >> v & 1)
    weight = sum((w[v] for v in range(n) if chosen >> v & 1), _ZERO)
    assert weight == sum(w, _ZERO) - flow_value, "Koenig duality check failed"
    return WeightedVertexSet(Coalition(chosen), weight)


def mwis_exact(g: Graph, weights: Sequence, budget: Optional[int] = None) -> WeightedVertexSet:
    """Exact maximum-weight independent set by branch and bound.

    The upper bound partitions the remaining candidates into cliques greedily
    (a coloring of the complement); an independent set meets each clique at
    most once, so the clique maxima sum to a valid bound.
    """
    cap = MWIS_EXACT_BUDGET if budget is None else budget
    if g.n > cap:
        raise BudgetExceededError(f"mwis_exact is capped at n <= {cap}, got {g.n}")
    w = _validate_weights(g, weights)
    n = g.n
    adj = _adj_masks(g)
    by_weight = sorted(range(n), key=lambda i: (-w[i], i))

    best_mask = 0
    best_weight = _ZERO
    used = 0
    for i in by_weight:
        if not used >> i & 1:
            best_mask |= 1 << i
            used |= adj[i] | 1 << i
            best_weight += w[i]

    def bound(cand: int) -> Fraction:
        total = _ZERO
        rem = cand
        while rem:
            v = next(i for i in by_weight if rem >> i & 1)
            total += w[v]
            clique = 1 << v
            common = rem & adj[v]
            while common:
                u = next(i for i in by_weight if common >> i & 1)
                clique |= 1 << u
                common &= adj[u]
            rem &= ~clique
        return total

    def dfs(cand: int, cur_w: Fraction, cur_mask: int) -> None:
        nonlocal best_mask, best_weight
        if cand == 0:
            if cur_w > best_weight:
                best_weight, best_mask = cur_w, cur_mask
            return
        if cur_w + bound(cand) <= best_weight:
            return
        v = next(i for i in by_weight if cand >> i & 1)
        dfs(cand & ~(adj[v] | 1 << v), cur_w + w[v], cur_mask | 1 << v)
        dfs(cand & ~(1 << v), cur_w, cur_mask)

    dfs((1 << n) - 1, _ZERO, 0)
    return WeightedVertexSet(Coalition(best_mask), best_weight)


def alpha_graph(
    g: Graph, budget: Optional[int] = None, max_rounds: int = MAX_CUT_ROUNDS
) -> AlphaCertificate:
    """Threshold value of the graphic game by cutting planes.

    Start from the edge constraints and minimize the threshold; repeatedly ask
    the MWIS oracle for the worst independent set under the current payoff and
    add its constraint while it is violated.  Everything is exact, so the
    returned alpha is the true rational optimum.
    """
    if not g.edges:
        raise ValueError("an edgeless graph has no winning coalitions")
    color = bipartition(g)
    if color is None:
        cap = MWIS_EXACT_BUDGET if budget is None else budget
        if g.n > cap:
            raise BudgetExceededError(
                f"non-bipartite separation is capped at n <= {cap}, got {g.n}"
            )
    n = g.n
    nv = n + 1
    rows: list[LPRow] = []
    for u, v in g.edges:
        coeffs = [_ZERO] * nv
        coeffs[u - 1] = _ONE
        coeffs[v - 1] = _ONE
        rows.append(LPRow(tuple(coeffs), GE, _ONE))
    objective = tuple([_ZERO] * n + [_ONE])
    cuts: list[Coalition] = []
    for _ in range(max_rounds):
        sol = solve_lp(LinearProgram(nv, objective, tuple(rows)))
        if sol.status != "optimal":
            raise AssertionError(f"cutting-plane LP should stay optimal, got {sol.status}")
        assert sol.primal is not None and sol.objective is not None
        payoff = sol.primal[:n]
        ahat = sol.objective
        if color is not None:
            sep = mwis_bipartite(g, payoff)
        else:
            sep = mwis_exact(g, payoff, budget)
        if sep.weight > ahat:
            cut = [_ZERO] * nv
            for i in sep.vertices.players():
                cut[i - 1] = -_ONE
            cut[n] = _ONE
            rows.append(LPRow(tuple(cut), GE, _ZERO))
            cuts.append(sep.vertices)
            continue
        value = lambda c: sum((payoff[i - 1] for i in c.players()), _ZERO)
        tight = {c for c in cuts if value(c) == ahat}
        tight.add(sep.vertices)  # the final optimum attains the maximum
        tight = tuple(sorted(tight, key=lambda c: c.players()))
        binding = tuple(
            Coalition.of(u, v) for u, v in g.edges if payoff[u - 1] + payoff[v - 1] == 1
        )
        return AlphaCertificate(ahat, payoff, tight, binding)
    raise BudgetExceededError(f"cutting-plane loop exceeded {max_rounds} rounds")


def build_gadget(g: Graph) -> Graph:
    """Two copies of g cross-linked on equal or adjacent indices (2n vertices)."""
    n = g.n
    edges = set()
    for u, v in g.edges:
        edges.add((u, v))
        edges.add((n + u, n + v))
        edges.add((u, n + v))
        edges.add((v, n + u))
    for i in range(1, n + 1):
        edges.add((i, n + i))
    return make_graph(2 * n, edges)


def find_induced_kp2(
    g: Graph, k: int, budget: Optional[int] = None
) -> Optional[list[Edge]]:
    """k vertex-disjoint edges whose 2k endpoints induce exactly those edges.

    Returns the lexicographically first witness or None.  More than
    KP2_BUDGET copies are refused unless 2k > n makes the answer trivially
    None first.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if 2 * k > g.n:
        return None
    cap = KP2_BUDGET if budget is None else budget
    if k > cap:
        raise BudgetExceededError(f"induced kP2 search is capped at k <= {cap}, got {k}")
    adj = _adj_masks(g)
    edges = g.edges
    chosen: list[Edge] = []

    def rec(start: int, endpoints: int) -> bool:
        if len(chosen) == k:
            return True
        for idx in range(start, len(edges)):
            u, v = edges[idx]
            um, vm = 1 << (u - 1), 1 << (v - 1)
            if (um | vm) & endpoints:
                continue
            if (adj[u - 1] | adj[v - 1]) & endpoints:
                continue
            chosen.append((u, v))
            if rec(idx + 1, endpoints | um | vm):
                return True
            chosen.pop()
        return False

    return list(chosen) if rec(0, 0) else None


def enumerate_mis(g: Graph, limit: Optional[int] = None) -> Iterator[Coalition]:
    """Every maximal independent set exactly once.

    Vertex-incremental neighborhood branching: maintain the maximal
    independent sets of the graph induced on 1..v and extend one vertex at a
    time.  The family count can be exponential; `limit` raises once exceeded.
    """
    if g.n > MWIS_EXACT_BUDGET:
        raise BudgetExceededError(f"enumerate_mis is capped at n <= {MWIS_EXACT_BUDGET}")
    adj = _adj_masks(g)
    family = {1}  # the single maximal set of the graph on vertex 1
    for v in range(2, g.n + 1):
        vb = 1 << (v - 1)
        prefix = vb - 1
        av = adj[v - 1] & prefix
        new = set()
        for s in family:
            if s & av == 0:
                new.add(s | vb)
            else:
                new.add(s)
                t = (s & ~av) | vb
                ok = True
                for u in range(v):  # is t maximal among vertices 1..v?
                    if not t >> u & 1 and adj[u] & t == 0:
                        ok = False
                        break
                if ok:
                    new.add(t)
        family = new
        if limit is not None and len(family) > limit:
            raise BudgetExceededError(
                f"maximal independent set family exceeded the cap of {limit}"
            )
    for mask in sorted(family):
        yield Coalition(mask)


@dataclass(frozen=True)
class AlphaDecision:
    """Outcome of the fixed-threshold decision, with its evidence."""

    answer: bool
    branch: str  # "kp2" | "enumeration"
    kp2_witness: Optional[tuple[Edge, ...]] = None
    forced_set: Optional[Coalition] = None  # one endpoint per witness edge
    alpha: Optional[Fraction] = None

    def to_json_dict(self) -> dict:
        return {
            "answer": self.answer,
            "branch": self.branch,
            "kp2_witness": (
                None if self.kp2_witness is None else [list(e) for e in self.kp2_witness]
            ),
            "independent_set": (
                None if self.forced_set is None else list(self.forced_set.players())
            ),
            "alpha": (
                None
                if self.alpha is None
                else f"{self.alpha.numerator}/{self.alpha.denominator}"
            ),
        }


def kp2_endpoint_set(witness: Sequence[Edge], payoff: Sequence) -> Coalition:
    """From each witness edge pick an endpoint with payoff >= 1/2.

    For any payoff meeting the edge constraints such a choice exists, and the
    chosen endpoints form an independent set of size k forcing value > a."""
    p = [frac(x) for x in payoff]
    half = Fraction(1, 2)
    picks = []
    for u, v in witness:
        picks.append(u if p[u - 1] >= half else v)
    return Coalition.from_players(picks)


def decide_alpha_at_most(
    g: Graph,
    a,
    budget: Optional[int] = None,
    mis_limit: int = DEFAULT_MIS_LIMIT,
) -> AlphaDecision:
    """Decide whether the graphic threshold value is at most `a`.

    With k twice the smallest integer exceeding a, an induced kP2 forces some
    independent endpoint set to value k/2 > a, answering no.  Otherwise the
    maximal independent sets are enumerated and the threshold LP is solved
    exactly.
    """
    a = frac(a)
    if a <= 0:
        raise ValueError("the decision threshold must be positive")
    if not g.edges:
        raise ValueError("an edgeless graph has no winning coalitions")
    k = 2 * (math.floor(a) + 1)
    witness = find_induced_kp2(g, k, budget)
    if witness is not None:
        canonical = Coalition.from_players([u for u, _ in witness])
        return AlphaDecision(
            answer=False,
            branch="kp2",
            kp2_witness=tuple(witness),
            forced_set=canonical,
        )
    mis = list(enumerate_mis(g, mis_limit))
    n = g.n
    nv = n + 1
    rows: list[LPRow] = []
    for u, v in g.edges:
        coeffs = [_ZERO] * nv
        coeffs[u - 1] = _ONE
        coeffs[v - 1] = _ONE
        rows.append(LPRow(tuple(coeffs), GE, _ONE))
    for m in mis:
        coeffs = [_ZERO] * nv
        for i in m.players():
            coeffs[i - 1] = -_ONE
        coeffs[n] = _ONE
        rows.append(LPRow(tuple(coeffs), GE, _ZERO))
    objective = tuple([_ZERO] * n + [_ONE])
    sol = solve_lp(LinearProgram(nv, objective, tuple(rows)))
    if sol.status != "optimal":
        raise AssertionError(f"decision LP should be optimal, got {sol.status}")
    assert sol.objective is not None
    return AlphaDecision(answer=sol.objective <= a, branch="enumeration", alpha=sol.objective)


# --- serialization ---------------------------------------------------------


def graph_to_json_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_to_json(g: Graph) -> str:
    return json.dumps(graph_to_json_dict(g), sort_keys=True)


def graph_from_json(source: Union[str, bytes, dict]) -> Graph:
    data = json.loads(source) if not isinstance(source, dict) else source
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise ValueError('graph JSON must have keys "n" and "edges"')
    return make_graph(data["n"], data["edges"])


def graph_from_dimacs(text: str) -> Graph:
    """Lines "p <n> <m>" then m lines "e <u> <v>"; comment lines start with c."""
    n = None
    edges = []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            n = int(parts[-2])
        elif parts[0] == "e":
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"unrecognized graph line: {line!r}")
    if n is None:
        raise ValueError("missing problem line 'p <n> <m>'")
    return make_graph(n, edges)


def graph_from_source(text: str) -> Graph:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return graph_from_json(text)
    return graph_from_dimacs(text)
