"""Deciding k-star decompositions.

The decision procedure searches independent sets S of the forced non-center
size |V| - |E|/k and tests each by orienting the rest of the graph with
in-degree budget d(v) - k (flow-based, so all subset inequalities are checked
at once).  For 4-regular graphs and k=3 the per-candidate test degenerates to
"every component left after removing S contains exactly one cycle", which is
what decide_claw_4regular uses.  An exact-cover backtracker over explicit
stars serves as the independent ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    BudgetExceeded,
    MaxDegreeTooLarge,
    NotFourRegular,
    SizeNotDivisible,
)
from .graph import Graph, bits, independent_sets_of_size, max_independent_set, unicyclic_components_check
from .orientation import Orientation, hakimi_orient, stars_from_zero_orientation


@dataclass(frozen=True)
class StarDecomposition:
    """A partition of the edge set into k-stars (center plus k leaf edges,
    stored as edge indices into the graph's edge list)."""

    k: int
    stars: tuple[tuple[int, tuple[int, ...]], ...]

    def star_count(self) -> int:
        return len(self.stars)

    def as_pairs(self, g: Graph):
        return [{"center": c, "edges": [list(g.edges[i]) for i in idx]}
                for c, idx in self.stars]


@dataclass(frozen=True)
class NonDecomposability:
    """Machine-checkable evidence that no k-star decomposition exists.

    independence_bound: no independent set of the required size exists; for
    the exact method the witness is a maximum independent set, for the
    per-part bound method alpha_bound comes from summing per-part maxima.
    criterion_exhausted: every candidate set of the required size failed the
    orientation criterion (count recorded, first ten failures kept).
    """

    kind: str
    required: int
    alpha: int | None = None
    witness: tuple[int, ...] | None = None
    method: str = "exact"
    alpha_bound: int | None = None
    examined: int | None = None
    failing_sets: tuple[tuple[int, ...], ...] | None = None

    @staticmethod
    def independence_bound(required, alpha, witness):
        return NonDecomposability(kind="independence_bound", required=required,
                                  alpha=alpha, witness=tuple(witness), method="exact")

    @staticmethod
    def independence_bound_by_parts(required, alpha_bound):
        return NonDecomposability(kind="independence_bound", required=required,
                                  method="per_part_bound", alpha_bound=alpha_bound)

    @staticmethod
    def criterion_exhausted(required, examined, failing_sets):
        return NonDecomposability(kind="criterion_exhausted", required=required,
                                  examined=examined, failing_sets=tuple(failing_sets))


def _preconditions(g: Graph, k: int) -> int:
    if k < 3:
        raise ValueError("star size k must be at least 3")
    if g.m % k != 0:
        raise SizeNotDivisible(g.m, k)
    delta = g.max_degree()
    if delta > 2 * k - 1:
        raise MaxDegreeTooLarge(delta, k)
    return g.n - g.m // k


def _orient_candidate(g: Graph, k: int, s_mask: int) -> Orientation | None:
    """Try to realize the decomposition for non-center set S.

    The graph minus S must orient with in-degree at most d_G(v)-k, and its
    edge count must equal the total budget (then in-degrees are forced to hit
    the budget exactly).  Remaining edges leave V-S toward S, giving every
    non-S vertex out-degree exactly k.
    """
    rest = g.full_mask() & ~s_mask
    h, keep, idxs = g.subgraph(rest)
    budget = [g.degree(v) - k for v in keep]
    if h.m != sum(budget):
        return None
    res = hakimi_orient(h, budget)
    if not isinstance(res, Orientation):
        return None
    tails = [0] * g.m
    for hi, gi in enumerate(idxs):
        tails[gi] = keep[res.tails[hi]]
    for i, (u, v) in enumerate(g.edges):
        if s_mask >> u & 1 and s_mask >> v & 1:
            return None   # S independent, cannot happen
        if s_mask >> v & 1:
            tails[i] = u
        elif s_mask >> u & 1:
            tails[i] = v
    return Orientation(g, tuple(tails))


def decide_star_decomposition(g: Graph, k: int):
    """Decide a k-star decomposition; returns one or a certificate of impossibility.

    Requires k | |E| and max degree at most 2k-1 (each raised as an error
    otherwise).  Candidate non-center sets are streamed in deterministic
    lexicographic order and the first success wins.
    """
    t = _preconditions(g, k)
    examined = 0
    failing = []
    for s_mask in independent_sets_of_size(g, t):
        examined += 1
        o = _orient_candidate(g, k, s_mask)
        if o is not None:
            dec = stars_from_zero_orientation(o, k)
            ok, _ = verify_decomposition(g, dec)
            assert ok, "extracted decomposition failed re-verification"
            return dec
        if len(failing) < 10:
            failing.append(tuple(bits(s_mask)))
    if examined == 0:
        witness_mask = max_independent_set(g)
        return NonDecomposability.independence_bound(
            t, witness_mask.bit_count(), sorted(bits(witness_mask)))
    return NonDecomposability.criterion_exhausted(t, examined, failing)


def _orient_unicyclic(g: Graph, comp_mask: int, tails: list[int]) -> None:
    """Orient the induced unicyclic component so every vertex has in-degree 1:
    the unique cycle is oriented cyclically, tree edges point away from it."""
    idxs = g.induced_edge_indices(comp_mask)
    deg = {}
    at = {}
    for i in idxs:
        u, v = g.edges[i]
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
        at.setdefault(u, []).append(i)
        at.setdefault(v, []).append(i)
    # strip leaves to expose the 2-core, which is the unique cycle
    alive = dict(deg)
    removed_edges = set()
    queue = [v for v, d in alive.items() if d == 1]
    while queue:
        v = queue.pop()
        if alive.get(v, 0) != 1:
            continue
        for i in at[v]:
            if i in removed_edges:
                continue
            removed_edges.add(i)
            u, w = g.edges[i]
            other = w if u == v else u
            alive[v] -= 1
            alive[other] -= 1
            if alive[other] == 1:
                queue.append(other)
            break
    core = {v for v, d in alive.items() if d == 2}
    core_edges = [i for i in idxs if i not in removed_edges]
    assert len(core_edges) == len(core), "component is not unicyclic"
    # walk the cycle from its smallest vertex, taking lowest edge index first
    start = min(core)
    cur = start
    used = set()
    while True:
        nxt_edge = min(i for i in at[cur] if i in set(core_edges) and i not in used)
        used.add(nxt_edge)
        u, w = g.edges[nxt_edge]
        other = w if u == cur else u
        tails[nxt_edge] = cur
        cur = other
        if cur == start:
            break
    # tree edges: breadth-first from the cycle, orienting parent -> child
    from collections import deque
    dist = {v: 0 for v in core}
    q = deque(core)
    while q:
        v = q.popleft()
        for i in at[v]:
            if i in removed_edges:
                u, w = g.edges[i]
                other = w if u == v else u
                if other not in dist:
                    dist[other] = dist[v] + 1
                    tails[i] = v
                    removed_edges.discard(i)
                    q.append(other)


def decide_claw_4regular(g: Graph):
    """Claw-decomposition decision specialized to simple 4-regular graphs.

    Per candidate non-center set S the test is the one-cycle-per-component
    check on G - S; extraction orients each component's cycle cyclically and
    its pendant trees away from the cycle (in-degree exactly 1 everywhere).
    """
    if not g.is_simple() or not g.is_regular(4):
        raise NotFourRegular(f"need a simple 4-regular graph, got degrees {set(g.degrees())}")
    if g.n % 3 != 0:
        raise SizeNotDivisible(g.m, 3)
    t = g.n // 3
    examined = 0
    failing = []
    for s_mask in independent_sets_of_size(g, t):
        examined += 1
        ok, _report = unicyclic_components_check(g, s_mask)
        if ok:
            tails = [0] * g.m
            rest = g.full_mask() & ~s_mask
            seen = 0
            for s in bits(rest):
                if seen >> s & 1:
                    continue
                comp = 1 << s
                frontier = comp
                while frontier:
                    nxt = 0
                    for v in bits(frontier):
                        nxt |= g.adj[v] & rest
                    frontier = nxt & ~comp
                    comp |= frontier
                seen |= comp
                _orient_unicyclic(g, comp, tails)
            for i, (u, v) in enumerate(g.edges):
                if s_mask >> v & 1:
                    tails[i] = u
                elif s_mask >> u & 1:
                    tails[i] = v
            dec = stars_from_zero_orientation(Orientation(g, tuple(tails)), 3)
            okv, _ = verify_decomposition(g, dec)
            assert okv, "extracted decomposition failed re-verification"
            return dec
        if len(failing) < 10:
            failing.append(tuple(bits(s_mask)))
    if examined == 0:
        witness_mask = max_independent_set(g)
        return NonDecomposability.independence_bound(
            t, witness_mask.bit_count(), sorted(bits(witness_mask)))
    return NonDecomposability.criterion_exhausted(t, examined, failing)


def exact_cover_oracle(g: Graph, k: int, budget: int | None = 20_000_000):
    """Exhaustive exact cover by k-stars (independent ground truth).

    Branches on the lowest-indexed uncovered edge: its star's center is one of
    the two endpoints, completed by every (k-1)-subset of uncovered edges at
    that center.  Returns a StarDecomposition or None.  Intended for edge
    counts up to ~36.
    """
    if g.m % k != 0:
        raise SizeNotDivisible(g.m, k)
    at = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        at[u].append(i)
        at[v].append(i)
    covered = [False] * g.m
    stars: list[tuple[int, tuple[int, ...]]] = []
    nodes = 0

    def rec(lowest: int) -> bool:
        nonlocal nodes
        while lowest < g.m and covered[lowest]:
            lowest += 1
        if lowest == g.m:
            return True
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(nodes)
        u, v = g.edges[lowest]
        for center in (u, v):
            avail = [i for i in at[center] if not covered[i] and i != lowest]
            if len(avail) < k - 1:
                continue
            for rest in combinations(avail, k - 1):
                group = (lowest,) + rest
                for i in group:
                    covered[i] = True
                stars.append((center, group))
                if rec(lowest + 1):
                    return True
                stars.pop()
                for i in group:
                    covered[i] = False
        return False

    if rec(0):
        dec = StarDecomposition(k=k, stars=tuple(stars))
        ok, _ = verify_decomposition(g, dec)
        assert ok
        return dec
    return None


def verify_decomposition(g: Graph, d: StarDecomposition) -> tuple[bool, list[dict]]:
    """Re-check a decomposition clause by clause.

    Partition of the edge set, center incidence, star sizes, per-vertex center
    multiplicity, and (when the degree cap makes non-centers forced) that the
    non-centers form an independent set.
    """
    report = []
    sizes_ok = all(len(idx) == d.k for _, idx in d.stars)
    report.append({"clause": "star_sizes", "ok": sizes_ok})
    incidence_ok = all(
        0 <= i < g.m and d.stars[s][0] in g.edges[i]
        for s in range(len(d.stars)) for i in d.stars[s][1])
    report.append({"clause": "center_incidence", "ok": incidence_ok})
    used = [0] * g.m
    for _, idx in d.stars:
        for i in idx:
            if 0 <= i < g.m:
                used[i] += 1
    partition_ok = all(c == 1 for c in used)
    report.append({"clause": "partition", "ok": partition_ok,
                   "missing": used.count(0), "duplicated": sum(1 for c in used if c > 1)})
    delta = g.max_degree()
    cap = delta // d.k if d.k else 0
    center_count = {}
    for c, _ in d.stars:
        center_count[c] = center_count.get(c, 0) + 1
    mult_ok = all(c <= cap for c in center_count.values())
    report.append({"clause": "center_multiplicity", "ok": mult_ok, "cap": cap})
    ok = sizes_ok and incidence_ok and partition_ok and mult_ok
    if delta <= 2 * d.k - 1:
        centers = set(center_count)
        non_centers = [v for v in range(g.n) if v not in centers]
        indep = all(not g.has_edge(u, v)
                    for a, u in enumerate(non_centers) for v in non_centers[a + 1:])
        report.append({"clause": "non_centers_independent", "ok": indep,
                       "non_centers": non_centers})
        ok = ok and indep
    return ok, report


def stars_from_pairs(g: Graph, star_pairs, k: int) -> StarDecomposition:
    """Rebuild a StarDecomposition from (center, endpoint-pair list) payloads,
    resolving pairs to edge indices with multiplicity awareness."""
    pool: dict[tuple[int, int], list[int]] = {}
    for i, e in enumerate(g.edges):
        pool.setdefault(e, []).append(i)
    taken: dict[tuple[int, int], int] = {}
    stars = []
    for entry in star_pairs:
        center = entry["center"]
        idx = []
        for u, v in entry["edges"]:
            key = (u, v) if u < v else (v, u)
            pos = taken.get(key, 0)
            if key not in pool or pos >= len(pool[key]):
                raise ValueError(f"edge {key} not present (or overused) in graph")
            idx.append(pool[key][pos])
            taken[key] = pos + 1
        stars.append((center, tuple(idx)))
    return StarDecomposition(k=k, stars=tuple(stars))
