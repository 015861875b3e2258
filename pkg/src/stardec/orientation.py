"""Orientation solvers.

Three capabilities: the flow-based bounded-in-degree orientation (with a
violating-set certificate on failure), an exhaustive search for orientations
whose out-degrees hit prescribed residues mod k, and extraction of a k-star
decomposition from an orientation whose out-degrees are all divisible by k.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, ParityMismatch, PreconditionViolated
from .flow import FlowNetwork
from .graph import Graph, bits


@dataclass(frozen=True)
class Orientation:
    """A direction for every edge: tails[i] is the tail of edge i."""

    graph: Graph
    tails: tuple[int, ...]

    def head(self, i: int) -> int:
        u, v = self.graph.edges[i]
        return v if self.tails[i] == u else u

    def out_degrees(self) -> list[int]:
        out = [0] * self.graph.n
        for t in self.tails:
            out[t] += 1
        return out

    def in_degrees(self) -> list[int]:
        deg = self.graph.degrees()
        out = self.out_degrees()
        return [deg[v] - out[v] for v in range(self.graph.n)]

    def as_text(self) -> str:
        return "\n".join(f"{self.tails[i]} {self.head(i)}" for i in range(self.graph.m))


@dataclass(frozen=True)
class ViolatingSet:
    """Witness that no orientation meets the in-degree budget: a vertex set S
    with more internal edges than total budget."""

    members: tuple[int, ...]
    excess: int

    def recount(self, g: Graph, p) -> int:
        mask = 0
        for v in self.members:
            mask |= 1 << v
        return g.induced_edge_count(mask) - sum(p[v] for v in self.members)


def normalize_budget(g: Graph, p) -> list[int]:
    if isinstance(p, dict):
        return [p[v] for v in range(g.n)]
    out = list(p)
    if len(out) != g.n:
        raise ValueError(f"budget defined on {len(out)} vertices, graph has {g.n}")
    return out


def hakimi_orient(g: Graph, p) -> Orientation | ViolatingSet:
    """Orient so that every in-degree is at most p(v), or certify impossibility.

    Flow model: source -> one node per edge (capacity 1), edge node -> its two
    endpoints (capacity 1 each), vertex -> sink (capacity p(v)).  Feasible iff
    the max flow saturates every edge; the head of each edge is the endpoint
    its flow unit reaches.  On failure the violating set is read off the source
    side of the min cut and re-counted before returning.
    """
    p = normalize_budget(g, p)
    for v in range(g.n):
        if p[v] < 0:
            # in-degree <= negative is impossible outright; {v} already violates
            return ViolatingSet((v,), -p[v])
    m = g.m
    src = 0
    edge0 = 1
    vert0 = 1 + m
    sink = 1 + m + g.n
    net = FlowNetwork(sink + 1)
    src_arcs = []
    end_arcs = []
    for i, (u, v) in enumerate(g.edges):
        src_arcs.append(net.add_arc(src, edge0 + i, 1))
        end_arcs.append((net.add_arc(edge0 + i, vert0 + u, 1),
                         net.add_arc(edge0 + i, vert0 + v, 1)))
    for v in range(g.n):
        net.add_arc(vert0 + v, sink, p[v])
    value = net.max_flow(src, sink)
    if value == m:
        tails = []
        for i, (u, v) in enumerate(g.edges):
            au, av = end_arcs[i]
            if net.cap[au] == 0:       # unit went to u, so u is the head
                tails.append(v)
            else:
                tails.append(u)
        o = Orientation(g, tuple(tails))
        assert all(d <= p[v] for v, d in enumerate(o.in_degrees()))
        return o
    reach = net.residual_reachable(src)
    members = tuple(v for v in range(g.n) if vert0 + v in reach)
    vs = ViolatingSet(members, 0)
    excess = vs.recount(g, p)
    assert excess > 0, "min-cut extraction must yield a violated inequality"
    return ViolatingSet(members, excess)


def mod_k_orientation(g: Graph, k: int, p=None, budget: int | None = 50_000_000):
    """Exhaustive search for an orientation with out-degree(v) = p(v) mod k.

    Returns an Orientation or None after exhausting the space.  Edges are
    decided most-constrained-vertex first; a vertex with r undecided edges is
    abandoned as soon as no achievable out-degree matches its residue.
    Intended as a desk-scale oracle (edge counts up to ~40).
    """
    if k < 3:
        raise ValueError("modulus must be at least 3")
    if p is None:
        p = [0] * g.n
    p = normalize_budget(g, p)
    p = [x % k for x in p]
    if (g.m - sum(p)) % k != 0:
        raise ParityMismatch(
            f"|E|={g.m} and sum(p)={sum(p)} differ mod {k}; no orientation can exist")

    m = g.m
    # static decision order: repeatedly take the vertex with fewest undecided
    # edges and queue all of them, so residue checks trigger early
    remaining = list(g.degrees())
    edges_at = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        edges_at[u].append(i)
        edges_at[v].append(i)
    order: list[int] = []
    placed = [False] * m
    live = set(v for v in range(g.n) if remaining[v])
    while live:
        v = min(live, key=lambda w: (remaining[w], w))
        for i in edges_at[v]:
            if not placed[i]:
                placed[i] = True
                order.append(i)
                u, w = g.edges[i]
                remaining[u] -= 1
                remaining[w] -= 1
        live = {w for w in live if remaining[w] > 0}

    undecided = list(g.degrees())
    out = [0] * g.n
    tails = [0] * m
    nodes = 0

    def feasible(v: int) -> bool:
        return (p[v] - out[v]) % k <= undecided[v]

    def rec(pos: int) -> bool:
        nonlocal nodes
        if pos == m:
            return True
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(nodes)
        i = order[pos]
        u, v = g.edges[i]
        undecided[u] -= 1
        undecided[v] -= 1
        for tail, headv in ((u, v), (v, u)):
            out[tail] += 1
            tails[i] = tail
            if feasible(u) and feasible(v) and rec(pos + 1):
                out[tail] -= 1
                undecided[u] += 1
                undecided[v] += 1
                return True
            out[tail] -= 1
        undecided[u] += 1
        undecided[v] += 1
        return False

    if rec(0):
        o = Orientation(g, tuple(tails))
        assert all(d % k == p[v] for v, d in enumerate(o.out_degrees()))
        return o
    return None


def stars_from_zero_orientation(o: Orientation, k: int):
    """Split each vertex's out-edges into groups of k; the centers are the
    vertices with positive out-degree.  Requires out-degree(v) = 0 mod k."""
    from .decompose import StarDecomposition

    g = o.graph
    out_edges: list[list[int]] = [[] for _ in range(g.n)]
    for i in range(g.m):
        out_edges[o.tails[i]].append(i)
    stars = []
    for v in range(g.n):
        if len(out_edges[v]) % k != 0:
            raise PreconditionViolated(v, f"out-degree {len(out_edges[v])} not divisible by {k}")
        for j in range(0, len(out_edges[v]), k):
            stars.append((v, tuple(out_edges[v][j:j + k])))
    return StarDecomposition(k=k, stars=tuple(stars))


def verify_orientation(o: Orientation, in_bound=None, residue=None) -> tuple[bool, list[dict]]:
    """Recompute degrees from scratch and check the requested contract.

    in_bound: budget p with d-(v) <= p(v); residue: (k, p) with d+(v) = p(v)
    mod k.  Reports every violating vertex.
    """
    g = o.graph
    violations = []
    ind = o.in_degrees()
    outd = o.out_degrees()
    assert all(ind[v] + outd[v] == g.degree(v) for v in range(g.n))
    if in_bound is not None:
        p = normalize_budget(g, in_bound)
        for v in range(g.n):
            if ind[v] > p[v]:
                violations.append({"vertex": v, "check": "in_bound",
                                   "in_degree": ind[v], "budget": p[v]})
    if residue is not None:
        k, p = residue
        p = normalize_budget(g, p)
        for v in range(g.n):
            if outd[v] % k != p[v] % k:
                violations.append({"vertex": v, "check": "residue",
                                   "out_degree": outd[v], "wanted": p[v] % k, "modulus": k})
    return not violations, violations
