"""Flow-based connectivity checks with explicit cut certificates.

Edge connectivity is a fixed-root sweep of max-flows; vertex connectivity uses
the standard vertex-split construction minimized over non-adjacent pairs; the
essential edge-connectivity threshold check contracts every pair of
vertex-disjoint edges and bounds the min cut between them.

Soundness of the pairwise reduction (documented here because the brute-force
oracle exists to guard it): in a 2-connected graph a cut of size below the
threshold whose edges all share a vertex z must have {z} as one side, and such
a cut never separates two vertex-disjoint edges; conversely a violating cut
with an edge inside each side is found by the edge-pair enumeration, and a
violating cut one of whose sides is independent is found by the companion scan
over non-adjacent vertex pairs (boundaries of independent sides only shrink
when the side shrinks to two vertices).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Disconnected, NotTwoConnected, UniverseTooLarge
from .flow import FlowNetwork
from .graph import Graph, bits, is_connected


@dataclass(frozen=True)
class CutCertificate:
    kind: str                 # "edge_cut" | "vertex_cut" | "essential_edge_cut"
    side: tuple[int, ...]     # one shore for edge cuts, the separator for vertex cuts
    size: int
    shares_common_vertex: bool | None = None

    def recount_edge_cut(self, g: Graph) -> int:
        mask = 0
        for v in self.side:
            mask |= 1 << v
        return sum(1 for u, v in g.edges if (mask >> u & 1) != (mask >> v & 1))


def _distinct_weighted_edges(g: Graph):
    weight: dict[tuple[int, int], int] = {}
    for e in g.edges:
        weight[e] = weight.get(e, 0) + 1
    return weight


def _cut_edge_indices(g: Graph, mask: int):
    return [i for i, (u, v) in enumerate(g.edges) if (mask >> u & 1) != (mask >> v & 1)]


def shares_common_vertex(g: Graph, edge_indices) -> bool:
    """Do all the given edges meet in one vertex?  (Vacuously true if empty.)"""
    common = None
    for i in edge_indices:
        u, v = g.edges[i]
        ends = {u, v}
        common = ends if common is None else common & ends
        if not common:
            return False
    return True


def edge_connectivity(g: Graph) -> tuple[int, CutCertificate]:
    """Global minimum edge cut via n-1 max-flows from a fixed root."""
    if g.n < 2 or not is_connected(g):
        raise Disconnected("edge connectivity needs a connected graph on >= 2 vertices")
    weights = _distinct_weighted_edges(g)
    best = None
    best_side = None
    for t in range(1, g.n):
        net = FlowNetwork(g.n)
        for (u, v), w in weights.items():
            net.add_undirected(u, v, w)
        value = net.max_flow(0, t, cutoff=best)
        if best is None or value < best:
            best = value
            reach = net.residual_reachable(0)
            best_side = tuple(sorted(reach))
    mask = 0
    for v in best_side:
        mask |= 1 << v
    cut = _cut_edge_indices(g, mask)
    cert = CutCertificate(kind="edge_cut", side=best_side, size=len(cut),
                          shares_common_vertex=shares_common_vertex(g, cut))
    assert cert.size == best
    return best, cert


def _split_network(g: Graph, s: int, t: int) -> FlowNetwork:
    # v_in = 2v, v_out = 2v+1; internal arc capacity 1 except at the terminals
    inf = g.n * g.n
    net = FlowNetwork(2 * g.n)
    for v in range(g.n):
        net.add_arc(2 * v, 2 * v + 1, inf if v in (s, t) else 1)
    for (u, v) in set(g.edges):
        net.add_arc(2 * u + 1, 2 * v, inf)
        net.add_arc(2 * v + 1, 2 * u, inf)
    return net


def vertex_connectivity(g: Graph) -> tuple[int, CutCertificate]:
    """Minimum vertex cut over non-adjacent pairs (n-1 for complete graphs)."""
    if g.n < 2 or not is_connected(g):
        raise Disconnected("vertex connectivity needs a connected graph on >= 2 vertices")
    if not g.is_simple():
        raise ValueError("vertex connectivity is defined here for simple graphs")
    pairs = [(s, t) for s in range(g.n) for t in range(s + 1, g.n) if not g.has_edge(s, t)]
    if not pairs:
        return g.n - 1, CutCertificate(kind="vertex_cut",
                                       side=tuple(range(1, g.n)), size=g.n - 1)
    best = None
    best_sep = None
    for s, t in pairs:
        net = _split_network(g, s, t)
        value = net.max_flow(2 * s + 1, 2 * t, cutoff=best)
        if best is None or value < best:
            best = value
            reach = net.residual_reachable(2 * s + 1)
            sep = tuple(sorted(v for v in range(g.n)
                               if 2 * v in reach and 2 * v + 1 not in reach))
            best_sep = sep
            assert len(sep) == value
    return best, CutCertificate(kind="vertex_cut", side=best_sep, size=best)


def _articulation_free(g: Graph) -> bool:
    """No cut vertex (iterative lowpoint DFS on the simple view)."""
    n = g.n
    if n < 3:
        return False
    num = [-1] * n
    low = [0] * n
    parent = [-1] * n
    counter = 0
    root_children = 0
    stack = [(0, iter(g.neighbors(0)))]
    num[0] = low[0] = counter
    counter += 1
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if num[w] == -1:
                parent[w] = v
                num[w] = low[w] = counter
                counter += 1
                if v == 0:
                    root_children += 1
                stack.append((w, iter(g.neighbors(w))))
                advanced = True
                break
            elif w != parent[v]:
                low[v] = min(low[v], num[w])
            elif g.multiplicity(v, w) > 1:
                low[v] = min(low[v], num[w])
        if not advanced:
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if u != 0 and low[v] >= num[u]:
                    return False
    if counter != n:
        return False
    return root_children <= 1


def _min_cut_between_edges(g: Graph, e, f, cutoff=None):
    """Min edge cut separating edge e's endpoints from edge f's (contracted)."""
    u1, v1 = e
    u2, v2 = f
    remap = {}
    nxt = 2
    remap[u1] = remap[v1] = 0
    remap[u2] = remap[v2] = 1
    for v in range(g.n):
        if v not in remap:
            remap[v] = nxt
            nxt += 1
    net = FlowNetwork(nxt)
    agg: dict[tuple[int, int], int] = {}
    for (a, b) in g.edges:
        x, y = remap[a], remap[b]
        if x == y:
            continue
        if x > y:
            x, y = y, x
        agg[(x, y)] = agg.get((x, y), 0) + 1
    for (x, y), w in agg.items():
        net.add_undirected(x, y, w)
    value = net.max_flow(0, 1, cutoff=cutoff)
    return value, net, remap


def essential_edge_connectivity_check(g: Graph, lam: int):
    """Pass iff every edge cut smaller than lam has all edges through one vertex.

    Requires 2-connectivity (raises NotTwoConnected).  Returns (True, None) or
    (False, certificate) with the first violating cut found in scan order.
    """
    if not _articulation_free(g):
        raise NotTwoConnected("essential edge-connectivity check requires a 2-connected graph")
    # independent-side cuts: two non-adjacent vertices with small joint boundary
    deg = g.degrees()
    for u in range(g.n):
        for w in range(u + 1, g.n):
            if g.has_edge(u, w):
                continue
            size = deg[u] + deg[w]
            if size < lam:
                mask = 1 << u | 1 << w
                cut = _cut_edge_indices(g, mask)
                if not shares_common_vertex(g, cut):
                    return False, CutCertificate(kind="essential_edge_cut",
                                                 side=(u, w), size=size,
                                                 shares_common_vertex=False)
    # cuts separating two vertex-disjoint edges
    distinct = sorted(set(g.edges))
    for a in range(len(distinct)):
        e = distinct[a]
        for b in range(a + 1, len(distinct)):
            f = distinct[b]
            if e[0] in f or e[1] in f:
                continue
            value, net, remap = _min_cut_between_edges(g, e, f, cutoff=lam)
            if value < lam:
                reach = net.residual_reachable(0)
                side = tuple(sorted(v for v in range(g.n) if remap[v] in reach))
                mask = 0
                for v in side:
                    mask |= 1 << v
                cut = _cut_edge_indices(g, mask)
                shared = shares_common_vertex(g, cut)
                assert len(cut) == value and not shared
                return False, CutCertificate(kind="essential_edge_cut",
                                             side=side, size=value,
                                             shares_common_vertex=shared)
    return True, None


def essential_cut_bruteforce(g: Graph, lam: int):
    """Literal check of the definition over all 2^(n-1) sides (n <= 24).

    Gray-code sweep keeps the crossing count incremental; the common-vertex
    test runs only on the rare sides below the threshold.
    """
    if g.n > 24:
        raise UniverseTooLarge(g.n, 24)
    if g.n < 2:
        return True, None
    n = g.n
    at = [[] for _ in range(n)]
    for i, (u, v) in enumerate(g.edges):
        at[u].append(v)
        at[v].append(u)
    inside = [False] * n
    inside[0] = True
    size = g.degree(0)
    best_violation = None
    # iterate subsets containing vertex 0: Gray code over vertices 1..n-1
    prev_gray = 0
    for x in range(1, 1 << (n - 1)):
        gray = x ^ (x >> 1)
        flip = (gray ^ prev_gray).bit_length()   # vertex index that changed
        prev_gray = gray
        v = flip
        entering = not inside[v]
        inside[v] = entering
        delta = 0
        for w in at[v]:
            delta += -1 if inside[w] else 1
        size += delta if entering else -delta
        if size < lam and gray != (1 << (n - 1)) - 1:
            mask = 1
            for w in range(1, n):
                if inside[w]:
                    mask |= 1 << w
            cut = _cut_edge_indices(g, mask)
            assert len(cut) == size
            if not shares_common_vertex(g, cut):
                side = tuple(sorted(bits(mask)))
                cert = CutCertificate(kind="essential_edge_cut", side=side,
                                      size=size, shares_common_vertex=False)
                if best_violation is None or (size, side) < (best_violation.size, best_violation.side):
                    best_violation = cert
    if best_violation is not None:
        return False, best_violation
    return True, None
