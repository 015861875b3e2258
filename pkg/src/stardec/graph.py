"""Core graph representation and combinatorial primitives.

Graphs are undirected multigraphs on vertices 0..n-1 (no loops).  The edge
list carries multiplicity (parallel edges appear once per copy, and the edge
index is the position in that list); adjacency is additionally kept as one
bit-packed neighbor mask per vertex, which is the simple-graph view used by
independence and enumeration code.

Vertex sets are plain ints used as bitmasks throughout.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import (
    LoopRejected,
    MalformedFile,
    MalformedGraph6,
    NotSimple,
    UniverseExceeded,
    VertexOutOfRange,
)

UNIVERSE_BOUND = 128


class universe_limit:
    """Temporarily raise the vertex-universe guard (masks are plain ints, so
    the bound is a sanity check, not a storage limit)."""

    def __init__(self, n: int):
        self.n = n

    def __enter__(self):
        global UNIVERSE_BOUND
        self.saved = UNIVERSE_BOUND
        UNIVERSE_BOUND = self.n
        return self

    def __exit__(self, *exc):
        global UNIVERSE_BOUND
        UNIVERSE_BOUND = self.saved
        return False


def bits(mask: int) -> Iterator[int]:
    """Iterate the set bit positions of a mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable multigraph with a bit-packed simple-adjacency view."""

    __slots__ = ("n", "edges", "adj", "_deg")

    def __init__(self, n: int, edges, adj, deg):
        self.n = n
        self.edges = edges        # tuple of (u, v) with u < v, one entry per copy
        self.adj = adj            # tuple of neighbor masks (simple view)
        self._deg = deg           # tuple of degrees with multiplicity

    # -- construction ---------------------------------------------------

    @staticmethod
    def from_edge_list(n: int, pairs) -> "Graph":
        """Build a graph from endpoint pairs; parallel pairs keep multiplicity."""
        if n < 0 or n > UNIVERSE_BOUND:
            raise UniverseExceeded(n, UNIVERSE_BOUND)
        adj = [0] * n
        deg = [0] * n
        edges = []
        for u, v in pairs:
            if not (0 <= u < n):
                raise VertexOutOfRange(u, n)
            if not (0 <= v < n):
                raise VertexOutOfRange(v, n)
            if u == v:
                raise LoopRejected(u)
            if u > v:
                u, v = v, u
            edges.append((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            deg[u] += 1
            deg[v] += 1
        return Graph(n, tuple(edges), tuple(adj), tuple(deg))

    # -- basic queries ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self._deg[v]

    def degrees(self):
        return self._deg

    def max_degree(self) -> int:
        return max(self._deg) if self.n else 0

    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def is_regular(self, d: int) -> bool:
        return all(x == d for x in self._deg)

    def neighbors(self, v: int):
        return list(bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def multiplicity(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self.edges.count((u, v))

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and sorted(self.edges) == sorted(other.edges)
        )

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.edges))))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived structure -----------------------------------------------

    def induced_edge_indices(self, mask: int):
        """Indices of edges with both endpoints inside the mask."""
        return [i for i, (u, v) in enumerate(self.edges)
                if (mask >> u & 1) and (mask >> v & 1)]

    def induced_edge_count(self, mask: int) -> int:
        """e(A): number of edges (with multiplicity) inside the vertex mask."""
        return sum(1 for u, v in self.edges if (mask >> u & 1) and (mask >> v & 1))

    def subgraph(self, mask: int) -> tuple["Graph", list[int], list[int]]:
        """Induced subgraph on the masked vertices.

        Returns (subgraph, old vertex per new index, old edge index per new edge index).
        """
        keep = list(bits(mask))
        remap = {v: i for i, v in enumerate(keep)}
        idxs = self.induced_edge_indices(mask)
        pairs = [(remap[self.edges[i][0]], remap[self.edges[i][1]]) for i in idxs]
        return Graph.from_edge_list(len(keep), pairs), keep, idxs


def from_edge_list(n: int, pairs) -> Graph:
    return Graph.from_edge_list(n, pairs)


# -- named small graphs (handy for tests and the CLI) ----------------------

def clique(n: int) -> Graph:
    return Graph.from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

def cycle(n: int) -> Graph:
    return Graph.from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])

def claw() -> Graph:
    return Graph.from_edge_list(4, [(0, 1), (0, 2), (0, 3)])

def star(k: int) -> Graph:
    return Graph.from_edge_list(k + 1, [(0, i) for i in range(1, k + 1)])

def octahedron() -> Graph:
    # K_{2,2,2}: antipodal pairs (0,3), (1,4), (2,5) are the non-edges
    pairs = [(i, j) for i in range(6) for j in range(i + 1, 6) if j - i != 3]
    return Graph.from_edge_list(6, pairs)


# -- graph6 ----------------------------------------------------------------

def _g6_size_bytes(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise UniverseExceeded(n, 258047)


def write_graph6(g: Graph) -> str:
    """Encode a simple graph in the standard graph6 format (bit-exact)."""
    if not g.is_simple():
        raise NotSimple("graph6 cannot encode parallel edges")
    out = bytearray(_g6_size_bytes(g.n))
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc, nbits = 0, 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def parse_graph6(text: str) -> Graph:
    """Decode a graph6 string (optional >>graph6<< header tolerated)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii", errors="replace")
    if not data:
        raise MalformedGraph6(0, "empty input")
    pos = 0
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise MalformedGraph6(0, "graph6 orders beyond 258047 are not supported")
        if len(data) < 4:
            raise MalformedGraph6(len(data), "truncated size header")
        vals = []
        for k in range(1, 4):
            b = data[k] - 63
            if not 0 <= b <= 63:
                raise MalformedGraph6(k, f"byte {data[k]} outside graph6 range")
            vals.append(b)
        n = vals[0] << 12 | vals[1] << 6 | vals[2]
        pos = 4
    else:
        n = data[0] - 63
        if not 0 <= n <= 62:
            raise MalformedGraph6(0, f"byte {data[0]} outside graph6 range")
        pos = 1
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos != nbytes:
        raise MalformedGraph6(len(data), f"expected {nbytes} payload bytes, got {len(data) - pos}")
    pairs = []
    bit = 0
    acc = 0
    have = 0
    idx = pos
    for j in range(1, n):
        for i in range(j):
            if have == 0:
                b = data[idx] - 63
                if not 0 <= b <= 63:
                    raise MalformedGraph6(idx, f"byte {data[idx]} outside graph6 range")
                acc = b
                have = 6
                idx += 1
            have -= 1
            if acc >> have & 1:
                pairs.append((i, j))
            bit += 1
    if have and acc & ((1 << have) - 1):
        raise MalformedGraph6(idx - 1, "nonzero padding bits")
    return Graph.from_edge_list(n, pairs)


# -- plain-text edge list ----------------------------------------------------

def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str, source: str = "<text>") -> Graph:
    rows = [ln for ln in (raw.strip() for raw in text.splitlines())
            if ln and not ln.startswith("#")]
    if not rows:
        raise MalformedFile(source, 1, "empty edge list")
    try:
        n, m = map(int, rows[0].split())
    except ValueError:
        raise MalformedFile(source, 1, f"expected 'n m' header, got {rows[0]!r}") from None
    if len(rows) - 1 != m:
        raise MalformedFile(source, len(rows), f"header promises {m} edges, found {len(rows) - 1}")
    pairs = []
    for ln_no, row in enumerate(rows[1:], start=2):
        try:
            u, v = map(int, row.split())
        except ValueError:
            raise MalformedFile(source, ln_no, f"expected 'u v', got {row!r}") from None
        pairs.append((u, v))
    return Graph.from_edge_list(n, pairs)


# -- products and components -------------------------------------------------

def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G box H on index pairs flattened row-major: (a,b) -> a*|V(H)| + b."""
    if not g.is_simple() or not h.is_simple():
        raise NotSimple("cartesian product is defined here for simple factors")
    n = g.n * h.n
    if n > UNIVERSE_BOUND:
        raise UniverseExceeded(n, UNIVERSE_BOUND)
    pairs = []
    for a in range(g.n):
        base = a * h.n
        for (x, y) in h.edges:
            pairs.append((base + x, base + y))
    for (a, b) in g.edges:
        for x in range(h.n):
            pairs.append((a * h.n + x, b * h.n + x))
    return Graph.from_edge_list(n, pairs)


def connected_components(g: Graph) -> list[int]:
    """Vertex masks of the connected components, ordered by smallest member."""
    seen = 0
    out = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


# -- independence -------------------------------------------------------------

def _greedy_color_bound(adj, mask: int) -> int:
    """Greedy clique cover of the masked vertices; its size bounds alpha."""
    bound = 0
    rest = mask
    while rest:
        v = (rest & -rest).bit_length() - 1
        cliq = 1 << v
        cand = adj[v] & rest
        while cand:
            w = (cand & -cand).bit_length() - 1
            cliq |= 1 << w
            cand &= adj[w]
        rest &= ~cliq
        bound += 1
    return bound


def max_independent_set(g: Graph) -> int:
    """Exact maximum independent set (returned as a vertex mask).

    Branch and bound on the maximum-degree vertex: either exclude it or take
    it and delete its closed neighborhood.  A greedy clique-cover gives the
    pruning bound.  Exponential in the worst case; meant for n up to ~60.
    """
    adj = g.adj
    best_mask = 0
    best_size = 0

    def popcount(x: int) -> int:
        return x.bit_count()

    def expand(mask: int, chosen: int, size: int):
        nonlocal best_mask, best_size
        if not mask:
            if size > best_size:
                best_size, best_mask = size, chosen
            return
        if size + _greedy_color_bound(adj, mask) <= best_size:
            return
        # branch vertex: maximum degree within the remaining mask
        bv, bd = -1, -1
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            d = popcount(adj[v] & mask)
            if d > bd:
                bv, bd = v, d
            m &= m - 1
        if bd == 0:
            # remainder is independent; take everything
            total = size + popcount(mask)
            if total > best_size:
                best_size, best_mask = total, chosen | mask
            return
        # include bv
        expand(mask & ~(adj[bv] | 1 << bv), chosen | 1 << bv, size + 1)
        # exclude bv
        expand(mask & ~(1 << bv), chosen, size)

    expand(g.full_mask(), 0, 0)
    return best_mask


def independent_sets_of_size(g: Graph, t: int) -> Iterator[int]:
    """Yield every independent set of size exactly t, each once.

    Deterministic order: lexicographic by the sorted member tuple (smallest
    member first), so the stream is reproducible and may be abandoned early.
    """
    n = g.n
    adj = g.adj
    if t == 0:
        yield 0
        return
    if t > n:
        return

    def rec(start: int, chosen: int, forbidden: int, need: int):
        for v in range(start, n - need + 1):
            if forbidden >> v & 1:
                continue
            if need == 1:
                yield chosen | 1 << v
            else:
                yield from rec(v + 1, chosen | 1 << v, forbidden | adj[v], need - 1)

    yield from rec(0, 0, 0, t)


# -- unicyclic decomposition test ---------------------------------------------

def unicyclic_components_check(g: Graph, s_mask: int) -> tuple[bool, list[dict]]:
    """Does every component of G - S have edge count equal to vertex count?

    Edge counts include multiplicity.  Returns the verdict and a per-component
    report of vertex/edge counts.
    """
    rest = g.full_mask() & ~s_mask
    report = []
    ok = True
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
        nv = comp.bit_count()
        ne = g.induced_edge_count(comp)
        good = ne == nv
        ok = ok and good
        report.append({"vertices": sorted(bits(comp)), "vertex_count": nv,
                       "edge_count": ne, "unicyclic": good})
    return ok, report
