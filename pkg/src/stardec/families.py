"""Builders and verifiers for the counterexample families, plus the registry
of named graphs with re-checkable property claims.

The 48n-vertex family chains 3n copies of a 16-vertex block in a ring; the
block data file carries, besides edges and boundary labels, the positions in
each boundary vertex's rotation where the three inter-block edge families
enter the embedding (marker tokens), because planarity of the assembled ring
depends on exactly where those edges attach.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from pathlib import Path

from .decompose import NonDecomposability, decide_claw_4regular
from .embedding import genus_from_rotation, rotation_from_edge_orders
from .errors import (
    BlockInvariantViolated,
    ClaimFailed,
    KTooSmall,
    MalformedFile,
    TranscriptionMissing,
)
from .connectivity import (
    edge_connectivity,
    essential_edge_connectivity_check,
    vertex_connectivity,
    _articulation_free,
)
from .graph import (
    Graph,
    bits,
    cartesian_product,
    clique,
    cycle,
    is_connected,
    max_independent_set,
    independent_sets_of_size,
    unicyclic_components_check,
)

MARKERS = ("@zprev", "@znext", "@ain", "@xout", "@bin", "@yout")
_MARKER_HOME = {"@zprev": "z", "@znext": "z", "@ain": "a", "@xout": "x",
                "@bin": "b", "@yout": "y"}
BOUNDARY_DEGREES = {"z": 2, "x": 3, "a": 3, "y": 3, "b": 3}


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class PropertyReport:
    name: str
    checks: list[Check] = field(default_factory=list)
    certificate: NonDecomposability | None = None

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(Check(name, bool(ok), str(detail)))

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "passed": self.passed,
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks],
        }
        if self.certificate is not None:
            from .report import certificate_json
            out["certificate"] = certificate_json(self.certificate)
        return out


@dataclass(frozen=True)
class BlockSpec:
    """The 16-vertex building block with labeled boundary vertices and a
    rotation system whose marker tokens locate the inter-block edge-ends."""

    graph: Graph
    labels: dict           # 'z','x','a','y','b' -> vertex index
    rotation: dict         # vertex -> list of edge indices and marker tokens

    def validate(self) -> None:
        g = self.graph
        if g.n != 16:
            raise BlockInvariantViolated(f"block has {g.n} vertices, wants 16")
        if set(self.labels) != set(BOUNDARY_DEGREES):
            raise BlockInvariantViolated(f"labels {sorted(self.labels)} != z,x,a,y,b")
        if len(set(self.labels.values())) != 5:
            raise BlockInvariantViolated("boundary labels are not distinct")
        for name, want in BOUNDARY_DEGREES.items():
            v = self.labels[name]
            if g.degree(v) != want:
                raise BlockInvariantViolated(
                    f"deg({name}) = {g.degree(v)}, wants {want}")
        for v in range(g.n):
            if v not in set(self.labels.values()) and g.degree(v) != 4:
                raise BlockInvariantViolated(f"interior vertex {v} has degree {g.degree(v)}")
        if not is_connected(g):
            raise BlockInvariantViolated("block is disconnected")
        seen_markers = []
        vertex_of = {v: k for k, v in self.labels.items()}
        for v, entries in self.rotation.items():
            for t in entries:
                if isinstance(t, str):
                    if t not in MARKERS:
                        raise BlockInvariantViolated(f"unknown marker {t}")
                    if vertex_of.get(v) != _MARKER_HOME[t]:
                        raise BlockInvariantViolated(f"marker {t} at wrong vertex {v}")
                    seen_markers.append(t)
        if sorted(seen_markers) != sorted(MARKERS):
            raise BlockInvariantViolated(f"markers seen {sorted(seen_markers)}")
        # ignoring markers, the rotation must be a valid embedding of the block
        plain = {v: [t for t in ent if not isinstance(t, str)]
                 for v, ent in self.rotation.items()}
        rotation_from_edge_orders(g, plain)


def build_g48n(block: BlockSpec, n: int):
    """Chain 3n block copies in a ring; returns (graph, rotation system).

    Copy i occupies vertices 16i..16i+15.  For every i mod 3n the three edges
    z_i z_{i+1}, x_i a_{i+1}, y_i b_{i+1} are added, spliced into the copies'
    rotations at the marker positions.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    block.validate()
    b = block.graph
    copies = 3 * n
    nn = 16 * copies
    pairs = []
    for i in range(copies):
        off = 16 * i
        pairs.extend((off + u, off + v) for u, v in b.edges)
    lab = block.labels
    link_index = {}
    for i in range(copies):
        j = (i + 1) % copies
        for kind, (src, dst) in (("z", ("z", "z")), ("x", ("x", "a")), ("y", ("y", "b"))):
            link_index[(kind, i)] = len(pairs)
            pairs.append((16 * i + lab[src], 16 * j + lab[dst]))
    g = Graph.from_edge_list(nn, pairs)
    me = len(b.edges)
    orders = {}
    for i in range(copies):
        off = 16 * i
        prev = (i - 1) % copies
        marker_edge = {
            "@znext": link_index[("z", i)],
            "@zprev": link_index[("z", prev)],
            "@xout": link_index[("x", i)],
            "@ain": link_index[("x", prev)],
            "@yout": link_index[("y", i)],
            "@bin": link_index[("y", prev)],
        }
        for v, entries in block.rotation.items():
            row = []
            for t in entries:
                if isinstance(t, str):
                    row.append(marker_edge[t])
                else:
                    row.append(i * me + t)
            orders[off + v] = row
    rot = rotation_from_edge_orders(g, orders)
    return g, rot


def verify_g48n(g: Graph, rot, n: int, block: BlockSpec | None = None) -> PropertyReport:
    """Re-check every claimed property of a 48n-vertex ring graph."""
    rep = PropertyReport(name=f"g48n(n={n})")
    rep.add("simple", g.is_simple())
    rep.add("order", g.n == 48 * n, f"n={g.n}")
    rep.add("four_regular", g.is_regular(4))
    rep.add("size_divisible_by_3", g.m == 96 * n and g.m % 3 == 0, f"m={g.m}")
    rep.add("connected", is_connected(g))
    genus = genus_from_rotation(g, rot)
    rep.add("planar_genus_0", genus == 0, f"genus={genus}")
    vc, _ = vertex_connectivity(g)
    rep.add("vertex_connectivity_4", vc == 4, f"kappa={vc}")
    ok, cert = essential_edge_connectivity_check(g, 6)
    rep.add("essentially_6_edge_connected", ok,
            "" if ok else f"violating cut size {cert.size} side {cert.side}")
    per_block_ok = True
    worst = 0
    for i in range(3 * n):
        mask = ((1 << 16) - 1) << (16 * i)
        sub, _, _ = g.subgraph(mask)
        a = max_independent_set(sub).bit_count()
        worst = max(worst, a)
        per_block_ok = per_block_ok and a <= 5
    rep.add("per_block_independence_at_most_5", per_block_ok, f"max per-block alpha={worst}")
    bound = 15 * n
    required = 16 * n
    rep.add("independence_bound", bound < required,
            f"alpha <= {bound} < required {required}")
    if rep.passed:
        rep.certificate = NonDecomposability.independence_bound_by_parts(required, bound)
    return rep


def build_product_family(k: int, n: int) -> Graph:
    """Cartesian product of the kn-cycle with the complete graph on 2k-3
    vertices: (2k-2)-regular with (k-1)|V| edges, divisible by k."""
    if k < 4:
        raise KTooSmall(k)
    if n < 1:
        raise ValueError("n must be at least 1")
    ring = cycle(k * n) if k * n >= 3 else clique(2)
    return cartesian_product(ring, clique(2 * k - 3))


def verify_product_family(g: Graph, k: int, n: int) -> PropertyReport:
    """Re-check every claimed property of the product-family member."""
    rep = PropertyReport(name=f"product(k={k},n={n})")
    fiber = 2 * k - 3
    nv = k * n * fiber
    rep.add("simple", g.is_simple())
    rep.add("order", g.n == nv, f"n={g.n}")
    rep.add("regular_2k_minus_2", g.is_regular(2 * k - 2))
    rep.add("size", g.m == (k - 1) * g.n and g.m % k == 0, f"m={g.m}")
    rep.add("connected", is_connected(g))
    vc, _ = vertex_connectivity(g)
    rep.add("vertex_connectivity_2k_minus_2", vc == 2 * k - 2, f"kappa={vc}")
    ok, cert = essential_edge_connectivity_check(g, 4 * k - 6)
    rep.add("essentially_4k_minus_6_edge_connected", ok,
            "" if ok else f"violating cut size {cert.size} side {cert.side}")
    # each complete-graph fiber is a clique, so independent sets pick at most
    # one vertex per fiber
    fibers_cliques = all(
        all(g.has_edge(base + x, base + y) for x in range(fiber) for y in range(x + 1, fiber))
        for base in range(0, g.n, fiber))
    rep.add("fibers_are_cliques", fibers_cliques)
    alpha_bound = g.n // fiber
    required = g.n // k
    witness = None
    if g.n <= 40:
        mask = max_independent_set(g)
        alpha = mask.bit_count()
        witness = sorted(bits(mask))
        rep.add("independence_number", alpha <= alpha_bound,
                f"alpha={alpha} fiber bound={alpha_bound}")
    else:
        alpha = None
        rep.add("independence_number", True, f"alpha <= {alpha_bound} by fiber bound")
    rep.add("independence_bound", alpha_bound < required or (alpha is not None and alpha < required),
            f"required non-center set {required}")
    if rep.passed:
        if alpha is not None and alpha < required:
            rep.certificate = NonDecomposability.independence_bound(required, alpha, witness)
        else:
            rep.certificate = NonDecomposability.independence_bound_by_parts(required, alpha_bound)
    return rep


# -- known-graph files and registry ------------------------------------------

def parse_known_file(text: str, source: str = "<text>"):
    """Parse the registry file format: name line, 'n m' line, edge lines,
    optional label and rotation lines.  Returns (name, graph, labels, orders)
    where orders values mix edge indices and marker tokens."""
    rows = [ln.rstrip() for ln in text.splitlines()]
    rows = [r for r in rows if r and not r.lstrip().startswith("#")]
    if len(rows) < 2:
        raise MalformedFile(source, 1, "expected a name line and an 'n m' line")
    name = rows[0].strip()
    try:
        n, m = map(int, rows[1].split())
    except ValueError:
        raise MalformedFile(source, 2, f"expected 'n m', got {rows[1]!r}") from None
    pairs = []
    labels = {}
    orders = {}
    for ln_no, row in enumerate(rows[2:], start=3):
        parts = row.split()
        if parts[0] == "label":
            labels[parts[1]] = int(parts[2])
        elif parts[0] == "rot":
            v = int(parts[1].rstrip(":"))
            ent = []
            for tok in parts[2:]:
                if tok.startswith("e"):
                    ent.append(int(tok[1:]))
                elif tok in MARKERS:
                    ent.append(tok)
                else:
                    raise MalformedFile(source, ln_no, f"bad rotation token {tok!r}")
            orders[v] = ent
        else:
            try:
                u, v = map(int, parts)
            except ValueError:
                raise MalformedFile(source, ln_no, f"unparsable line {row!r}") from None
            pairs.append((u, v))
    if len(pairs) != m:
        raise MalformedFile(source, len(rows), f"header promises {m} edges, found {len(pairs)}")
    return name, Graph.from_edge_list(n, pairs), labels, orders


def write_known_file(name, g: Graph, labels=None, orders=None) -> str:
    lines = [name, f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    for key in sorted(labels or {}):
        lines.append(f"label {key} {labels[key]}")
    for v in sorted(orders or {}):
        toks = [t if isinstance(t, str) else f"e{t}" for t in orders[v]]
        lines.append(f"rot {v}: " + " ".join(toks))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class KnownGraph:
    name: str
    graph: Graph
    labels: dict
    orders: dict
    claims: dict


# claims checked by verify_known; every value is re-computed from the data
KNOWN_GRAPH_CLAIMS = {
    "fig1-quad-a": {"order": 12, "regular": 4, "connected": True,
                    "edge_connectivity": 4, "claw_decomposable": False},
    "fig1-quad-b": {"order": 12, "regular": 4, "connected": True,
                    "edge_connectivity": 4, "claw_decomposable": False},
    "fig1-quad-c": {"order": 12, "regular": 4, "connected": True,
                    "edge_connectivity": 4, "claw_decomposable": False},
    "fig1-quad-d": {"order": 12, "regular": 4, "connected": True,
                    "edge_connectivity": 4, "claw_decomposable": False},
    "fig1-jaeger-12": {"order": 12, "regular": 4, "connected": True,
                       "edge_connectivity": 4, "claw_decomposable": False},
    "fig2-planar-18": {"order": 18, "regular": 4, "connected": True,
                       "planar": True, "two_connected": True,
                       "alpha": 5, "required_independent": 6,
                       "claw_decomposable": False},
    "fig3-left-21": {"order": 21, "regular": 4, "connected": True,
                     "planar": True, "vertex_connectivity": 3,
                     "alpha": 7, "required_independent": 7,
                     "unique_required_set_fails_unicyclic": True,
                     "claw_decomposable": False},
    "fig3-right-21": {"order": 21, "regular": 4, "connected": True,
                      "planar": True, "vertex_connectivity": 3,
                      "alpha": 6, "required_independent": 7,
                      "claw_decomposable": False},
    "g48-block": {"block": True},
}


def _data_dir() -> Path:
    return Path(str(importlib.resources.files("stardec").joinpath("data")))


def known_graph_path(name: str) -> Path:
    return _data_dir() / f"{name}.txt"


def list_known_graphs():
    return sorted(KNOWN_GRAPH_CLAIMS)


def load_known_graph(name: str) -> KnownGraph:
    if name not in KNOWN_GRAPH_CLAIMS:
        raise TranscriptionMissing(name)
    path = known_graph_path(name)
    if not path.exists():
        raise TranscriptionMissing(name)
    fname, g, labels, orders = parse_known_file(path.read_text(), str(path))
    return KnownGraph(name=name, graph=g, labels=labels, orders=orders,
                      claims=KNOWN_GRAPH_CLAIMS[name])


def load_block(name: str = "g48-block") -> BlockSpec:
    kg = load_known_graph(name)
    spec = BlockSpec(graph=kg.graph, labels=kg.labels, rotation=kg.orders)
    spec.validate()
    return spec


def verify_known(name: str) -> PropertyReport:
    """Load a registry graph and re-verify every claim; raises ClaimFailed on
    the first discrepancy (a failed claim means the data file is wrong)."""
    kg = load_known_graph(name)
    g = kg.graph
    rep = PropertyReport(name=name)
    if kg.claims.get("block"):
        spec = BlockSpec(graph=g, labels=kg.labels, rotation=kg.orders)
        spec.validate()
        rep.add("block_invariants", True)
        built, rot = build_g48n(spec, 1)
        sub = verify_g48n(built, rot, 1, spec)
        for c in sub.checks:
            rep.add(f"assembled.{c.name}", c.ok, c.detail)
        rep.certificate = sub.certificate
        if not rep.passed:
            bad = next(c for c in rep.checks if not c.ok)
            raise ClaimFailed(name, bad.name, bad.detail)
        return rep
    for claim, want in kg.claims.items():
        if claim == "order":
            got = g.n
        elif claim == "regular":
            got = want if g.is_regular(want) else sorted(set(g.degrees()))
        elif claim == "connected":
            got = is_connected(g)
        elif claim == "two_connected":
            got = _articulation_free(g)
        elif claim == "edge_connectivity":
            got, _ = edge_connectivity(g)
        elif claim == "vertex_connectivity":
            got, _ = vertex_connectivity(g)
        elif claim == "planar":
            plain = {v: [t for t in kg.orders[v] if not isinstance(t, str)]
                     for v in kg.orders}
            rot = rotation_from_edge_orders(g, plain)
            got = genus_from_rotation(g, rot) == 0
        elif claim == "alpha":
            got = max_independent_set(g).bit_count()
        elif claim == "required_independent":
            got = g.n - g.m // 3
        elif claim == "claw_decomposable":
            got = not isinstance(decide_claw_4regular(g), NonDecomposability)
        elif claim == "unique_required_set_fails_unicyclic":
            got = _unique_required_set_fails_unicyclic(g)
        else:
            raise ClaimFailed(name, claim, "unknown claim kind")
        ok = got == want
        rep.add(claim, ok, f"got {got}, want {want}")
        if not ok:
            raise ClaimFailed(name, claim, f"got {got}, want {want}")
    return rep


def _unique_required_set_fails_unicyclic(g: Graph) -> bool:
    """All independent sets of size n - m/3 are one orbit under relabeling
    symmetry, and removing one leaves a component with at least two cycles."""
    from .generate import canonical_form

    t = g.n - g.m // 3
    sets = list(independent_sets_of_size(g, t))
    if not sets:
        return False
    # orbit check via colored canonical form: append a marker vertex joined to
    # the set; isomorphic marked graphs mean the sets are equivalent
    forms = set()
    for s in sets:
        pairs = list(g.edges) + [(v, g.n) for v in bits(s)]
        marked = Graph.from_edge_list(g.n + 1, pairs)
        forms.add(canonical_form(marked).bytes)
    if len(forms) != 1:
        return False
    ok, report = unicyclic_components_check(g, sets[0])
    if ok:
        return False
    return any(c["edge_count"] >= c["vertex_count"] + 1 for c in report)
