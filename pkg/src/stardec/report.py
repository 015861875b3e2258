"""Machine-readable reports and figure rendering.

Every CLI outcome serializes to JSON (stdout) and, when a report directory is
given, also lands as delimited summary rows plus rendered PNG figures.
matplotlib is imported lazily so the computational core never pays for it.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time

from . import __version__
from .connectivity import CutCertificate
from .decompose import NonDecomposability, StarDecomposition
from .graph import Graph, bits
from .orientation import Orientation, ViolatingSet


def certificate_json(cert: NonDecomposability) -> dict:
    out = {"kind": cert.kind, "required": cert.required, "method": cert.method}
    if cert.alpha is not None:
        out["alpha"] = cert.alpha
    if cert.witness is not None:
        out["witness"] = list(cert.witness)
    if cert.alpha_bound is not None:
        out["alpha_bound"] = cert.alpha_bound
    if cert.examined is not None:
        out["examined"] = cert.examined
    if cert.failing_sets is not None:
        out["failing_sets"] = [list(s) for s in cert.failing_sets]
    return out


def decomposition_json(g: Graph, dec: StarDecomposition) -> dict:
    return {"k": dec.k, "star_count": dec.star_count(), "stars": dec.as_pairs(g)}


def orientation_json(o: Orientation) -> dict:
    return {"edges": [[o.tails[i], o.head(i)] for i in range(o.graph.m)],
            "out_degrees": o.out_degrees(), "text": o.as_text()}


def violating_set_json(vs: ViolatingSet) -> dict:
    return {"members": list(vs.members), "excess": vs.excess}


def cut_certificate_json(c: CutCertificate) -> dict:
    out = {"kind": c.kind, "side": list(c.side), "size": c.size}
    if c.shares_common_vertex is not None:
        out["shares_common_vertex"] = c.shares_common_vertex
    return out


def run_report(command: str, inputs: dict, outcome: dict, started: float) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "outcome": outcome,
        "versions": {"stardec": __version__},
        "wall_time_seconds": round(time.time() - started, 3),
    }


def dump(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False)


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


# -- figures -------------------------------------------------------------------

def _tutte_positions(g: Graph, rot):
    """Planar straight-line layout: pin the largest face on a circle, put every
    other vertex at the average of its neighbors (numpy solve)."""
    import numpy as np

    from .embedding import face_vertices, trace_faces

    faces = trace_faces(g, rot)
    outer = max(faces, key=len)
    ring = []
    for v in face_vertices(g, outer):
        if v not in ring:
            ring.append(v)
    k = len(ring)
    pos = {}
    for i, v in enumerate(ring):
        ang = 2 * math.pi * i / k
        pos[v] = (math.cos(ang), math.sin(ang))
    inner = [v for v in range(g.n) if v not in pos]
    if inner:
        idx = {v: i for i, v in enumerate(inner)}
        a = np.zeros((len(inner), len(inner)))
        bx = np.zeros(len(inner))
        by = np.zeros(len(inner))
        for v in inner:
            i = idx[v]
            nbrs = g.neighbors(v)
            a[i, i] = len(nbrs)
            for w in nbrs:
                if w in idx:
                    a[i, idx[w]] -= 1
                else:
                    bx[i] += pos[w][0]
                    by[i] += pos[w][1]
        xs = np.linalg.solve(a, bx)
        ys = np.linalg.solve(a, by)
        for v in inner:
            pos[v] = (float(xs[idx[v]]), float(ys[idx[v]]))
    return pos


def _circle_positions(g: Graph):
    return {v: (math.cos(2 * math.pi * v / max(g.n, 1)),
                math.sin(2 * math.pi * v / max(g.n, 1))) for v in range(g.n)}


def draw_graph(g: Graph, path, rot=None, highlight=None, star_edges=None,
               title: str = "", labels: bool = True) -> None:
    """Render the graph to a file.  With a rotation system the layout is the
    planar Tutte drawing, otherwise vertices sit on a circle.  highlight is a
    vertex set to fill; star_edges maps edge index -> star number for coloring
    a decomposition."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib import cm

    pos = None
    if rot is not None:
        try:
            pos = _tutte_positions(g, rot)
            span = max(abs(x) + abs(y) for x, y in pos.values())
            if span < 1e-9:
                pos = None
        except Exception:
            pos = None
    if pos is None:
        pos = _circle_positions(g)
    fig, ax = plt.subplots(figsize=(6, 6))
    if star_edges:
        n_stars = max(star_edges.values()) + 1
        cmap = cm.get_cmap("tab20", max(n_stars, 1)) if hasattr(cm, "get_cmap") else None
    for i, (u, v) in enumerate(g.edges):
        x = [pos[u][0], pos[v][0]]
        y = [pos[u][1], pos[v][1]]
        if star_edges and i in star_edges:
            color = plt.get_cmap("tab20")(star_edges[i] % 20)
            ax.plot(x, y, color=color, linewidth=2.0, zorder=1)
        else:
            ax.plot(x, y, color="0.45", linewidth=1.2, zorder=1)
    hl = set(highlight or ())
    xs = [pos[v][0] for v in range(g.n)]
    ys = [pos[v][1] for v in range(g.n)]
    colors = ["#d62728" if v in hl else "#1f77b4" for v in range(g.n)]
    ax.scatter(xs, ys, s=160 if g.n <= 30 else 60, c=colors, zorder=2)
    if labels and g.n <= 60:
        for v in range(g.n):
            ax.annotate(str(v), pos[v], ha="center", va="center",
                        fontsize=7, color="white", zorder=3)
    ax.set_title(title)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_decomposition(g: Graph, dec: StarDecomposition, path, rot=None) -> None:
    star_edges = {}
    centers = set()
    for s, (c, idx) in enumerate(dec.stars):
        centers.add(c)
        for i in idx:
            star_edges[i] = s
    draw_graph(g, path, rot=rot, highlight=centers, star_edges=star_edges,
               title=f"{dec.star_count()} stars (k={dec.k}); centers highlighted")


def render_certificate(g: Graph, cert, path, rot=None) -> None:
    if isinstance(cert, NonDecomposability):
        hl = cert.witness or ()
        title = f"{cert.kind} (required {cert.required})"
    elif isinstance(cert, CutCertificate):
        hl = cert.side
        title = f"{cert.kind} size {cert.size}"
    elif isinstance(cert, ViolatingSet):
        hl = cert.members
        title = f"violating set, excess {cert.excess}"
    else:
        hl, title = (), str(cert)
    draw_graph(g, path, rot=rot, highlight=hl, title=title)


def edge_list_text(g: Graph) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t")
    w.writerow(["u", "v"])
    for u, v in g.edges:
        w.writerow([u, v])
    return buf.getvalue()


def to_dot(g: Graph, highlight=None) -> str:
    """One-way cosmetic DOT export for eyeballing graphs elsewhere."""
    hl = set(highlight or ())
    lines = ["graph G {", "  node [shape=circle];"]
    for v in range(g.n):
        style = ' [style=filled, fillcolor=lightcoral]' if v in hl else ""
        lines.append(f"  {v}{style};")
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
