"""Combinatorial embeddings: rotation systems, face tracing, Euler genus.

A rotation system fixes, at every vertex, the cyclic order of its edge-ends
(darts).  Tracing the orbits of  dart -> successor-of-twin  yields the faces
of the corresponding orientable embedding, and Euler's formula gives the
genus; genus 0 is the package's planarity certificate (no general planarity
test lives here, embeddings are always supplied).

Darts: edge i contributes darts 2i (based at the first endpoint) and 2i+1
(based at the second).  Parallel edges are distinct edges, so their darts are
unambiguous; loops do not exist in this package.
"""

from __future__ import annotations

from .errors import Disconnected, InvalidRotation
from .graph import Graph, is_connected


RotationSystem = tuple  # tuple over vertices of tuples of dart ids


def dart_base(g: Graph, d: int) -> int:
    u, v = g.edges[d >> 1]
    return v if d & 1 else u


def dart_target(g: Graph, d: int) -> int:
    u, v = g.edges[d >> 1]
    return u if d & 1 else v


def darts_at(g: Graph, v: int) -> list[int]:
    out = []
    for i, (a, b) in enumerate(g.edges):
        if a == v:
            out.append(2 * i)
        if b == v:
            out.append(2 * i + 1)
    return out


def rotation_from_edge_orders(g: Graph, orders: dict[int, list[int]]) -> RotationSystem:
    """Build a rotation system from per-vertex cyclic lists of edge indices."""
    rot = []
    for v in range(g.n):
        expected = darts_at(g, v)
        if v not in orders:
            raise InvalidRotation(f"vertex {v} has no rotation")
        ds = []
        for i in orders[v]:
            if not 0 <= i < g.m:
                raise InvalidRotation(f"vertex {v}: edge index {i} out of range")
            u, w = g.edges[i]
            if u == v:
                ds.append(2 * i)
            elif w == v:
                ds.append(2 * i + 1)
            else:
                raise InvalidRotation(f"vertex {v}: edge {i} is not incident")
        if sorted(ds) != sorted(expected):
            raise InvalidRotation(f"vertex {v}: rotation is not a permutation of its edge-ends")
        rot.append(tuple(ds))
    return tuple(rot)


def validate_rotation(g: Graph, rot: RotationSystem) -> None:
    if len(rot) != g.n:
        raise InvalidRotation(f"rotation covers {len(rot)} vertices, graph has {g.n}")
    seen = set()
    for v in range(g.n):
        for d in rot[v]:
            if dart_base(g, d) != v:
                raise InvalidRotation(f"dart {d} listed at vertex {v} but based elsewhere")
            if d in seen:
                raise InvalidRotation(f"dart {d} appears twice")
            seen.add(d)
    if len(seen) != 2 * g.m:
        raise InvalidRotation(f"{2 * g.m - len(seen)} edge-ends missing from the rotation")


def trace_faces(g: Graph, rot: RotationSystem) -> list[list[int]]:
    """Face orbits (lists of darts) of the embedding given by the rotation."""
    validate_rotation(g, rot)
    succ = {}
    for v in range(g.n):
        ds = rot[v]
        for j, d in enumerate(ds):
            succ[d] = ds[(j + 1) % len(ds)]
    faces = []
    visited = set()
    for start in range(2 * g.m):
        if start in visited:
            continue
        face = []
        d = start
        while True:
            if d in visited:
                raise InvalidRotation(f"dart {d} visited twice while tracing a face")
            visited.add(d)
            face.append(d)
            d = succ[d ^ 1]
            if d == start:
                break
        faces.append(face)
    return faces


def face_vertices(g: Graph, face: list[int]) -> list[int]:
    return [dart_base(g, d) for d in face]


def genus_from_rotation(g: Graph, rot: RotationSystem) -> int:
    """Orientable genus of the supplied embedding via Euler's formula."""
    if not is_connected(g):
        raise Disconnected("genus computation requires a connected graph")
    faces = trace_faces(g, rot)
    euler = g.n - g.m + len(faces)
    assert euler % 2 == 0, "rotation systems give orientable embeddings"
    return (2 - euler) // 2


def relabel_rotation(g: Graph, rot: RotationSystem, perm: list[int]):
    """Apply a vertex relabeling to graph and rotation together.

    perm maps old vertex -> new vertex.  Returns (new graph, new rotation).
    Edge order is preserved, only endpoint roles may swap inside an edge.
    """
    new_pairs = []
    flipped = []
    for (u, v) in g.edges:
        a, b = perm[u], perm[v]
        flipped.append(a > b)
        new_pairs.append((a, b) if a < b else (b, a))
    h = Graph.from_edge_list(g.n, new_pairs)
    new_rot: list[tuple[int, ...]] = [()] * g.n
    for v in range(g.n):
        ds = []
        for d in rot[v]:
            i, end = d >> 1, d & 1
            new_end = end ^ flipped[i]
            ds.append(2 * i + new_end)
        new_rot[perm[v]] = tuple(ds)
    return h, tuple(new_rot)
