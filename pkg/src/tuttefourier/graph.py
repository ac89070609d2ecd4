"""Oriented multigraphs: deletion, contraction, structural statistics, builders.

Edges are stored as (tail, head) pairs; the stored order is the fixed
orientation, and an edge's identity is its position in ``edges``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be non-negative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge ({u}, {v}) has an endpoint out of range")
        object.__setattr__(self, "edges", edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for u, w in self.edges)

    def outdegree(self, v: int) -> int:
        return sum(u == v for u, _ in self.edges)

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def reversed_edge(self, e: int) -> "Multigraph":
        edges = list(self.edges)
        u, v = edges[e]
        edges[e] = (v, u)
        return Multigraph(self.vertex_count, tuple(edges))

    def __str__(self):
        return f"Multigraph(|V|={self.vertex_count}, E={list(self.edges)})"


@dataclass(frozen=True)
class GraphStats:
    k: int
    r: int
    n: int


class EdgeClass(str, Enum):
    BRIDGE = "bridge"
    LOOP = "loop"
    ORDINARY = "ordinary"


def _components(vertex_count, edges):
    parent = list(range(vertex_count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    k = vertex_count
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            k -= 1
    return k, find


def component_count(G: Multigraph) -> int:
    return _components(G.vertex_count, G.edges)[0]


def components(G: Multigraph) -> list[list[int]]:
    """Vertex lists of the connected components, ordered by smallest vertex."""
    _, find = _components(G.vertex_count, G.edges)
    groups: dict[int, list[int]] = {}
    for v in range(G.vertex_count):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def graph_stats(G: Multigraph) -> GraphStats:
    k = component_count(G)
    r = G.vertex_count - k
    return GraphStats(k=k, r=r, n=G.edge_count - r)


def subset_rank(G: Multigraph, edge_subset) -> int:
    """Rank of the spanning subgraph (V, A)."""
    k, _ = _components(G.vertex_count, [G.edges[e] for e in edge_subset])
    return G.vertex_count - k


def is_connected(G: Multigraph) -> bool:
    return G.vertex_count > 0 and component_count(G) == 1


def _check_edge(G, e):
    if not 0 <= e < G.edge_count:
        raise GraphError(f"edge index {e} out of range for {G.edge_count} edges")


def delete(G: Multigraph, e: int) -> Multigraph:
    _check_edge(G, e)
    return Multigraph(G.vertex_count, G.edges[:e] + G.edges[e + 1:])


def contract(G: Multigraph, e: int) -> Multigraph:
    """Contract edge ``e``; the merged vertex gets index min(tail, head).

    Vertices above the removed index shift down by one.  Edges parallel to
    ``e`` become loops.
    """
    _check_edge(G, e)
    u, v = G.edges[e]
    if u == v:
        raise GraphError("cannot contract a loop")
    keep, gone = min(u, v), max(u, v)

    def relabel(w):
        if w == gone:
            return keep
        return w - 1 if w > gone else w

    edges = tuple((relabel(a), relabel(b)) for i, (a, b) in enumerate(G.edges) if i != e)
    return Multigraph(G.vertex_count - 1, edges)


def edge_class(G: Multigraph, e: int) -> EdgeClass:
    _check_edge(G, e)
    if G.is_loop(e):
        return EdgeClass.LOOP
    if component_count(delete(G, e)) > component_count(G):
        return EdgeClass.BRIDGE
    return EdgeClass.ORDINARY


def incidence(G: Multigraph) -> np.ndarray:
    """|V| x |E| matrix with +1 at the head, -1 at the tail, loops all zero."""
    gamma = np.zeros((G.vertex_count, G.edge_count), dtype=np.int64)
    for e, (u, v) in enumerate(G.edges):
        if u != v:
            gamma[v, e] = 1
            gamma[u, e] = -1
    return gamma


# -- builders ---------------------------------------------------------------

def bouquet(m: int) -> Multigraph:
    """Y_m: one vertex carrying m loops."""
    return Multigraph(1, ((0, 0),) * m)


def multiedge(m: int, n: int | None = None) -> Multigraph:
    """X_m, or X_m^n when ``n`` is given: n edges (0,1) followed by m-n edges (1,0)."""
    if n is None:
        n = m
    if not 0 <= n <= m:
        raise GraphError(f"need 0 <= n <= m, got m={m}, n={n}")
    return Multigraph(2, ((0, 1),) * n + ((1, 0),) * (m - n))


def star(m: int) -> Multigraph:
    """Z_m: centre 0 joined to leaves 1..m."""
    return Multigraph(m + 1, tuple((0, i) for i in range(1, m + 1)))


def cycle(m: int) -> Multigraph:
    """Directed cycle 0 -> 1 -> ... -> m-1 -> 0."""
    if m < 1:
        raise GraphError("cycle needs m >= 1")
    return Multigraph(m, tuple((i, (i + 1) % m) for i in range(m)))


def path(m: int) -> Multigraph:
    """Path on m vertices."""
    if m < 1:
        raise GraphError("path needs m >= 1")
    return Multigraph(m, tuple((i, i + 1) for i in range(m - 1)))


def complete(m: int) -> Multigraph:
    if m < 1:
        raise GraphError("complete graph needs m >= 1")
    return Multigraph(m, tuple(itertools.combinations(range(m), 2)))


def prism(m: int = 3) -> Multigraph:
    """C_m x K_2: outer cycle 0..m-1, inner cycle m..2m-1, then the spokes."""
    if m < 3:
        raise GraphError("prism needs m >= 3")
    outer = [(i, (i + 1) % m) for i in range(m)]
    inner = [(m + i, m + (i + 1) % m) for i in range(m)]
    spokes = [(i, m + i) for i in range(m)]
    return Multigraph(2 * m, tuple(outer + inner + spokes))


FAMILIES = ("bouquet", "multiedge", "star", "cycle", "path", "complete", "prism", "k4")


def build_family(kind: str, m: int = 1, n: int | None = None) -> Multigraph:
    kind = kind.lower()
    if kind != "k4" and m < 1:
        raise GraphError("family parameter m must be positive")
    if n is not None and kind != "multiedge":
        raise GraphError(f"family {kind!r} takes no second parameter")
    if kind == "bouquet":
        return bouquet(m)
    if kind == "multiedge":
        return multiedge(m, n)
    if kind == "star":
        return star(m)
    if kind == "cycle":
        return cycle(m)
    if kind == "path":
        return path(m)
    if kind == "complete":
        return complete(m)
    if kind == "prism":
        return prism(m)
    if kind == "k4":
        return complete(4)
    raise GraphError(f"unknown family {kind!r}; expected one of {', '.join(FAMILIES)}")


def is_simple(G: Multigraph) -> bool:
    seen = set()
    for u, v in G.edges:
        key = (min(u, v), max(u, v))
        if u == v or key in seen:
            return False
        seen.add(key)
    return True


def line_graph(G: Multigraph) -> Multigraph:
    """Edges of G become vertices; edge i-j (i < j) oriented in index order."""
    if not is_simple(G):
        raise GraphError("line_graph needs a simple graph")
    E = G.edges
    out = [(i, j) for i, j in itertools.combinations(range(len(E)), 2) if set(E[i]) & set(E[j])]
    return Multigraph(len(E), tuple(out))


# -- plane embeddings (rotation systems) ------------------------------------

def rotation_from_positions(G: Multigraph, positions) -> list[list[int]]:
    """Clockwise cyclic order of incident edges at each vertex of a straight-line drawing."""
    rot = []
    for v in range(G.vertex_count):
        inc = [e for e, (a, b) in enumerate(G.edges) if v in (a, b)]

        def angle(e, v=v):
            a, b = G.edges[e]
            o = b if a == v else a
            return math.atan2(positions[o][1] - positions[v][1], positions[o][0] - positions[v][0])

        rot.append(sorted(inc, key=angle, reverse=True))
    return rot


def face_count(G: Multigraph, rotation) -> int:
    """Number of faces traced by a rotation system on a loopless graph."""
    nxt = {}
    for v, order in enumerate(rotation):
        for i, e in enumerate(order):
            nxt[(v, e)] = order[(i + 1) % len(order)]
    seen = set()
    faces = 0
    for e, (a, b) in enumerate(G.edges):
        for dart in ((a, e), (b, e)):
            if dart in seen:
                continue
            faces += 1
            v, f = dart
            while (v, f) not in seen:
                seen.add((v, f))
                x, y = G.edges[f]
                w = y if x == v else x
                f = nxt[(w, f)]
                v = w
    return faces


def is_plane_rotation(G: Multigraph, rotation) -> bool:
    if len(rotation) != G.vertex_count:
        return False
    for v, order in enumerate(rotation):
        inc = sorted(e for e, (a, b) in enumerate(G.edges) if v in (a, b))
        if sorted(order) != inc:
            return False
    k = component_count(G)
    # Euler: V - E + F = 1 + k for a plane embedding of each component
    return G.vertex_count - G.edge_count + face_count(G, rotation) == 1 + k


def plane_embedding(kind: str, m: int = 3) -> tuple[Multigraph, list[list[int]]]:
    """Built-in plane cubic graphs with a rotation system: ``k4`` or ``prism`` (C_m x K_2)."""
    kind = kind.lower()
    if kind == "k4":
        G = complete(4)
        pos = [(0.0, 0.0), (0.0, 10.0), (-9.0, -5.0), (9.0, -5.0)]
    elif kind == "prism":
        G = prism(m)
        pos = [
            (r * math.cos(2 * math.pi * i / m), r * math.sin(2 * math.pi * i / m))
            for r in (10.0, 4.0)
            for i in range(m)
        ]
    else:
        raise GraphError(f"no built-in plane embedding for {kind!r}")
    return G, rotation_from_positions(G, pos)


# -- text format ------------------------------------------------------------

def parse_graph(text: str) -> Multigraph:
    """Parse ``vertices <n>`` followed by ``edge <u> <v>`` lines; ``#`` starts a comment."""
    vertex_count = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "vertices" and len(parts) == 2:
                if vertex_count is not None:
                    raise GraphError("duplicate vertices header")
                vertex_count = int(parts[1])
                if vertex_count < 0:
                    raise GraphError("negative vertex count")
            elif parts[0] == "edge" and len(parts) == 3:
                if vertex_count is None:
                    raise GraphError("edge before vertices header")
                u, v = int(parts[1]), int(parts[2])
                if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                    raise GraphError(f"endpoint out of range in {line!r}")
                edges.append((u, v))
            else:
                raise GraphError(f"unrecognised line {line!r}")
        except ValueError as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
    if vertex_count is None:
        raise GraphError("missing vertices header")
    return Multigraph(vertex_count, tuple(edges))


def serialize_graph(G: Multigraph) -> str:
    lines = [f"vertices {G.vertex_count}"]
    lines += [f"edge {u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"
