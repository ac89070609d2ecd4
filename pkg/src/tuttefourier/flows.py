"""Tensions, flows and their weight enumerators over Z_q.

Edge-vector sets are returned as int arrays of shape (count, |E|) with rows
in lexicographic order.  The maps S and T depend on residues s, t:
(S d)_e = d_head - s d_tail and (T d)_e = t d_tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .enumerate import guard, vectors
from .fourier import dft, zqfun
from .graph import Multigraph, graph_stats
from .tutte import BiPoly, tutte_dc

VECTOR_LIMIT = 10 ** 7


def st_matrix(G: Multigraph, q: int, s: int = 1) -> np.ndarray:
    """|V| x |E| matrix of S^T: +1 at the head, -s at the tail, 1-s for a loop."""
    M = np.zeros((G.vertex_count, G.edge_count), dtype=np.int64)
    for e, (u, v) in enumerate(G.edges):
        M[v, e] += 1
        M[u, e] -= s
    return M % q


@dataclass(frozen=True)
class CoboundaryMap:
    G: Multigraph
    q: int
    s: int = 1
    t: int = 1

    def __post_init__(self):
        object.__setattr__(self, "s", self.s % self.q)
        object.__setattr__(self, "t", self.t % self.q)

    @property
    def matrix(self) -> np.ndarray:
        return st_matrix(self.G, self.q, self.s)

    def S(self, d) -> tuple[int, ...]:
        d = np.asarray(d, dtype=np.int64)
        if d.shape != (self.G.vertex_count,):
            raise ValueError("colour vector has the wrong length")
        return tuple(int(x) for x in (d @ self.matrix) % self.q)

    def ST(self, b) -> tuple[int, ...]:
        b = np.asarray(b, dtype=np.int64)
        if b.shape != (self.G.edge_count,):
            raise ValueError("edge vector has the wrong length")
        return tuple(int(x) for x in (self.matrix @ b) % self.q)

    def ttop_one(self) -> tuple[int, ...]:
        return ttop_one(self.G, self.q, self.t)

    def image(self) -> np.ndarray:
        return image_S(self)

    def kernel(self) -> np.ndarray:
        return kernel_ST(self)


def apply_S(m: CoboundaryMap, d) -> tuple[int, ...]:
    return m.S(d)


def apply_ST(m: CoboundaryMap, b) -> tuple[int, ...]:
    return m.ST(b)


def ttop_one(G: Multigraph, q: int, t: int) -> tuple[int, ...]:
    """T^T applied to the all-ones vector: t times the outdegree of each vertex."""
    return tuple((t * G.outdegree(v)) % q for v in range(G.vertex_count))


def _unique_rows(rows: np.ndarray, width: int) -> np.ndarray:
    if width == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.unique(rows, axis=0)


def image_S(m: CoboundaryMap) -> np.ndarray:
    """Image of S over all colour vectors, deduplicated."""
    G, q = m.G, m.q
    guard(q ** G.vertex_count, VECTOR_LIMIT, "colour-vector enumeration")
    M = m.matrix
    seen = [
        _unique_rows((d @ M) % q, G.edge_count) for d in vectors(q, G.vertex_count)
    ]
    return _unique_rows(np.concatenate(seen, axis=0), G.edge_count)


def tensions(G: Multigraph, q: int) -> np.ndarray:
    return image_S(CoboundaryMap(G, q, 1, 0))


def kernel_ST(m: CoboundaryMap) -> np.ndarray:
    """Brute-force kernel of S^T over Z_q^E."""
    G, q = m.G, m.q
    guard(q ** G.edge_count, VECTOR_LIMIT, "edge-vector enumeration")
    M = m.matrix
    parts = [b[~((b @ M.T) % q).any(axis=1)] for b in vectors(q, G.edge_count)]
    return np.concatenate(parts, axis=0)


def _spanning_forest(G: Multigraph):
    """Tree edges of a BFS spanning forest and a leaves-first vertex order."""
    adj = [[] for _ in range(G.vertex_count)]
    for e, (u, v) in enumerate(G.edges):
        if u != v:
            adj[u].append((v, e))
            adj[v].append((u, e))
    parent_edge = [None] * G.vertex_count
    seen = [False] * G.vertex_count
    order = []
    for root in range(G.vertex_count):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        for v in queue:
            order.append(v)
            for w, e in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    parent_edge[w] = e
                    queue.append(w)
    return parent_edge, order[::-1]


def flows(G: Multigraph, q: int) -> np.ndarray:
    """Z_q-flows: free values on cotree edges, tree edges solved leaves-first.

    Every tree-edge coefficient in the boundary map is +-1, so the solve is
    exact over Z_q and yields q^n(G) flows.
    """
    parent_edge, leaves_first = _spanning_forest(G)
    tree = {e for e in parent_edge if e is not None}
    cotree = [e for e in range(G.edge_count) if e not in tree]
    guard(q ** len(cotree), VECTOR_LIMIT, "flow enumeration")
    free = np.concatenate(list(vectors(q, len(cotree))), axis=0)
    B = np.zeros((free.shape[0], G.edge_count), dtype=np.int64)
    B[:, cotree] = free
    gamma = np.zeros((G.vertex_count, G.edge_count), dtype=np.int64)
    for e, (u, v) in enumerate(G.edges):
        if u != v:
            gamma[v, e] += 1
            gamma[u, e] -= 1
    for v in leaves_first:
        e = parent_edge[v]
        if e is None:
            continue
        others = [f for f in range(G.edge_count) if f != e and gamma[v, f]]
        net = (B[:, others] * gamma[v, others]).sum(axis=1) if others else 0
        # gamma[v, e] is +-1 and is its own inverse
        B[:, e] = (-net * gamma[v, e]) % q
    if B.shape[1] == 0:
        return B
    return B[np.lexsort(B.T[::-1])]


def q1_flows(G: Multigraph, q: int) -> np.ndarray:
    """Flows whose entries all lie in {0, 1, -1} mod q."""
    F = flows(G, q)
    ok = np.isin(F, [0, 1 % q, (q - 1) % q]).all(axis=1)
    return F[ok]


def hamming_weights(P) -> np.ndarray:
    P = np.asarray(P)
    return (P != 0).sum(axis=1)


def hamming_we(P, edge_count: int) -> list[int]:
    """Coefficient list c with sum_a x^(|E| - |a|) = sum_k c[k] x^k."""
    coeffs = [0] * (edge_count + 1)
    for w in hamming_weights(P):
        coeffs[edge_count - int(w)] += 1
    return coeffs


def eval_poly(coeffs, x):
    total = 0
    for k, c in enumerate(coeffs):
        if c:
            total += c * x ** k
    return total


def complete_we(P, weights, shift=None) -> complex:
    """sum over a in P of prod_e weights(a_e + shift_e)."""
    weights = zqfun(weights)
    P = np.asarray(P, dtype=np.int64)
    q = weights.size
    if shift is not None:
        P = (P + np.asarray(shift, dtype=np.int64)[None, :]) % q
    elif P.size and P.max() >= q:
        raise ValueError("edge vector entries exceed the weight modulus")
    return complex(weights[P].prod(axis=1).sum())


def complete_we_coset(P, shift, weights) -> complex:
    return complete_we(P, weights, shift)


def tension_tutte_check(G: Multigraph, q: int, y, tutte: BiPoly | None = None):
    if y == 1:
        raise ValueError("tension enumerator identity is singular at y = 1")
    T = tutte if tutte is not None else tutte_dc(G)
    r = graph_stats(G).r
    lhs = eval_poly(hamming_we(tensions(G, q), G.edge_count), y)
    rhs = (y - 1) ** r * T.evaluate((y - 1 + q) / (y - 1), y)
    return lhs, rhs


def flow_tutte_check(G: Multigraph, q: int, x, tutte: BiPoly | None = None):
    if x == 1:
        raise ValueError("flow enumerator identity is singular at x = 1")
    T = tutte if tutte is not None else tutte_dc(G)
    n = graph_stats(G).n
    lhs = eval_poly(hamming_we(flows(G, q), G.edge_count), x)
    rhs = (x - 1) ** n * T.evaluate(x, (x - 1 + q) / (x - 1))
    return lhs, rhs


def macwilliams_check(G: Multigraph, q: int, weights) -> tuple[complex, complex]:
    """Complete enumerator of tensions against the transformed enumerator of flows."""
    weights = zqfun(weights)
    if weights.size != q:
        raise ValueError("weights must be a function on Z_q")
    F = flows(G, q)
    lhs = complete_we(tensions(G, q), weights)
    rhs = complete_we(F, dft(weights)) / F.shape[0]
    return lhs, rhs


def macwilliams_hamming_exact(G: Multigraph, q: int, y: int) -> tuple[Fraction, Fraction]:
    """Integer Hamming case of the duality, in exact rational arithmetic."""
    E = G.edge_count
    lhs = Fraction(eval_poly(hamming_we(tensions(G, q), E), y))
    F = flows(G, q)
    zeros = E - hamming_weights(F)
    rhs = Fraction(sum((y - 1 + q) ** int(z) * (y - 1) ** (E - int(z)) for z in zeros), F.shape[0])
    return lhs, rhs
