"""Tutte polynomial, Tutte-Grothendieck evaluations and Potts partition functions."""

from __future__ import annotations

import cmath
import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .enumerate import guard, vectors
from .graph import (
    Multigraph,
    bouquet,
    contract,
    delete,
    edge_class,
    EdgeClass,
    graph_stats,
    multiedge,
    star,
)

SUBSET_EDGE_LIMIT = 24
COLOURING_LIMIT = 10 ** 7
MEMO_VERTEX_LIMIT = 8
TAU = 1e-9
REL_TOL = 1e-6


class BiPoly:
    """Bivariate polynomial in x, y with exact integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs: dict[tuple[int, int], int] = {
            (int(i), int(j)): int(c) for (i, j), c in (coeffs or {}).items() if c
        }

    @classmethod
    def constant(cls, c: int) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "BiPoly":
        return cls({(i, j): c})

    @staticmethod
    def _lift(other) -> "BiPoly":
        return other if isinstance(other, BiPoly) else BiPoly.constant(other)

    def __add__(self, other) -> "BiPoly":
        other = BiPoly._lift(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    def __mul__(self, other) -> "BiPoly":
        other = BiPoly._lift(other)
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly(out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        result = BiPoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, i: int, j: int) -> "BiPoly":
        """Multiply by x^i y^j."""
        return BiPoly({(a + i, b + j): c for (a, b), c in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __call__(self, x, y):
        return self.evaluate(x, y)

    def evaluate(self, x, y):
        """Substitute numbers (int, Fraction or complex) for x and y."""
        total = 0
        for (i, j), c in sorted(self.coeffs.items()):
            total += c * x ** i * y ** j
        return total

    def terms(self) -> list[tuple[int, int, int]]:
        return [(i, j, c) for (i, j), c in sorted(self.coeffs.items())]

    def to_json(self) -> list:
        return [[i, j, str(c)] for i, j, c in self.terms()]

    @classmethod
    def from_json(cls, data) -> "BiPoly":
        return cls({(int(i), int(j)): int(c) for i, j, c in data})

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, j, c in sorted(self.terms(), key=lambda t: (-(t[0] + t[1]), -t[0])):
            mono = "*".join(p for p in (_power("x", i), _power("y", j)) if p)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def _power(var, k):
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


X = BiPoly.monomial(1, 0)
Y = BiPoly.monomial(0, 1)


@dataclass(frozen=True)
class TgWeights:
    alpha: complex = 1
    beta: complex = 1
    gamma_w: complex = 1
    x: complex = 1
    y: complex = 1


# -- canonical forms ----------------------------------------------------------

def _refined_colours(G: Multigraph) -> list[int]:
    nbrs = [[] for _ in range(G.vertex_count)]
    loops = [0] * G.vertex_count
    for u, v in G.edges:
        if u == v:
            loops[u] += 1
        else:
            nbrs[u].append(v)
            nbrs[v].append(u)
    colour = [(len(nbrs[v]), loops[v]) for v in range(G.vertex_count)]
    ranks = _rank(colour)
    for _ in range(G.vertex_count):
        sig = [(ranks[v], tuple(sorted(ranks[w] for w in nbrs[v]))) for v in range(G.vertex_count)]
        new = _rank(sig)
        if len(set(new)) == len(set(ranks)):
            break
        ranks = new
    return ranks


def _rank(items):
    order = {s: i for i, s in enumerate(sorted(set(items)))}
    return [order[s] for s in items]


def canonical_form(G: Multigraph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Isomorphism-invariant key of the underlying undirected multigraph.

    Minimises the sorted edge list over every vertex labelling compatible with
    a colour-refinement ordering, so equal keys mean isomorphic graphs.
    """
    colours = _refined_colours(G)
    classes = [
        [v for v in range(G.vertex_count) if colours[v] == c]
        for c in sorted(set(colours))
    ]
    best = None
    for perms in itertools.product(*(itertools.permutations(cls) for cls in classes)):
        label = {}
        for v in itertools.chain.from_iterable(perms):
            label[v] = len(label)
        key = tuple(sorted((min(label[u], label[v]), max(label[u], label[v])) for u, v in G.edges))
        if best is None or key < best:
            best = key
    return G.vertex_count, best or ()


def canonical_graph(G: Multigraph) -> Multigraph:
    n, edges = canonical_form(G)
    return Multigraph(n, edges)


# -- Tutte polynomial ---------------------------------------------------------

def rank_nullity_counts(G: Multigraph) -> dict[tuple[int, int], int]:
    """Number of edge subsets A with each (|A|, r(A)), by DFS with rollback union-find."""
    m = G.edge_count
    guard(m, SUBSET_EDGE_LIMIT, "subset expansion edge count")
    parent = list(range(G.vertex_count))
    size = [1] * G.vertex_count
    counts: dict[tuple[int, int], int] = {}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    def visit(i, chosen, rank):
        if i == m:
            counts[(chosen, rank)] = counts.get((chosen, rank), 0) + 1
            return
        visit(i + 1, chosen, rank)
        u, v = G.edges[i]
        ru, rv = find(u), find(v)
        if ru == rv:
            visit(i + 1, chosen + 1, rank)
            return
        if size[ru] > size[rv]:
            ru, rv = rv, ru
        parent[ru] = rv
        size[rv] += size[ru]
        visit(i + 1, chosen + 1, rank + 1)
        parent[ru] = ru
        size[rv] -= size[ru]

    visit(0, 0, 0)
    return counts


def tutte_subset(G: Multigraph) -> BiPoly:
    """Tutte polynomial from the rank-generating subset expansion."""
    counts = rank_nullity_counts(G)
    full_rank = graph_stats(G).r
    xm1 = X + BiPoly.constant(-1)
    ym1 = Y + BiPoly.constant(-1)
    total = BiPoly()
    for (size_a, rank_a), c in sorted(counts.items()):
        total = total + BiPoly.constant(c) * xm1 ** (full_rank - rank_a) * ym1 ** (size_a - rank_a)
    return total


def tutte_dc(G: Multigraph, rng=None) -> BiPoly:
    """Tutte polynomial by deletion-contraction.

    The pivot is the lowest-index ordinary edge, or a random one when ``rng``
    (a ``random.Random``) is given.  Subresults on graphs with at most
    ``MEMO_VERTEX_LIMIT`` vertices are cached under their canonical form.
    """
    memo: dict = {}

    def rec(H: Multigraph) -> BiPoly:
        loops = [e for e in range(H.edge_count) if H.is_loop(e)]
        if loops:
            rest = Multigraph(H.vertex_count, tuple(ed for ed in H.edges if ed[0] != ed[1]))
            return rec(rest).shift(0, len(loops))
        key = canonical_form(H) if H.vertex_count <= MEMO_VERTEX_LIMIT else None
        if key is not None and key in memo:
            return memo[key]
        classes = [edge_class(H, e) for e in range(H.edge_count)]
        ordinary = [e for e, c in enumerate(classes) if c is EdgeClass.ORDINARY]
        if not ordinary:
            result = BiPoly.monomial(H.edge_count, 0)
        else:
            e = rng.choice(ordinary) if rng is not None else ordinary[0]
            result = rec(delete(H, e)) + rec(contract(H, e))
        if key is not None:
            memo[key] = result
        return result

    return rec(G)


def tg_eval(G: Multigraph, w: TgWeights, tutte: BiPoly | None = None) -> complex:
    if w.alpha == 0 or w.beta == 0:
        raise ValueError("tg_eval needs alpha and beta non-zero")
    T = tutte if tutte is not None else tutte_dc(G)
    st = graph_stats(G)
    return (
        w.gamma_w ** st.k * w.alpha ** st.r * w.beta ** st.n
        * T.evaluate(w.x / w.alpha, w.y / w.beta)
    )


def chromatic_value(G: Multigraph, q: int, tutte: BiPoly | None = None) -> int:
    """P(G; q) exactly, as q^k (-1)^r T(G; 1-q, 0)."""
    T = tutte if tutte is not None else tutte_dc(G)
    st = graph_stats(G)
    return q ** st.k * (-1) ** st.r * T.evaluate(1 - q, 0)


# -- colouring sums -----------------------------------------------------------

def _colourings(G: Multigraph, q: int):
    guard(q ** G.vertex_count, COLOURING_LIMIT, "colouring enumeration")
    return vectors(q, G.vertex_count)


def mono_histogram(G: Multigraph, q: int) -> np.ndarray:
    """hist[m] = number of q-colourings with exactly m monochromatic edges."""
    hist = np.zeros(G.edge_count + 1, dtype=np.int64)
    tails = np.array([u for u, _ in G.edges], dtype=np.int64)
    heads = np.array([v for _, v in G.edges], dtype=np.int64)
    for c in _colourings(G, q):
        mono = (c[:, tails] == c[:, heads]).sum(axis=1)
        hist += np.bincount(mono, minlength=G.edge_count + 1)
    return hist


def monochromial(G: Multigraph, q: int, y) -> complex:
    hist = mono_histogram(G, q)
    return sum(int(h) * y ** m for m, h in enumerate(hist) if h)


def chromatic_brute(G: Multigraph, q: int) -> int:
    return int(mono_histogram(G, q)[0])


def monochromial_closed(G: Multigraph, q: int, y, tutte: BiPoly | None = None) -> complex:
    if y == 1:
        raise ValueError("monochromial_closed is singular at y = 1")
    T = tutte if tutte is not None else tutte_dc(G)
    st = graph_stats(G)
    return q ** st.k * (y - 1) ** st.r * T.evaluate((y - 1 + q) / (y - 1), y)


def hamming_kernel(q: int, w, y) -> np.ndarray:
    """q x q edge kernel with y on the diagonal and w elsewhere."""
    W = np.full((q, q), w, dtype=complex)
    np.fill_diagonal(W, y)
    return W


def potts_partition(G: Multigraph, W) -> complex:
    """Sum over colourings c of prod over directed edges (u, v) of W[c_u, c_v]."""
    W = np.asarray(W, dtype=complex)
    q = W.shape[0]
    if W.shape != (q, q):
        raise ValueError("edge kernel must be square")
    tails = np.array([u for u, _ in G.edges], dtype=np.int64)
    heads = np.array([v for _, v in G.edges], dtype=np.int64)
    total = 0j
    for c in _colourings(G, q):
        total += W[c[:, tails], c[:, heads]].prod(axis=1).sum()
    return complex(total)


def potts_closed(G: Multigraph, q: int, w, y, tutte: BiPoly | None = None) -> complex:
    """Closed form of the constant-diagonal partition function.

    Uses (y + (q-1) w) / (y - w) as the first Tutte argument; this is the
    form that agrees with the colouring sum.
    """
    if w == 0:
        return q ** graph_stats(G).k * y ** G.edge_count
    if w == y:
        return q ** G.vertex_count * y ** G.edge_count
    T = tutte if tutte is not None else tutte_dc(G)
    st = graph_stats(G)
    return (
        q ** st.k * w ** st.n * (y - w) ** st.r
        * T.evaluate((y + (q - 1) * w) / (y - w), y / w)
    )


def tg_matrix_test(W, tol: float = TAU):
    """Return (w, y) when W is y on the diagonal and w off it, else None."""
    W = np.asarray(W, dtype=complex)
    q = W.shape[0]
    y = W[0, 0]
    if np.any(np.abs(np.diag(W) - y) > tol):
        return None
    if q == 1:
        return (0j, complex(y))
    w = W[0, 1]
    off = ~np.eye(q, dtype=bool)
    if np.any(np.abs(W[off] - w) > tol):
        return None
    return (complex(w), complex(y))


# -- Tutte-Grothendieck family probe -----------------------------------------

@dataclass
class ProbeReport:
    consistent: bool
    first_violation: str | None
    params: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    note: str = (
        "empirical check on the families Y_m, X_m^n, X_m, Z_m; "
        "consistency is evidence, not a proof"
    )


def _close(a, b, rel=REL_TOL):
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def tg_family_probe(W, m_max: int = 5) -> ProbeReport:
    """Test whether the colouring model with kernel W can satisfy a TG recurrence.

    Fits gamma, y from single-vertex graphs, x from K_2 and (alpha, beta) by
    least squares over the multi-edge recurrence, then reports the first
    relation that fails.
    """
    if not 1 <= m_max <= 8:
        raise ValueError("m_max must be in 1..8")
    W = np.asarray(W, dtype=complex)
    q = W.shape[0]
    F = lambda G: potts_partition(G, W)  # noqa: E731
    values = {}

    def record(name, G):
        values[name] = F(G)
        return values[name]

    gamma = complex(q)
    y_tg = record("Y_1", bouquet(1)) / gamma
    x_tg = record("X_1", multiedge(1)) / gamma
    params = {"gamma": gamma, "x": x_tg, "y": y_tg}

    def fail(name):
        return ProbeReport(False, name, params, values)

    for m in range(2, m_max + 1):
        if not _close(record(f"Y_{m}", bouquet(m)), gamma * y_tg ** m):
            return fail(f"Y_{m}: F(Y_m) != y F(Y_(m-1))")

    for m in range(2, m_max + 1):
        base = record(f"X_{m}", multiedge(m))
        for n in range(m - 1, -1, -1):
            if not _close(record(f"X_{m}^{n}", multiedge(m, n)), base):
                return fail(f"X_{m}^{n}: orientation dependence, F(X_{m}^{n}) != F(X_{m}^{m})")

    if m_max >= 2:
        rows, rhs = [], []
        for m in range(2, m_max + 1):
            rows.append([values[f"Y_{m - 1}"], values[f"X_{m - 1}"]])
            rhs.append(values[f"X_{m}"])
        A = np.array(rows, dtype=complex)
        b = np.array(rhs, dtype=complex)
        (alpha, beta), *_ = np.linalg.lstsq(A, b, rcond=None)
        params["alpha"], params["beta"] = complex(alpha), complex(beta)
        for m, row, target in zip(range(2, m_max + 1), rows, rhs):
            if not _close(alpha * row[0] + beta * row[1], target):
                return fail(f"X_{m}: F(X_m) != alpha F(Y_(m-1)) + beta F(X_(m-1))")

    for m in range(2, m_max + 1):
        if not _close(record(f"Z_{m}", star(m)), gamma * x_tg ** m):
            return fail(f"Z_{m}: F(Z_m) != x F(Z_(m-1))")

    return ProbeReport(True, None, params, values)


def root_of_unity_kernel(q: int) -> np.ndarray:
    """W(a, b) = zeta^(ab), zeta = exp(2 pi i / q)."""
    a = np.arange(q)
    return np.exp(2j * cmath.pi * np.outer(a, a) / q)
