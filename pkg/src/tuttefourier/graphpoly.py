"""Graph polynomials prod_e sum_{a,b} f(a,b) x_u^a x_v^b reduced mod (x_v^q - 1).

Expansion keeps the full coefficient tensor of shape (q,)*|V|; the sparse
``CoeffMap`` view drops coefficients with modulus at most 1e-9.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .enumerate import guard, vectors
from .flows import (
    CoboundaryMap,
    VECTOR_LIMIT,
    complete_we,
    image_S,
    kernel_ST,
    q1_flows,
    ttop_one,
)
from .fourier import TAU, crosscorr, dft, zqfun
from .graph import Multigraph

TERM_LIMIT = 10 ** 7


@dataclass(frozen=True)
class RestrictedKernel:
    """Edge kernel supported on a + s b = t, with f(t - s b, b) = g(b)."""

    g: tuple[complex, ...]
    s: int
    t: int

    def __post_init__(self):
        g = tuple(complex(v) for v in zqfun(self.g))
        q = len(g)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "s", self.s % q)
        object.__setattr__(self, "t", self.t % q)

    @property
    def q(self) -> int:
        return len(self.g)

    @property
    def gvec(self) -> np.ndarray:
        return np.array(self.g, dtype=complex)

    def kernel(self) -> np.ndarray:
        q = self.q
        f = np.zeros((q, q), dtype=complex)
        for b, val in enumerate(self.g):
            f[(self.t - self.s * b) % q, b] = val
        return f


def restrict(f, s: int, t: int, tol: float = TAU) -> RestrictedKernel:
    """Recover g from an edge kernel supported on a + s b = t."""
    f = np.asarray(f, dtype=complex)
    q = f.shape[0]
    k = RestrictedKernel(tuple(f[(t - s * b) % q, b] for b in range(q)), s, t)
    if np.abs(k.kernel() - f).max() > tol:
        raise ValueError(f"kernel support is not contained in a + {s} b = {t}")
    return k


def petersen_kernel(q: int) -> RestrictedKernel:
    """x_u - x_v: f(1,0) = 1, f(0,1) = -1."""
    if q < 2:
        raise ValueError("q must be at least 2")
    g = np.zeros(q, dtype=complex)
    g[0], g[1] = 1, -1
    return RestrictedKernel(tuple(g), 1, 1)


def prop_constant_kernel(q: int, y, w) -> RestrictedKernel:
    """y + (q-1) w + (y - w)(x_u^(q-1) x_v + ... + x_u x_v^(q-1))."""
    if q < 2:
        raise ValueError("q must be at least 2")
    g = np.full(q, y - w, dtype=complex)
    g[0] = y + (q - 1) * w
    return RestrictedKernel(tuple(g), 1, 0)


def score_kernel(q: int) -> RestrictedKernel:
    """x_u + x_v, the score-vector generating function."""
    if q < 2:
        raise ValueError("q must be at least 2")
    g = np.zeros(q, dtype=complex)
    g[0] += 1
    g[1] += 1
    return RestrictedKernel(tuple(g), 1, 1)


def as_kernel(f) -> np.ndarray:
    if isinstance(f, RestrictedKernel):
        return f.kernel()
    f = np.asarray(f, dtype=complex)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise ValueError("edge kernel must be a q x q array")
    return f


@dataclass
class CoeffMap:
    q: int
    vertex_count: int
    coeffs: dict

    @classmethod
    def from_dense(cls, arr: np.ndarray, q: int, tol: float = TAU) -> "CoeffMap":
        n = arr.ndim
        idx = np.argwhere(np.abs(arr) > tol)
        coeffs = {tuple(int(i) for i in a): complex(arr[tuple(a)]) for a in idx}
        return cls(q, n, coeffs)

    def to_dense(self) -> np.ndarray:
        arr = np.zeros((self.q,) * self.vertex_count, dtype=complex)
        for a, c in self.coeffs.items():
            arr[a] = c
        return arr

    def to_json(self) -> list:
        return [
            {"exponents": list(a), "re": c.real, "im": c.imag}
            for a, c in sorted(self.coeffs.items())
        ]


def expand_dense(G: Multigraph, f) -> np.ndarray:
    """Coefficient tensor of the reduced product, edges taken in index order."""
    f = as_kernel(f)
    q = f.shape[0]
    guard(q ** G.vertex_count, TERM_LIMIT, "expansion term count")
    arr = np.zeros((q,) * G.vertex_count, dtype=complex)
    arr[(0,) * G.vertex_count] = 1
    support = [(a, b, f[a, b]) for a in range(q) for b in range(q) if f[a, b] != 0]
    for u, v in G.edges:
        out = np.zeros_like(arr)
        for a, b, c in support:
            if u == v:
                out += c * np.roll(arr, (a + b) % q, axis=u)
            else:
                out += c * np.roll(arr, (a, b), axis=(u, v))
        arr = out
    return arr


def expand(G: Multigraph, f) -> CoeffMap:
    f = as_kernel(f)
    return CoeffMap.from_dense(expand_dense(G, f), f.shape[0])


def l2_norm_sq(F) -> float:
    if isinstance(F, CoeffMap):
        return float(sum(abs(c) ** 2 for c in F.coeffs.values()))
    return float(np.sum(np.abs(np.asarray(F)) ** 2))


def l0_norm(F, tol: float = TAU) -> int:
    if isinstance(F, CoeffMap):
        return sum(abs(c) > tol for c in F.coeffs.values())
    return int(np.count_nonzero(np.abs(np.asarray(F)) > tol))


def coefficient(F, a) -> complex:
    a = tuple(int(x) for x in a)
    if isinstance(F, CoeffMap):
        if len(a) != F.vertex_count or any(not 0 <= x < F.q for x in a):
            raise ValueError("exponent vector must be reduced mod q")
        return F.coeffs.get(a, 0j)
    return complex(np.asarray(F)[a])


def l0_unreduced(G: Multigraph, f) -> int:
    """Non-zero coefficient count of the unreduced product.

    Requires q > max vertex degree so no two exponents merge mod q.
    """
    f = as_kernel(f)
    q = f.shape[0]
    top = max((G.degree(v) for v in range(G.vertex_count)), default=0)
    if q <= top:
        raise ValueError(f"unreduced expansion needs q > max degree {top}, got q={q}")
    return l0_norm(expand_dense(G, f))


def eval_at_roots(G: Multigraph, f, d) -> complex:
    """The product evaluated at x_v = zeta^(d_v)."""
    f = as_kernel(f)
    q = f.shape[0]
    d = [int(x) % q for x in d]
    if len(d) != G.vertex_count:
        raise ValueError("colour vector has the wrong length")
    a = np.arange(q)
    total = 1 + 0j
    for u, v in G.edges:
        phase = np.exp(2j * np.pi * ((a[:, None] * d[u] + a[None, :] * d[v]) % q) / q)
        total *= complex(np.sum(f * phase))
    return total


def parseval_rhs(G: Multigraph, f) -> float:
    """q^-|V| sum_d |F(zeta^d)|^2 by direct evaluation at every root tuple."""
    f = as_kernel(f)
    q = f.shape[0]
    guard(q ** G.vertex_count, TERM_LIMIT, "root evaluation")
    total = 0.0
    for chunk in vectors(q, G.vertex_count):
        for d in chunk:
            total += abs(eval_at_roots(G, f, d)) ** 2
    return total / q ** G.vertex_count


# -- identity right-hand sides --------------------------------------------------

def alon_tarsi_rhs(G: Multigraph, q: int) -> float:
    """q^-|V| 4^|E| sum over colourings of prod sin^2(pi (c_v - c_u) / q)."""
    guard(q ** G.vertex_count, TERM_LIMIT, "colouring enumeration")
    tails = np.array([u for u, _ in G.edges], dtype=np.int64)
    heads = np.array([v for _, v in G.edges], dtype=np.int64)
    sin2 = np.sin(np.pi * np.arange(q) / q) ** 2
    total = 0.0
    for c in vectors(q, G.vertex_count):
        total += sin2[(c[:, heads] - c[:, tails]) % q].prod(axis=1).sum()
    return float(total * 4.0 ** G.edge_count / q ** G.vertex_count)


def tarsi_rhs(G: Multigraph, q: int) -> int:
    """(-1)^|E| sum over (q,1)-flows b of (-2)^(|E| - |b|).

    A (q,1)-flow is an assignment from {0, 1, -1}; for q = 2 the values 1 and
    -1 coincide mod q, so each residue flow stands for 2^|b| assignments.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    E = G.edge_count
    total = 0
    for b in q1_flows(G, q):
        support = int(np.count_nonzero(b))
        lifts = 2 ** support if q == 2 else 1
        total += lifts * (-2) ** (E - support)
    return (-1) ** E * total


class CosetTable:
    """Kernel of S^T and one lexicographically-first preimage for each target."""

    def __init__(self, G: Multigraph, q: int, s: int):
        self.G = G
        self.q = q
        self.map = CoboundaryMap(G, q, s, 0)
        guard(q ** G.edge_count, VECTOR_LIMIT, "edge-vector enumeration")
        M = self.map.matrix
        self.preimage: dict[tuple[int, ...], np.ndarray] = {}
        kernel = []
        place = q ** np.arange(G.vertex_count - 1, -1, -1, dtype=np.int64)
        for b in vectors(q, G.edge_count):
            images = (b @ M.T) % q
            kernel.append(b[~images.any(axis=1)])
            _, first = np.unique(images @ place, return_index=True)
            for i in first:
                key = tuple(int(x) for x in images[i])
                if key not in self.preimage:
                    self.preimage[key] = b[i]
        self.kernel = np.concatenate(kernel, axis=0)
        self.targets = sorted(self.preimage)
        self._cosets = None

    def solve(self, target):
        return self.preimage.get(tuple(int(x) % self.q for x in target))

    @property
    def cosets(self) -> np.ndarray:
        """Array (targets, |ker|, |E|): row i is the coset b_i + ker S^T."""
        if self._cosets is None:
            B0 = np.array([self.preimage[t] for t in self.targets], dtype=np.int64)
            B0 = B0.reshape(len(self.targets), self.G.edge_count)
            self._cosets = (B0[:, None, :] + self.kernel[None, :, :]) % self.q
        return self._cosets

    def coefficients(self, k: "RestrictedKernel") -> np.ndarray:
        """Every coefficient at once, each as a coset weight enumerator."""
        q = self.q
        values = k.gvec[self.cosets].prod(axis=2).sum(axis=1)
        shift = np.array(ttop_one(self.G, q, k.t), dtype=np.int64)
        arr = np.zeros((q,) * self.G.vertex_count, dtype=complex)
        for target, value in zip(self.targets, values):
            arr[tuple((np.array(target, dtype=np.int64) + shift) % q)] = value
        return arr


def coset_coeff(G: Multigraph, q: int, k: RestrictedKernel, a, table: CosetTable | None = None) -> complex:
    """Coefficient of x^a as the complete weight enumerator of a kernel coset."""
    if k.q != q:
        raise ValueError("kernel modulus does not match q")
    if table is None:
        table = CosetTable(G, q, k.s)
    shift = ttop_one(G, q, k.t)
    target = [(int(x) - sh) % q for x, sh in zip(a, shift)]
    b = table.solve(target)
    if b is None:
        return 0j
    return complete_we(table.kernel, k.gvec, shift=b)


def l2_flow_rhs(G: Multigraph, q: int, k: RestrictedKernel, kernel=None) -> complex:
    """sum over b in ker S^T of (g star g)^(tensor E)(b)."""
    K = kernel if kernel is not None else kernel_ST(CoboundaryMap(G, q, k.s, k.t))
    return complete_we(K, crosscorr(k.gvec, k.gvec))


def l2_image_rhs(G: Multigraph, q: int, k: RestrictedKernel, image=None) -> complex:
    """|im S|^-1 sum over b in im S of |ghat|^2 tensored over E."""
    I = image if image is not None else image_S(CoboundaryMap(G, q, k.s, k.t))
    return complete_we(I, np.abs(dft(k.gvec)) ** 2) / I.shape[0]


def l2_tg_predicate(k: RestrictedKernel, tol: float = TAU):
    """(True, Y, W) when s = 1 and g star g is W off zero, Y at zero; else (False, None, None)."""
    corr = crosscorr(k.gvec, k.gvec)
    if k.s != 1 % k.q:
        return False, None, None
    off = corr[1:]
    if off.size and np.any(np.abs(off - off[0]) > tol):
        return False, None, None
    W = complex(off[0]) if off.size else 0j
    return True, complex(corr[0]), W
