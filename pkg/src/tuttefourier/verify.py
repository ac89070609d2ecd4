"""Named verification runs that compare both sides of each identity.

Every run returns a ``Report``; ``check_corpus`` sweeps all small connected
multigraphs.  Random kernels come from ``numpy.random.default_rng(seed)`` and
the seed is stored in the report so failures replay.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field

import numpy as np

from .enumerate import vectors
from .flows import (
    CoboundaryMap,
    flows,
    image_S,
    kernel_ST,
    macwilliams_check,
    macwilliams_hamming_exact,
    tensions,
)
from .graph import (
    GraphError,
    Multigraph,
    graph_stats,
    is_connected,
    is_plane_rotation,
    line_graph,
)
from .graphpoly import (
    CosetTable,
    RestrictedKernel,
    alon_tarsi_rhs,
    expand_dense,
    l0_unreduced,
    l2_flow_rhs,
    l2_image_rhs,
    petersen_kernel,
    prop_constant_kernel,
    score_kernel,
    tarsi_rhs,
)
from .tutte import (
    canonical_form,
    chromatic_brute,
    hamming_kernel,
    monochromial,
    monochromial_closed,
    potts_closed,
    potts_partition,
    tutte_dc,
    tutte_subset,
)

REL_TOL = 1e-6


def describe(G: Multigraph) -> str:
    return f"{G.vertex_count}:" + ",".join(f"{u}-{v}" for u, v in G.edges)


def _fmt(x: float) -> float:
    return float(f"{x:.15g}")


@dataclass
class Report:
    identity: str
    graph: str
    params: dict
    lhs: complex
    rhs: complex
    abs_error: float = 0.0
    rel_error: float = 0.0
    passed: bool = False
    tolerance: float = REL_TOL
    seed: int | None = None
    runtime: float = 0.0

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "graph": self.graph,
            "params": _jsonable(self.params),
            "lhs": {"re": _fmt(self.lhs.real), "im": _fmt(self.lhs.imag)},
            "rhs": {"re": _fmt(self.rhs.real), "im": _fmt(self.rhs.imag)},
            "abs_err": _fmt(self.abs_error),
            "rel_err": _fmt(self.rel_error),
            "pass": self.passed,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.identity} G={self.graph} lhs={self.lhs:.10g} "
            f"rhs={self.rhs:.10g} rel_err={self.rel_error:.2e}"
        )


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": _fmt(value.real), "im": _fmt(value.imag)}
    if isinstance(value, (float, np.floating)):
        return _fmt(float(value))
    if isinstance(value, np.integer):
        return int(value)
    return value


def _rel(a: complex, b: complex) -> tuple[float, float]:
    err = abs(a - b)
    return err, err / max(1.0, abs(a))


def make_report(identity, G, params, lhs, rhs, tol=REL_TOL, extra=(), seed=None, start=None):
    """Compare lhs with rhs and with every value in ``extra``."""
    lhs, rhs = complex(lhs), complex(rhs)
    abs_err, rel_err = _rel(lhs, rhs)
    for value in extra:
        a, r = _rel(lhs, complex(value))
        abs_err, rel_err = max(abs_err, a), max(rel_err, r)
    return Report(
        identity=identity,
        graph=describe(G) if isinstance(G, Multigraph) else str(G),
        params=dict(params),
        lhs=lhs,
        rhs=rhs,
        abs_error=abs_err,
        rel_error=rel_err,
        passed=bool(rel_err <= tol),
        tolerance=tol,
        seed=seed,
        runtime=0.0 if start is None else time.perf_counter() - start,
    )


def l2_petersen(G: Multigraph, q: int) -> float:
    return float(np.sum(np.abs(expand_dense(G, petersen_kernel(q))) ** 2))


def check_alon_tarsi(G: Multigraph, q: int, tol: float = REL_TOL) -> Report:
    start = time.perf_counter()
    lhs = l2_petersen(G, q)
    rhs = alon_tarsi_rhs(G, q)
    params, extra = {"q": q}, []
    if q == 3:
        p3 = 3.0 ** (G.edge_count - G.vertex_count) * chromatic_brute(G, 3)
        params["chromatic_form"] = p3
        extra.append(p3)
    return make_report("alon-tarsi", G, params, lhs, rhs, tol, extra, start=start)


def check_tarsi(G: Multigraph, q: int, tol: float = REL_TOL) -> Report:
    start = time.perf_counter()
    return make_report("tarsi", G, {"q": q}, l2_petersen(G, q), tarsi_rhs(G, q), tol, start=start)


def prop_constant_rhs(G: Multigraph, q: int, y, w, tutte=None) -> complex:
    """(q w)^n (y - w)^r T(G; (y + (q-1) w)/(y - w), y / w)."""
    if y == w or w == 0:
        raise ValueError("prop-constant closed form needs y != w and w != 0")
    T = tutte if tutte is not None else tutte_dc(G)
    st = graph_stats(G)
    return (q * w) ** st.n * (y - w) ** st.r * T.evaluate((y + (q - 1) * w) / (y - w), y / w)


def check_prop_constant(G: Multigraph, q: int, y, w, tol: float = REL_TOL, tutte=None) -> Report:
    start = time.perf_counter()
    arr = expand_dense(G, prop_constant_kernel(q, y, w))
    lhs = arr[(0,) * G.vertex_count]
    rhs = prop_constant_rhs(G, q, y, w, tutte)
    params, extra = {"q": q, "y": y, "w": w}, []
    if (q, y, w) == (3, 0, 1):
        p3 = 3.0 ** (G.edge_count - G.vertex_count) * chromatic_brute(G, 3)
        params["chromatic_form"] = p3
        extra.append(p3)
    return make_report("prop-constant", G, params, lhs, rhs, tol, extra, start=start)


def _kernel_params(k: RestrictedKernel) -> dict:
    return {"q": k.q, "s": k.s, "t": k.t, "g": [complex(v) for v in k.g]}


def check_coeff_thm(
    G: Multigraph, q: int, k: RestrictedKernel, tol: float = REL_TOL, table=None, seed=None
) -> Report:
    """Every coefficient of the expansion against its coset weight enumerator.

    Exponents with no preimage under S^T must have a zero coefficient.
    """
    start = time.perf_counter()
    if table is None or table.map.s != k.s:
        table = CosetTable(G, q, k.s)
    direct = expand_dense(G, k)
    via_coset = table.coefficients(k)
    err = np.abs(direct - via_coset) / np.maximum(1.0, np.abs(direct))
    worst = np.unravel_index(int(np.argmax(err)), err.shape) if err.ndim else ()
    params = _kernel_params(k) | {
        "exponents_checked": int(direct.size),
        "worst_exponent": [int(x) for x in worst],
    }
    return make_report(
        "coeff-thm", G, params, direct[worst], via_coset[worst], tol, seed=seed, start=start
    )


def check_l2_thm(
    G: Multigraph, q: int, k: RestrictedKernel, tol: float = REL_TOL, kernel=None, image=None, seed=None
) -> Report:
    start = time.perf_counter()
    lhs = float(np.sum(np.abs(expand_dense(G, k)) ** 2))
    if kernel is None:
        kernel = kernel_ST(CoboundaryMap(G, q, k.s, k.t))
    if image is None:
        image = image_S(CoboundaryMap(G, q, k.s, k.t))
    flow_side = l2_flow_rhs(G, q, k, kernel)
    image_side = l2_image_rhs(G, q, k, image)
    params = _kernel_params(k) | {"image_side": image_side}
    return make_report("l2-thm", G, params, lhs, flow_side, tol, [image_side], seed=seed, start=start)


def check_macwilliams(G: Multigraph, q: int, weights, tol: float = REL_TOL, seed=None) -> Report:
    start = time.perf_counter()
    lhs, rhs = macwilliams_check(G, q, weights)
    params = {"q": q, "weights": [complex(v) for v in np.asarray(weights, dtype=complex)]}
    return make_report("macwilliams", G, params, lhs, rhs, tol, seed=seed, start=start)


def penrose_orientation(G: Multigraph, rotation) -> Multigraph:
    """Line graph of a plane cubic graph, each vertex triangle oriented by the rotation."""
    if any(G.degree(v) != 3 for v in range(G.vertex_count)):
        raise GraphError("Penrose check needs a cubic graph")
    if not is_plane_rotation(G, rotation):
        raise GraphError("rotation system is not a plane embedding of the graph")
    L = line_graph(G)
    edges = []
    for order in rotation:
        edges += [(order[i], order[(i + 1) % 3]) for i in range(3)]
    oriented = Multigraph(L.vertex_count, tuple(edges))
    # same undirected edge set as the line graph, only the orientation differs
    assert sorted(map(sorted, oriented.edges)) == sorted(map(sorted, L.edges))
    return oriented


def penrose_lhs(L: Multigraph) -> int:
    """sum over c in Z_3^V of 0^#mono (-1)^#{c_v - c_u = -1}; 0^0 = 1."""
    tails = np.array([u for u, _ in L.edges], dtype=np.int64)
    heads = np.array([v for _, v in L.edges], dtype=np.int64)
    total = 0
    for c in vectors(3, L.vertex_count):
        diff = (c[:, heads] - c[:, tails]) % 3
        proper = ~(diff == 0).any(axis=1)
        minus = (diff[proper] == 2).sum(axis=1)
        total += int(np.sum(1 - 2 * (minus % 2)))
    return total


def check_penrose(G: Multigraph, rotation, tol: float = REL_TOL) -> Report:
    start = time.perf_counter()
    L = penrose_orientation(G, rotation)
    lhs = penrose_lhs(L)
    rhs = (-1) ** L.vertex_count * chromatic_brute(L, 3)
    params = {"line_graph": describe(L)}
    return make_report("penrose", G, params, lhs, rhs, tol, start=start)


# -- corpus -------------------------------------------------------------------

def connected_multigraphs(max_vertices: int, max_edges: int) -> list[Multigraph]:
    """All connected multigraphs (loops allowed) up to isomorphism, in canonical form."""
    seen = set()
    out = []
    for n in range(1, max_vertices + 1):
        slots = [(i, j) for i in range(n) for j in range(i, n)]
        for m in range(0, max_edges + 1):
            for edges in itertools.combinations_with_replacement(slots, m):
                G = Multigraph(n, edges)
                if not is_connected(G):
                    continue
                key = canonical_form(G)
                if key not in seen:
                    seen.add(key)
                    out.append(Multigraph(*key))
    out.sort(key=lambda G: (G.vertex_count, G.edge_count, G.edges))
    return out


def random_restricted_kernel(rng: np.random.Generator, q: int, s: int, t: int) -> RestrictedKernel:
    """g with values uniform in the complex unit disc."""
    radius = np.sqrt(rng.random(q))
    angle = 2 * np.pi * rng.random(q)
    return RestrictedKernel(tuple(radius * np.exp(1j * angle)), s, t)


@dataclass
class CorpusSummary:
    graphs: int = 0
    checks: dict = field(default_factory=dict)
    failures: int = 0
    first_failure: Report | None = None
    runtime: float = 0.0

    def add(self, report: Report):
        name = report.identity
        passed, total = self.checks.get(name, (0, 0))
        self.checks[name] = (passed + report.passed, total + 1)
        if not report.passed:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = report

    def to_dict(self) -> dict:
        return {
            "graphs": self.graphs,
            "checks": {k: {"passed": p, "total": t} for k, (p, t) in sorted(self.checks.items())},
            "failures": self.failures,
            "first_failure": None if self.first_failure is None else self.first_failure.to_dict(),
        }


def tutte_reports(G: Multigraph, qs, tol: float = REL_TOL) -> list[Report]:
    """Tutte oracle equality plus the colouring-sum closed forms."""
    start = time.perf_counter()
    T = tutte_dc(G)
    S = tutte_subset(G)
    reports = [
        Report("tutte-oracle", describe(G), {"dc": T.to_json()}, 0j, 0j,
               passed=T == S, runtime=time.perf_counter() - start)
    ]
    for q in qs:
        for y in (0, 2, 3):
            reports.append(make_report(
                "monochromial", G, {"q": q, "y": y},
                monochromial(G, q, y), monochromial_closed(G, q, y, T), tol,
            ))
        for w, y in ((1, 0), (1, 2), (2, 3), (0.5 + 0.25j, -1.5 + 1j)):
            reports.append(make_report(
                "potts", G, {"q": q, "w": w, "y": y},
                potts_partition(G, hamming_kernel(q, w, y)), potts_closed(G, q, w, y, T), tol,
            ))
    return reports


def structure_reports(G: Multigraph, q: int) -> list[Report]:
    """Tension/flow counts, orthogonality, fast path vs brute force, exact MacWilliams."""
    st = graph_stats(G)
    P, F = tensions(G, q), flows(G, q)
    brute = kernel_ST(CoboundaryMap(G, q, 1, 0))
    reports = [
        make_report("tension-count", G, {"q": q}, P.shape[0], q ** st.r),
        make_report("flow-count", G, {"q": q}, F.shape[0], q ** st.n),
        make_report("orthogonality", G, {"q": q}, int(((P @ F.T) % q).any()), 0),
        make_report("flow-fast-path", G, {"q": q}, int(np.array_equal(F, brute)), 1),
    ]
    for y in (0, 2, 3):
        lhs, rhs = macwilliams_hamming_exact(G, q, y)
        reports.append(make_report("macwilliams-exact", G, {"q": q, "y": y}, lhs, rhs, 0.0))
    return reports


def check_corpus(
    q_list=(2, 3),
    max_vertices: int = 4,
    max_edges: int = 6,
    kernels_per_graph: int = 5,
    seed: int = 0,
    tol: float = REL_TOL,
) -> CorpusSummary:
    """Run every identity over the corpus; reports are merged in corpus order."""
    start = time.perf_counter()
    summary = CorpusSummary()
    corpus = connected_multigraphs(max_vertices, max_edges) if max_vertices > 0 else []
    summary.graphs = len(corpus)
    rng = np.random.default_rng(seed)
    for G in corpus:
        for r in tutte_reports(G, q_list, tol):
            summary.add(r)
        for q in q_list:
            for r in structure_reports(G, q):
                summary.add(r)
            summary.add(check_alon_tarsi(G, q, tol))
            summary.add(check_tarsi(G, q, tol))
            for y, w in ((0, 1), (2, 1), (3, 2)):
                summary.add(check_prop_constant(G, q, y, w, tol))
            weights = rng.normal(size=q) + 1j * rng.normal(size=q)
            summary.add(check_macwilliams(G, q, weights, tol, seed=seed))
            kernels = [petersen_kernel(q), score_kernel(q)]
            pairs = [(s, t) for s in range(q) for t in range(q)]
            for i in range(kernels_per_graph):
                s, t = pairs[i % len(pairs)]
                kernels.append(random_restricted_kernel(rng, q, s, t))
            tables = {}
            for k in kernels:
                if k.s not in tables:
                    tables[k.s] = CosetTable(G, q, k.s)
                summary.add(check_coeff_thm(G, q, k, tol, tables[k.s], seed=seed))
                summary.add(check_l2_thm(G, q, k, tol, kernel=tables[k.s].kernel, seed=seed))
        summary.add(score_l0_report(G))
    summary.runtime = time.perf_counter() - start
    return summary


def score_l0_report(G: Multigraph) -> Report:
    """Non-zero coefficients of prod (x_u + x_v) against the forest count T(G; 2, 1)."""
    top = max((G.degree(v) for v in range(G.vertex_count)), default=0)
    q = max(2, top + 1)
    lhs = l0_unreduced(G, score_kernel(q))
    rhs = tutte_dc(G).evaluate(2, 1)
    return make_report("score-l0", G, {"q": q}, lhs, rhs, 0.0)
