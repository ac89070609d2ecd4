import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tuttefourier.enumerate import SizeGuardError
from tuttefourier.fourier import legendre_char
from tuttefourier.graph import bouquet, complete, cycle
from tuttefourier.graphpoly import (
    CoeffMap,
    CosetTable,
    RestrictedKernel,
    alon_tarsi_rhs,
    coefficient,
    coset_coeff,
    expand,
    expand_dense,
    l0_norm,
    l0_unreduced,
    l2_flow_rhs,
    l2_image_rhs,
    l2_norm_sq,
    l2_tg_predicate,
    parseval_rhs,
    petersen_kernel,
    prop_constant_kernel,
    restrict,
    score_kernel,
    tarsi_rhs,
)
from tuttefourier.tutte import chromatic_brute, tutte_dc

from conftest import multigraphs


def naive_expand(G, f):
    """Oracle: multiply exponent dictionaries edge by edge, reduce at the end."""
    f = np.asarray(f, dtype=complex)
    q = f.shape[0]
    poly = {(0,) * G.vertex_count: 1 + 0j}
    for u, v in G.edges:
        nxt = {}
        for mono, c in poly.items():
            for a in range(q):
                for b in range(q):
                    if f[a, b] == 0:
                        continue
                    m = list(mono)
                    m[u] += a
                    m[v] += b
                    nxt[tuple(m)] = nxt.get(tuple(m), 0) + c * f[a, b]
        poly = nxt
    arr = np.zeros((q,) * G.vertex_count, dtype=complex)
    for mono, c in poly.items():
        arr[tuple(x % q for x in mono)] += c
    return arr


@st.composite
def kernels(draw, q=None):
    q = q or draw(st.integers(2, 4))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = np.random.default_rng(seed)
    g = rng.normal(size=q) + 1j * rng.normal(size=q)
    return RestrictedKernel(tuple(g), draw(st.integers(0, q - 1)), draw(st.integers(0, q - 1)))


def test_petersen_spot_values():
    assert abs(l2_norm_sq(expand(complete(2), petersen_kernel(3))) - 2) < 1e-9
    assert abs(l2_norm_sq(expand(cycle(3), petersen_kernel(3))) - 6) < 1e-9
    F = expand(complete(2), petersen_kernel(3))
    assert F.coeffs == {(1, 0): 1, (0, 1): -1}


def test_kernel_shapes():
    k = petersen_kernel(3)
    assert k.kernel().tolist() == [[0, -1, 0], [1, 0, 0], [0, 0, 0]]
    assert restrict(k.kernel(), 1, 1) == k
    with pytest.raises(ValueError):
        restrict(np.ones((3, 3)), 1, 1)
    assert score_kernel(3).kernel()[1, 0] == 1 and score_kernel(3).kernel()[0, 1] == 1
    c = prop_constant_kernel(3, 2, 1).kernel()
    # y on the diagonal after the change of variables: f(0,0) = y + (q-1) w
    assert c[0, 0] == 4 and c[2, 1] == 1


def test_loop_expansion():
    # a loop contributes sum f(a,b) x^(a+b)
    F = expand_dense(bouquet(1), score_kernel(3))
    assert np.allclose(F, [0, 2, 0])


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_vertices=3, max_edges=4), st.data())
def test_expand_matches_naive_product(G, data):
    k = data.draw(kernels())
    assert np.allclose(expand_dense(G, k), naive_expand(G, k.kernel()), atol=1e-9)


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_vertices=4, max_edges=5), st.integers(2, 4), st.data())
def test_petersen_reorientation_invariance(G, q, data):
    if not G.edge_count:
        return
    e = data.draw(st.integers(0, G.edge_count - 1))
    H = G.reversed_edge(e)
    k = petersen_kernel(q)
    FG, FH = expand_dense(G, k), expand_dense(H, k)
    if not G.is_loop(e):
        assert np.allclose(FG, -FH)
    assert abs(l2_norm_sq(FG) - l2_norm_sq(FH)) < 1e-9


@settings(max_examples=30, deadline=None)
@given(multigraphs(max_vertices=4, max_edges=5), st.data())
def test_parseval_at_roots(G, data):
    k = data.draw(kernels(q=data.draw(st.integers(2, 3))))
    F = expand_dense(G, k)
    assert abs(l2_norm_sq(F) - parseval_rhs(G, k)) <= 1e-6 * max(1, l2_norm_sq(F))


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_vertices=4, max_edges=5), st.data())
def test_coset_coefficients(G, data):
    k = data.draw(kernels())
    F = expand_dense(G, k)
    table = CosetTable(G, k.q, k.s)
    assert np.allclose(table.coefficients(k), F, atol=1e-9)
    a = data.draw(st.tuples(*[st.integers(0, k.q - 1)] * G.vertex_count))
    assert abs(coset_coeff(G, k.q, k, a, table) - F[a]) < 1e-9


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_vertices=4, max_edges=5), st.data())
def test_l2_both_sides(G, data):
    k = data.draw(kernels())
    direct = l2_norm_sq(expand_dense(G, k))
    scale = 1e-6 * max(1, direct)
    assert abs(l2_flow_rhs(G, k.q, k) - direct) <= scale
    assert abs(l2_image_rhs(G, k.q, k) - direct) <= scale


@settings(max_examples=30, deadline=None)
@given(multigraphs(max_vertices=4, max_edges=5), st.integers(2, 5))
def test_alon_tarsi_and_tarsi(G, q):
    lhs = l2_norm_sq(expand_dense(G, petersen_kernel(q)))
    assert abs(lhs - alon_tarsi_rhs(G, q)) <= 1e-6 * max(1, lhs)
    assert abs(lhs - tarsi_rhs(G, q)) <= 1e-6 * max(1, lhs)


@settings(max_examples=30, deadline=None)
@given(multigraphs(max_vertices=4, max_edges=5))
def test_alon_tarsi_q3_chromatic(G):
    lhs = l2_norm_sq(expand_dense(G, petersen_kernel(3)))
    rhs = 3.0 ** (G.edge_count - G.vertex_count) * chromatic_brute(G, 3)
    assert abs(lhs - rhs) <= 1e-6 * max(1, lhs)


@settings(max_examples=30, deadline=None)
@given(multigraphs(max_vertices=4, max_edges=5))
def test_score_kernel_norms(G):
    T = tutte_dc(G)
    q = max((G.degree(v) for v in range(G.vertex_count)), default=0) + 1
    assert l0_unreduced(G, score_kernel(max(q, 2))) == T(2, 1)
    assert abs(l2_norm_sq(expand_dense(G, score_kernel(3))) - T(2, 4)) < 1e-6 * T(2, 4)


def test_l0_unreduced_needs_large_q():
    with pytest.raises(ValueError):
        l0_unreduced(cycle(3), score_kernel(2))


def test_tg_predicate():
    ok, Y, W = l2_tg_predicate(RestrictedKernel(tuple(legendre_char(5)), 1, 0))
    assert ok and abs(Y - 4) < 1e-9 and abs(W + 1) < 1e-9
    assert l2_tg_predicate(RestrictedKernel((1, 2, 3), 2, 0)) == (False, None, None)
    ok, Y, W = l2_tg_predicate(petersen_kernel(3))
    assert ok and abs(Y - 2) < 1e-9 and abs(W + 1) < 1e-9


def test_coefficient_access_and_json():
    F = expand(complete(2), petersen_kernel(3))
    assert coefficient(F, (1, 0)) == 1
    assert coefficient(F, (2, 2)) == 0
    with pytest.raises(ValueError):
        coefficient(F, (3, 0))
    assert F.to_json() == [
        {"exponents": [0, 1], "re": -1.0, "im": 0.0},
        {"exponents": [1, 0], "re": 1.0, "im": 0.0},
    ]
    assert l0_norm(F) == 2
    assert np.array_equal(CoeffMap.from_dense(F.to_dense(), 3).to_dense(), F.to_dense())


def test_expansion_guard():
    with pytest.raises(SizeGuardError):
        expand_dense(cycle(99), petersen_kernel(5))


def test_prop_constant_on_single_loop():
    # constant term on Y_1 is q y
    F = expand_dense(bouquet(1), prop_constant_kernel(4, 3, 2))
    assert abs(F[0] - 4 * 3) < 1e-9
