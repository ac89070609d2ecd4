import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tuttefourier.enumerate import SizeGuardError
from tuttefourier.graph import (
    Multigraph,
    bouquet,
    complete,
    cycle,
    graph_stats,
    incidence,
    multiedge,
    plane_embedding,
    star,
)
from tuttefourier.tutte import (
    X,
    Y,
    BiPoly,
    TgWeights,
    canonical_form,
    chromatic_brute,
    chromatic_value,
    hamming_kernel,
    monochromial,
    monochromial_closed,
    potts_closed,
    potts_partition,
    root_of_unity_kernel,
    tg_eval,
    tg_family_probe,
    tg_matrix_test,
    tutte_dc,
    tutte_subset,
)

from conftest import multigraphs


def kirchhoff(G):
    """Spanning-tree count of a connected graph via the reduced Laplacian."""
    B = incidence(G).astype(float)
    L = B @ B.T
    return round(np.linalg.det(L[1:, 1:])) if G.vertex_count > 1 else 1


def test_small_polynomials():
    assert tutte_dc(complete(2)) == X
    assert tutte_dc(bouquet(1)) == Y
    assert tutte_dc(complete(3)) == X ** 2 + X + Y
    assert tutte_dc(Multigraph(1)) == BiPoly.constant(1)


def test_k4_polynomial():
    expect = X ** 3 + Y ** 3 + 3 * X ** 2 + 3 * Y ** 2 + 4 * X * Y + 2 * X + 2 * Y
    assert tutte_dc(complete(4)) == expect
    assert tutte_subset(complete(4)) == expect


def test_families_closed_forms():
    for m in range(1, 6):
        assert tutte_dc(bouquet(m)) == Y ** m
        assert tutte_dc(star(m)) == X ** m
        expect = X
        for j in range(1, m):
            expect = expect + Y ** j
        assert tutte_dc(multiedge(m)) == expect


def test_prism_spanning_trees():
    G, _ = plane_embedding("prism", 3)
    T = tutte_dc(G)
    assert T(1, 1) == kirchhoff(G) == 75


def test_json_format():
    T = tutte_dc(complete(3))
    assert T.to_json() == [[0, 1, "1"], [1, 0, "1"], [2, 0, "1"]]
    assert BiPoly.from_json(T.to_json()) == T


def test_subset_guard():
    with pytest.raises(SizeGuardError):
        tutte_subset(bouquet(25))


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_vertices=5, max_edges=8))
def test_dc_matches_subset(G):
    assert tutte_dc(G) == tutte_subset(G)


@settings(max_examples=30, deadline=None)
@given(multigraphs(max_vertices=5, max_edges=8), st.integers(0, 10 ** 6))
def test_random_pivot_invariance(G, seed):
    assert tutte_dc(G, rng=random.Random(seed)) == tutte_dc(G)


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_vertices=5, max_edges=7))
def test_standard_evaluations(G):
    T = tutte_dc(G)
    s = graph_stats(G)
    assert T(2, 2) == 2 ** G.edge_count
    # T(1,2) counts spanning subgraphs with the same component count
    same_k = 0
    for mask in range(2 ** G.edge_count):
        H = Multigraph(G.vertex_count, tuple(e for i, e in enumerate(G.edges) if mask >> i & 1))
        same_k += graph_stats(H).k == s.k
    assert T(1, 2) == same_k


@settings(max_examples=30, deadline=None)
@given(multigraphs(max_vertices=5, max_edges=6), st.permutations(range(5)))
def test_canonical_form_invariant_under_relabelling(G, perm):
    perm = [p for p in perm if p < G.vertex_count]
    H = Multigraph(G.vertex_count, tuple((perm[v], perm[u]) for u, v in G.edges))
    assert canonical_form(G) == canonical_form(H)


def test_chromatic():
    assert chromatic_value(complete(3), 3) == 6
    assert chromatic_value(complete(4), 3) == 0
    assert chromatic_value(cycle(5), 3) == 30
    assert chromatic_value(bouquet(1), 5) == 0
    for q in range(1, 5):
        assert chromatic_value(complete(4), q) == chromatic_brute(complete(4), q)


def test_tg_eval_rejects_zero():
    with pytest.raises(ValueError):
        tg_eval(complete(2), TgWeights(alpha=0))


def test_tg_eval_is_tutte_at_unit_weights():
    assert tg_eval(complete(3), TgWeights(x=2, y=3)) == tutte_dc(complete(3))(2, 3)


@settings(max_examples=30, deadline=None)
@given(
    multigraphs(max_vertices=4, max_edges=6),
    st.integers(2, 4),
    st.sampled_from([0, 2, 3, -1, 0.5]),
)
def test_monochromial_closed(G, q, y):
    assert abs(monochromial(G, q, y) - monochromial_closed(G, q, y)) < 1e-6 * max(1, abs(monochromial(G, q, y)))


@settings(max_examples=30, deadline=None)
@given(
    multigraphs(max_vertices=4, max_edges=6),
    st.integers(2, 4),
    st.sampled_from([(1, 0), (1, 2), (2, 3), (0.5 + 0.25j, -1.5 + 1j), (0, 2), (2, 2)]),
)
def test_potts_closed(G, q, wy):
    w, y = wy
    brute = potts_partition(G, hamming_kernel(q, w, y))
    assert abs(brute - potts_closed(G, q, w, y)) <= 1e-6 * max(1, abs(brute))


def test_potts_matches_brute_monochromial():
    assert potts_partition(complete(3), hamming_kernel(3, 1, 0)) == 6


def test_tg_matrix_test():
    assert tg_matrix_test(hamming_kernel(3, 2, 5)) == (2, 5)
    assert tg_matrix_test(root_of_unity_kernel(3)) is None
    assert tg_matrix_test([[1, 2], [3, 1]]) is None


def test_probe_consistent_on_potts_kernel():
    rep = tg_family_probe(hamming_kernel(3, 1, 3), m_max=5)
    assert rep.consistent and rep.first_violation is None
    # y = F(Y_1)/q, x = F(K_2)/q = (q y + q(q-1) w)/q
    assert abs(rep.params["y"] - 3) < 1e-9
    assert abs(rep.params["x"] - 5) < 1e-9
    # X_m = alpha Y_(m-1) + beta X_(m-1) with alpha = y - w, beta = w
    assert abs(rep.params["alpha"] - 2) < 1e-9 and abs(rep.params["beta"] - 1) < 1e-9
    assert "not a proof" in rep.note


def test_probe_detects_root_of_unity_kernel():
    rep = tg_family_probe(root_of_unity_kernel(3), m_max=4)
    assert not rep.consistent
    assert rep.first_violation.startswith("Y_2")


def test_probe_detects_orientation_dependence():
    rep = tg_family_probe([[1, 2], [3, 1]], m_max=4)
    assert not rep.consistent
    assert rep.first_violation.startswith("X_2^1")


def test_probe_bounds():
    with pytest.raises(ValueError):
        tg_family_probe(hamming_kernel(2, 1, 1), m_max=9)


def test_colouring_guard():
    with pytest.raises(SizeGuardError):
        potts_partition(Multigraph(24), hamming_kernel(2, 1, 1))


def test_biPoly_arithmetic():
    p = (X + Y) ** 2
    assert p.terms() == [(0, 2, 1), (1, 1, 2), (2, 0, 1)]
    assert p.shift(1, 0) == X * p
    assert repr(X ** 2 + 2 * X * Y) == "x^2 + 2*x*y"
