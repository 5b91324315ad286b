import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lemsched.graphlap import (
    Edge,
    NodeIndexing,
    format_matrix,
    incidence_matrix,
    laplacian,
    pair_pair_edges,
    pair_pair_spd,
    pair_spd,
    regularize,
    single_pair_edges,
    weight_matrix,
)
from lemsched.topology import Deployment, gen_deployment


def test_single_pair_edges():
    idx = NodeIndexing(2)
    assert single_pair_edges(0, idx) == [Edge(0, 1, 1.0)]
    assert single_pair_edges(1, idx) == [Edge(2, 3, 1.0)]
    with pytest.raises(IndexError):
        single_pair_edges(5, NodeIndexing(3))


def test_pair_pair_edges_weights():
    # tx0 -> rx1 is 8.0623 m, tx1 -> rx0 is 12.5 m
    dep = Deployment(tx=[(10, 0), (0, 0)], rx=[(7.5, 10), (3, 4)])
    edges = pair_pair_edges(0, 1, dep)
    assert [(e.src, e.dst) for e in edges] == [(0, 1), (2, 3), (0, 3), (2, 1)]
    np.testing.assert_allclose([e.weight for e in edges], [1, 1, np.sqrt(65), 12.5])
    assert edges[2].weight == pytest.approx(8.0623, abs=1e-4)


def test_pair_pair_rejects_self():
    dep = gen_deployment(3, seed=0)
    with pytest.raises(ValueError):
        pair_pair_edges(1, 1, dep)
    with pytest.raises(IndexError):
        pair_pair_edges(0, 3, dep)


def test_coincident_pairs_cross_weight_is_direct_distance():
    dep = Deployment(tx=[(0, 0), (0, 0)], rx=[(3, 4), (3, 4)])
    w = [e.weight for e in pair_pair_edges(0, 1, dep)]
    assert w == [1.0, 1.0, 5.0, 5.0]


def test_incidence_matrix():
    np.testing.assert_array_equal(incidence_matrix([(0, 1, 1.0)], 2), [[1], [-1]])
    np.testing.assert_array_equal(incidence_matrix([(0, 1, 1.0)], 4), [[1], [-1], [0], [0]])
    dep = gen_deployment(4, seed=2)
    A = incidence_matrix(pair_pair_edges(1, 3, dep), 8)
    assert A.shape == (8, 4)
    np.testing.assert_array_equal(A.sum(axis=0), 0)
    with pytest.raises(IndexError):
        incidence_matrix([(0, 4, 1.0)], 4)


def test_laplacian_small():
    A = np.array([[1.0], [-1.0]])
    np.testing.assert_array_equal(laplacian(A, [[1.0]]), [[1, -1], [-1, 1]])
    np.testing.assert_array_equal(laplacian(A, [[3.0]]), [[3, -3], [-3, 3]])
    with pytest.raises(ValueError):
        laplacian(A, np.eye(2))


def test_regularize():
    S = regularize(np.array([[1.0, -1.0], [-1.0, 1.0]]), 0.5)
    np.testing.assert_array_equal(S, [[1.5, -1], [-1, 1.5]])
    np.testing.assert_allclose(np.linalg.eigvalsh(S), [0.5, 2.5])
    np.testing.assert_array_equal(regularize(np.zeros((3, 3)), 0.5), 0.5 * np.eye(3))
    with pytest.raises(ValueError):
        regularize(np.zeros((2, 2)), 0.0)
    with pytest.raises(ValueError):
        regularize(np.array([[1.0, 2.0], [0.0, 1.0]]), 0.5)


def _edge_lists(draw_n=8):
    node = st.integers(0, draw_n - 1)
    edge = st.tuples(node, node, st.floats(0.01, 800)).filter(lambda e: e[0] != e[1])
    return st.lists(edge, min_size=1, max_size=12)


@settings(max_examples=100, deadline=None)
@given(_edge_lists(), st.randoms(use_true_random=False))
def test_laplacian_properties(edges, rnd):
    n = 8
    A = incidence_matrix(edges, n)
    L = laplacian(A, weight_matrix(edges))
    assert np.array_equal(L, L.T)
    assert np.abs(L @ np.ones(n)).max() <= 1e-12 * max(1.0, np.abs(L).max())
    assert np.linalg.eigvalsh(L).min() >= -1e-9 * max(1.0, np.abs(L).max())
    perm = list(range(len(edges)))
    rnd.shuffle(perm)
    shuffled = [edges[p] for p in perm]
    np.testing.assert_allclose(laplacian(incidence_matrix(shuffled, n), weight_matrix(shuffled)), L, rtol=0, atol=1e-12 * np.abs(L).max())
    S = regularize(L, 0.5)
    np.testing.assert_allclose(np.linalg.eigvalsh(S).min(), np.linalg.eigvalsh(L).min() + 0.5, atol=1e-9)


def test_generated_matrices_full_dimension():
    dep = gen_deployment(5, seed=4)
    assert pair_spd(2, 5).shape == (10, 10)
    S = pair_pair_spd(0, 4, dep)
    assert S.shape == (10, 10)
    assert np.linalg.eigvalsh(S).min() >= 0.5 - 1e-9
    L = S - 0.5 * np.eye(10)
    assert np.abs(L.sum(axis=1)).max() <= 1e-12
    # only the nodes of pairs 0 and 4 are touched
    untouched = [2, 3, 4, 5, 6, 7]
    np.testing.assert_array_equal(L[untouched], 0)


def test_format_matrix():
    assert format_matrix(np.array([[1.5, -1], [-1, 1.5]])) == "1.5 -1\n-1 1.5\n"
