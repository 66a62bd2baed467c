import math
import random

import numpy as np
import pytest

from grafito import algos
from grafito.algos import UNREACHABLE
from grafito.bench.oracles import generate_reference
from grafito.csr import project
from grafito.errors import EmptyGraphError, NegativeWeightError, SameSourceSinkError
from grafito.store import GraphStore

from _oracles import (
    kruskal_total,
    min_cut_by_enumeration,
    count_shortest_paths,
    triangle_total_dense,
    principal_subspace,
    subspace_angle,
)


def build_view(n, edges, weights=None, reverse=False):
    store = GraphStore()
    for _ in range(n):
        store.create_node(["V"])
    for i, (s, d) in enumerate(edges):
        props = {"w": weights[i]} if weights is not None else None
        store.create_edge(s, d, "R", props)
    return project(store, weight_key="w" if weights is not None else None, build_reverse=reverse)


def random_view(seed, n, m, weighted=False, reverse=False):
    rng = random.Random(seed)
    edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
    weights = [round(rng.uniform(0.1, 9.0), 3) for _ in range(m)] if weighted else None
    return build_view(n, edges, weights, reverse)


# --- PageRank ---------------------------------------------------------------

def test_pagerank_two_cycle():
    view = build_view(2, [(0, 1), (1, 0)])
    result = algos.page_rank(view, 0.85, iterations=30)
    assert result.values == pytest.approx([0.5, 0.5], abs=1e-12)


def test_pagerank_chain_matches_dense_oracle():
    view = build_view(3, [(0, 1), (1, 2)])
    result = algos.page_rank(view, 0.85, iterations=20)
    expected = generate_reference(view, "pagerank", {"damping": 0.85, "iterations": 20})
    for v in range(3):
        assert result.values[v] == pytest.approx(expected[v], abs=1e-12)


def test_pagerank_random_graph_tolerance_mode():
    view = random_view(17, 1000, 5000)
    result = algos.page_rank(view, 0.85, tolerance=1e-8, max_iterations=200)
    assert result.converged
    expected = generate_reference(view, "pagerank", {"damping": 0.85, "iterations": 200})
    diff = max(abs(result.values[v] - expected[int(view.id_map[v])]) for v in range(1000))
    assert diff <= 1e-6


def test_pagerank_conservation_every_iteration():
    view = random_view(19, 300, 900)
    for iters in range(1, 8):
        result = algos.page_rank(view, 0.85, iterations=iters)
        assert abs(result.values.sum() - 1.0) <= 1e-9


def test_pagerank_all_dangling():
    view = build_view(4, [])
    result = algos.page_rank(view, 0.85, iterations=10)
    assert abs(result.values.sum() - 1.0) <= 1e-9
    assert result.values == pytest.approx([0.25] * 4)


def test_pagerank_empty_graph():
    with pytest.raises(EmptyGraphError):
        algos.page_rank(build_view(0, []), 0.85, iterations=5)


def test_pagerank_deterministic_across_workers():
    view = random_view(23, 2000, 30_000)
    baseline = algos.page_rank(view, 0.85, iterations=15, workers=1)
    for workers in (2, 8):
        other = algos.page_rank(view, 0.85, iterations=15, workers=workers)
        assert baseline.values.tobytes() == other.values.tobytes()


# --- WCC / SCC --------------------------------------------------------------

def test_wcc_two_pairs():
    view = build_view(4, [(0, 1), (2, 3)])
    assert list(algos.wcc(view).values) == [0, 0, 2, 2]


def test_wcc_edgeless():
    view = build_view(5, [])
    assert list(algos.wcc(view).values) == [0, 1, 2, 3, 4]


def test_wcc_matches_flood_fill_oracle():
    view = random_view(29, 200, 300)
    result = algos.wcc(view)
    expected = generate_reference(view, "wcc")
    assert [int(x) for x in result.values] == [expected[int(view.id_map[v])] for v in range(200)]


def test_scc_three_cycle():
    view = build_view(3, [(0, 1), (1, 2), (2, 0)])
    assert list(algos.scc(view).values) == [0, 0, 0]


def test_scc_dag_is_singletons():
    view = build_view(4, [(0, 1), (1, 2), (0, 3)])
    assert list(algos.scc(view).values) == [0, 1, 2, 3]


def test_scc_matches_closure_oracle():
    for seed in (31, 37, 41):
        view = random_view(seed, 120, 300)
        result = algos.scc(view)
        expected = generate_reference(view, "scc")
        assert [int(x) for x in result.values] == [expected[int(view.id_map[v])] for v in range(120)]


def test_scc_deep_chain_no_recursion_limit():
    n = 5000
    view = build_view(n, [(i, i + 1) for i in range(n - 1)])
    result = algos.scc(view)
    assert len(set(int(x) for x in result.values)) == n


def test_every_scc_within_one_wcc():
    view = random_view(43, 150, 400)
    weak = algos.wcc(view).values
    strong = algos.scc(view).values
    mapping = {}
    for v in range(view.vertex_count):
        s, w = int(strong[v]), int(weak[v])
        assert mapping.setdefault(s, w) == w


# --- CDLP -------------------------------------------------------------------

def test_cdlp_isolated_vertex_keeps_id():
    view = build_view(3, [(0, 1), (1, 0)])
    result = algos.cdlp(view, 4)
    assert int(result.values[2]) == 2


def test_cdlp_two_cliques_with_bridge():
    edges = []
    for group in (range(4), range(4, 8)):
        for a in group:
            for b in group:
                if a != b:
                    edges.append((a, b))
    edges.append((3, 4))
    view = build_view(8, edges)
    result = algos.cdlp(view, 5)
    left = {int(result.values[v]) for v in range(4)}
    right = {int(result.values[v]) for v in range(4, 8)}
    assert len(left) == 1 and len(right) == 1 and left != right


def test_cdlp_matches_replay_oracle():
    for iters in (1, 3, 7):
        view = random_view(47, 150, 500)
        result = algos.cdlp(view, iters)
        expected = generate_reference(view, "cdlp", {"iterations": iters})
        assert [int(x) for x in result.values] == [expected[int(view.id_map[v])] for v in range(150)]


# --- LCC --------------------------------------------------------------------

def test_lcc_triangle_both_directions():
    edges = [(a, b) for a in range(3) for b in range(3) if a != b]
    view = build_view(3, edges)
    assert list(algos.lcc(view).values) == [1.0, 1.0, 1.0]


def test_lcc_star_center_zero():
    view = build_view(5, [(0, i) for i in range(1, 5)])
    assert algos.lcc(view).values[0] == 0.0


def test_lcc_matches_naive_oracle():
    view = random_view(53, 400, 2400)
    result = algos.lcc(view)
    expected = generate_reference(view, "lcc")
    for v in range(400):
        assert abs(result.values[v] - expected[int(view.id_map[v])]) <= 1e-12


# --- Triangles ----------------------------------------------------------------

def test_triangle_k3():
    view = build_view(3, [(0, 1), (1, 2), (2, 0)])
    assert algos.triangle_count(view).extras["total"] == 1


def test_triangle_k4():
    edges = [(a, b) for a in range(4) for b in range(4) if a < b]
    view = build_view(4, edges)
    assert algos.triangle_count(view).extras["total"] == 4


def test_triangle_identity_and_oracle():
    rng = random.Random(59)
    n = 200
    matrix = np.zeros((n, n), dtype=np.int64)
    edges = []
    for _ in range(int(n * n * 0.1)):
        a, b = rng.randrange(n), rng.randrange(n)
        edges.append((a, b))
        matrix[a, b] = 1
    view = build_view(n, edges)
    result = algos.triangle_count(view)
    assert result.extras["total"] == triangle_total_dense(matrix)
    assert result.values.sum() == result.extras["total"] * 3


# --- BFS / SSSP ---------------------------------------------------------------

def test_bfs_path():
    view = build_view(3, [(0, 1), (1, 2)])
    assert list(algos.bfs(view, 0).values) == [0, 1, 2]


def test_bfs_unreachable_via_reverse_edge():
    view = build_view(2, [(1, 0)])
    assert algos.bfs(view, 0).values[1] == UNREACHABLE


def test_bfs_matches_oracle():
    view = random_view(61, 300, 900)
    result = algos.bfs(view, 0)
    expected = generate_reference(view, "bfs", {"source": int(view.id_map[0])})
    for v in range(300):
        want = expected[int(view.id_map[v])]
        got = int(result.values[v])
        assert (got == UNREACHABLE and want == "infinity") or got == want


def test_dijkstra_single_vertex():
    view = build_view(1, [])
    assert list(algos.sssp_dijkstra(view, 0).values) == [0.0]


def test_dijkstra_prefers_two_hop():
    view = build_view(3, [(0, 2), (0, 1), (1, 2)], weights=[5.0, 1.0, 1.0])
    assert algos.sssp_dijkstra(view, 0).values[2] == 2.0


def test_dijkstra_matches_bellman_ford():
    view = random_view(67, 250, 1200, weighted=True)
    result = algos.sssp_dijkstra(view, 0)
    expected = generate_reference(view, "sssp", {"source": int(view.id_map[0])})
    for v in range(250):
        want = expected[int(view.id_map[v])]
        got = result.values[v]
        if want == "infinity":
            assert math.isinf(got)
        else:
            assert abs(got - want) <= 1e-12


def test_dijkstra_negative_weight_rejected():
    view = build_view(2, [(0, 1)], weights=[-1.0])
    with pytest.raises(NegativeWeightError):
        algos.sssp_dijkstra(view, 0)


def test_dijkstra_agrees_with_bfs_on_unit_weights():
    view = random_view(71, 200, 700)
    depths = algos.bfs(view, 0).values
    dist = algos.sssp_dijkstra(view, 0).values
    for v in range(200):
        if depths[v] == UNREACHABLE:
            assert math.isinf(dist[v])
        else:
            assert dist[v] == float(depths[v])


# --- BFS all shortest paths -----------------------------------------------------

def test_all_shortest_paths_diamond():
    view = build_view(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    result = algos.bfs_all_shortest_paths(view, 0)
    assert list(result.extras["counts"]) == [1, 1, 1, 2]


def test_all_shortest_paths_chain():
    view = build_view(4, [(0, 1), (1, 2), (2, 3)])
    result = algos.bfs_all_shortest_paths(view, 0)
    assert list(result.extras["counts"]) == [1, 1, 1, 1]
    assert not result.extras["overflow"]


def test_all_shortest_paths_matches_enumeration():
    rng = random.Random(73)
    n = 60
    edges = sorted({(a, rng.randrange(a + 1, n)) for a in range(n - 1) for _ in range(3) if a + 1 < n})
    view = build_view(n, list(edges))
    result = algos.bfs_all_shortest_paths(view, 0)
    adj = [set() for _ in range(n)]
    for v in range(n):
        for t in view.out_neighbors(v):
            adj[v].add(int(t))
    expected = count_shortest_paths(adj, 0, n)
    assert [int(c) for c in result.extras["counts"]] == [expected[v] for v in range(n)]


def test_all_shortest_paths_unreachable_zero():
    view = build_view(2, [])
    result = algos.bfs_all_shortest_paths(view, 0)
    assert int(result.extras["counts"][1]) == 0
    assert result.values[1] == UNREACHABLE


# --- Max flow -------------------------------------------------------------------

def test_max_flow_single_edge():
    view = build_view(2, [(0, 1)], weights=[7.0])
    assert algos.max_flow(view, 0, 1).values == 7.0


def test_max_flow_disconnected():
    view = build_view(3, [(0, 1)], weights=[2.0])
    assert algos.max_flow(view, 0, 2).values == 0.0


def test_max_flow_same_source_sink():
    view = build_view(2, [(0, 1)])
    with pytest.raises(SameSourceSinkError):
        algos.max_flow(view, 0, 0)


def test_max_flow_equals_enumerated_min_cut():
    rng = random.Random(79)
    for trial in range(5):
        n = 8
        edges, weights = [], []
        for _ in range(20):
            a, b = rng.randrange(n), rng.randrange(n)
            if a != b:
                edges.append((a, b))
                weights.append(float(rng.randrange(1, 10)))
        view = build_view(n, edges, weights)
        flow = algos.max_flow(view, 0, n - 1).values
        cap_edges = [(s, d, w) for (s, d), w in zip(edges, weights)]
        expected = min_cut_by_enumeration(n, cap_edges, 0, n - 1)
        assert flow == pytest.approx(expected, abs=1e-9)
        # weak duality: flow never exceeds any cut
        assert flow <= expected + 1e-9


# --- MST ------------------------------------------------------------------------

def test_mst_triangle():
    view = build_view(3, [(0, 1), (1, 2), (2, 0)], weights=[1.0, 2.0, 3.0])
    result = algos.mst_prim(view)
    assert result.extras["total"] == 3.0
    assert len(result.values) == 2


def test_mst_forest_on_disconnected():
    view = build_view(4, [(0, 1), (2, 3)], weights=[1.0, 1.0])
    result = algos.mst_prim(view)
    assert len(result.values) == 2
    assert result.extras["total"] == 2.0


def test_mst_matches_kruskal():
    rng = random.Random(83)
    n = 80
    edges, weights = [], []
    for _ in range(300):
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.append((a, b))
            weights.append(round(rng.uniform(0.5, 20.0), 6))
    view = build_view(n, edges, weights)
    result = algos.mst_prim(view)
    pair_weight = {}
    for (a, b), w in zip(edges, weights):
        key = (min(a, b), max(a, b))
        pair_weight[key] = min(w, pair_weight.get(key, float("inf")))
    expected = kruskal_total(n, [(a, b, w) for (a, b), w in pair_weight.items()])
    assert result.extras["total"] == pytest.approx(expected, abs=1e-9)


def test_mst_distinct_weights_unique_total():
    rng = random.Random(89)
    n = 30
    seen = set()
    edges, weights = [], []
    for _ in range(120):
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b and (min(a, b), max(a, b)) not in seen:
            seen.add((min(a, b), max(a, b)))
            edges.append((a, b))
            weights.append(rng.uniform(1, 100))
    view = build_view(n, edges, weights)
    total = algos.mst_prim(view).extras["total"]
    expected = kruskal_total(n, [(a, b, w) for (a, b), w in zip(edges, weights)])
    assert total == expected


# --- PCA -----------------------------------------------------------------------

def test_pca_collinear_points():
    t = np.linspace(-3, 3, 40)
    data = np.stack([t, 2 * t], axis=1)
    result = algos.pca(data, 1)
    assert result.explained_variance_ratio[0] == pytest.approx(1.0, abs=1e-9)
    direction = result.components[:, 0]
    expected = np.array([1.0, 2.0]) / math.sqrt(5)
    assert np.allclose(np.abs(direction @ expected), 1.0, atol=1e-9)


def test_pca_method_selection_threshold():
    rng = np.random.default_rng(5)
    big = rng.standard_normal((600, 8))
    small = rng.standard_normal((400, 8))
    assert algos.pca(big, 2).method == "randomized"
    assert algos.pca(small, 2).method == "power"


def test_pca_subspace_angle_vs_eigendecomposition():
    rng = np.random.default_rng(11)
    # well-separated spectrum
    scales = np.array([20.0, 14.0, 9.0, 6.0, 4.0] + [0.5] * 45)
    data = rng.standard_normal((1000, 50)) * scales
    result = algos.pca(data, 5, seed=3)
    expected, _ = principal_subspace(data, 5)
    assert subspace_angle(result.components, expected) <= 1e-3


def test_pca_components_orthonormal():
    rng = np.random.default_rng(13)
    data = rng.standard_normal((300, 12))
    result = algos.pca(data, 6)
    gram = result.components.T @ result.components
    assert np.allclose(gram, np.eye(6), atol=1e-8)


def test_pca_full_rank_reconstruction():
    rng = np.random.default_rng(17)
    for n in (200, 700):  # both method paths
        data = rng.standard_normal((n, 10))
        centered = data - data.mean(axis=0)
        result = algos.pca(data, 10)
        recon = result.projected @ result.components.T
        rel = np.linalg.norm(recon - centered) / np.linalg.norm(centered)
        assert rel <= 1e-6


def test_pca_sign_convention():
    rng = np.random.default_rng(19)
    data = rng.standard_normal((100, 6))
    result = algos.pca(data, 3)
    for j in range(3):
        col = result.components[:, j]
        assert col[np.argmax(np.abs(col))] > 0


def test_pca_degenerate_inputs():
    from grafito.errors import DegenerateInputError
    with pytest.raises(DegenerateInputError):
        algos.pca(np.zeros((1, 3)), 1)
    result = algos.pca(np.ones((10, 3)), 2)
    assert result.degenerate
    assert result.explained_variance.tolist() == [0.0, 0.0]


def test_pca_deterministic():
    rng = np.random.default_rng(23)
    data = rng.standard_normal((800, 20))
    a = algos.pca(data, 4, seed=7)
    b = algos.pca(data, 4, seed=7)
    assert a.components.tobytes() == b.components.tobytes()
    assert a.projected.tobytes() == b.projected.tobytes()


# --- cross-cutting determinism ---------------------------------------------------

def test_algorithms_bit_identical_across_runs():
    view = random_view(97, 400, 2000, weighted=True, reverse=True)
    pairs = [
        lambda: algos.page_rank(view, 0.85, iterations=10).values.tobytes(),
        lambda: algos.wcc(view).values.tobytes(),
        lambda: algos.scc(view).values.tobytes(),
        lambda: algos.cdlp(view, 3).values.tobytes(),
        lambda: algos.lcc(view).values.tobytes(),
        lambda: algos.triangle_count(view).values.tobytes(),
        lambda: algos.bfs(view, 0).values.tobytes(),
        lambda: algos.sssp_dijkstra(view, 0).values.tobytes(),
        lambda: algos.bfs_all_shortest_paths(view, 0).extras["counts"].tobytes(),
    ]
    for fn in pairs:
        assert fn() == fn()
