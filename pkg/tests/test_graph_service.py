# tests/test_graph_service.py
import random

import pytest
from hypothesis import given, settings

from core.exceptions import InvalidGraphError
from models.graph import Graph, VertexPath
from services.graph_service import GraphService
from services.pattern_service import PatternService
from utils.census import random_tree, trees as all_trees

from tests.factories import complete, cycle, path, star
from tests.strategies import graphs, trees


# ---------- make_graph ----------
def test_make_graph_path() -> None:
    g = GraphService.make_graph(3, [(0, 1), (1, 2)])
    assert (g.order, g.size) == (3, 2)


def test_make_graph_single_vertex() -> None:
    g = GraphService.make_graph(1, [])
    assert g.vertex_ids == (0,)
    assert g.size == 0


def test_make_graph_collapses_duplicate_pairs() -> None:
    g = GraphService.make_graph(4, [(0, 1), (0, 1), (1, 2), (2, 3), (3, 0)])
    assert g == cycle(4)


def test_make_graph_rejects_loops() -> None:
    with pytest.raises(InvalidGraphError) as e:
        GraphService.make_graph(3, [(0, 1), (2, 2)])
    assert e.value.witness == (2, 2)


def test_make_graph_rejects_out_of_range_ids() -> None:
    with pytest.raises(InvalidGraphError):
        GraphService.make_graph(3, [(0, 3)])


def test_graph_is_immutable() -> None:
    g = path(3)
    with pytest.raises(Exception):
        g.to_networkx().add_edge(0, 2)


# ---------- minor operations ----------
def test_contract_cycle_edge() -> None:
    g = GraphService.contract_edge(cycle(4), (1, 0))
    assert g.vertex_ids == (0, 2, 3)
    assert g.edges == {(0, 2), (2, 3), (0, 3)}


def test_contract_path_edge() -> None:
    g = GraphService.contract_edge(path(3), (0, 1))
    assert g.vertex_ids == (0, 2)
    assert g.edges == {(0, 2)}


def test_contract_clique_edge() -> None:
    g = GraphService.contract_edge(complete(4), (2, 3))
    assert g.order == 3
    assert g.size == 3


def test_contract_missing_edge() -> None:
    with pytest.raises(InvalidGraphError) as e:
        GraphService.contract_edge(path(3), (0, 2))
    assert "(0, 2)" in e.value.detail


@given(graphs(min_order=2, max_order=9, connected=True))
def test_contraction_drops_exactly_one_vertex(g: Graph) -> None:
    for e in g.sorted_edges():
        h = GraphService.contract_edge(g, e)
        assert h.order == g.order - 1
        assert all(u != v for u, v in h.edges)
        assert h.size <= g.size - 1


def test_dissolve_path_middle() -> None:
    g = GraphService.dissolve_vertex(path(3), 1)
    assert g.vertex_ids == (0, 2)
    assert g.edges == {(0, 2)}


def test_dissolve_cycle_vertex() -> None:
    g = GraphService.dissolve_vertex(cycle(4), 2)
    assert (g.order, g.size) == (3, 3)


def test_dissolve_triangle_vertex_collapses_parallel_edge() -> None:
    g = GraphService.dissolve_vertex(cycle(3), 0)
    assert g.vertex_ids == (1, 2)
    assert g.edges == {(1, 2)}


def test_dissolve_needs_degree_two() -> None:
    with pytest.raises(InvalidGraphError):
        GraphService.dissolve_vertex(star(3), 0)


@given(graphs(min_order=2, max_order=8))
def test_subdivide_then_dissolve_restores_edges(g: Graph) -> None:
    new = g.order
    for u, v in g.sorted_edges():
        rest = [e for e in g.edges if e != (u, v)]
        subdivided = Graph(list(g.vertex_ids) + [new], rest + [(u, new), (new, v)])
        assert GraphService.dissolve_vertex(subdivided, new) == g


def test_delete_vertex_from_clique() -> None:
    assert GraphService.delete_vertices(complete(4), [3]) == complete(3)


def test_delete_middle_of_path() -> None:
    g = GraphService.delete_vertices(path(5), [2])
    assert GraphService.connected_components(g) == [frozenset({0, 1}), frozenset({3, 4})]


def test_delete_nothing_is_identity() -> None:
    g = cycle(5)
    assert GraphService.delete_vertices(g, []) == g
    assert GraphService.delete_edges(g, []) == g


def test_delete_unknown_vertex() -> None:
    with pytest.raises(InvalidGraphError):
        GraphService.delete_vertices(path(3), [7])


def test_delete_edges() -> None:
    g = GraphService.delete_edges(cycle(4), [(3, 0)])
    assert g == path(4)
    with pytest.raises(InvalidGraphError):
        GraphService.delete_edges(path(4), [(0, 3)])


def test_relabel_consecutive_keeps_order() -> None:
    g = Graph([3, 7, 10], [(3, 10), (7, 10)])
    flat, mapping = GraphService.relabel_consecutive(g)
    assert mapping == {3: 0, 7: 1, 10: 2}
    assert flat.edges == {(0, 2), (1, 2)}


# ---------- connectivity ----------
def test_cycle_is_connected() -> None:
    assert GraphService.is_connected(cycle(6))


def test_two_triangles() -> None:
    g = Graph(range(6), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not GraphService.is_connected(g)
    assert len(GraphService.connected_components(g)) == 2


def test_single_vertex_and_empty_graph_are_connected() -> None:
    assert GraphService.is_connected(Graph([0]))
    assert GraphService.is_connected(Graph([]))


@given(graphs())
def test_components_partition_vertices(g: Graph) -> None:
    parts = GraphService.connected_components(g)
    seen = [v for part in parts for v in part]
    assert sorted(seen) == list(g.vertex_ids)
    assert GraphService.is_connected(g) == (len(parts) <= 1)


# ---------- trees ----------
def test_tree_metrics_path() -> None:
    m = GraphService.tree_metrics(path(5))
    assert m.leaves == {0, 4}
    assert m.diameter == 4


def test_tree_metrics_star() -> None:
    m = GraphService.tree_metrics(star(4))
    assert len(m.leaves) == 4
    assert m.diameter == 2


def test_tree_metrics_binary_tree() -> None:
    m = GraphService.tree_metrics(PatternService.complete_binary_tree(3))
    assert len(m.leaves) == 8
    assert m.diameter == 6


def test_tree_metrics_rejects_cycles_and_forests() -> None:
    with pytest.raises(InvalidGraphError) as e:
        GraphService.tree_metrics(cycle(4))
    assert "cycle" in e.value.detail
    with pytest.raises(InvalidGraphError) as e:
        GraphService.tree_metrics(Graph(range(3), [(0, 1)]))
    assert "disconnected" in e.value.detail


def test_lca() -> None:
    assert GraphService.lca(path(3), 0, 1, 2) == 1
    assert GraphService.lca(star(4), 0, 1, 3) == 0
    assert GraphService.lca(PatternService.complete_binary_tree(3), 0, 7, 14) == 0
    assert GraphService.lca(PatternService.complete_binary_tree(3), 0, 7, 8) == 3


def test_tree_path() -> None:
    assert GraphService.tree_path(PatternService.complete_binary_tree(2), 3, 6) == VertexPath([3, 1, 0, 2, 6])


@pytest.mark.parametrize("n", range(1, 10))
def test_leaf_diameter_bound_on_every_small_tree(n: int) -> None:
    for t in all_trees(n):
        assert GraphService.leaf_diameter_bound_holds(t)


def test_leaf_diameter_bound_on_random_trees() -> None:
    rng = random.Random(2024)
    for _ in range(1000):
        assert GraphService.leaf_diameter_bound_holds(random_tree(rng.randint(2, 50), rng))


@settings(max_examples=200)
@given(trees(min_order=2))
def test_leaf_diameter_bound(t: Graph) -> None:
    m = GraphService.tree_metrics(t)
    assert len(m.leaves) * m.diameter + 1 >= t.order
