# tests/test_decompositions.py
import pytest
from hypothesis import given, settings

from core.exceptions import InvalidGraphError, PreconditionError
from models.decomposition import NiceAnnotation, NodeKind, PathDecomposition, TreeDecomposition
from models.graph import Graph
from services.decomposition_service import DecompositionService
from services.pattern_service import PatternService
from services.treewidth_service import TreewidthService
from utils.census import connected_atlas

from tests.factories import complete, cycle, path
from tests.strategies import graphs


# ---------- verify_decomposition ----------
def test_valid_path_decomposition() -> None:
    report = DecompositionService.verify_decomposition(path(3), PathDecomposition.of([[0, 1], [1, 2]]))
    assert report.ok
    assert report.width == 1


def test_uncovered_edge() -> None:
    report = DecompositionService.verify_decomposition(cycle(3), PathDecomposition.of([[0, 1], [1, 2]]))
    assert not report.ok
    assert report.kinds() == ["edge-coverage"]
    assert report.violations[0].witness == [0, 2]


def test_disconnected_support() -> None:
    report = DecompositionService.verify_decomposition(path(3), PathDecomposition.of([[0, 1], [2], [1]]))
    assert "coherence" in report.kinds()
    assert next(v for v in report.violations if v.kind == "coherence").witness == 1


def test_uncovered_vertex_and_stranger() -> None:
    report = DecompositionService.verify_decomposition(path(3), PathDecomposition.of([[0, 1], [1, 5]]))
    assert {"coverage", "membership"} <= set(report.kinds())


def test_tree_decomposition_shape_must_be_a_tree() -> None:
    td = TreeDecomposition(shape=cycle(3), bags={0: frozenset([0, 1]), 1: frozenset([1, 2]), 2: frozenset([2])})
    assert "shape" in DecompositionService.verify_decomposition(path(3), td).kinds()


def test_star_shaped_tree_decomposition() -> None:
    star_graph = Graph(range(4), [(0, 1), (0, 2), (0, 3)])
    td = TreeDecomposition(
        shape=Graph(range(3), [(0, 1), (0, 2)]),
        bags={0: frozenset([0, 1]), 1: frozenset([0, 2]), 2: frozenset([0, 3])},
    )
    report = DecompositionService.verify_decomposition(star_graph, td)
    assert report.ok
    assert report.width == 1


def test_width() -> None:
    assert DecompositionService.width(PathDecomposition.of([[0, 1], [1, 2]])) == 1
    assert DecompositionService.width(PathDecomposition.of([range(6)]), complete(6)) == 5
    with pytest.raises(InvalidGraphError):
        DecompositionService.width(PathDecomposition.of([[0, 1]]), path(3))


def test_path_to_tree_decomposition() -> None:
    td = PathDecomposition.of([[0, 1], [1, 2], [2, 3]]).to_tree_decomposition()
    assert td.shape == path(3)
    assert td.width == 1


# ---------- nice decompositions ----------
def test_make_nice_on_path() -> None:
    nice, annotation = DecompositionService.make_nice(path(3), PathDecomposition.of([[0, 1], [1, 2]]))
    assert len(nice.bags) == 6
    assert nice.bags[-1] == frozenset()
    assert nice.width == 1
    assert annotation.count(NodeKind.INTRODUCE) == 3
    assert annotation.count(NodeKind.FORGET) == 3
    assert DecompositionService.verify_decomposition(path(3), nice).ok


def test_make_nice_on_single_vertex() -> None:
    nice, annotation = DecompositionService.make_nice(Graph([0]), PathDecomposition.of([[0]]))
    assert nice.as_lists() == [[0], []]
    assert annotation.node_kinds == (NodeKind.INTRODUCE, NodeKind.FORGET)


def test_make_nice_rejects_invalid_input() -> None:
    with pytest.raises(InvalidGraphError):
        DecompositionService.make_nice(cycle(3), PathDecomposition.of([[0, 1], [1, 2]]))


def test_annotation_rejects_non_nice_bags() -> None:
    with pytest.raises(InvalidGraphError):
        NiceAnnotation.from_bags((frozenset([0]), frozenset([1, 2])))
    with pytest.raises(InvalidGraphError):
        NiceAnnotation.from_bags((frozenset([0, 1]),))


def test_swap_forget_introduce() -> None:
    p = PathDecomposition.of([[0], [0, 1], [1], [1, 2]])
    swapped = DecompositionService.swap_forget_introduce(p, 3)
    assert swapped.as_lists() == [[0], [0, 1], [0, 1, 2], [1, 2]]
    kinds = NiceAnnotation.from_bags(swapped.bags).node_kinds
    assert kinds == (NodeKind.INTRODUCE, NodeKind.INTRODUCE, NodeKind.INTRODUCE, NodeKind.FORGET)


@pytest.mark.parametrize("i", [1, 2, 4])
def test_swap_at_illegal_position(i: int) -> None:
    with pytest.raises(PreconditionError):
        DecompositionService.swap_forget_introduce(PathDecomposition.of([[0], [0, 1], [1], [1, 2]]), i)


@settings(max_examples=60, deadline=None)
@given(graphs(min_order=1, max_order=8))
def test_make_nice_keeps_width_and_validity(g: Graph) -> None:
    pw, pd = TreewidthService().exact_pathwidth(g)
    nice, annotation = DecompositionService.make_nice(g, pd)
    assert DecompositionService.verify_decomposition(g, nice).ok
    assert nice.width == pw
    assert len(nice.bags) == 2 * g.order
    assert annotation.count(NodeKind.INTRODUCE) == annotation.count(NodeKind.FORGET) == g.order


# ---------- compact decompositions ----------
def test_compactify_path() -> None:
    compact = DecompositionService.compactify(path(4), PathDecomposition.of([[0, 1], [1, 2], [2, 3]]))
    assert compact.as_lists() == [[0, 1], [1, 2], [2, 3]]


def test_compactify_cycle() -> None:
    _, pd = TreewidthService().exact_pathwidth(cycle(4))
    compact = DecompositionService.compactify(cycle(4), pd)
    assert len(compact.bags) == 2
    assert all(len(b) == 3 for b in compact.bags)
    assert DecompositionService.is_compact(cycle(4), compact)


def test_compactify_xi() -> None:
    g = PatternService.xi(4)
    _, pd = TreewidthService().exact_pathwidth(g)
    compact = DecompositionService.compactify(g, pd)
    assert len(compact.bags) == 10
    assert all(len(b) == 3 for b in compact.bags)
    assert compact.width == 2


def test_compactify_rejects_non_optimal_width() -> None:
    with pytest.raises(PreconditionError) as e:
        DecompositionService.compactify(path(3), PathDecomposition.of([[0, 1, 2]]))
    assert "pathwidth is 1" in e.value.detail


@pytest.mark.parametrize("n", range(1, 7))
def test_compactify_on_every_small_connected_graph(n: int) -> None:
    solver = TreewidthService()
    for _, g in connected_atlas(n, min_order=n):
        pw, pd = solver.exact_pathwidth(g)
        compact = DecompositionService.compactify(g, pd, assume_optimal=True)
        assert DecompositionService.verify_decomposition(g, compact).ok
        assert all(len(b) == pw + 1 for b in compact.bags)
        assert len(compact.bags) == g.order - pw
        assert DecompositionService.is_compact(g, compact)
