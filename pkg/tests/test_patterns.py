# tests/test_patterns.py
import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from core.exceptions import PreconditionError
from models.graph import Graph
from schemas.model import MinorOutcome
from schemas.pattern import LambdaMembership
from services.graph_service import GraphService
from services.minor_service import MinorService
from services.pattern_service import PatternService

from tests.factories import complete, path


def _iso(a: Graph, b: nx.Graph) -> bool:
    return nx.is_isomorphic(a.to_networkx(), b)


# ---------- wheels ----------
def test_wheel_counts() -> None:
    g = PatternService.wheel(6)
    assert (g.order, g.size) == (7, 12)
    assert g.degree(6) == 6


def test_smallest_wheel_is_k4() -> None:
    assert PatternService.wheel(3) == complete(4)


def test_wheel_needs_order_above_two() -> None:
    with pytest.raises(PreconditionError):
        PatternService.wheel(2)


def test_double_wheel_counts() -> None:
    g = PatternService.double_wheel(6)
    assert (g.order, g.size) == (8, 18)
    assert not g.has_edge(6, 7)


def test_smallest_double_wheel_is_k5_minus_hub_edge() -> None:
    g = PatternService.double_wheel(3)
    assert g == GraphService.delete_edges(complete(5), [(3, 4)])


def test_double_wheel_needs_order_above_two() -> None:
    with pytest.raises(PreconditionError):
        PatternService.double_wheel(1)


@pytest.mark.parametrize("r", range(3, 21))
def test_double_wheel_contains_wheel(r: int) -> None:
    assert GraphService.delete_vertices(PatternService.double_wheel(r), [r + 1]) == PatternService.wheel(r)


@pytest.mark.parametrize("r", range(3, 8))
def test_every_wheel_contains_the_smaller_one(r: int) -> None:
    found = MinorService().is_minor(PatternService.wheel(r), PatternService.wheel(r + 1))
    assert found.outcome == MinorOutcome.FOUND


# ---------- grids ----------
def test_xi_counts() -> None:
    g = PatternService.xi(5)
    assert (g.order, g.size) == (15, 18)


def test_small_xi() -> None:
    assert PatternService.xi(1) == path(3)
    assert _iso(PatternService.xi(2), nx.cycle_graph(6))


def test_yurt_counts() -> None:
    assert (PatternService.yurt(5).order, PatternService.yurt(5).size) == (11, 18)
    assert (PatternService.yurt(2).order, PatternService.yurt(2).size) == (5, 6)
    assert _iso(PatternService.yurt(1), nx.path_graph(3))


@pytest.mark.parametrize("k", range(1, 12))
def test_yurt_minus_apex_is_the_ladder(k: int) -> None:
    assert GraphService.delete_vertices(PatternService.yurt(k), [2 * k]) == PatternService.ladder(k)


@given(st.integers(min_value=1, max_value=200))
def test_generator_counts(r: int) -> None:
    assert (PatternService.xi(r).order, PatternService.xi(r).size) == (3 * r, 2 * (r - 1) + 2 * r)
    assert (PatternService.yurt(r).order, PatternService.yurt(r).size) == (2 * r + 1, 4 * r - 2)
    assert (PatternService.comb(r).order, PatternService.comb(r).size) == (2 * r, 2 * r - 1)
    if r >= 3:
        assert (PatternService.wheel(r).order, PatternService.wheel(r).size) == (r + 1, 2 * r)
        assert (PatternService.double_wheel(r).order, PatternService.double_wheel(r).size) == (r + 2, 3 * r)


# ---------- trees ----------
def test_comb() -> None:
    assert (PatternService.comb(3).order, PatternService.comb(3).size) == (6, 5)
    assert PatternService.comb(1) == path(2)
    # spine end 0 carries a tooth, so only the teeth are leaves
    assert GraphService.tree_metrics(PatternService.comb(4)).leaves == {4, 5, 6, 7}


def test_complete_binary_tree() -> None:
    assert PatternService.complete_binary_tree(0) == Graph([0])
    b3 = PatternService.complete_binary_tree(3)
    assert b3.order == 15
    assert sorted(GraphService.tree_metrics(b3).leaves) == PatternService.binary_tree_leaves(3)
    b5 = PatternService.complete_binary_tree(5)
    assert b5.order == 63
    assert GraphService.tree_metrics(b5).diameter == 10


@pytest.mark.parametrize("h", range(0, 16))
def test_binary_tree_counts(h: int) -> None:
    t = PatternService.complete_binary_tree(h)
    assert t.order == 2 ** (h + 1) - 1
    assert GraphService.tree_violation(t) == ""


def test_h_star_and_double_path() -> None:
    g = PatternService.h_star(path(3))
    assert (g.order, g.size) == (6, 5)
    assert g.has_edge(0, 3)
    d = PatternService.double_path(3, [2, 0, 1])
    assert (d.order, d.size) == (9, 11)
    assert d.has_edge(6, 0) and d.has_edge(6, 5)
    with pytest.raises(PreconditionError):
        PatternService.double_path(3, [0, 0, 1])


# ---------- Λ(T) ----------
def test_lambda_build_minimum_path() -> None:
    inst = PatternService.lambda_build(PatternService.comb(4), 2, [5, 7])
    assert inst.violations() == []
    assert inst.matching == ((8, 5), (9, 7))
    assert inst.apex == 10
    g = inst.graph
    assert (g.order, g.size) == (11, 7 + 1 + 2 + 2)


def test_lambda_build_saturating_all_leaves() -> None:
    tree = PatternService.complete_binary_tree(3)
    inst = PatternService.lambda_build(tree, 8, PatternService.binary_tree_leaves(3))
    assert inst.violations() == []
    assert {leaf for _, leaf in inst.matching} == inst.leaves


def test_lambda_build_path_too_short() -> None:
    with pytest.raises(PreconditionError) as e:
        PatternService.lambda_build(PatternService.complete_binary_tree(3), 2, [7, 8])
    assert "ceil(sqrt" in e.value.detail


def test_lambda_build_rejects_non_injective_matching() -> None:
    with pytest.raises(PreconditionError):
        PatternService.lambda_build(PatternService.comb(4), 2, [5, 5])
    with pytest.raises(PreconditionError):
        PatternService.lambda_build(PatternService.comb(4), 2, [0, 5])


def test_is_in_lambda_recognises_built_instance() -> None:
    tree = PatternService.comb(4)
    inst = PatternService.lambda_build(tree, 2, [5, 7])
    found = PatternService.is_in_lambda(inst.graph, tree)
    assert found
    assert found.witness.apex == inst.apex


def test_wheel_is_not_in_lambda() -> None:
    assert not PatternService.is_in_lambda(PatternService.wheel(6), PatternService.comb(2))


def test_membership_outcome_is_a_frozen_schema() -> None:
    tree = PatternService.comb(4)
    found = PatternService.is_in_lambda(PatternService.lambda_build(tree, 2, [5, 7]).graph, tree)
    assert isinstance(found, LambdaMembership)
    assert found.model_dump(exclude={"witness"}) == {"member": True, "reason": ""}
    with pytest.raises(ValidationError):
        found.member = False
    missed = PatternService.is_in_lambda(PatternService.wheel(6), tree)
    assert missed == LambdaMembership(member=False, reason=missed.reason)
    assert missed.witness is None


def test_extra_tree_path_edge_breaks_membership() -> None:
    tree = PatternService.comb(4)
    inst = PatternService.lambda_build(tree, 2, [5, 7])
    g = GraphService.add_edges(inst.graph, [(0, 8)])
    found = PatternService.is_in_lambda(g, tree)
    assert not found
    assert "condition (iii)" in found.reason


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(11)))
def test_is_in_lambda_ignores_vertex_names(perm) -> None:
    tree = PatternService.comb(4)
    flat = PatternService.lambda_build(tree, 2, [4, 6]).graph
    renamed = Graph(range(11), ((perm[u], perm[v]) for u, v in flat.edges))
    assert PatternService.is_in_lambda(renamed, tree)
