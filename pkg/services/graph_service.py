# services/graph_service.py
import logging
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple, FrozenSet

import networkx as nx

from core.exceptions import InvalidGraphError
from models.graph import Edge, Graph, VertexPath, normalize_edge

logger = logging.getLogger(__name__)


class TreeMetrics(NamedTuple):
    leaves: FrozenSet[int]
    diameter: int


class GraphService:
    """Elementary minor operations on immutable graphs."""

    # ---------- construction ----------
    @staticmethod
    def make_graph(n_vertices: int, edge_list: Iterable[Sequence[int]]) -> Graph:
        if n_vertices < 0:
            raise InvalidGraphError(f"vertex count must be non-negative, got {n_vertices}")
        pairs = []
        for pair in edge_list:
            if len(pair) != 2:
                raise InvalidGraphError(f"edge {pair!r} is not a pair", witness=tuple(pair))
            u, v = int(pair[0]), int(pair[1])
            if u == v:
                raise InvalidGraphError(f"loop pair ({u}, {v})", witness=(u, v))
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise InvalidGraphError(
                    f"pair ({u}, {v}) references an id outside [0, {n_vertices})", witness=(u, v)
                )
            pairs.append((u, v))
        return Graph(range(n_vertices), pairs)

    # ---------- minor operations ----------
    @staticmethod
    def contract_edge(g: Graph, e: Sequence[int]) -> Graph:
        u, v = e
        if not g.has_edge(u, v):
            raise InvalidGraphError(f"edge ({u}, {v}) is not in the graph", witness=(u, v))
        survivor, gone = normalize_edge(u, v)
        edges = [(a, b) for a, b in g.edges if gone not in (a, b)]
        edges.extend((survivor, w) for w in g.neighbors(gone) if w != survivor)
        return Graph((x for x in g.vertex_ids if x != gone), edges)

    @staticmethod
    def dissolve_vertex(g: Graph, v: int) -> Graph:
        if g.degree(v) != 2:
            raise InvalidGraphError(f"vertex {v} has degree {g.degree(v)}, dissolving needs 2", witness=v)
        a, b = sorted(g.neighbors(v))
        edges = [(x, y) for x, y in g.edges if v not in (x, y)]
        edges.append((a, b))
        return Graph((x for x in g.vertex_ids if x != v), edges)

    @staticmethod
    def delete_vertices(g: Graph, vs: Iterable[int]) -> Graph:
        doomed = set(vs)
        unknown = [v for v in doomed if v not in g]
        if unknown:
            raise InvalidGraphError(f"unknown vertices {sorted(unknown)}", witness=sorted(unknown))
        if not doomed:
            return g
        return GraphService.induced_subgraph(g, (v for v in g.vertex_ids if v not in doomed))

    @staticmethod
    def delete_edges(g: Graph, es: Iterable[Sequence[int]]) -> Graph:
        doomed = set()
        for u, v in es:
            if not g.has_edge(u, v):
                raise InvalidGraphError(f"edge ({u}, {v}) is not in the graph", witness=(u, v))
            doomed.add(normalize_edge(u, v))
        if not doomed:
            return g
        return Graph(g.vertex_ids, (e for e in g.edges if e not in doomed))

    @staticmethod
    def add_edges(g: Graph, es: Iterable[Sequence[int]]) -> Graph:
        return Graph(g.vertex_ids, list(g.edges) + [tuple(e) for e in es])

    @staticmethod
    def induced_subgraph(g: Graph, vs: Iterable[int]) -> Graph:
        keep = set(vs)
        unknown = [v for v in keep if v not in g]
        if unknown:
            raise InvalidGraphError(f"unknown vertices {sorted(unknown)}", witness=sorted(unknown))
        return Graph.from_networkx(g.to_networkx().subgraph(keep))

    @staticmethod
    def relabel_consecutive(g: Graph) -> Tuple[Graph, Dict[int, int]]:
        """Order-preserving relabel onto 0..n-1; returns the new graph and old -> new ids."""
        mapping = {v: i for i, v in enumerate(g.vertex_ids)}
        return Graph(range(g.order), ((mapping[u], mapping[v]) for u, v in g.edges)), mapping

    # ---------- connectivity ----------
    @staticmethod
    def is_connected(g: Graph) -> bool:
        if g.order <= 1:
            return True
        return nx.is_connected(g.to_networkx())

    @staticmethod
    def connected_components(g: Graph) -> List[FrozenSet[int]]:
        parts = [frozenset(c) for c in nx.connected_components(g.to_networkx())]
        return sorted(parts, key=min)

    @staticmethod
    def is_connected_subset(g: Graph, vs: Iterable[int]) -> bool:
        part = set(vs)
        if len(part) <= 1:
            return True
        return nx.is_connected(g.to_networkx().subgraph(part))

    # ---------- trees ----------
    @staticmethod
    def tree_violation(t: Graph) -> str:
        """Empty string when t is a tree, otherwise the reason it is not."""
        if t.order == 0:
            return "empty graph is not a tree"
        if not GraphService.is_connected(t):
            return "disconnected"
        if t.size != t.order - 1:
            cycle = nx.find_cycle(t.to_networkx())
            return f"cycle found through {sorted({u for u, _ in cycle})}"
        return ""

    @staticmethod
    def require_tree(t: Graph) -> None:
        reason = GraphService.tree_violation(t)
        if reason:
            raise InvalidGraphError(f"not a tree: {reason}")

    @staticmethod
    def tree_metrics(t: Graph) -> TreeMetrics:
        GraphService.require_tree(t)
        nxt = t.to_networkx()
        leaves = frozenset(v for v in t.vertex_ids if nxt.degree(v) == 1)

        # two breadth-first sweeps are exact on trees
        first = nx.single_source_shortest_path_length(nxt, t.vertex_ids[0])
        far = max(first, key=lambda x: (first[x], -x))
        second = nx.single_source_shortest_path_length(nxt, far)
        return TreeMetrics(leaves=leaves, diameter=max(second.values()))

    @staticmethod
    def lca(t: Graph, root: int, u: int, v: int) -> int:
        GraphService.require_tree(t)
        for x in (root, u, v):
            if x not in t:
                raise InvalidGraphError(f"unknown vertex {x}", witness=x)
        nxt = t.to_networkx()
        v_side = set(nx.shortest_path(nxt, v, root))
        for x in nx.shortest_path(nxt, u, root):
            if x in v_side:
                return x
        raise InvalidGraphError("root is not reachable")  # unreachable on trees

    @staticmethod
    def tree_path(t: Graph, u: int, v: int) -> VertexPath:
        return VertexPath(nx.shortest_path(t.to_networkx(), u, v))

    @staticmethod
    def leaf_diameter_bound_holds(t: Graph) -> bool:
        metrics = GraphService.tree_metrics(t)
        return len(metrics.leaves) * metrics.diameter + 1 >= t.order
