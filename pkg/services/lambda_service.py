# services/lambda_service.py
"""
Λ(T) members from a separation certificate.

The certificate's left model is of h_star(T): T on 0..n-1, a path on
n..2n-1 and the bridge {0, n}. The linkage paths leaving the branch sets of
leaves of T towards the path are contracted inside U = host[B \\ A] into
marker vertices, a Steiner tree over the markers is reduced to the tree T_U,
and either a long path of T_U or its many leaves become the new path.
"""
import logging
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from core.exceptions import ConstructionError, PreconditionError
from models.certificate import SeparationCertificate
from models.graph import Graph
from models.lambda_instance import ceil_sqrt
from models.minor_model import MinorModel
from schemas.construction import ConstructionResult
from services.graph_service import GraphService
from services.linkage_service import LinkageService
from services.minor_service import require_model
from services.pattern_service import PatternService

logger = logging.getLogger(__name__)


class LambdaService:

    @staticmethod
    def lambda_from_certificate(host: Graph, tree: Graph, cert: SeparationCertificate,
                                budget_ms: Optional[int] = None) -> ConstructionResult:
        GraphService.require_tree(tree)
        if tree.order < 2:
            raise PreconditionError("tree needs at least two vertices")
        t, _ = GraphService.relabel_consecutive(tree)
        n = t.order
        if cert.left_model.pattern != PatternService.h_star(tree):
            raise PreconditionError("left model is not a model of the tree next to a path with one bridge edge")
        LinkageService(budget_ms=budget_ms).require_certificate(host, cert)

        phi = cert.left_model.branch_sets
        owner = cert.left_model.owner_map()
        t_leaves = sorted(GraphService.tree_metrics(t).leaves)

        # linkage paths from leaf branch sets to path branch sets
        interiors: Dict[int, Tuple[int, ...]] = {}
        leaf_partner: Dict[int, int] = {}
        for path in cert.linkage:
            if path.length < 2:
                continue
            a, b = owner.get(path.start), owner.get(path.end)
            if a is None or b is None:
                continue
            if b in t_leaves and a >= n:
                a, b = b, a
            if a in t_leaves and b >= n and a not in interiors:
                interiors[a] = path.interior
                leaf_partner[a] = b
        missing = [x for x in t_leaves if x not in interiors]
        if missing:
            raise PreconditionError(f"no linkage path joins leaf {missing[0]} to the path", witness=missing[0])

        u_vertices = sorted(cert.right_only)
        u_graph, members, marker_leaf = LambdaService._contract_markers(host, u_vertices, interiors)
        steiner = LambdaService._steiner_tree(u_graph, set(marker_leaf))
        t_u, members = LambdaService._dissolve(steiner, members, set(marker_leaf))

        size = len(t_u)
        c = ceil_sqrt(size)
        path_r = LambdaService._diameter_path(t_u)
        internal = [v for v in t_u if t_u.degree(v) > 1]
        case = 1 if len(path_r) - 1 >= c or not internal else 2
        logger.info(f"lambda_from_certificate: T_U has {size} vertices, diameter {len(path_r) - 1}, case {case}")

        p_sets = {x: phi[x] for x in range(n, 2 * n)}
        if case == 1:
            new_path, matched, apex_set = LambdaService._long_path_case(t_u, members, marker_leaf, path_r, p_sets)
        else:
            new_path, matched, apex_set = LambdaService._many_leaves_case(
                t_u, members, marker_leaf, leaf_partner, p_sets, n
            )

        try:
            inst = PatternService.lambda_build(t, len(new_path), matched)
        except PreconditionError as e:
            raise ConstructionError(f"case {case} output is not in Λ(T): {e.detail}") from e
        m = t.order
        sets = {x: phi[x] for x in range(n)}
        for i, bs in enumerate(new_path):
            sets[m + i] = bs
        sets[m + len(new_path)] = apex_set
        h = inst.graph
        model = MinorModel(pattern=h, host=host, branch_sets=sets)
        require_model(host, h, model, "lambda_from_certificate")
        if not PatternService.is_in_lambda(h, t):
            raise ConstructionError("lambda_from_certificate: output is not a member of Λ(T)")

        return ConstructionResult(
            construction="lambda",
            host=host,
            model=model,
            order_achieved=len(new_path),
            order_promised=ceil_sqrt(len(t_leaves)),
            details={"case": case, "t_u_order": size, "t_u_diameter": len(path_r) - 1},
        )

    # ---------- T_U ----------
    @staticmethod
    def _contract_markers(host: Graph, u_vertices: List[int], interiors: Dict[int, Tuple[int, ...]]
                          ) -> Tuple[nx.Graph, Dict[int, FrozenSet[int]], Dict[int, int]]:
        """host[U] with each leaf's linkage interior contracted to one marker named by its smallest vertex."""
        blocks = [frozenset(inner) for inner in interiors.values()]
        taken = frozenset().union(*blocks)
        blocks += [frozenset([v]) for v in u_vertices if v not in taken]
        quotient = nx.quotient_graph(host.to_networkx().subgraph(u_vertices), blocks)
        u_graph = nx.relabel_nodes(quotient, {b: min(b) for b in quotient})
        members = {min(b): b for b in blocks}
        marker_leaf = {min(inner): leaf for leaf, inner in interiors.items()}
        return u_graph, members, marker_leaf

    @staticmethod
    def _steiner_tree(u_graph: nx.Graph, markers: Set[int]) -> nx.Graph:
        """Breadth-first spanning tree with non-marker leaves pruned away."""
        root = min(markers)
        tree = nx.Graph(nx.bfs_tree(u_graph, root, sort_neighbors=sorted))
        if not markers <= set(tree):
            raise ConstructionError("markers are not connected inside host[B \\ A]")

        doomed = [v for v in tree if tree.degree(v) <= 1 and v not in markers]
        while doomed:
            v = doomed.pop()
            if v not in tree:
                continue
            neighbours = list(tree.adj[v])
            tree.remove_node(v)
            doomed += [y for y in neighbours if tree.degree(y) <= 1 and y not in markers]
        return tree

    @staticmethod
    def _dissolve(tree: nx.Graph, members: Dict[int, FrozenSet[int]], markers: Set[int]
                  ) -> Tuple[nx.Graph, Dict[int, FrozenSet[int]]]:
        tree = tree.copy()
        sets = {v: members[v] for v in tree}
        for v in sorted(tree):
            if v in markers or tree.degree(v) != 2:
                continue
            a = min(tree.adj[v])
            sets[a] = sets[a] | sets.pop(v)
            tree = nx.contracted_nodes(tree, a, v, self_loops=False, copy=False)
        return tree, sets

    @staticmethod
    def _diameter_path(tree: nx.Graph) -> List[int]:
        first = nx.single_source_shortest_path_length(tree, min(tree))
        a = min(first, key=lambda x: (-first[x], x))
        second = nx.single_source_shortest_path_length(tree, a)
        b = min(second, key=lambda x: (-second[x], x))
        return nx.shortest_path(tree, b, a)

    # ---------- the two cases ----------
    @staticmethod
    def _long_path_case(t_u: nx.Graph, members: Dict[int, FrozenSet[int]], marker_leaf: Dict[int, int],
                        path_r: List[int], p_sets: Dict[int, FrozenSet[int]]):
        on_r = set(path_r)
        new_path: List[FrozenSet[int]] = []
        matched: List[int] = []
        for r in path_r:
            walk = [r]
            prev = None
            while walk[-1] not in marker_leaf:
                x = walk[-1]
                options = sorted(y for y in t_u.adj[x] if y not in on_r and y != prev)
                if not options:
                    raise ConstructionError(f"vertex {r} of the long path has no marker on its side")
                prev = x
                walk.append(options[0])
            new_path.append(frozenset().union(*(members[x] for x in walk)))
            matched.append(marker_leaf[walk[-1]])
        apex_set = frozenset().union(*p_sets.values())
        return new_path, matched, apex_set

    @staticmethod
    def _many_leaves_case(t_u: nx.Graph, members: Dict[int, FrozenSet[int]], marker_leaf: Dict[int, int],
                          leaf_partner: Dict[int, int], p_sets: Dict[int, FrozenSet[int]], n: int):
        leaves = [v for v in t_u if t_u.degree(v) == 1]
        apex_set = frozenset().union(*(members[v] for v in t_u if t_u.degree(v) > 1))

        # leaves of T_U ordered by where their linkage path lands on the pattern path
        anchor = {leaf_partner[marker_leaf[v]]: v for v in leaves}
        cuts = sorted(anchor)
        new_path: List[FrozenSet[int]] = []
        matched: List[int] = []
        for i, p in enumerate(cuts):
            lo = n if i == 0 else p
            hi = cuts[i + 1] if i + 1 < len(cuts) else 2 * n
            segment = frozenset().union(*(p_sets[x] for x in range(lo, hi)))
            v = anchor[p]
            new_path.append(segment | members[v])
            matched.append(marker_leaf[v])
        return new_path, matched, apex_set
