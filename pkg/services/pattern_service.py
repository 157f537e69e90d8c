# services/pattern_service.py
"""
Generators for the pattern families and for the Λ(T) family.

Canonical layouts (all ids consecutive from 0):
    wheel(r)          rim 0..r-1 in cycle order, hub r
    double_wheel(r)   rim 0..r-1, hubs o1 = r and o2 = r+1
    xi(r)             x_i = i, y_i = r+i, z_i = 2r+i
    yurt(k)           bottom x_i = i, top y_i = k+i, apex o = 2k
    comb(r)           spine p_i = i, tooth v_i = r+i
    ladder(k)         bottom i, top k+i
    binary tree B_h   heap order: root 0, children of i are 2i+1 and 2i+2
    h_star(T)         T on 0..n-1, path on n..2n-1, bridge {0, n}
    double_path(l, π) path on 0..2l-1, middle 2l+i joins i and l+π(i)
    lambda_build      tree on 0..m-1, path on m..m+len-1, apex m+len
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from core.exceptions import InvalidGraphError, PreconditionError
from models.graph import Graph, VertexPath
from models.lambda_instance import LambdaInstance, ceil_sqrt
from schemas.pattern import LambdaMembership
from services.graph_service import GraphService

logger = logging.getLogger(__name__)


class PatternService:

    # ---------- families ----------
    @staticmethod
    def wheel(r: int) -> Graph:
        if r < 3:
            raise PreconditionError(f"wheel order must be > 2, got {r}")
        edges = [(i, (i + 1) % r) for i in range(r)]
        edges += [(i, r) for i in range(r)]
        return Graph(range(r + 1), edges)

    @staticmethod
    def double_wheel(r: int) -> Graph:
        if r < 3:
            raise PreconditionError(f"double wheel order must be > 2, got {r}")
        edges = [(i, (i + 1) % r) for i in range(r)]
        edges += [(i, r) for i in range(r)]
        edges += [(i, r + 1) for i in range(r)]
        return Graph(range(r + 2), edges)

    @staticmethod
    def xi(r: int) -> Graph:
        if r < 1:
            raise PreconditionError(f"xi order must be >= 1, got {r}")
        edges = []
        for i in range(r - 1):
            edges.append((i, i + 1))
            edges.append((2 * r + i, 2 * r + i + 1))
        for i in range(r):
            edges.append((i, r + i))
            edges.append((r + i, 2 * r + i))
        return Graph(range(3 * r), edges)

    @staticmethod
    def yurt(k: int) -> Graph:
        if k < 1:
            raise PreconditionError(f"yurt order must be >= 1, got {k}")
        apex = 2 * k
        edges = [(i, k + i) for i in range(k)] + [(k + i, apex) for i in range(k)]
        for i in range(k - 1):
            edges.append((i, i + 1))
            edges.append((k + i, k + i + 1))
        return Graph(range(2 * k + 1), edges)

    @staticmethod
    def ladder(k: int) -> Graph:
        if k < 1:
            raise PreconditionError(f"ladder length must be >= 1, got {k}")
        edges = [(i, k + i) for i in range(k)]
        for i in range(k - 1):
            edges.append((i, i + 1))
            edges.append((k + i, k + i + 1))
        return Graph(range(2 * k), edges)

    @staticmethod
    def comb(r: int) -> Graph:
        if r < 1:
            raise PreconditionError(f"comb needs at least one tooth, got {r}")
        edges = [(i, i + 1) for i in range(r - 1)] + [(i, r + i) for i in range(r)]
        return Graph(range(2 * r), edges)

    @staticmethod
    def complete_binary_tree(h: int) -> Graph:
        if h < 0:
            raise PreconditionError(f"tree height must be >= 0, got {h}")
        n = 2 ** (h + 1) - 1
        return Graph(range(n), ((i, (i - 1) // 2) for i in range(1, n)))

    @staticmethod
    def binary_tree_leaves(h: int) -> List[int]:
        return list(range(2 ** h - 1, 2 ** (h + 1) - 1))

    @staticmethod
    def h_star(tree: Graph) -> Graph:
        """The tree, a path on as many vertices, and one bridge between them."""
        GraphService.require_tree(tree)
        t, _ = GraphService.relabel_consecutive(tree)
        n = t.order
        edges = list(t.edges) + [(n + i, n + i + 1) for i in range(n - 1)] + [(0, n)]
        return Graph(range(2 * n), edges)

    @staticmethod
    def double_path(p_len: int, linkage_perm: Sequence[int]) -> Graph:
        if p_len < 1:
            raise PreconditionError(f"double path needs p_len >= 1, got {p_len}")
        if sorted(linkage_perm) != list(range(p_len)):
            raise PreconditionError(f"linkage must be a permutation of 0..{p_len - 1}")
        edges = [(i, i + 1) for i in range(2 * p_len - 1)]
        for i, j in enumerate(linkage_perm):
            middle = 2 * p_len + i
            edges.append((i, middle))
            edges.append((middle, p_len + j))
        return Graph(range(3 * p_len), edges)

    # ---------- Λ(T) ----------
    @staticmethod
    def lambda_build(tree: Graph, path_len: int, matching_perm: Sequence[int]) -> LambdaInstance:
        """matching_perm[i] is the leaf of `tree` matched to the i-th path vertex."""
        GraphService.require_tree(tree)
        t, relabel = GraphService.relabel_consecutive(tree)
        leaves = GraphService.tree_metrics(tree).leaves if tree.order > 1 else frozenset()
        need = ceil_sqrt(len(leaves))
        if path_len < max(need, 1):
            raise PreconditionError(
                f"path of {path_len} vertices is shorter than ceil(sqrt(|leaves|)) = {need}"
            )
        if len(matching_perm) != path_len:
            raise PreconditionError(f"matching lists {len(matching_perm)} leaves for {path_len} path vertices")
        if len(set(matching_perm)) != len(matching_perm):
            raise PreconditionError("matching is not injective")
        stray = [x for x in matching_perm if x not in leaves]
        if stray:
            raise PreconditionError(f"matched vertices {stray} are not leaves of the tree")

        m = t.order
        path = VertexPath(range(m, m + path_len))
        matching = tuple((m + i, relabel[leaf]) for i, leaf in enumerate(matching_perm))
        inst = LambdaInstance(tree=t, path=path, apex=m + path_len, matching=matching)
        problems = inst.violations()
        if problems:
            raise PreconditionError(f"instance violates Λ(T): {problems[0]}")
        return inst

    @staticmethod
    def is_in_lambda(h: Graph, tree: Graph) -> LambdaMembership:
        GraphService.require_tree(tree)
        t_leaves = GraphService.tree_metrics(tree).leaves if tree.order > 1 else frozenset()
        p_len = h.order - tree.order - 1
        if p_len < 1:
            return LambdaMembership(member=False, reason=f"{h.order} vertices leave no room for a path and an apex")
        expected_edges = tree.size + 3 * p_len - 1
        if h.size > expected_edges:
            return LambdaMembership(
                member=False,
                reason=f"condition (iii): {h.size} edges, a member on {h.order} vertices has exactly {expected_edges}",
            )
        if h.size < expected_edges:
            return LambdaMembership(
                member=False,
                reason=f"conditions (i)/(ii): {h.size} edges, a member on {h.order} vertices has exactly {expected_edges}",
            )
        if p_len < ceil_sqrt(len(t_leaves)):
            return LambdaMembership(
                member=False, reason=f"path of {p_len} vertices is shorter than ceil(sqrt(|leaves|))"
            )

        nxh = h.to_networkx()
        best_stage, best_reason = -1, "no apex candidate"
        for apex in h.vertex_ids:
            if nxh.degree(apex) != p_len:
                continue
            stage, reason, witness = PatternService._try_apex(h, tree, apex)
            if witness is not None:
                return LambdaMembership(member=True, witness=witness)
            if stage > best_stage:
                best_stage, best_reason = stage, reason
        return LambdaMembership(member=False, reason=best_reason)

    @staticmethod
    def _try_apex(h: Graph, tree: Graph, apex: int):
        nxh = h.to_networkx()
        path_set = set(nxh.adj[apex])
        ph = nxh.subgraph(path_set)
        if not (nx.is_connected(ph) and ph.number_of_edges() == len(path_set) - 1
                and max(d for _, d in ph.degree) <= 2):
            return 0, f"neighbourhood of {apex} does not induce a path", None

        rest = set(h.vertex_ids) - path_set - {apex}
        th = nxh.subgraph(rest)
        if not nx.is_isomorphic(th, tree.to_networkx()):
            return 1, f"removing {apex} and its path leaves no copy of the tree", None

        rest_leaves = {v for v in rest if th.degree(v) == 1} if len(rest) > 1 else set()
        matching: Dict[int, int] = {}
        used = set()
        for p in path_set:
            cross = [x for x in nxh.adj[p] if x in rest]
            if not cross:
                return 2, f"condition (ii): path vertex {p} is unmatched", None
            if len(cross) > 1 or cross[0] in used or cross[0] not in rest_leaves:
                return 2, f"condition (iii): path vertex {p} has extra edges into the tree", None
            matching[p] = cross[0]
            used.add(cross[0])

        ends = sorted(v for v in path_set if ph.degree(v) <= 1)
        order = [ends[0]] if len(path_set) == 1 else nx.shortest_path(ph, ends[0], ends[-1])
        witness = LambdaInstance(
            tree=Graph.from_networkx(th),
            path=VertexPath(order),
            apex=apex,
            matching=tuple((p, matching[p]) for p in order),
        )
        return 3, "", witness
