# services/wheel_service.py
"""
Wheel and double wheel models.

Tree-plus-path host layout for height h (N = 2^h leaves):
    B_h on 0..2^{h+1}-2 in heap order, path p_j = 2^{h+1}-1+j for j in 0..N-1,
    psi[i] is the path position matched to the i-th leaf 2^h-1+i.
"""
import logging
from typing import Dict, List, Optional, Sequence, Set

import networkx as nx

from core.bound_formulas import BoundFormulas
from core.exceptions import ConstructionError, PreconditionError
from models.certificate import SeparationCertificate
from models.graph import Graph
from models.lambda_instance import LambdaInstance
from models.minor_model import MinorModel
from schemas.construction import ConstructionResult
from services.graph_service import GraphService
from services.linkage_service import LinkageService
from services.minor_service import require_model
from services.pattern_service import PatternService

logger = logging.getLogger(__name__)


def _ancestors_or_self(v: int) -> Set[int]:
    out = {v}
    while v:
        v = (v - 1) // 2
        out.add(v)
    return out


def _subtree(t: int, n: int) -> List[int]:
    out, frontier = [], [t]
    while frontier:
        out.extend(frontier)
        frontier = [c for x in frontier for c in (2 * x + 1, 2 * x + 2) if c < n]
    return out


class WheelService:

    # ---------- hosts ----------
    @staticmethod
    def tree_path_pattern(h: int) -> Graph:
        """B_h next to a path on 2^h vertices, no matching edges."""
        tree_n, leaves = 2 ** (h + 1) - 1, 2 ** h
        edges = [(i, (i - 1) // 2) for i in range(1, tree_n)]
        edges += [(tree_n + j, tree_n + j + 1) for j in range(leaves - 1)]
        return Graph(range(tree_n + leaves), edges)

    @staticmethod
    def tree_path_host(h: int, psi: Sequence[int]) -> Graph:
        tree_n, leaves = 2 ** (h + 1) - 1, 2 ** h
        if sorted(psi) != list(range(leaves)):
            raise PreconditionError(f"psi must be a permutation of 0..{leaves - 1}")
        base = WheelService.tree_path_pattern(h)
        return GraphService.add_edges(base, ((leaves - 1 + i, tree_n + j) for i, j in enumerate(psi)))

    # ---------- wheel from B_h and a path ----------
    @staticmethod
    def wheel_from_tree_path(h: int, psi: Sequence[int]) -> ConstructionResult:
        if h <= 2:
            raise PreconditionError(f"wheel from tree and path needs h > 2, got h={h}")
        host = WheelService.tree_path_host(h, psi)
        tree_n, n_leaves = 2 ** (h + 1) - 1, 2 ** h
        first_leaf = n_leaves - 1
        leaf_at = {j: first_leaf + i for i, j in enumerate(psi)}

        u, v = leaf_at[0], leaf_at[n_leaves - 1]
        tree = PatternService.complete_binary_tree(h)
        w = GraphService.lca(tree, 0, u, v)
        utv = GraphService.tree_path(tree, u, v).vertices
        on_path = set(utv)
        blocked = _ancestors_or_self(u) | _ancestors_or_self(v)

        # heap order is breadth-first order: the first unblocked vertex roots the biggest free subtree
        t = next(x for x in range(tree_n) if x not in blocked)
        tau = _subtree(t, tree_n)
        q = sorted(psi[x - first_leaf] for x in tau if x >= first_leaf)
        m = len(q)

        case = 1 if w != 0 else 2
        expected = 2 ** (h - 1) if case == 1 else 2 ** (h - 2)
        if m != expected:
            raise ConstructionError(f"case {case} should give |Q| = {expected}, got {m}")

        def p(j: int) -> int:
            return tree_n + j

        rim: List[frozenset] = [frozenset(p(j) for j in range(q[i], q[i + 1])) for i in range(m - 1)]
        rim.append(frozenset([p(q[-1])]))
        rim.append(frozenset(p(j) for j in range(q[-1] + 1, n_leaves))
                   | frozenset(utv)
                   | frozenset(p(j) for j in range(0, q[0])))

        climb = nx.shortest_path(tree.to_networkx(), t, w)
        stop = next(i for i, x in enumerate(climb) if x in on_path)
        hub = frozenset(tau) | frozenset(climb[:stop])

        order = m + 1
        pattern = PatternService.wheel(order)
        sets = {i: rim[i] for i in range(order)}
        sets[order] = hub
        model = MinorModel(pattern=pattern, host=host, branch_sets=sets)
        require_model(host, pattern, model, "wheel_from_tree_path")

        promised = 2 ** (h - 2) + 1
        logger.info(f"wheel_from_tree_path: h={h}, case {case}, |Q|={m}, wheel of order {order}")
        return ConstructionResult(
            construction="wheel",
            host=host,
            model=model,
            order_achieved=order,
            order_promised=promised,
            details={"case": case, "u": u, "v": v, "w": w, "tau_root": t, "q": q},
        )

    # ---------- certificates ----------
    @staticmethod
    def extend_left_model(host: Graph, cert: SeparationCertificate,
                          pairing: Optional[Dict[int, int]] = None,
                          budget_ms: Optional[int] = None) -> MinorModel:
        """Grow branch sets along linkage paths.

        `pairing` maps the near endpoint of each used path to its far endpoint;
        the near branch set absorbs the path minus the far endpoint and the
        pattern gains the edge between the two branch sets.
        """
        LinkageService(budget_ms=budget_ms).require_certificate(host, cert)
        left = cert.left_model
        owner = left.owner_map()
        if pairing is None:
            pairing = {path.start: path.end for path in cert.linkage if path.length}

        by_ends = {}
        for path in cert.linkage:
            by_ends[(path.start, path.end)] = path
            by_ends[(path.end, path.start)] = path.reversed()

        sets = dict(left.branch_sets)
        new_edges = []
        for near, far in sorted(pairing.items()):
            path = by_ends.get((near, far))
            if path is None:
                raise PreconditionError(f"no linkage path joins {near} and {far}", witness=[near, far])
            if path.length == 0:
                raise PreconditionError(f"null path at {near} cannot join two branch sets", witness=near)
            if near not in owner or far not in owner:
                raise PreconditionError(f"endpoints {near} and {far} must both lie in branch sets",
                                        witness=[near, far])
            x, y = owner[near], owner[far]
            if x == y:
                raise PreconditionError(f"path from {near} to {far} stays inside one branch set", witness=x)
            sets[x] = sets[x] | frozenset(path.vertices[:-1])
            if not left.pattern.has_edge(x, y):
                new_edges.append((x, y))

        pattern = GraphService.add_edges(left.pattern, new_edges)
        model = MinorModel(pattern=pattern, host=host, branch_sets=sets)
        require_model(host, pattern, model, "extend_left_model")
        logger.info(f"extend_left_model: {len(pairing)} paths absorbed, {len(new_edges)} edges added")
        return model

    @staticmethod
    def wheel_from_certificate(host: Graph, cert: SeparationCertificate,
                               budget_ms: Optional[int] = None) -> ConstructionResult:
        """Wheel model in a host whose certificate left-contains B_h next to a path."""
        left = cert.left_model
        order = left.pattern.order
        h = next((x for x in range(3, 16) if 3 * 2 ** x - 1 == order), None)
        if h is None or left.pattern != WheelService.tree_path_pattern(h):
            raise PreconditionError("left model is not a complete binary tree next to a path in canonical layout")

        tree_n, n_leaves = 2 ** (h + 1) - 1, 2 ** h
        first_leaf = n_leaves - 1
        owner = left.owner_map()
        psi: Dict[int, int] = {}
        pairing: Dict[int, int] = {}
        for path in cert.linkage:
            ends = [(owner.get(x), x) for x in (path.start, path.end)]
            leaf_end = [e for e in ends if e[0] is not None and first_leaf <= e[0] < tree_n]
            path_end = [e for e in ends if e[0] is not None and e[0] >= tree_n]
            if len(leaf_end) == 1 and len(path_end) == 1:
                (x, near), (y, far) = leaf_end[0], path_end[0]
                psi[x - first_leaf] = y - tree_n
                pairing[near] = far
        if len(psi) != n_leaves or sorted(psi.values()) != list(range(n_leaves)):
            raise PreconditionError(f"linkage pairs {len(psi)} of {n_leaves} leaves bijectively with the path")

        extended = WheelService.extend_left_model(host, cert, pairing, budget_ms=budget_ms)
        inner = WheelService.wheel_from_tree_path(h, [psi[i] for i in range(n_leaves)])
        model = inner.model.compose(extended)
        require_model(host, model.pattern, model, "wheel_from_certificate")
        return ConstructionResult(
            construction="wheel_certificate",
            host=host,
            model=model,
            order_achieved=inner.order_achieved,
            order_promised=inner.order_promised,
            details={"h": h, **inner.details},
        )

    # ---------- double wheel from Λ(B_h) ----------
    @staticmethod
    def double_wheel_from_lambda(inst: LambdaInstance) -> ConstructionResult:
        tree = inst.tree
        n = tree.order
        h = (n + 1).bit_length() - 2
        canonical = PatternService.complete_binary_tree(h)
        if 2 ** (h + 1) - 1 != n or (tree != canonical
                                     and not nx.is_isomorphic(tree.to_networkx(), canonical.to_networkx())):
            raise PreconditionError("tree of the instance is not a complete binary tree")
        promised = BoundFormulas.double_wheel_order_ceiling(h)
        if h < 4 or promised < 3:
            raise PreconditionError(
                f"degenerate order: ceil((2^(h/2) - 2)/(2h - 3)) = {promised} < 3 for h={h}"
            )
        problems = inst.violations()
        if problems:
            raise PreconditionError(f"instance violates Λ(T): {problems[0]}")

        host = inst.graph
        leaf_of = inst.leaf_of
        path = list(inst.path.vertices)
        u, u2 = leaf_of[path[0]], leaf_of[path[-1]]
        q_path = GraphService.tree_path(tree, u, u2).vertices
        on_q = set(q_path)

        rest = tree.to_networkx().subgraph(v for v in tree.vertex_ids if v not in on_q)
        comps = [frozenset(c) for c in nx.connected_components(rest)]
        matched_in = {c: [p for p in path if leaf_of[p] in c] for c in comps}
        t1 = max(comps, key=lambda c: (len(matched_in[c]), -min(c)))

        cycle = path + list(reversed(q_path))
        nxt = tree.to_networkx()
        attach = [x for x in q_path if any(y in t1 for y in nxt.adj[x])]
        if len(attach) != 1:
            raise ConstructionError(f"hub subtree attaches to the tree path at {len(attach)} vertices")
        marked = set(matched_in[t1]) | {attach[0]}
        j = [i for i, x in enumerate(cycle) if x in marked]
        q = len(j)
        if q < promised:
            raise ConstructionError(f"double wheel of order {q} is below the promised {promised}")

        rim = []
        for i in range(q):
            start, end = j[i], j[(i + 1) % q]
            if end <= start:
                end += len(cycle)
            rim.append(frozenset(cycle[s % len(cycle)] for s in range(start, end)))

        pattern = PatternService.double_wheel(q)
        sets = {i: rim[i] for i in range(q)}
        sets[q] = t1
        sets[q + 1] = frozenset([inst.apex])
        model = MinorModel(pattern=pattern, host=host, branch_sets=sets)
        require_model(host, pattern, model, "double_wheel_from_lambda")
        logger.info(f"double_wheel_from_lambda: h={h}, {len(comps)} subtrees off the tree path, order {q}")
        return ConstructionResult(
            construction="double_wheel",
            host=host,
            model=model,
            order_achieved=q,
            order_promised=promised,
            details={"h": h, "subtrees": len(comps), "hub_size": len(t1)},
        )
