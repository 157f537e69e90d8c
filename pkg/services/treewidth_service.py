# services/treewidth_service.py
import logging
from typing import Dict, List, Optional, Set, Tuple

from core.config import settings
from core.exceptions import PreconditionError
from models.decomposition import PathDecomposition, TreeDecomposition
from models.graph import Graph
from utils.deadline import Deadline

logger = logging.getLogger(__name__)

Adjacency = Dict[int, Set[int]]


def _copy(adj: Adjacency) -> Adjacency:
    return {v: set(ns) for v, ns in adj.items()}


def _eliminate(adj: Adjacency, v: int) -> Adjacency:
    """Remove v and turn its neighbourhood into a clique."""
    out = _copy(adj)
    ns = out.pop(v)
    for a in ns:
        out[a].discard(v)
        out[a] |= ns - {a}
    return out


def _is_clique(adj: Adjacency, vs: Set[int]) -> bool:
    return all(vs - {a} <= adj[a] for a in vs)


def _fill_in(adj: Adjacency, v: int) -> int:
    ns = adj[v]
    return sum(len(ns - adj[a] - {a}) for a in ns) // 2


def _minor_min_width(adj: Adjacency) -> int:
    """Minor-min-width lower bound: contract a min-degree vertex into its least-shared neighbour."""
    g = _copy(adj)
    best = 0
    while g:
        d, u = min((len(g[x]), x) for x in g)
        best = max(best, d)
        ns = g[u]
        if not ns:
            del g[u]
            continue
        _, w = min((len(g[x] & ns), x) for x in ns)
        for x in ns - {w}:
            g[x].discard(u)
            g[x].add(w)
            g[w].add(x)
        g[w].discard(u)
        del g[u]
    return best


class TreewidthService:
    """Exact treewidth and pathwidth for desk-scale graphs, each with a witness decomposition."""

    def __init__(self, budget_ms: Optional[int] = None, max_vertices: Optional[int] = None):
        self.budget_ms = budget_ms if budget_ms is not None else settings.DEFAULT_BUDGET_MS
        self.max_vertices = max_vertices if max_vertices is not None else settings.EXACT_SOLVER_MAX_VERTICES

    def _guard(self, g: Graph, what: str) -> None:
        if g.order > self.max_vertices:
            raise PreconditionError(
                f"{what}: {g.order} vertices exceed the exact solver limit of {self.max_vertices}"
            )

    # ---------- treewidth ----------
    def exact_treewidth(self, g: Graph) -> Tuple[int, TreeDecomposition]:
        self._guard(g, "treewidth")
        if g.order == 0:
            return -1, TreeDecomposition(shape=Graph([]), bags={})

        deadline = Deadline(self.budget_ms)
        adj = {v: set(g.neighbors(v)) for v in g.vertex_ids}
        ub, order = self._min_fill(adj)
        lb = _minor_min_width(adj)
        state = {"ub": ub, "order": order, "nodes": 0}
        if lb < ub:
            self._branch(adj, [], 0, lb, state, {}, deadline)

        td = self._decomposition_from_order(adj, state["order"])
        logger.debug(f"treewidth {state['ub']} (lower bound {lb}, {state['nodes']} search nodes)")
        return state["ub"], td

    @staticmethod
    def _min_fill(adj: Adjacency) -> Tuple[int, List[int]]:
        g = _copy(adj)
        width, order = 0, []
        while g:
            _, _, u = min((_fill_in(g, x), len(g[x]), x) for x in g)
            width = max(width, len(g[u]))
            g = _eliminate(g, u)
            order.append(u)
        return width, order

    def _branch(self, adj: Adjacency, order: List[int], g: int, lb: int,
                state: dict, memo: Dict[frozenset, int], deadline: Deadline) -> None:
        state["nodes"] += 1
        if state["nodes"] % 256 == 0:
            deadline.check("treewidth")

        if len(adj) - 1 <= g:
            if g < state["ub"]:
                state["ub"], state["order"] = g, order + sorted(adj)
            return

        candidates = []
        for v in sorted(adj, key=lambda x: (len(adj[x]), x)):
            ns = adj[v]
            if _is_clique(adj, ns) or (
                len(ns) <= lb and any(_is_clique(adj, ns - {u}) for u in ns)
            ):
                candidates = [v]
                break
            candidates.append(v)

        for v in candidates:
            g1 = max(g, len(adj[v]))
            if g1 >= state["ub"]:
                continue
            key = frozenset(order) | {v}
            if memo.get(key, state["ub"]) <= g1:
                continue
            memo[key] = g1
            rest = _eliminate(adj, v)
            if max(g1, _minor_min_width(rest)) >= state["ub"]:
                continue
            self._branch(rest, order + [v], g1, lb, state, memo, deadline)

    @staticmethod
    def _decomposition_from_order(adj: Adjacency, order: List[int]) -> TreeDecomposition:
        position = {v: i for i, v in enumerate(order)}
        g = _copy(adj)
        bags, tree_edges, roots = {}, [], []
        for i, v in enumerate(order):
            ns = g[v]
            bags[i] = frozenset(ns | {v})
            if ns:
                tree_edges.append((i, min(position[u] for u in ns)))
            else:
                roots.append(i)
            g = _eliminate(g, v)
        tree_edges.extend(zip(roots, roots[1:]))
        return TreeDecomposition(shape=Graph(range(len(order)), tree_edges), bags=bags)

    # ---------- pathwidth ----------
    def exact_pathwidth(self, g: Graph) -> Tuple[int, PathDecomposition]:
        """Pathwidth as vertex separation number, searched over vertex orders."""
        self._guard(g, "pathwidth")
        if g.order == 0:
            return -1, PathDecomposition(bags=())

        deadline = Deadline(self.budget_ms)
        ids = list(g.vertex_ids)
        index = {v: i for i, v in enumerate(ids)}
        n = len(ids)
        nbr = [0] * n
        for u, v in g.edges:
            nbr[index[u]] |= 1 << index[v]
            nbr[index[v]] |= 1 << index[u]

        ub, order = self._greedy_separation(nbr)
        lb = _minor_min_width({v: set(g.neighbors(v)) for v in ids})
        for k in range(lb, ub):
            found = self._separation_search(nbr, k, deadline)
            if found is not None:
                ub, order = k, found
                break

        bags = self._bags_from_order(nbr, order)
        pd = PathDecomposition(bags=tuple(frozenset(ids[i] for i in b) for b in bags))
        logger.debug(f"pathwidth {ub} (lower bound {lb})")
        return ub, pd

    @staticmethod
    def _boundary(nbr: List[int], s: int) -> int:
        count, rest = 0, ~s
        x = s
        while x:
            low = x & -x
            i = low.bit_length() - 1
            if nbr[i] & rest:
                count += 1
            x ^= low
        return count

    @classmethod
    def _greedy_separation(cls, nbr: List[int]) -> Tuple[int, List[int]]:
        n = len(nbr)
        s, order, worst = 0, [], 0
        for _ in range(n):
            b, v = min((cls._boundary(nbr, s | (1 << i)), i) for i in range(n) if not s >> i & 1)
            s |= 1 << v
            order.append(v)
            worst = max(worst, b)
        return worst, order

    @classmethod
    def _separation_search(cls, nbr: List[int], k: int, deadline: Deadline) -> Optional[List[int]]:
        n = len(nbr)
        full = (1 << n) - 1
        dead: Set[int] = set()
        order: List[int] = []
        visits = [0]

        def extend(s: int) -> bool:
            if s == full:
                return True
            visits[0] += 1
            if visits[0] % 512 == 0:
                deadline.check("pathwidth")
            if s in dead:
                return False
            # a vertex whose neighbours are all placed can go next without loss
            for i in range(n):
                if not s >> i & 1 and not nbr[i] & ~s:
                    order.append(i)
                    if extend(s | (1 << i)):
                        return True
                    order.pop()
                    dead.add(s)
                    return False
            options = []
            for i in range(n):
                if s >> i & 1:
                    continue
                s2 = s | (1 << i)
                if s2 in dead:
                    continue
                b = cls._boundary(nbr, s2)
                if b <= k:
                    options.append((b, i, s2))
            for _, i, s2 in sorted(options):
                order.append(i)
                if extend(s2):
                    return True
                order.pop()
            dead.add(s)
            return False

        return list(order) if extend(0) else None

    @classmethod
    def _bags_from_order(cls, nbr: List[int], order: List[int]) -> List[Set[int]]:
        bags, placed = [], 0
        for v in order:
            boundary = {u for u in range(len(nbr)) if placed >> u & 1 and nbr[u] & ~placed}
            bags.append(boundary | {v})
            placed |= 1 << v
        return bags
