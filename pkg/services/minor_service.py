# services/minor_service.py
import logging
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from core.config import settings
from core.exceptions import BudgetExceededError, ConstructionError, PreconditionError
from models.graph import Graph, normalize_edge
from models.minor_model import MinorModel
from schemas.model import MinorOutcome, MinorSearchResult
from schemas.verification import VerificationReport, Violation
from services.graph_service import GraphService
from services.treewidth_service import TreewidthService
from utils.deadline import Deadline

logger = logging.getLogger(__name__)

Adjacency = Dict[int, FrozenSet[int]]
Classes = Dict[int, FrozenSet[int]]


def verify_model(host: Graph, pattern: Graph, m: MinorModel) -> VerificationReport:
    """Check branch sets are disjoint, connected and realise every pattern edge.

    Reports the first witness of each violation class.
    """
    violations: List[Violation] = []
    sets = m.branch_sets

    missing = [x for x in pattern.vertex_ids if not sets.get(x)]
    extra = sorted(x for x in sets if x not in pattern)
    if missing:
        violations.append(Violation(kind="coverage", detail=f"pattern vertex {missing[0]} has no branch set",
                                    witness=missing[0]))
    elif extra:
        violations.append(Violation(kind="coverage", detail=f"branch set for unknown pattern vertex {extra[0]}",
                                    witness=extra[0]))

    for x in sorted(sets):
        strangers = sorted(v for v in sets[x] if v not in host)
        if strangers:
            violations.append(Violation(kind="membership",
                                        detail=f"branch set of {x} uses unknown host vertex {strangers[0]}",
                                        witness=[x, strangers[0]]))
            break

    owner: Dict[int, int] = {}
    clash = None
    for x in sorted(sets):
        for v in sorted(sets[x]):
            if v in owner and clash is None:
                clash = (owner[v], x, v)
            owner.setdefault(v, x)
    if clash:
        a, b, v = clash
        violations.append(Violation(kind="disjointness",
                                    detail=f"branch sets of {a} and {b} share host vertex {v}",
                                    witness=[a, b, v]))

    for x in sorted(sets):
        inside = [v for v in sets[x] if v in host]
        if sets[x] and not GraphService.is_connected_subset(host, inside):
            violations.append(Violation(kind="connectivity", detail=f"branch set of {x} is disconnected",
                                        witness=x))
            break

    nxh = host.to_networkx()
    for u, v in pattern.sorted_edges():
        su = [a for a in sets.get(u, ()) if a in host]
        sv = set(b for b in sets.get(v, ()) if b in host)
        if not any(sv.intersection(nxh.adj[a]) for a in su):
            violations.append(Violation(kind="edge", detail=f"pattern edge {{{u},{v}}} has no host edge",
                                        witness=[u, v]))
            break

    return VerificationReport.from_violations(violations)


def require_model(host: Graph, pattern: Graph, m: MinorModel, construction: str) -> None:
    """Raise ConstructionError when a model produced by `construction` fails verification."""
    report = verify_model(host, pattern, m)
    if not report.ok:
        first = report.violations[0]
        raise ConstructionError(f"{construction}: {first.kind}: {first.detail}", witness=first.witness)


class MinorService:
    """Exhaustive minor containment for desk-scale hosts.

    A connected host contains H iff some sequence of edge contractions leaves
    exactly |V(H)| vertices with H as a subgraph. The search walks those
    contractions depth first and memoises quotients.
    """

    def __init__(self, budget_ms: Optional[int] = None, max_host_vertices: Optional[int] = None):
        self.explicit_budget = budget_ms is not None
        self.budget_ms = budget_ms if budget_ms is not None else settings.DEFAULT_BUDGET_MS
        self.max_host_vertices = (max_host_vertices if max_host_vertices is not None
                                  else settings.MINOR_MAX_HOST_VERTICES)
        self._states = 0

    def is_minor(self, pattern: Graph, host: Graph) -> MinorSearchResult:
        if host.order > self.max_host_vertices and not self.explicit_budget:
            raise PreconditionError(
                f"host has {host.order} vertices, exhaustive search is limited to {self.max_host_vertices}; "
                f"pass a budget to search anyway"
            )
        self._states = 0
        deadline = Deadline(self.budget_ms)
        try:
            reason = self._quick_rejection(pattern, host)
            if reason:
                logger.debug(f"is_minor: rejected early, {reason}")
                return MinorSearchResult(outcome=MinorOutcome.ABSENT, detail=reason)
            model = self._search(pattern, host, deadline)
        except BudgetExceededError as e:
            logger.warning(f"is_minor: {e.detail} after {self._states} states")
            return MinorSearchResult(outcome=MinorOutcome.UNKNOWN, detail=e.detail, states_explored=self._states)

        if model is None:
            return MinorSearchResult(outcome=MinorOutcome.ABSENT, detail="exhaustive search found no model",
                                     states_explored=self._states)
        require_model(host, pattern, model, "is_minor")
        logger.debug(f"is_minor: model found after {self._states} states")
        return MinorSearchResult(outcome=MinorOutcome.FOUND, model=model, states_explored=self._states)

    # ---------- quick rejections ----------
    def _quick_rejection(self, pattern: Graph, host: Graph) -> str:
        if pattern.order > host.order:
            return f"pattern has {pattern.order} vertices, host only {host.order}"
        if pattern.size > host.size:
            return f"pattern has {pattern.size} edges, host only {host.size}"
        if pattern.size and not nx.check_planarity(pattern.to_networkx())[0] \
                and nx.check_planarity(host.to_networkx())[0]:
            return "pattern is not planar, host is"
        tw = TreewidthService(budget_ms=self.budget_ms)
        if host.order <= tw.max_vertices and pattern.size:
            host_tw, _ = tw.exact_treewidth(host)
            pattern_tw, _ = tw.exact_treewidth(pattern)
            if pattern_tw > host_tw:
                return f"pattern treewidth {pattern_tw} exceeds host treewidth {host_tw}"
        return ""

    # ---------- search ----------
    def _search(self, pattern: Graph, host: Graph, deadline: Deadline) -> Optional[MinorModel]:
        if pattern.order == 0:
            return MinorModel(pattern=pattern, host=host, branch_sets={})

        direct = self._monomorphism(pattern, host.to_networkx())
        if direct is not None:
            return MinorModel(pattern=pattern, host=host,
                              branch_sets={x: frozenset([v]) for x, v in direct.items()})

        host_parts = GraphService.connected_components(host)
        if len(host_parts) == 1:
            sets = self._contract_search(pattern, host, deadline)
        else:
            sets = self._assign_components(pattern, host, host_parts, deadline)
        return None if sets is None else MinorModel(pattern=pattern, host=host, branch_sets=sets)

    @staticmethod
    def _monomorphism(pattern: Graph, target: nx.Graph) -> Optional[Dict[int, int]]:
        """pattern vertex -> target vertex for some copy of pattern as a subgraph of target."""
        matcher = GraphMatcher(target, pattern.to_networkx())
        found = next(matcher.subgraph_monomorphisms_iter(), None)
        if found is None:
            return None
        return {x: v for v, x in found.items()}

    def _contract_search(self, pattern: Graph, host: Graph, deadline: Deadline) -> Optional[Dict[int, FrozenSet[int]]]:
        k, need_edges = pattern.order, pattern.size
        adj: Adjacency = {v: host.neighbors(v) for v in host.vertex_ids}
        classes: Classes = {v: frozenset([v]) for v in host.vertex_ids}
        seen = set()

        def edge_count(a: Adjacency) -> int:
            return sum(len(ns) for ns in a.values()) // 2

        def walk(a: Adjacency, cls: Classes) -> Optional[Dict[int, FrozenSet[int]]]:
            self._states += 1
            if self._states % 128 == 0:
                deadline.check("minor search")
            j = len(a)
            if edge_count(a) - (j - k) < need_edges:
                return None
            if j == k:
                quotient = nx.Graph()
                quotient.add_nodes_from(a)
                quotient.add_edges_from((u, v) for u in a for v in a[u] if u < v)
                hit = self._monomorphism(pattern, quotient)
                if hit is None:
                    return None
                return {x: cls[v] for x, v in hit.items()}

            key = frozenset(normalize_edge(u, v) for u in a for v in a[u]) | frozenset((v,) for v in a)
            if key in seen:
                return None
            seen.add(key)

            candidates = sorted(
                {normalize_edge(u, v) for u in a for v in a[u]},
                key=lambda e: (len(a[e[0]]) + len(a[e[1]]), e),
            )
            for u, v in candidates:
                a2, cls2 = self._contract(a, cls, u, v)
                found = walk(a2, cls2)
                if found is not None:
                    return found
            return None

        return walk(adj, classes)

    @staticmethod
    def _contract(a: Adjacency, cls: Classes, u: int, v: int) -> Tuple[Adjacency, Classes]:
        keep, gone = (u, v) if u < v else (v, u)
        out = dict(a)
        merged = (a[keep] | a[gone]) - {keep, gone}
        del out[gone]
        out[keep] = merged
        for w in a[gone]:
            if w != keep:
                out[w] = (out[w] - {gone}) | {keep}
        cls2 = dict(cls)
        cls2[keep] = cls[keep] | cls[gone]
        del cls2[gone]
        return out, cls2

    def _assign_components(self, pattern: Graph, host: Graph, host_parts: List[FrozenSet[int]],
                           deadline: Deadline) -> Optional[Dict[int, FrozenSet[int]]]:
        """Disconnected host: place each pattern component inside one host component."""
        pattern_parts = sorted(GraphService.connected_components(pattern), key=lambda c: (-len(c), min(c)))
        hosts = [GraphService.induced_subgraph(host, part) for part in host_parts]
        memo: Dict[Tuple[int, FrozenSet[int]], Optional[Dict[int, FrozenSet[int]]]] = {}

        def fits(i: int, chosen: FrozenSet[int]) -> Optional[Dict[int, FrozenSet[int]]]:
            key = (i, chosen)
            if key not in memo:
                vertices = frozenset().union(*(pattern_parts[c] for c in chosen))
                sub = GraphService.induced_subgraph(pattern, vertices)
                model = None if self._quick_rejection(sub, hosts[i]) else self._search(sub, hosts[i], deadline)
                memo[key] = model.branch_sets if model is not None else None
            return memo[key]

        assignment: List[List[int]] = [[] for _ in hosts]

        def place(c: int) -> Optional[Dict[int, FrozenSet[int]]]:
            deadline.check("minor search")
            if c == len(pattern_parts):
                sets: Dict[int, FrozenSet[int]] = {}
                for i, comps in enumerate(assignment):
                    if not comps:
                        continue
                    part = fits(i, frozenset(comps))
                    if part is None:
                        return None
                    sets.update(part)
                return sets
            for i in range(len(hosts)):
                assignment[i].append(c)
                ok = fits(i, frozenset(assignment[i])) is not None
                found = place(c + 1) if ok else None
                assignment[i].pop()
                if found is not None:
                    return found
            return None

        return place(0)

