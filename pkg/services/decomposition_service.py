# services/decomposition_service.py
import logging
from collections import defaultdict
from typing import List, Optional, Tuple, Union

import networkx as nx

from core.exceptions import InvalidGraphError, PreconditionError
from models.decomposition import NiceAnnotation, NodeKind, PathDecomposition, TreeDecomposition
from models.graph import Graph
from schemas.verification import VerificationReport, Violation
from services.graph_service import GraphService
from services.treewidth_service import TreewidthService

logger = logging.getLogger(__name__)

Decomposition = Union[TreeDecomposition, PathDecomposition]


class DecompositionService:

    # ---------- validity ----------
    @staticmethod
    def verify_decomposition(g: Graph, d: Decomposition) -> VerificationReport:
        td = d.to_tree_decomposition() if isinstance(d, PathDecomposition) else d
        violations: List[Violation] = []

        shape_reason = GraphService.tree_violation(td.shape) if td.shape.order else ""
        if shape_reason:
            violations.append(Violation(kind="shape", detail=f"decomposition shape is not a tree: {shape_reason}"))
        if set(td.bags) != set(td.shape.vertex_ids):
            violations.append(Violation(kind="shape", detail="bags are not aligned with shape nodes"))

        support = defaultdict(set)
        for node, bag in td.bags.items():
            for v in bag:
                support[v].add(node)

        strangers = sorted(v for v in support if v not in g)
        if strangers:
            violations.append(Violation(kind="membership", detail=f"bags mention unknown vertex {strangers[0]}",
                                        witness=strangers[0]))

        uncovered = [v for v in g.vertex_ids if v not in support]
        if uncovered:
            violations.append(Violation(kind="coverage", detail=f"vertex {uncovered[0]} is in no bag",
                                        witness=uncovered[0]))

        for u, v in g.sorted_edges():
            if not (support[u] & support[v]):
                violations.append(Violation(kind="edge-coverage", detail=f"edge {{{u},{v}}} is not inside any bag",
                                            witness=[u, v]))
                break

        if not shape_reason:
            shape = td.shape.to_networkx()
            for v in sorted(support):
                nodes = support[v]
                if len(nodes) > 1 and not nx.is_connected(shape.subgraph(nodes)):
                    violations.append(Violation(kind="coherence", detail=f"support of vertex {v} is disconnected",
                                                witness=v))
                    break

        return VerificationReport.from_violations(violations, width=td.width)

    @staticmethod
    def width(d: Decomposition, host: Optional[Graph] = None) -> int:
        if host is not None:
            report = DecompositionService.verify_decomposition(host, d)
            if not report.ok:
                raise InvalidGraphError(f"invalid decomposition: {report.violations[0].detail}")
        return d.width

    @staticmethod
    def require_valid(g: Graph, d: Decomposition) -> None:
        report = DecompositionService.verify_decomposition(g, d)
        if not report.ok:
            raise InvalidGraphError(f"invalid decomposition: {report.violations[0].detail}",
                                    witness=report.violations[0].witness)

    # ---------- nice decompositions ----------
    @staticmethod
    def make_nice(g: Graph, p: PathDecomposition) -> Tuple[PathDecomposition, NiceAnnotation]:
        """
        Nice decomposition of the same width with n introduce and n forget
        nodes, in canonical shape: s = width+1 introduces, then alternating
        forget/introduce, then s forgets. The last bag is empty.
        """
        DecompositionService.require_valid(g, p)
        if g.order == 0:
            return PathDecomposition(bags=()), NiceAnnotation(node_kinds=())

        events: List[Tuple[NodeKind, int]] = []
        current: frozenset = frozenset()
        for bag in list(p.bags) + [frozenset()]:
            for v in sorted(current - bag):
                events.append((NodeKind.FORGET, v))
            for v in sorted(bag - current):
                events.append((NodeKind.INTRODUCE, v))
            current = bag
        bags = DecompositionService._replay(events)
        nice = PathDecomposition(bags=tuple(bags))

        s = p.width + 1
        changed = True
        while changed:
            changed = False
            kinds = NiceAnnotation.from_bags(nice.bags).node_kinds
            for i in range(1, len(kinds) - 1):
                if (kinds[i] == NodeKind.FORGET and kinds[i + 1] == NodeKind.INTRODUCE
                        and len(nice.bags[i - 1]) < s):
                    nice = DecompositionService.swap_forget_introduce(nice, i + 1)
                    changed = True
                    break

        annotation = NiceAnnotation.from_bags(nice.bags)
        logger.debug(f"make_nice: {len(nice.bags)} bags, width {nice.width}")
        return nice, annotation

    @staticmethod
    def _replay(events: List[Tuple[NodeKind, int]]) -> List[frozenset]:
        bags, current = [], set()
        for kind, v in events:
            if kind == NodeKind.INTRODUCE:
                current.add(v)
            else:
                current.discard(v)
            bags.append(frozenset(current))
        return bags

    @staticmethod
    def swap_forget_introduce(p: PathDecomposition, i: int) -> PathDecomposition:
        """Exchange the forget node at 1-based position i with the introduce node after it."""
        kinds = NiceAnnotation.from_bags(p.bags).node_kinds
        if not 2 <= i <= len(kinds) - 1:
            raise PreconditionError(f"position {i} has no predecessor and successor in {len(kinds)} bags")
        if kinds[i - 1] != NodeKind.FORGET or kinds[i] != NodeKind.INTRODUCE:
            raise PreconditionError(
                f"position {i} is {kinds[i - 1].value} followed by {kinds[i].value}, expected forget then introduce"
            )
        bags = list(p.bags)
        bags[i - 1] = bags[i - 2] | bags[i]
        return PathDecomposition(bags=tuple(bags))

    # ---------- compact decompositions ----------
    @staticmethod
    def compactify(g: Graph, p: PathDecomposition, assume_optimal: bool = False,
                   budget_ms: Optional[int] = None) -> PathDecomposition:
        """Bags of size pw+1, adjacent bags exchanging one vertex, n - pw bags."""
        DecompositionService.require_valid(g, p)
        if g.order == 0:
            raise PreconditionError("compactify needs at least one vertex")
        if not assume_optimal:
            pw, _ = TreewidthService(budget_ms=budget_ms).exact_pathwidth(g)
            if p.width != pw:
                raise PreconditionError(f"decomposition has width {p.width}, the pathwidth is {pw}")
        else:
            logger.info(f"compactify: optimality of width {p.width} asserted by caller")

        nice, _ = DecompositionService.make_nice(g, p)
        s = p.width + 1
        # introduce nodes p_s, p_{s+2}, ..., p_{2n-s}
        compact = PathDecomposition(bags=tuple(nice.bags[j] for j in range(s - 1, 2 * g.order - s, 2)))
        DecompositionService.require_valid(g, compact)
        return compact

    @staticmethod
    def is_compact(g: Graph, p: PathDecomposition) -> bool:
        if not p.bags or not DecompositionService.verify_decomposition(g, p).ok:
            return False
        size = len(p.bags[0])
        if any(len(b) != size for b in p.bags):
            return False
        if len(p.bags) != g.order - (size - 1):
            return False
        return all(len(a - b) == 1 and len(b - a) == 1 for a, b in zip(p.bags, p.bags[1:]))
