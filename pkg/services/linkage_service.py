# services/linkage_service.py
import logging
import random
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple

import networkx as nx
from networkx.algorithms.connectivity import local_node_connectivity

from core.config import settings
from core.exceptions import BudgetExceededError, InvalidGraphError, PreconditionError
from models.certificate import SeparationCertificate
from models.graph import Graph
from schemas.model import LinkednessResult, LinkedOutcome
from schemas.verification import VerificationReport, Violation
from services.graph_service import GraphService
from services.minor_service import verify_model
from utils.deadline import Deadline

logger = logging.getLogger(__name__)

Pair = Tuple[FrozenSet[int], FrozenSet[int]]

_SOURCE, _SINK = "source", "sink"


class LinkageService:
    """Linked vertex sets and separation certificates."""

    def __init__(self, budget_ms: Optional[int] = None):
        self.budget_ms = budget_ms if budget_ms is not None else settings.DEFAULT_BUDGET_MS

    # ---------- disjoint paths ----------
    @staticmethod
    def pair_is_linked(g: Graph, s: FrozenSet[int], x1: FrozenSet[int], x2: FrozenSet[int]) -> bool:
        """|x1| disjoint x1-x2 paths of length other than one, interiors outside s.

        Shared vertices of x1 and x2 take null paths; the rest are joined by a
        unit-capacity vertex flow in which terminals only touch non-terminals.
        """
        y1, y2 = x1 - x2, x2 - x1
        if not y1:
            return True
        free = [v for v in g.vertex_ids if v not in s]
        nxg = g.to_networkx()
        aux = nx.Graph()
        aux.add_nodes_from(free)
        aux.add_edges_from(nxg.subgraph(free).edges)
        for y in y1 | y2:
            aux.add_node(y)
            aux.add_edges_from((y, w) for w in nxg.adj[y] if w not in s)
        aux.add_edges_from((_SOURCE, y) for y in y1)
        aux.add_edges_from((y, _SINK) for y in y2)
        return local_node_connectivity(aux, _SOURCE, _SINK) >= len(y1)

    @staticmethod
    def _pairs(s: List[int]) -> Iterator[Pair]:
        """Equal-size subset pairs in ascending size, one of each unordered pair."""
        for size in range(1, len(s) + 1):
            subsets = [frozenset(c) for c in combinations(s, size)]
            for i, x1 in enumerate(subsets):
                for x2 in subsets[i:]:
                    yield x1, x2

    def is_linked(self, g: Graph, s: Iterable[int], sample: bool = False, seed: int = 0) -> LinkednessResult:
        terminals = sorted(set(s))
        unknown = [v for v in terminals if v not in g]
        if unknown:
            raise InvalidGraphError(f"terminal {unknown[0]} is not a vertex of the graph", witness=unknown[0])
        terms = frozenset(terminals)
        deadline = Deadline(self.budget_ms)

        if len(terminals) > settings.LINKED_MAX_TERMINALS:
            if not sample:
                detail = (f"{len(terminals)} terminals exceed the exhaustive limit of "
                          f"{settings.LINKED_MAX_TERMINALS}; enable sampling")
                logger.warning(f"is_linked: {detail}")
                return LinkednessResult(outcome=LinkedOutcome.UNKNOWN, detail=detail)
            return self._sampled(g, terminals, seed, deadline)

        checked = 0
        try:
            for x1, x2 in self._pairs(terminals):
                checked += 1
                if checked % 64 == 0:
                    deadline.check("linkedness")
                if not self.pair_is_linked(g, terms, x1, x2):
                    logger.debug(f"is_linked: pair {sorted(x1)} / {sorted(x2)} fails")
                    return LinkednessResult(outcome=LinkedOutcome.NOT_LINKED,
                                            failing_pair=(sorted(x1), sorted(x2)), pairs_checked=checked)
        except BudgetExceededError as e:
            logger.warning(f"is_linked: {e.detail} after {checked} pairs")
            return LinkednessResult(outcome=LinkedOutcome.UNKNOWN, pairs_checked=checked, detail=e.detail)
        return LinkednessResult(outcome=LinkedOutcome.LINKED, pairs_checked=checked)

    def _sampled(self, g: Graph, terminals: List[int], seed: int, deadline: Deadline) -> LinkednessResult:
        rng = random.Random(f"{seed}:linked:{len(terminals)}")
        terms = frozenset(terminals)
        checked = 0
        try:
            for _ in range(settings.LINKED_SAMPLE_PAIRS):
                deadline.check("linkedness sampling")
                size = rng.randint(1, len(terminals))
                x1 = frozenset(rng.sample(terminals, size))
                x2 = frozenset(rng.sample(terminals, size))
                checked += 1
                if not self.pair_is_linked(g, terms, x1, x2):
                    return LinkednessResult(outcome=LinkedOutcome.NOT_LINKED,
                                            failing_pair=(sorted(x1), sorted(x2)), pairs_checked=checked)
        except BudgetExceededError as e:
            return LinkednessResult(outcome=LinkedOutcome.UNKNOWN, pairs_checked=checked, detail=e.detail)
        return LinkednessResult(outcome=LinkedOutcome.UNKNOWN, pairs_checked=checked,
                                detail=f"no failing pair among {checked} sampled pairs")

    # ---------- certificates ----------
    def verify_separation_certificate(self, host: Graph, c: SeparationCertificate,
                                      require_linked: bool = True) -> VerificationReport:
        violations: List[Violation] = []
        notes: List[str] = []
        a, b = c.side_a, c.side_b
        sep = c.separator

        strangers = sorted(v for v in a | b if v not in host)
        if strangers:
            violations.append(Violation(kind="separation", detail=f"side mentions unknown vertex {strangers[0]}",
                                        witness=strangers[0]))
        uncovered = [v for v in host.vertex_ids if v not in a and v not in b]
        if uncovered:
            violations.append(Violation(kind="separation", detail=f"vertex {uncovered[0]} is on neither side",
                                        witness=uncovered[0]))
        a_only, b_only = a - b, b - a
        for u, v in host.sorted_edges():
            if (u in a_only and v in b_only) or (v in a_only and u in b_only):
                violations.append(Violation(kind="separation", detail=f"edge {{{u},{v}}} crosses A\\B to B\\A",
                                            witness=[u, v]))
                break
        if strangers:
            return VerificationReport.from_violations(violations)

        if not GraphService.is_connected_subset(host, b_only):
            violations.append(Violation(kind="connectivity", detail="host[B \\ A] is disconnected"))

        host_a = GraphService.induced_subgraph(host, a)
        left = verify_model(host_a, c.left_model.pattern, c.left_model)
        for v in left.violations:
            violations.append(Violation(kind="left-model", detail=f"{v.kind}: {v.detail}", witness=v.witness))
        for x in sorted(c.left_model.branch_sets):
            hits = len(c.left_model.branch_sets[x] & sep)
            if hits != 1:
                violations.append(Violation(kind="left-contains",
                                            detail=f"branch set of {x} meets A∩B in {hits} vertices",
                                            witness=x))
                break

        host_b = GraphService.induced_subgraph(host, b)
        violations.extend(self._linkage_violations(host_b, sep, c))

        if require_linked and sep:
            linked = self.is_linked(host_b, sep)
            if linked.outcome == LinkedOutcome.NOT_LINKED:
                violations.append(Violation(kind="linked", detail="A∩B is not linked in host[B]",
                                            witness=linked.failing_pair))
            elif linked.outcome == LinkedOutcome.UNKNOWN:
                notes.append(f"linkedness of A∩B undecided: {linked.detail}")

        return VerificationReport.from_violations(violations, notes=notes)

    @staticmethod
    def _linkage_violations(host_b: Graph, sep: FrozenSet[int], c: SeparationCertificate) -> List[Violation]:
        used = {}
        for i, path in enumerate(c.linkage):
            try:
                path.validate(host_b)
            except InvalidGraphError as e:
                return [Violation(kind="linkage", detail=f"path {i}: {e.detail}", witness=i)]
            if path.start not in sep or path.end not in sep:
                return [Violation(kind="linkage", detail=f"path {i} does not end in A∩B", witness=i)]
            if any(v in sep for v in path.interior):
                return [Violation(kind="linkage", detail=f"path {i} passes through A∩B", witness=i)]
            if path.length == 1:
                return [Violation(kind="linkage", detail=f"path {i} has length one", witness=i)]
            for v in path:
                if v in used:
                    return [Violation(kind="linkage", detail=f"paths {used[v]} and {i} share vertex {v}",
                                      witness=[used[v], i, v])]
                used[v] = i
        return []

    def require_certificate(self, host: Graph, c: SeparationCertificate, require_linked: bool = False) -> None:
        """Raise PreconditionError on the first certificate violation."""
        report = self.verify_separation_certificate(host, c, require_linked=require_linked)
        if not report.ok:
            first = report.violations[0]
            raise PreconditionError(f"invalid certificate: {first.kind}: {first.detail}", witness=first.witness)
