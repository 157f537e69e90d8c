# services/sweep_service.py
"""
Reproducible construction sweeps and the treewidth/minor consistency check.

Every row gets its own generator seeded with "seed:family:param:i", so rows
can run in any order or process and still produce the same report.
"""
import json
import logging
import random
import time
from itertools import permutations
from multiprocessing import Pool
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from core.bound_formulas import BoundFormulas
from core.config import settings
from core.constants import BOUND_FAMILIES, SWEEP_FAMILIES
from core.exceptions import BudgetExceededError, MinorKitError, PreconditionError
from models.certificate import SeparationCertificate
from models.graph import Graph, VertexPath
from models.lambda_instance import ceil_sqrt
from models.minor_model import MinorModel
from models.monotone_witness import Direction
from schemas.construction import ConstructionResult
from schemas.model import MinorOutcome
from schemas.sweep import (
    CensusReport, CrossCheckReport, CrossCheckVerdict, OracleOutcome, RowOutcome,
    SweepFamily, SweepReport, SweepRow, SweepSpec,
)
from services.format_service import FormatService
from services.graph_service import GraphService
from services.grid_service import GridService
from services.lambda_service import LambdaService
from services.minor_service import MinorService, verify_model
from services.pattern_service import PatternService
from services.sequence_service import SequenceService
from services.treewidth_service import TreewidthService
from services.wheel_service import WheelService
from utils.census import connected_atlas, random_pw2_graph, random_tree

logger = logging.getLogger(__name__)


class RowTask(NamedTuple):
    family: SweepFamily
    params: Dict[str, int]
    rng_key: str
    budget_ms: Optional[int]
    oracle: bool
    k: int
    ell: int
    instance: Optional[Tuple[int, ...]] = None


# ---------- instance generators ----------
def lambda_certificate(n: int, rng: random.Random) -> Tuple[Graph, Graph, SeparationCertificate]:
    """Host, tree and a certificate left-containing h_star(tree), with one linkage path per leaf.

    Pattern vertex x owns {x, 2n + x}; the separator is 2n..4n-1 and the
    right-hand side is a random tree of hubs from 4n on, each leaf path
    leaving its separator vertex through one or two private vertices.
    """
    tree = random_tree(n, rng)
    pattern = PatternService.h_star(tree)
    leaves = sorted(GraphService.tree_metrics(tree).leaves)
    partners = rng.sample(range(n, 2 * n), len(leaves))

    edges = list(pattern.edges) + [(x, 2 * n + x) for x in range(2 * n)]
    next_id = 4 * n
    hubs = random_tree(rng.randint(1, len(leaves)), rng)
    hub_ids = [next_id + v for v in hubs.vertex_ids]
    edges += [(next_id + u, next_id + v) for u, v in hubs.edges]
    next_id += hubs.order

    linkage = []
    for leaf, partner in zip(leaves, partners):
        interior = list(range(next_id, next_id + rng.randint(1, 2)))
        next_id += len(interior)
        edges += list(zip(interior, interior[1:]))
        edges.append((rng.choice(interior), rng.choice(hub_ids)))
        path = [2 * n + leaf] + interior + [2 * n + partner]
        edges += [(path[0], path[1]), (path[-2], path[-1])]
        linkage.append(VertexPath(path))

    host = Graph(range(next_id), edges)
    left = MinorModel(pattern=pattern, host=host,
                      branch_sets={x: frozenset([x, 2 * n + x]) for x in range(2 * n)})
    cert = SeparationCertificate(
        side_a=frozenset(range(4 * n)),
        side_b=frozenset(range(2 * n, next_id)),
        left_model=left,
        linkage=tuple(linkage),
    )
    return host, tree, cert


def _longest_monotone(seq: Sequence[int], increasing: bool) -> int:
    best: List[int] = []
    for i, x in enumerate(seq):
        best.append(1 + max((best[j] for j in range(i) if (seq[j] < x) == increasing), default=0))
    return max(best, default=0)


def _construct(task: RowTask, rng: random.Random) -> ConstructionResult:
    family, p = task.family, task.params
    if family == SweepFamily.WHEEL:
        h = p["h"]
        psi = list(range(2 ** h))
        rng.shuffle(psi)
        return WheelService.wheel_from_tree_path(h, psi)

    if family == SweepFamily.DOUBLE_WHEEL:
        h = p["h"]
        leaves = PatternService.binary_tree_leaves(h)
        path_len = ceil_sqrt(len(leaves))
        inst = PatternService.lambda_build(PatternService.complete_binary_tree(h), path_len,
                                           rng.sample(leaves, path_len))
        return WheelService.double_wheel_from_lambda(inst)

    if family == SweepFamily.PW2:
        if task.instance is not None:
            g = Graph.from_networkx(nx.graph_atlas(task.instance[0]))
        else:
            g = random_pw2_graph(p["n"], rng)
        return GridService.embed_pw2_in_xi(g, budget_ms=task.budget_ms)

    if family == SweepFamily.XI:
        k = p["k"]
        perm = list(range(BoundFormulas.xi_es_length(k)))
        rng.shuffle(perm)
        return GridService.xi_from_double_path(k, perm)

    if family == SweepFamily.YURT:
        k = p["k"]
        teeth = BoundFormulas.yurt_comb_size(k)
        comb = PatternService.comb(teeth)
        leaves = sorted(GraphService.tree_metrics(comb).leaves)
        path_len = ceil_sqrt(teeth)
        inst = PatternService.lambda_build(comb, path_len, rng.sample(leaves, path_len))
        return GridService.yurt_from_lambda_comb(inst, k)

    if family == SweepFamily.LAMBDA:
        host, tree, cert = lambda_certificate(p["n"], rng)
        return LambdaService.lambda_from_certificate(host, tree, cert, budget_ms=task.budget_ms)

    raise PreconditionError(f"family '{family.value}' has no construction")


def _witness(detail: str, witness: Any = None) -> str:
    return json.dumps({"detail": detail, "witness": FormatService.jsonable(witness)}, sort_keys=True)


def _es_row(task: RowTask, rng: random.Random) -> SweepRow:
    n = task.params["n"]
    if task.instance is not None:
        seq = list(task.instance)
    else:
        seq = list(range(n))
        rng.shuffle(seq)
    run = SequenceService.es_extract(seq, task.k, task.ell)
    promised = task.k if run.direction == Direction.INCREASING else task.ell

    longest = _longest_monotone(seq, run.direction == Direction.INCREASING)
    exists = _longest_monotone(seq, True) >= task.k or _longest_monotone(seq, False) >= task.ell
    oracle = OracleOutcome.CONFIRMED if exists and longest >= len(run) else OracleOutcome.DISAGREE

    if not run.holds_for(seq) or len(run) < promised or oracle == OracleOutcome.DISAGREE:
        return SweepRow(family=task.family, params=task.params, outcome=RowOutcome.VIOLATED,
                        order_achieved=len(run), order_promised=promised, oracle=oracle,
                        witness=_witness("monotone run rejected", {"seq": seq, "indices": list(run.indices)}))
    return SweepRow(family=task.family, params=task.params, outcome=RowOutcome.VERIFIED,
                    order_achieved=len(run), order_promised=promised, oracle=oracle)


def _oracle(task: RowTask, result: ConstructionResult) -> OracleOutcome:
    if not task.oracle or result.host.order > settings.ORACLE_MAX_HOST_VERTICES:
        return OracleOutcome.SKIPPED
    budget = task.budget_ms if task.budget_ms is not None else settings.DEFAULT_BUDGET_MS
    found = MinorService(budget_ms=budget).is_minor(result.model.pattern, result.host)
    if found.outcome == MinorOutcome.FOUND:
        return OracleOutcome.CONFIRMED
    if found.outcome == MinorOutcome.ABSENT:
        return OracleOutcome.DISAGREE
    return OracleOutcome.UNKNOWN


def run_row(task: RowTask) -> SweepRow:
    """One parameter point. Pure given the task, so safe in a worker process."""
    rng = random.Random(task.rng_key)
    started = time.perf_counter()
    try:
        if task.family == SweepFamily.ES:
            row = _es_row(task, rng)
        else:
            result = _construct(task, rng)
            report = verify_model(result.host, result.model.pattern, result.model)
            oracle = _oracle(task, result)
            row = SweepRow(family=task.family, params=task.params, outcome=RowOutcome.VERIFIED,
                           order_achieved=result.order_achieved, order_promised=result.order_promised,
                           oracle=oracle)
            if not report.ok:
                first = report.violations[0]
                row.outcome = RowOutcome.VIOLATED
                row.witness = _witness(f"{first.kind}: {first.detail}", first.witness)
            elif result.order_achieved < result.order_promised:
                row.outcome = RowOutcome.VIOLATED
                row.witness = _witness(f"order {result.order_achieved} below the promised {result.order_promised}")
            elif oracle == OracleOutcome.DISAGREE:
                row.outcome = RowOutcome.VIOLATED
                row.witness = _witness("independent minor search finds no model", result.details)
    except BudgetExceededError as e:
        row = SweepRow(family=task.family, params=task.params, outcome=RowOutcome.UNKNOWN,
                       witness=_witness(e.detail))
    except MinorKitError as e:
        row = SweepRow(family=task.family, params=task.params, outcome=RowOutcome.VIOLATED,
                       witness=_witness(e.detail, e.witness))
    if settings.RECORD_WALL_TIME:
        row.wall_ms = round((time.perf_counter() - started) * 1000.0, 3)
    return row


class SweepService:

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers if workers is not None else settings.SWEEP_WORKERS

    @staticmethod
    def tasks(spec: SweepSpec) -> List[RowTask]:
        family = spec.family
        name = SWEEP_FAMILIES[family.value]
        tasks: List[RowTask] = []

        def task(value: int, i: int, instance: Optional[Tuple[int, ...]] = None,
                 extra: Optional[Dict[str, int]] = None) -> RowTask:
            params = {name: value, **(extra or {"i": i})}
            return RowTask(family=family, params=params, rng_key=f"{spec.seed}:{family.value}:{value}:{i}",
                           budget_ms=spec.budget_ms, oracle=spec.oracle, k=spec.k, ell=spec.ell,
                           instance=instance)

        for value in range(spec.start, spec.stop + 1):
            if spec.exhaustive and family == SweepFamily.ES:
                for i, perm in enumerate(permutations(range(value))):
                    tasks.append(task(value, i, instance=perm))
            elif spec.exhaustive and family == SweepFamily.PW2:
                for index, g in connected_atlas(value, min_order=value):
                    if TreewidthService(budget_ms=spec.budget_ms).exact_pathwidth(g)[0] <= 2:
                        tasks.append(task(value, index, instance=(index,), extra={"atlas": index}))
            else:
                tasks.extend(task(value, i) for i in range(spec.seeds))
        return tasks

    def run_sweep(self, spec: SweepSpec) -> SweepReport:
        tasks = self.tasks(spec)
        logger.info(f"run_sweep: {spec.family.value} {spec.start}..{spec.stop}, {len(tasks)} rows, "
                    f"{self.workers} worker(s)")
        if self.workers > 1 and len(tasks) > 1:
            with Pool(self.workers) as pool:
                rows = pool.map(run_row, tasks)
        else:
            rows = [run_row(t) for t in tasks]

        report = SweepReport(family=spec.family, seed=spec.seed, rows=rows)
        for row in rows:
            if row.outcome == RowOutcome.VIOLATED:
                logger.error(f"run_sweep: {row.family.value} {row.params} violated: {row.witness}")
        logger.info(f"run_sweep: {report.count(RowOutcome.VERIFIED)} verified, "
                    f"{report.count(RowOutcome.VIOLATED)} violated, {report.count(RowOutcome.UNKNOWN)} unknown")
        return report


# ---------- consistency of the exclusion bounds ----------
class CrossCheckService:
    """tw(host) >= bound(family, k) must never meet an absent pattern minor."""

    def __init__(self, budget_ms: Optional[int] = None):
        self.budget_ms = budget_ms if budget_ms is not None else settings.DEFAULT_BUDGET_MS

    @staticmethod
    def default_pattern(family: str, k: int) -> Graph:
        if family == "wheel":
            return PatternService.wheel(max(k, 3))
        if family == "double_wheel":
            return PatternService.double_wheel(max(k, 3))
        if family == "pw2":
            return GraphService.make_graph(k, [(i, (i + 1) % k) for i in range(k)])
        if family == "yurt":
            return PatternService.yurt(k)
        raise PreconditionError(f"unknown family '{family}', expected one of {sorted(BOUND_FAMILIES)}")

    @staticmethod
    def _verdict(tw: Optional[int], bound: int, minor: MinorOutcome) -> Tuple[CrossCheckVerdict, Optional[bool]]:
        if tw is None:
            return CrossCheckVerdict.UNKNOWN, None
        if tw < bound:
            return CrossCheckVerdict.CONSISTENT, True
        if minor == MinorOutcome.FOUND:
            return CrossCheckVerdict.CONSISTENT, False
        if minor == MinorOutcome.ABSENT:
            return CrossCheckVerdict.INCONSISTENT, False
        return CrossCheckVerdict.UNKNOWN, False

    def treewidth(self, host: Graph) -> Tuple[Optional[int], str]:
        try:
            return TreewidthService(budget_ms=self.budget_ms).exact_treewidth(host)[0], ""
        except BudgetExceededError as e:
            logger.warning(f"cross_check: treewidth unknown, {e.detail}")
            return None, e.detail

    def cross_check(self, family: str, k: int, host: Graph, pattern: Optional[Graph] = None,
                    tw: Optional[int] = None, search_when_vacuous: bool = True) -> CrossCheckReport:
        bound = BoundFormulas.bound(family, k)
        low = BoundFormulas.smallest_order(family)
        if k < low:
            raise PreconditionError(f"the {family} bound is only proven for k >= {low}, got k={k}")
        pattern = pattern if pattern is not None else self.default_pattern(family, k)
        detail = ""
        if tw is None:
            tw, detail = self.treewidth(host)

        minor = MinorOutcome.UNKNOWN
        vacuous = tw is not None and tw < bound
        if search_when_vacuous or not vacuous:
            found = MinorService(budget_ms=self.budget_ms).is_minor(pattern, host)
            minor = found.outcome
            detail = detail or found.detail

        verdict, vacuous_flag = self._verdict(tw, bound, minor)
        if verdict == CrossCheckVerdict.INCONSISTENT:
            logger.error(f"cross_check: tw={tw} >= {bound} but {family} pattern is absent")
        return CrossCheckReport(family=family, k=k, host_order=host.order, host_size=host.size,
                                treewidth=tw, bound=bound, minor=minor, vacuous=vacuous_flag,
                                verdict=verdict, detail=detail)

    def census(self, max_order: int, k_max: int = 4, families: Iterable[str] = tuple(BOUND_FAMILIES)
               ) -> CensusReport:
        families = list(families)
        graphs = checks = unknown = 0
        bad: List[CrossCheckReport] = []
        for _, g in connected_atlas(max_order):
            graphs += 1
            tw, _ = self.treewidth(g)
            for family in families:
                for k in range(BoundFormulas.smallest_order(family), k_max + 1):
                    checks += 1
                    report = self.cross_check(family, k, g, tw=tw, search_when_vacuous=False)
                    if report.verdict == CrossCheckVerdict.UNKNOWN:
                        unknown += 1
                    elif report.verdict == CrossCheckVerdict.INCONSISTENT:
                        bad.append(report)
        logger.info(f"census: {graphs} graphs, {checks} checks, {len(bad)} inconsistent, {unknown} unknown")
        return CensusReport(max_order=max_order, graphs=graphs, checks=checks, unknown=unknown,
                            inconsistencies=bad)
