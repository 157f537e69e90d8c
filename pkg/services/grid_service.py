# services/grid_service.py
"""
Models of the subdivided grid xi(k) and of yurts.

xi(k) layout: x_j = j, y_j = k+j, z_j = 2k+j.
yurt(k) layout: bottom x_i = i, top y_i = k+i, apex 2k.
"""
import logging
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from core.bound_formulas import BoundFormulas
from core.exceptions import PreconditionError
from models.certificate import SeparationCertificate
from models.decomposition import PathDecomposition
from models.graph import Graph
from models.lambda_instance import LambdaInstance
from models.minor_model import MinorModel
from models.monotone_witness import Direction, MonotoneWitness
from schemas.construction import ConstructionResult
from services.decomposition_service import DecompositionService
from services.graph_service import GraphService
from services.linkage_service import LinkageService
from services.minor_service import require_model
from services.pattern_service import PatternService
from services.sequence_service import SequenceService
from services.treewidth_service import TreewidthService

logger = logging.getLogger(__name__)


def _segments(points: Sequence[int], direction: Direction) -> List[range]:
    """Consecutive runs of positions starting at each point, the last one a single position."""
    out = []
    for a, b in zip(points, points[1:]):
        out.append(range(a, b) if direction == Direction.INCREASING else range(b + 1, a + 1))
    out.append(range(points[-1], points[-1] + 1))
    return out


class GridService:

    # ---------- graphs of pathwidth at most two ----------
    @staticmethod
    def embed_pw2_in_xi(g: Graph, pd: Optional[PathDecomposition] = None,
                        budget_ms: Optional[int] = None) -> ConstructionResult:
        n = g.order
        if n == 0:
            raise PreconditionError("cannot embed the empty graph")
        if n <= 2:
            return GridService._embed_tiny(g)

        if pd is None:
            pw, pd = TreewidthService(budget_ms=budget_ms).exact_pathwidth(g)
            if pw > 2:
                raise PreconditionError(f"graph has pathwidth {pw}, at most 2 is required")
            if pw == 2:
                pd = DecompositionService.compactify(g, pd, assume_optimal=True)
        else:
            DecompositionService.require_valid(g, pd)
            if pd.width > 2:
                raise PreconditionError(f"decomposition has width {pd.width}, at most 2 is required")
            if pd.width == 2 and not DecompositionService.is_compact(g, pd):
                raise PreconditionError("decomposition of width 2 must be compact")

        padded, added = g, []
        if pd.width < 2:
            padded, pd, added = GridService._pad_to_width_two(g, pd)
            logger.info(f"embed_pw2_in_xi: added {len(added)} edges to reach pathwidth 2")

        k = n - 1
        labels = GridService._label_columns(list(pd.bags))
        sets: Dict[int, set] = {v: set() for v in g.vertex_ids}
        for col, (x, y, z) in enumerate(labels):
            sets[x].add(col)
            sets[y].add(k + col)
            sets[z].add(2 * k + col)

        host = PatternService.xi(k)
        branch_sets = {v: frozenset(s) for v, s in sets.items()}
        require_model(host, padded, MinorModel(pattern=padded, host=host, branch_sets=branch_sets),
                      "embed_pw2_in_xi")
        model = MinorModel(pattern=g, host=host, branch_sets=branch_sets)
        require_model(host, g, model, "embed_pw2_in_xi")
        return ConstructionResult(
            construction="pw2",
            host=host,
            model=model,
            order_achieved=k,
            order_promised=n - 1,
            details={"padded_edges": [list(e) for e in added]},
        )

    @staticmethod
    def _embed_tiny(g: Graph) -> ConstructionResult:
        host = PatternService.xi(1)
        vs = g.vertex_ids
        if len(vs) == 1:
            sets = {vs[0]: frozenset([1])}
        else:
            sets = {vs[0]: frozenset([0]), vs[1]: frozenset([1, 2])}
        model = MinorModel(pattern=g, host=host, branch_sets=sets)
        require_model(host, g, model, "embed_pw2_in_xi")
        return ConstructionResult(construction="pw2", host=host, model=model,
                                  order_achieved=1, order_promised=1, details={})

    @staticmethod
    def _pad_to_width_two(g: Graph, pd: PathDecomposition) -> Tuple[Graph, PathDecomposition, List[Tuple[int, int]]]:
        """Widen each nice bag by its neighbours and make every widened bag a clique."""
        current, added = g, []
        while pd.width < 2:
            nice, _ = DecompositionService.make_nice(current, pd)
            bags = list(nice.bags)
            wide = []
            for i, bag in enumerate(bags):
                before = bags[i - 1] if i > 0 else frozenset()
                after = bags[i + 1] if i + 1 < len(bags) else frozenset()
                if bag or before or after:
                    wide.append(before | bag | after)
            new_edges = sorted({(u, v) for bag in wide for u in bag for v in bag
                                if u < v and not current.has_edge(u, v)})
            current = GraphService.add_edges(current, new_edges)
            added.extend(new_edges)
            pd = PathDecomposition(bags=tuple(wide))
        compact = DecompositionService.compactify(current, pd, assume_optimal=True)
        return current, compact, added

    @staticmethod
    def _label_columns(bags: List[FrozenSet[int]]) -> List[Tuple[int, int, int]]:
        """(x, y, z) labels of the columns 0..r of xi(r+1) for a compact width-2 decomposition."""
        r = len(bags)
        if r == 1:
            a, b, y1 = sorted(bags[0])
        else:
            a, b = sorted(bags[0] & bags[1])
            (y1,) = bags[0] - bags[1]
        labels = [(a, a, b), (a, y1, b)]
        x, z = a, b
        for i in range(1, r):
            (y,) = bags[i] - bags[i - 1]
            if i + 1 < r and bags[i - 1] & bags[i] != bags[i] & bags[i + 1]:
                (kept,) = bags[i - 1] & bags[i] & bags[i + 1]
                if kept == x:
                    z = y
                else:
                    x = y
            labels.append((x, y, z))
        return labels

    # ---------- xi(k) from a double path ----------
    @staticmethod
    def xi_from_double_path(k: int, linkage_perm: Sequence[int]) -> ConstructionResult:
        if k < 2:
            raise PreconditionError(f"xi extraction needs k >= 2, got {k}")
        p_len = len(linkage_perm)
        host = PatternService.double_path(p_len, linkage_perm)
        need = BoundFormulas.xi_es_length(k)
        if p_len >= need:
            run = SequenceService.es_extract(linkage_perm, k, k)
        else:
            run = SequenceService.find_run(linkage_perm, k, k)
            if run is None:
                raise PreconditionError(
                    f"{p_len} links hold no monotone run of length {k}; (k-1)^2+1 = {need} links always do"
                )
        return GridService._xi_from_run(host, k, p_len, linkage_perm, run)

    @staticmethod
    def _xi_from_run(host: Graph, k: int, p_len: int, perm: Sequence[int], run: MonotoneWitness) -> ConstructionResult:
        idx = list(run.indices)
        values = [perm[i] for i in idx]
        x_parts = _segments(idx, Direction.INCREASING)
        z_parts = _segments(values, run.direction)

        sets: Dict[int, FrozenSet[int]] = {}
        for j in range(k):
            sets[j] = frozenset(x_parts[j])
            sets[k + j] = frozenset([2 * p_len + idx[j]])
            sets[2 * k + j] = frozenset(p_len + v for v in z_parts[j])
        pattern = PatternService.xi(k)
        model = MinorModel(pattern=pattern, host=host, branch_sets=sets)
        require_model(host, pattern, model, "xi_from_double_path")
        logger.info(f"xi_from_double_path: k={k}, {run.direction.value} run over {p_len} links")
        return ConstructionResult(
            construction="xi",
            host=host,
            model=model,
            order_achieved=k,
            order_promised=k,
            details={"direction": run.direction.value, "indices": idx},
        )

    @staticmethod
    def double_path_from_certificate(host: Graph, cert: SeparationCertificate,
                                     budget_ms: Optional[int] = None) -> Tuple[ConstructionResult, List[int]]:
        """Model of double_path(l, perm) from a certificate left-containing a path on 2l vertices."""
        pattern = cert.left_model.pattern
        two_l = pattern.order
        if two_l < 2 or two_l % 2 or pattern != Graph(range(two_l), ((i, i + 1) for i in range(two_l - 1))):
            raise PreconditionError("left model is not a path on an even number of vertices")
        LinkageService(budget_ms=budget_ms).require_certificate(host, cert)
        ell = two_l // 2
        owner = cert.left_model.owner_map()
        phi = cert.left_model.branch_sets

        partner: Dict[int, int] = {}
        middle: Dict[int, FrozenSet[int]] = {}
        for path in cert.linkage:
            a, b = owner.get(path.start), owner.get(path.end)
            if a is None or b is None or path.length < 2:
                continue
            if a >= ell > b:
                a, b = b, a
            if a < ell <= b:
                partner[a] = b - ell
                middle[a] = frozenset(path.interior)
        if sorted(partner) != list(range(ell)) or sorted(partner.values()) != list(range(ell)):
            raise PreconditionError(f"linkage joins {len(partner)} of {ell} first-half vertices to the second half")

        perm = [partner[i] for i in range(ell)]
        target = PatternService.double_path(ell, perm)
        sets = {i: phi[i] for i in range(two_l)}
        for i in range(ell):
            sets[two_l + i] = middle[i]
        model = MinorModel(pattern=target, host=host, branch_sets=sets)
        require_model(host, target, model, "double_path_from_certificate")
        result = ConstructionResult(construction="double_path", host=host, model=model,
                                    order_achieved=ell, order_promised=ell, details={"perm": perm})
        return result, perm

    @staticmethod
    def xi_from_certificate(host: Graph, cert: SeparationCertificate, k: int,
                            budget_ms: Optional[int] = None) -> ConstructionResult:
        outer, perm = GridService.double_path_from_certificate(host, cert, budget_ms=budget_ms)
        inner = GridService.xi_from_double_path(k, perm)
        model = inner.model.compose(outer.model)
        require_model(host, model.pattern, model, "xi_from_certificate")
        return ConstructionResult(construction="xi_certificate", host=host, model=model,
                                  order_achieved=k, order_promised=k, details=inner.details)

    # ---------- yurts ----------
    @staticmethod
    def comb_layout(tree: Graph) -> Tuple[List[int], Dict[int, int]]:
        """Spine in order from its smaller-id end, and tooth -> spine index."""
        GraphService.require_tree(tree)
        if tree.order < 4:
            raise PreconditionError(f"comb with {tree.order // 2} teeth is too small")
        leaves = GraphService.tree_metrics(tree).leaves
        spine = [v for v in tree.vertex_ids if v not in leaves]
        nxt = tree.to_networkx()
        spine_graph = nxt.subgraph(spine)
        ends = sorted(v for v in spine if spine_graph.degree(v) <= 1)
        if spine_graph.number_of_edges() != len(spine) - 1 or len(ends) not in (1, 2) \
                or any(spine_graph.degree(v) > 2 for v in spine):
            raise PreconditionError("tree is not a comb: inner vertices do not form a path")
        order = [ends[0]] if len(spine) == 1 else GraphService.tree_path(
            GraphService.induced_subgraph(tree, spine), ends[0], ends[-1]).vertices
        tooth_at: Dict[int, int] = {}
        for i, s in enumerate(order):
            teeth = [x for x in nxt.adj[s] if x in leaves]
            if len(teeth) != 1:
                raise PreconditionError(f"spine vertex {s} carries {len(teeth)} teeth, a comb has one")
            tooth_at[teeth[0]] = i
        return list(order), tooth_at

    @staticmethod
    def yurt_from_lambda_comb(inst: LambdaInstance, k: int) -> ConstructionResult:
        if k < 1:
            raise PreconditionError(f"yurt order must be >= 1, got {k}")
        problems = inst.violations()
        if problems:
            raise PreconditionError(f"instance violates Λ(T): {problems[0]}")
        spine, tooth_at = GridService.comb_layout(inst.tree)
        need = BoundFormulas.xi_es_length(k)
        if len(tooth_at) < need:
            raise PreconditionError(f"comb has {len(tooth_at)} teeth, (k-1)^2+1 = {need} are needed")
        path = list(inst.path.vertices)
        leaf_of = inst.leaf_of
        if len(path) < need:
            raise PreconditionError(f"only {len(path)} teeth are matched, (k-1)^2+1 = {need} are needed")

        seq = [tooth_at[leaf_of[p]] for p in path]
        run = SequenceService.es_extract(seq, k, k)
        idx = list(run.indices)
        spine_idx = [seq[i] for i in idx]
        top = _segments(idx, Direction.INCREASING)
        bottom = _segments(spine_idx, run.direction)
        tooth_of = {i: t for t, i in tooth_at.items()}

        host = inst.graph
        sets: Dict[int, FrozenSet[int]] = {}
        for j in range(k):
            sets[j] = frozenset(spine[s] for s in bottom[j]) | {tooth_of[spine_idx[j]]}
            sets[k + j] = frozenset(path[i] for i in top[j])
        sets[2 * k] = frozenset([inst.apex])
        pattern = PatternService.yurt(k)
        model = MinorModel(pattern=pattern, host=host, branch_sets=sets)
        require_model(host, pattern, model, "yurt_from_lambda_comb")
        logger.info(f"yurt_from_lambda_comb: k={k}, {run.direction.value} run among {len(path)} matched teeth")
        return ConstructionResult(
            construction="yurt",
            host=host,
            model=model,
            order_achieved=k,
            order_promised=k,
            details={"direction": run.direction.value, "teeth": len(tooth_at)},
        )
