# services/format_service.py
import json
import logging
from typing import Any, Optional, Union

import networkx as nx

from core.exceptions import InvalidGraphError
from models.certificate import SeparationCertificate
from models.decomposition import NiceAnnotation, PathDecomposition, TreeDecomposition
from models.graph import Graph, VertexPath
from models.minor_model import MinorModel
from schemas.certificate import CertificatePayload
from schemas.construction import ConstructionPayload, ConstructionResult
from schemas.decomposition import PathDecompositionPayload, TreeDecompositionPayload
from schemas.graph import GraphFormat, GraphPayload
from schemas.model import MinorModelPayload, MinorSearchPayload, MinorSearchResult
from services.graph_service import GraphService

logger = logging.getLogger(__name__)


class FormatService:
    """Graph files and the JSON payloads exchanged on the command line."""

    # ---------- graphs ----------
    @staticmethod
    def read_graph(data: Union[str, bytes], fmt: GraphFormat) -> Graph:
        text = data.decode("utf-8") if isinstance(data, bytes) else data
        if fmt == GraphFormat.GRAPH6:
            line = next((x.strip() for x in text.splitlines() if x.strip()), "")
            if line.startswith(">>graph6<<"):
                line = line[len(">>graph6<<"):]
            try:
                return Graph.from_networkx(nx.from_graph6_bytes(line.encode("ascii")))
            except (ValueError, nx.NetworkXError) as e:
                raise InvalidGraphError(f"bad graph6 data: {e}") from e
        if fmt == GraphFormat.DIMACS:
            return FormatService._read_dimacs(text)
        try:
            payload = GraphPayload.model_validate_json(text)
        except ValueError as e:
            raise InvalidGraphError(f"bad graph JSON: {e}") from e
        return FormatService.graph_from_payload(payload)

    @staticmethod
    def _read_dimacs(text: str) -> Graph:
        n: Optional[int] = None
        style = ""
        edges = []
        for number, raw in enumerate(text.splitlines(), start=1):
            parts = raw.split()
            if not parts or parts[0] == "c":
                continue
            if parts[0] == "p":
                if len(parts) != 4 or parts[1] not in ("edge", "tw"):
                    raise InvalidGraphError(f"line {number}: expected 'p edge n m' or 'p tw n m'")
                style, n = parts[1], int(parts[2])
                continue
            if n is None:
                raise InvalidGraphError(f"line {number}: edge before the problem line")
            if parts[0] == "e":
                parts = parts[1:]
            if len(parts) != 2:
                raise InvalidGraphError(f"line {number}: expected an edge, got {raw!r}")
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
        if n is None:
            raise InvalidGraphError("missing problem line")
        logger.debug(f"read DIMACS ({style}): {n} vertices, {len(edges)} edges")
        return GraphService.make_graph(n, edges)

    @staticmethod
    def write_graph(g: Graph, fmt: GraphFormat) -> str:
        if fmt == GraphFormat.GRAPH6:
            flat, _ = GraphService.relabel_consecutive(g)
            return nx.to_graph6_bytes(flat.to_networkx(), header=False).decode("ascii").strip() + "\n"
        if fmt == GraphFormat.DIMACS:
            flat, _ = GraphService.relabel_consecutive(g)
            lines = [f"p edge {flat.order} {flat.size}"]
            lines += [f"e {u + 1} {v + 1}" for u, v in flat.sorted_edges()]
            return "\n".join(lines) + "\n"
        return FormatService.graph_payload(g).model_dump_json(exclude_none=True) + "\n"

    @staticmethod
    def graph_payload(g: Graph) -> GraphPayload:
        consecutive = g.vertex_ids == tuple(range(g.order))
        return GraphPayload(
            n=g.order,
            edges=[list(e) for e in g.sorted_edges()],
            vertices=None if consecutive else list(g.vertex_ids),
        )

    @staticmethod
    def graph_from_payload(p: GraphPayload) -> Graph:
        if p.vertices is None:
            return GraphService.make_graph(p.n, p.edges)
        return Graph(p.vertices, p.edges)

    # ---------- decompositions ----------
    @staticmethod
    def path_decomposition_payload(pd: PathDecomposition, with_kinds: bool = False) -> PathDecompositionPayload:
        kinds = None
        if with_kinds:
            kinds = [k.value for k in NiceAnnotation.from_bags(pd.bags).node_kinds]
        return PathDecompositionPayload(bags=pd.as_lists(), node_kinds=kinds)

    @staticmethod
    def tree_decomposition_payload(td: TreeDecomposition) -> TreeDecompositionPayload:
        nodes = sorted(td.bags)
        index = {node: i for i, node in enumerate(nodes)}
        return TreeDecompositionPayload(
            bags=[sorted(td.bags[node]) for node in nodes],
            tree_edges=[(index[a], index[b]) for a, b in td.shape.sorted_edges()],
        )

    @staticmethod
    def decomposition_from_json(text: str) -> Union[PathDecomposition, TreeDecomposition]:
        try:
            raw = json.loads(text)
        except ValueError as e:
            raise InvalidGraphError(f"bad decomposition JSON: {e}") from e
        if "tree_edges" in raw:
            p = TreeDecompositionPayload.model_validate(raw)
            return TreeDecomposition(
                shape=Graph(range(len(p.bags)), p.tree_edges),
                bags={i: frozenset(b) for i, b in enumerate(p.bags)},
            )
        return PathDecomposition.of(PathDecompositionPayload.model_validate(raw).bags)

    # ---------- models and certificates ----------
    @staticmethod
    def model_payload(m: MinorModel) -> MinorModelPayload:
        return MinorModelPayload(
            pattern=FormatService.graph_payload(m.pattern),
            host=FormatService.graph_payload(m.host),
            branch_sets={x: sorted(bs) for x, bs in sorted(m.branch_sets.items())},
        )

    @staticmethod
    def model_from_payload(p: MinorModelPayload) -> MinorModel:
        return MinorModel(
            pattern=FormatService.graph_from_payload(p.pattern),
            host=FormatService.graph_from_payload(p.host),
            branch_sets={int(x): frozenset(bs) for x, bs in p.branch_sets.items()},
        )

    @staticmethod
    def minor_search_payload(r: MinorSearchResult) -> MinorSearchPayload:
        return MinorSearchPayload(
            outcome=r.outcome,
            model=FormatService.model_payload(r.model) if r.model is not None else None,
            detail=r.detail,
            states_explored=r.states_explored,
        )

    @staticmethod
    def certificate_from_payload(p: CertificatePayload, host: Graph) -> SeparationCertificate:
        pattern = FormatService.graph_from_payload(p.pattern)
        left = MinorModel(pattern=pattern, host=host,
                          branch_sets={int(x): frozenset(bs) for x, bs in p.branch_sets.items()})
        return SeparationCertificate(
            side_a=frozenset(p.side_a),
            side_b=frozenset(p.side_b),
            left_model=left,
            linkage=tuple(VertexPath(path) for path in p.linkage),
        )

    @staticmethod
    def certificate_payload(c: SeparationCertificate) -> CertificatePayload:
        return CertificatePayload(
            side_a=sorted(c.side_a),
            side_b=sorted(c.side_b),
            pattern=FormatService.graph_payload(c.left_model.pattern),
            branch_sets={x: sorted(bs) for x, bs in sorted(c.left_model.branch_sets.items())},
            linkage=[list(p.vertices) for p in c.linkage],
        )

    @staticmethod
    def construction_payload(r: ConstructionResult) -> ConstructionPayload:
        return ConstructionPayload(
            construction=r.construction,
            host=FormatService.graph_payload(r.host),
            model=FormatService.model_payload(r.model),
            order_achieved=r.order_achieved,
            order_promised=r.order_promised,
            details=FormatService.jsonable(r.details),
        )

    @staticmethod
    def jsonable(value: Any) -> Any:
        if isinstance(value, dict):
            return {str(k): FormatService.jsonable(v) for k, v in value.items()}
        if isinstance(value, (list, tuple, set, frozenset)):
            items = sorted(value) if isinstance(value, (set, frozenset)) else value
            return [FormatService.jsonable(v) for v in items]
        return value

    @staticmethod
    def dump(obj: Any) -> str:
        if hasattr(obj, "model_dump"):
            return json.dumps(obj.model_dump(mode="json", by_alias=True), indent=2, sort_keys=True) + "\n"
        return json.dumps(FormatService.jsonable(obj), indent=2, sort_keys=True) + "\n"

    @staticmethod
    def read_certificate(text: str, host: Graph) -> SeparationCertificate:
        try:
            payload = CertificatePayload.model_validate_json(text)
        except ValueError as e:
            raise InvalidGraphError(f"bad certificate JSON: {e}") from e
        return FormatService.certificate_from_payload(payload, host)

    @staticmethod
    def read_model(text: str) -> MinorModel:
        try:
            payload = MinorModelPayload.model_validate_json(text)
        except ValueError as e:
            raise InvalidGraphError(f"bad model JSON: {e}") from e
        return FormatService.model_from_payload(payload)
