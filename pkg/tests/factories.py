# tests/factories.py
"""Small named graphs and hand-built certificates shared by the tests."""
from typing import Sequence, Tuple

import networkx as nx

from models.certificate import SeparationCertificate
from models.graph import Graph, VertexPath
from models.minor_model import MinorModel
from services.graph_service import GraphService
from services.pattern_service import PatternService


def path(n: int) -> Graph:
    return Graph(range(n), ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    return Graph(range(n), ((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    return Graph(range(n), ((u, v) for u in range(n) for v in range(u + 1, n)))


def star(leaves: int) -> Graph:
    """Center 0, leaves 1..leaves."""
    return Graph(range(leaves + 1), ((0, i) for i in range(1, leaves + 1)))


def from_nx(g: nx.Graph) -> Graph:
    return Graph.from_networkx(nx.convert_node_labels_to_integers(g))


def linked_certificate(pattern: Graph, pairs: Sequence[Tuple[int, int]]) -> Tuple[Graph, SeparationCertificate]:
    """Host and certificate left-containing `pattern` (ids 0..N-1).

    Pattern vertex x owns {x, N + x}; the separator is N..2N-1. Each pair
    (x, y) gets a middle vertex joined to N + x and N + y, and one hub joins
    every middle so the right-hand side stays connected.
    """
    n = pattern.order
    middles = [2 * n + i for i in range(len(pairs))]
    hub = 2 * n + len(pairs)
    edges = list(pattern.edges) + [(x, n + x) for x in range(n)]
    linkage = []
    for (x, y), m in zip(pairs, middles):
        edges += [(n + x, m), (m, n + y), (m, hub)]
        linkage.append(VertexPath([n + x, m, n + y]))
    host = Graph(range(hub + 1 if pairs else 2 * n), edges)
    left = MinorModel(pattern=pattern, host=host, branch_sets={x: frozenset([x, n + x]) for x in range(n)})
    cert = SeparationCertificate(
        side_a=frozenset(range(2 * n)),
        side_b=frozenset(range(n, host.order)),
        left_model=left,
        linkage=tuple(linkage),
    )
    return host, cert


def tree_certificate(tree: Graph, partners: Sequence[int], right_edges: Sequence[Tuple[int, int]],
                     extra: int = 0) -> Tuple[Graph, SeparationCertificate]:
    """Host and certificate left-containing h_star(tree) with a chosen right-hand side.

    Pattern vertex x owns {x, 2n + x}; the separator is 2n..4n-1. The i-th
    leaf (sorted) gets one marker 4n + i joined to 2n + leaf and to
    2n + (n + partners[i]). `right_edges` join markers (ids below the leaf
    count) and `extra` plain vertices (ids from the leaf count on).
    """
    n = tree.order
    leaves = sorted(GraphService.tree_metrics(tree).leaves)
    base = 4 * n
    edges = list(PatternService.h_star(tree).edges) + [(x, 2 * n + x) for x in range(2 * n)]
    edges += [(base + u, base + v) for u, v in right_edges]
    linkage = []
    for i, (leaf, p) in enumerate(zip(leaves, partners)):
        route = [2 * n + leaf, base + i, 3 * n + p]
        edges += [(route[0], route[1]), (route[1], route[2])]
        linkage.append(VertexPath(route))
    host = Graph(range(base + len(leaves) + extra), edges)
    left = MinorModel(pattern=PatternService.h_star(tree), host=host,
                      branch_sets={x: frozenset([x, 2 * n + x]) for x in range(2 * n)})
    cert = SeparationCertificate(
        side_a=frozenset(range(base)),
        side_b=frozenset(range(2 * n, host.order)),
        left_model=left,
        linkage=tuple(linkage),
    )
    return host, cert
