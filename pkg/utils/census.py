# utils/census.py
"""Small-graph populations for sweeps, cross-checks and tests."""
import random
from typing import Iterator, List, Tuple

import networkx as nx

from models.graph import Graph

# graph_atlas_g() lists every graph on at most this many vertices
ATLAS_MAX_ORDER = 7


def connected_atlas(max_order: int, min_order: int = 1) -> Iterator[Tuple[int, Graph]]:
    """(atlas index, graph) for every connected graph with min_order..max_order vertices."""
    if max_order > ATLAS_MAX_ORDER:
        raise ValueError(f"the graph atlas stops at {ATLAS_MAX_ORDER} vertices")
    for index, g in enumerate(nx.graph_atlas_g()):
        n = g.number_of_nodes()
        if n < min_order or n > max_order:
            continue
        if nx.is_connected(g):
            yield index, Graph.from_networkx(g)


def trees(n: int) -> Iterator[Graph]:
    if n == 1:
        yield Graph([0])
        return
    for t in nx.nonisomorphic_trees(n):
        yield Graph.from_networkx(t)


def random_tree(n: int, rng: random.Random) -> Graph:
    if n <= 2:
        return Graph(range(n), [(0, 1)] if n == 2 else [])
    return Graph.from_networkx(nx.from_prufer_sequence([rng.randrange(n) for _ in range(n - 2)]))


def random_pw2_graph(n: int, rng: random.Random) -> Graph:
    """Connected graph on n vertices built along a path decomposition of width at most two."""
    edges: List[Tuple[int, int]] = []
    bag: List[int] = []
    for v in range(n):
        if len(bag) == 3:
            bag.pop(rng.randrange(3))
        if bag:
            anchor = rng.choice(bag)
            edges.append((anchor, v))
            edges.extend((u, v) for u in bag if u != anchor and rng.random() < 0.5)
        bag.append(v)
    return Graph(range(n), edges)
