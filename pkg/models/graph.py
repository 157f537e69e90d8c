# models/graph.py
from typing import FrozenSet, Iterable, Iterator, Optional, Sequence, Tuple

import networkx as nx

from core.exceptions import InvalidGraphError

Edge = Tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable finite simple undirected graph on non-negative integer ids.

    The adjacency lives in a frozen networkx graph; every operation that
    changes the graph builds a new value.
    """

    __slots__ = ("_nx", "_vertex_ids", "_edges")

    def __init__(self, vertex_ids: Iterable[int], edges: Iterable[Sequence[int]] = ()):
        vertices = sorted(set(vertex_ids))
        for v in vertices:
            if not isinstance(v, int) or v < 0:
                raise InvalidGraphError(f"vertex id {v!r} is not a non-negative integer")

        g = nx.Graph()
        g.add_nodes_from(vertices)
        for pair in edges:
            u, v = pair
            if u == v:
                raise InvalidGraphError(f"loop ({u}, {v}) is not allowed", witness=(u, v))
            if u not in g or v not in g:
                raise InvalidGraphError(f"edge ({u}, {v}) references an unknown vertex", witness=(u, v))
            g.add_edge(u, v)

        self._nx = nx.freeze(g)
        self._vertex_ids: Tuple[int, ...] = tuple(vertices)
        self._edges: Optional[FrozenSet[Edge]] = None

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        return cls(g.nodes, g.edges)

    # ---------- views ----------
    @property
    def vertex_ids(self) -> Tuple[int, ...]:
        return self._vertex_ids

    @property
    def edges(self) -> FrozenSet[Edge]:
        if self._edges is None:
            self._edges = frozenset(normalize_edge(u, v) for u, v in self._nx.edges)
        return self._edges

    @property
    def order(self) -> int:
        return len(self._vertex_ids)

    @property
    def size(self) -> int:
        return self._nx.number_of_edges()

    def sorted_edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def neighbors(self, v: int) -> FrozenSet[int]:
        if v not in self._nx:
            raise InvalidGraphError(f"unknown vertex {v}", witness=v)
        return frozenset(self._nx.adj[v])

    def degree(self, v: int) -> int:
        if v not in self._nx:
            raise InvalidGraphError(f"unknown vertex {v}", witness=v)
        return len(self._nx.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return self._nx.has_edge(u, v)

    def to_networkx(self) -> nx.Graph:
        """The frozen backing graph. Mutating it raises."""
        return self._nx

    # ---------- value semantics ----------
    def __contains__(self, v: object) -> bool:
        return v in self._nx

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertex_ids)

    def __len__(self) -> int:
        return len(self._vertex_ids)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertex_ids == other._vertex_ids and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self._vertex_ids, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.order}, m={self.size})"


class VertexPath:
    """Ordered sequence of distinct vertices. A single vertex is the null path."""

    __slots__ = ("_vertices",)

    def __init__(self, vertices: Iterable[int]):
        vs = tuple(vertices)
        if not vs:
            raise InvalidGraphError("a path needs at least one vertex")
        if len(set(vs)) != len(vs):
            raise InvalidGraphError(f"path {list(vs)} repeats a vertex", witness=vs)
        self._vertices = vs

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    @property
    def length(self) -> int:
        return len(self._vertices) - 1

    @property
    def start(self) -> int:
        return self._vertices[0]

    @property
    def end(self) -> int:
        return self._vertices[-1]

    @property
    def interior(self) -> Tuple[int, ...]:
        return self._vertices[1:-1]

    def reversed(self) -> "VertexPath":
        return VertexPath(reversed(self._vertices))

    def validate(self, host: Graph) -> None:
        for v in self._vertices:
            if v not in host:
                raise InvalidGraphError(f"path vertex {v} is not in the host", witness=v)
        for u, v in zip(self._vertices, self._vertices[1:]):
            if not host.has_edge(u, v):
                raise InvalidGraphError(f"path step ({u}, {v}) is not a host edge", witness=(u, v))

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexPath):
            return NotImplemented
        return self._vertices == other._vertices

    def __hash__(self) -> int:
        return hash(self._vertices)

    def __repr__(self) -> str:
        return f"VertexPath({list(self._vertices)})"
