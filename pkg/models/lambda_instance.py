# models/lambda_instance.py
import math
from functools import cached_property
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict

from models.graph import Graph, VertexPath


def ceil_sqrt(n: int) -> int:
    return 0 if n <= 0 else math.isqrt(n - 1) + 1


class LambdaInstance(BaseModel):
    """A tree, a path, an apex over the path and a matching of the path onto tree leaves."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True, ignored_types=(cached_property,))

    tree: Graph
    path: VertexPath
    apex: int
    # (path vertex, leaf), in path order
    matching: Tuple[Tuple[int, int], ...]

    @cached_property
    def graph(self) -> Graph:
        p = self.path.vertices
        edges = list(self.tree.edges)
        edges.extend(zip(p, p[1:]))
        edges.extend((self.apex, x) for x in p)
        edges.extend(self.matching)
        return Graph(list(self.tree.vertex_ids) + list(p) + [self.apex], edges)

    @property
    def leaf_of(self) -> Dict[int, int]:
        return dict(self.matching)

    @property
    def leaves(self) -> frozenset:
        nxt = self.tree.to_networkx()
        if self.tree.order == 1:
            return frozenset()
        return frozenset(v for v in self.tree.vertex_ids if nxt.degree(v) == 1)

    def violations(self) -> List[str]:
        problems = []
        leaves = self.leaves
        need = ceil_sqrt(len(leaves))
        if len(self.path) < need:
            problems.append(
                f"path has {len(self.path)} vertices, fewer than ceil(sqrt({len(leaves)})) = {need}"
            )
        tree_ids = set(self.tree.vertex_ids)
        path_ids = set(self.path.vertices)
        if tree_ids & path_ids or self.apex in tree_ids | path_ids:
            problems.append("tree, path and apex are not disjoint")
        matched_path = [p for p, _ in self.matching]
        matched_leaves = [l for _, l in self.matching]
        if sorted(matched_path) != sorted(path_ids):
            problems.append("condition (ii): matching does not saturate the path")
        if len(set(matched_leaves)) != len(matched_leaves):
            problems.append("condition (ii): matching reuses a leaf")
        stray = [l for l in matched_leaves if l not in leaves]
        if stray:
            problems.append(f"condition (ii): matched vertices {sorted(stray)} are not leaves")
        return problems
