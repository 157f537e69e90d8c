# models/decomposition.py
from enum import Enum
from typing import Dict, FrozenSet, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from core.exceptions import InvalidGraphError
from models.graph import Graph


class NodeKind(str, Enum):
    INTRODUCE = "introduce"
    FORGET = "forget"


class TreeDecomposition(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    shape: Graph
    bags: Dict[int, FrozenSet[int]]

    @property
    def width(self) -> int:
        if not self.bags:
            return -1
        return max(len(b) for b in self.bags.values()) - 1


class PathDecomposition(BaseModel):
    model_config = ConfigDict(frozen=True)

    bags: Tuple[FrozenSet[int], ...]

    @classmethod
    def of(cls, bags: Sequence[Sequence[int]]) -> "PathDecomposition":
        return cls(bags=tuple(frozenset(b) for b in bags))

    @property
    def width(self) -> int:
        if not self.bags:
            return -1
        return max(len(b) for b in self.bags) - 1

    def as_lists(self) -> List[List[int]]:
        return [sorted(b) for b in self.bags]

    def to_tree_decomposition(self) -> TreeDecomposition:
        k = len(self.bags)
        shape = Graph(range(k), ((i, i + 1) for i in range(k - 1)))
        return TreeDecomposition(shape=shape, bags={i: b for i, b in enumerate(self.bags)})


class NiceAnnotation(BaseModel):
    """Introduce/forget kind of every bag of a nice path decomposition."""

    model_config = ConfigDict(frozen=True)

    node_kinds: Tuple[NodeKind, ...]

    @classmethod
    def from_bags(cls, bags: Sequence[FrozenSet[int]]) -> "NiceAnnotation":
        if not bags:
            return cls(node_kinds=())
        if len(bags[0]) != 1:
            raise InvalidGraphError(f"first bag has size {len(bags[0])}, a nice decomposition starts with 1")
        kinds = [NodeKind.INTRODUCE]
        for i in range(1, len(bags)):
            added = bags[i] - bags[i - 1]
            removed = bags[i - 1] - bags[i]
            if len(added) == 1 and not removed:
                kinds.append(NodeKind.INTRODUCE)
            elif len(removed) == 1 and not added:
                kinds.append(NodeKind.FORGET)
            else:
                raise InvalidGraphError(
                    f"bags {i} and {i + 1} differ by {len(added) + len(removed)} elements",
                    witness=i + 1,
                )
        return cls(node_kinds=tuple(kinds))

    def count(self, kind: NodeKind) -> int:
        return sum(1 for k in self.node_kinds if k == kind)
