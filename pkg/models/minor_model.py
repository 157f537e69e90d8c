# models/minor_model.py
from typing import Dict, FrozenSet

from pydantic import BaseModel, ConfigDict

from core.exceptions import InvalidGraphError
from models.graph import Graph


class MinorModel(BaseModel):
    """Branch sets of a pattern inside a host, keyed by pattern vertex."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    pattern: Graph
    host: Graph
    branch_sets: Dict[int, FrozenSet[int]]

    @classmethod
    def identity(cls, g: Graph) -> "MinorModel":
        return cls(pattern=g, host=g, branch_sets={v: frozenset([v]) for v in g.vertex_ids})

    def compose(self, outer: "MinorModel") -> "MinorModel":
        """Model of self.pattern in outer.host, through self.host = outer.pattern."""
        if self.host != outer.pattern:
            raise InvalidGraphError("cannot compose: inner host differs from outer pattern")
        sets = {}
        for x, bs in self.branch_sets.items():
            sets[x] = frozenset().union(*(outer.branch_sets[y] for y in bs))
        return MinorModel(pattern=self.pattern, host=outer.host, branch_sets=sets)

    def owner_map(self) -> Dict[int, int]:
        """host vertex -> pattern vertex, for used host vertices."""
        return {h: x for x, bs in self.branch_sets.items() for h in bs}
