# schemas/graph.py
from pydantic import BaseModel, Field, model_validator
from typing import Optional, List, Tuple
from enum import Enum


class GraphFormat(str, Enum):
    GRAPH6 = "graph6"
    DIMACS = "dimacs"
    JSON = "json"


class GraphPayload(BaseModel):
    """JSON edge list. `vertices` is only present when ids are not 0..n-1."""
    n: int = Field(..., ge=0)
    edges: List[Tuple[int, int]] = []
    vertices: Optional[List[int]] = None

    @model_validator(mode="after")
    def check_vertices(self):
        if self.vertices is not None and len(set(self.vertices)) != self.n:
            raise ValueError(f"vertices lists {len(set(self.vertices))} distinct ids but n = {self.n}")
        return self
