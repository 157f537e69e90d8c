# schemas/decomposition.py
from pydantic import BaseModel
from typing import Optional, List, Tuple
from enum import Enum


class PathDecompositionPayload(BaseModel):
    bags: List[List[int]]
    node_kinds: Optional[List[str]] = None


class TreeDecompositionPayload(BaseModel):
    bags: List[List[int]]
    tree_edges: List[Tuple[int, int]] = []


class WidthOutcome(str, Enum):
    EXACT = "exact"
    UNKNOWN = "unknown"


class WidthResult(BaseModel):
    measure: str
    outcome: WidthOutcome
    width: Optional[int] = None
    tree_decomposition: Optional[TreeDecompositionPayload] = None
    path_decomposition: Optional[PathDecompositionPayload] = None
    detail: str = ""
