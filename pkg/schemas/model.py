# schemas/model.py
from pydantic import BaseModel, ConfigDict
from typing import Optional, List, Dict, Tuple
from enum import Enum

from models.minor_model import MinorModel
from schemas.graph import GraphPayload


class MinorOutcome(str, Enum):
    FOUND = "found"
    ABSENT = "absent"
    UNKNOWN = "unknown"


class LinkedOutcome(str, Enum):
    LINKED = "linked"
    NOT_LINKED = "not_linked"
    UNKNOWN = "unknown"


class MinorModelPayload(BaseModel):
    pattern: GraphPayload
    host: GraphPayload
    branch_sets: Dict[int, List[int]]


class MinorSearchResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    outcome: MinorOutcome
    model: Optional[MinorModel] = None
    detail: str = ""
    states_explored: int = 0


class LinkednessResult(BaseModel):
    outcome: LinkedOutcome
    failing_pair: Optional[Tuple[List[int], List[int]]] = None
    pairs_checked: int = 0
    detail: str = ""


class MinorSearchPayload(BaseModel):
    outcome: MinorOutcome
    model: Optional[MinorModelPayload] = None
    detail: str = ""
    states_explored: int = 0
