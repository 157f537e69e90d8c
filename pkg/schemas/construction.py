# schemas/construction.py
from pydantic import BaseModel, ConfigDict
from typing import Dict, Any

from models.graph import Graph
from models.minor_model import MinorModel
from schemas.graph import GraphPayload
from schemas.model import MinorModelPayload


class ConstructionResult(BaseModel):
    """A host, a verified model inside it and the order bookkeeping of the construction."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    construction: str
    host: Graph
    model: MinorModel
    order_achieved: int
    order_promised: int
    details: Dict[str, Any] = {}


class ConstructionPayload(BaseModel):
    construction: str
    host: GraphPayload
    model: MinorModelPayload
    order_achieved: int
    order_promised: int
    details: Dict[str, Any] = {}
