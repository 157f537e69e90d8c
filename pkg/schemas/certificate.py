# schemas/certificate.py
from pydantic import BaseModel, ConfigDict, Field
from typing import List, Dict

from schemas.graph import GraphPayload


class CertificatePayload(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    side_a: List[int] = Field(..., alias="A")
    side_b: List[int] = Field(..., alias="B")
    pattern: GraphPayload
    branch_sets: Dict[int, List[int]]
    linkage: List[List[int]] = []
