# schemas/pattern.py
from pydantic import BaseModel, ConfigDict
from typing import Optional

from models.lambda_instance import LambdaInstance


class LambdaMembership(BaseModel):
    """Outcome of a Λ(T) membership test; truthy when h is a member."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    member: bool
    witness: Optional[LambdaInstance] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.member
