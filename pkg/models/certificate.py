# models/certificate.py
from typing import FrozenSet, Tuple

from pydantic import BaseModel, ConfigDict

from models.graph import VertexPath
from models.minor_model import MinorModel


class SeparationCertificate(BaseModel):
    """A separation (A, B) left-containing a pattern, with linkage paths on the B side."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    side_a: FrozenSet[int]
    side_b: FrozenSet[int]
    left_model: MinorModel
    linkage: Tuple[VertexPath, ...] = ()

    @property
    def separator(self) -> FrozenSet[int]:
        return self.side_a & self.side_b

    @property
    def order(self) -> int:
        return len(self.separator)

    @property
    def right_only(self) -> FrozenSet[int]:
        return self.side_b - self.side_a
