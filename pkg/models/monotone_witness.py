# models/monotone_witness.py
from enum import Enum
from typing import Sequence, Tuple

from pydantic import BaseModel, ConfigDict


class Direction(str, Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


class MonotoneWitness(BaseModel):
    """Positions of a strictly monotone subsequence."""

    model_config = ConfigDict(frozen=True)

    indices: Tuple[int, ...]
    direction: Direction

    def values(self, seq: Sequence[int]) -> Tuple[int, ...]:
        return tuple(seq[i] for i in self.indices)

    def holds_for(self, seq: Sequence[int]) -> bool:
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            return False
        vals = self.values(seq)
        if self.direction == Direction.INCREASING:
            return all(a < b for a, b in zip(vals, vals[1:]))
        return all(a > b for a, b in zip(vals, vals[1:]))

    def __len__(self) -> int:
        return len(self.indices)
