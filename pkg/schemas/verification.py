# schemas/verification.py
from pydantic import BaseModel
from typing import Optional, List, Any


class Violation(BaseModel):
    kind: str
    detail: str
    witness: Optional[Any] = None


class VerificationReport(BaseModel):
    ok: bool
    violations: List[Violation] = []
    width: Optional[int] = None
    notes: List[str] = []

    @classmethod
    def from_violations(cls, violations: List[Violation], **extra) -> "VerificationReport":
        return cls(ok=not violations, violations=violations, **extra)

    def kinds(self) -> List[str]:
        return [v.kind for v in self.violations]
