# schemas/sweep.py
from math import factorial
from pydantic import BaseModel, Field, model_validator
from typing import Optional, List, Dict, Any
from enum import Enum

from core.bound_formulas import BoundFormulas
from core.constants import EXIT_OK, EXIT_VIOLATION
from schemas.model import MinorOutcome


class SweepFamily(str, Enum):
    WHEEL = "wheel"
    DOUBLE_WHEEL = "double_wheel"
    PW2 = "pw2"
    XI = "xi"
    YURT = "yurt"
    ES = "es"
    LAMBDA = "lambda"


class RowOutcome(str, Enum):
    VERIFIED = "verified"
    VIOLATED = "violated"
    UNKNOWN = "unknown"


class OracleOutcome(str, Enum):
    CONFIRMED = "confirmed"
    SKIPPED = "skipped"
    UNKNOWN = "unknown"
    DISAGREE = "disagree"


class CrossCheckVerdict(str, Enum):
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"
    UNKNOWN = "unknown"


# ---------- sweep spec ----------
class SweepSpec(BaseModel):
    """One family swept over an inclusive parameter range, `seeds` instances per value."""
    family: SweepFamily
    start: int
    stop: int
    seeds: int = Field(1, ge=1)
    seed: int = 0
    budget_ms: Optional[int] = Field(None, gt=0)
    out: Optional[str] = None

    # es only
    k: int = Field(3, ge=1)
    ell: int = Field(3, ge=1)

    # es: every permutation of each length; pw2: every connected atlas graph of pathwidth <= 2
    exhaustive: bool = False
    oracle: bool = True

    @model_validator(mode="after")
    def check_ranges(self):
        if self.stop < self.start:
            raise ValueError(f"empty range {self.start}..{self.stop}")
        lo = self.start
        if self.family == SweepFamily.WHEEL and lo <= 2:
            raise ValueError(f"wheel sweep needs h > 2, got h={lo}")
        if self.family == SweepFamily.DOUBLE_WHEEL:
            for h in range(lo, self.stop + 1):
                if h < 4 or BoundFormulas.double_wheel_order_ceiling(h) < 3:
                    raise ValueError(
                        f"double wheel sweep needs ceil((2^(h/2) - 2)/(2h - 3)) >= 3, fails at h={h}"
                    )
        if self.family == SweepFamily.PW2:
            if lo < 1:
                raise ValueError(f"pw2 sweep needs n >= 1, got n={lo}")
            if self.exhaustive and self.stop > 7:
                raise ValueError("exhaustive pw2 sweep covers at most 7 vertices")
        if self.family == SweepFamily.XI and lo < 2:
            raise ValueError(f"xi sweep needs k >= 2, got k={lo}")
        if self.family == SweepFamily.YURT and lo < 2:
            raise ValueError(f"yurt sweep needs k >= 2, got k={lo}")
        if self.family == SweepFamily.LAMBDA and lo < 2:
            raise ValueError(f"lambda sweep needs a tree on n >= 2 vertices, got n={lo}")
        if self.family == SweepFamily.ES:
            need = BoundFormulas.es_length(self.k, self.ell)
            if lo < need:
                raise ValueError(f"es sweep needs length >= (l-1)(k-1)+1 = {need}, got {lo}")
            if self.exhaustive and factorial(self.stop) > 400_000:
                raise ValueError(f"exhaustive es sweep over length {self.stop} is too large")
        return self


# ---------- reports ----------
class SweepRow(BaseModel):
    family: SweepFamily
    params: Dict[str, int]
    outcome: RowOutcome
    order_achieved: Optional[int] = None
    order_promised: Optional[int] = None
    oracle: OracleOutcome = OracleOutcome.SKIPPED
    wall_ms: Optional[float] = None
    witness: Optional[str] = None


class SweepReport(BaseModel):
    family: SweepFamily
    seed: int
    rows: List[SweepRow] = []

    def count(self, outcome: RowOutcome) -> int:
        return sum(1 for r in self.rows if r.outcome == outcome)

    @property
    def exit_code(self) -> int:
        return EXIT_VIOLATION if self.count(RowOutcome.VIOLATED) else EXIT_OK


class CrossCheckReport(BaseModel):
    family: str
    k: int
    host_order: int
    host_size: int
    treewidth: Optional[int] = None
    bound: int
    minor: MinorOutcome = MinorOutcome.UNKNOWN
    vacuous: Optional[bool] = None
    verdict: CrossCheckVerdict
    detail: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_VIOLATION if self.verdict == CrossCheckVerdict.INCONSISTENT else EXIT_OK


class CensusReport(BaseModel):
    max_order: int
    graphs: int
    checks: int
    unknown: int = 0
    inconsistencies: List[CrossCheckReport] = []
    extra: Dict[str, Any] = {}

    @property
    def exit_code(self) -> int:
        return EXIT_VIOLATION if self.inconsistencies else EXIT_OK
