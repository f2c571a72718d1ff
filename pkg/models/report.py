from enum import Enum
from typing import Any

from pydantic import BaseModel, Field, computed_field


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    DISCREPANCY = "discrepancy-noted"


class VerifyCheck(BaseModel):
    name: str
    anchor: str
    inputs: dict[str, Any] = Field(default_factory=dict)
    expected: Any = None
    computed: Any = None
    status: CheckStatus
    note: str | None = None


class VerifyReport(BaseModel):
    seed: int
    checks: list[VerifyCheck] = Field(default_factory=list)

    @computed_field
    @property
    def counts(self) -> dict[str, int]:
        return {s.value: sum(1 for c in self.checks if c.status == s) for s in CheckStatus}

    @property
    def ok(self) -> bool:
        return all(c.status != CheckStatus.FAIL for c in self.checks)
