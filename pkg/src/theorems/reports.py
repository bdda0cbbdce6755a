import json
from enum import Enum
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field


class ClaimId(str, Enum):
    T1_4A = "T1_4a"
    T1_4B = "T1_4b"
    T1_4C = "T1_4c"
    P2_4A = "P2_4a"
    P2_4B = "P2_4b"
    P2_4C = "P2_4c"
    P2_4D = "P2_4d"
    P2_4E = "P2_4e"
    P2_4F = "P2_4f"
    P2_4G = "P2_4g"
    P2_4H = "P2_4h"
    C2_6 = "C2_6"
    C2_6_BHM = "C2_6_BHM"
    P3_2A = "P3_2a"
    P3_2B = "P3_2b"
    E3_4 = "E3_4"
    P3_5A = "P3_5a"
    P3_5B = "P3_5b"
    P3_5A_PRIME = "P3_5a'"
    P3_5B_PRIME = "P3_5b'"
    P3_7A = "P3_7a"
    P3_7B = "P3_7b"
    P3_7C = "P3_7c"
    P3_7D = "P3_7d"
    L3_8A = "L3_8a"
    L3_8B = "L3_8b"
    L3_8C = "L3_8c"
    L3_8D = "L3_8d"
    L3_8A_PRIME = "L3_8a'"
    L3_8B_PRIME = "L3_8b'"
    L3_8C_PRIME = "L3_8c'"
    L3_8D_PRIME = "L3_8d'"
    T3_10A = "T3_10a"
    T3_10B = "T3_10b"
    T3_10_BH = "T3_10_BH"
    T3_11 = "T3_11"
    C3_12A = "C3_12a"
    C3_12B = "C3_12b"
    C3_12C = "C3_12c"
    C3_12D = "C3_12d"
    T4_2 = "T4_2"
    P4_3A = "P4_3a"
    P4_3B = "P4_3b"
    P4_3C = "P4_3c"
    P4_3D = "P4_3d"
    T4_4 = "T4_4"
    C4_5 = "C4_5"


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


def dump_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


class CheckReport(BaseModel):
    claim: ClaimId
    universe: str
    status: Status
    instances: int = 0
    skipped: int = 0
    counterexample: Optional[Dict[str, Any]] = None
    witness: Optional[Dict[str, Any]] = None
    reason: Optional[str] = None
    elapsed: float = 0.0

    def to_json(self, stable: bool = False) -> str:
        data = self.model_dump(mode="json")
        if stable:
            data.pop("elapsed")
        return dump_json(data)


class SuiteSummary(BaseModel):
    claims: Dict[str, Dict[str, int]]
    first_counterexample: Dict[str, Dict[str, Any]] = Field(default_factory=dict)
    first_witness: Dict[str, Dict[str, Any]] = Field(default_factory=dict)
    tables: int
    reports: int
    exit_status: int
    config: Dict[str, Any]
    meta: Dict[str, float] = Field(default_factory=dict)

    def to_json(self, stable: bool = False) -> str:
        data = self.model_dump(mode="json")
        if stable:
            data.pop("meta")
        return dump_json(data)


class SuiteResult(BaseModel):
    reports: List[CheckReport]
    summary: SuiteSummary


class SearchReport(BaseModel):
    question: Literal["Q4_6"] = "Q4_6"
    max_order: int
    budget: Optional[int] = None
    universes_examined: int
    sets_examined: int
    per_order: Dict[str, Dict[str, int]]
    partial: bool
    outcome: Literal["none_found", "candidate"]
    candidate: Optional[Dict[str, Any]] = None
    elapsed: float = 0.0

    def to_json(self, stable: bool = False) -> str:
        data = self.model_dump(mode="json")
        if stable:
            data.pop("elapsed")
        return dump_json(data)
