"""
Pydantic models for command reports.
"""

import math
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator


def jsonable(value: Any) -> Any:
    """Replace infinities by "inf" and tuples by lists, recursively."""
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


class RunConfig(BaseModel):
    """Configuration echoed into every report."""

    prime: int = Field(..., ge=2, description="Field characteristic")
    max_degree: int = Field(..., ge=0, description="Highest homology degree")
    side: str = Field(
        default="lower", pattern="^(lower|upper)$", description="Fiber side"
    )
    seed: Optional[int] = Field(None, description="Generator seed")
    verify_steps: bool = Field(
        default=False, description="Check the bound after every removal"
    )


class Report(BaseModel):
    """Machine-readable result of one command run."""

    command: List[str] = Field(..., description="Echo of the argument list")
    config: RunConfig
    results: Dict[str, Any] = Field(default_factory=dict)
    verdict: Optional[str] = Field(
        None, description="pass, fail or hypothesis-failed"
    )
    timing: Dict[str, float] = Field(
        default_factory=dict, description="Wall-clock seconds"
    )

    @field_validator("results")
    @classmethod
    def encode_infinity(cls, v):
        """Encode infinite values as the string "inf"."""
        return jsonable(v)

    def stable_dump(self) -> Dict[str, Any]:
        """The report without timing fields."""
        return self.model_dump(mode="json", exclude={"timing"})
