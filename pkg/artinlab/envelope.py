"""
JSON output envelope shared by every artinlab command.
"""

from typing import Any, Optional

from pydantic import BaseModel, Field


class Metadata(BaseModel):
    """Run metadata; the only place timing information appears."""

    version: str
    prime_table_limit: Optional[int] = None
    elapsed_ms: int = 0
    warnings: list[str] = Field(default_factory=list)


class OutputEnvelope(BaseModel):
    command: str
    params: dict[str, Any] = Field(default_factory=dict)
    results: list[dict[str, Any]] = Field(default_factory=list)
    metadata: Metadata

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)
