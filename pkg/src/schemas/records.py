"""Run records emitted by the command-line front end."""

from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field


class RecordStatus(str, Enum):
    """Outcome of a command; mirrors the process exit code."""

    OK = "ok"
    CLAIM_VIOLATION = "claim-violation"
    INVALID_INPUT = "invalid-input"
    PRECISION_EXHAUSTED = "precision-exhausted"


class ErrorPayload(BaseModel):
    """Payload of a record whose command raised."""

    model_config = ConfigDict(from_attributes=True)

    message: str = Field(description="Error message")
    details: list[dict[str, Any]] | None = Field(default=None, description="Additional error details")


class RunRecord(BaseModel):
    """One command execution.

    The payload is byte-identical for identical parameters and version;
    elapsed_ms is the only field that varies between runs.
    """

    model_config = ConfigDict(from_attributes=True)

    command: str = Field(description="Subcommand name")
    parameters: dict[str, Any] = Field(default_factory=dict, description="Every resolved parameter, defaults included")
    version: str = Field(description="Toolkit version")
    payload: Any = Field(default=None, description="Command-specific findings")
    violations: list[str] = Field(default_factory=list, description="Published claims contradicted by this run")
    status: RecordStatus = Field(description="ok, claim-violation, invalid-input or precision-exhausted")
    elapsed_ms: float = Field(description="Wall time of the command")
