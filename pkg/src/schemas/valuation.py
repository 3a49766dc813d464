"""Valuation fact schemas."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class ValuationMethod(str, Enum):
    """How a valuation was obtained."""

    DIRECT = "direct"
    LTE = "lte"


class ValuationFact(BaseModel):
    """nu_p(n) = e for an integer n described structurally."""

    model_config = ConfigDict(from_attributes=True, frozen=True)

    p: int = Field(description="Prime")
    subject: str = Field(description="Structural description of n, e.g. 'b^2-1' or '2^(p-1)-1'")
    e: int = Field(ge=0, description="Exponent nu_p(n)")
    method: ValuationMethod = Field(description="direct (modular/exact) or lte (lifting-the-exponent)")
