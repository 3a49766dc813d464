"""Schemas for continued fractions of q-th roots and the cubic check."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from src.schemas.common import BigInt, Verdict


class CFExpansion(BaseModel):
    """Leading partial quotients of N^(1/q)."""

    model_config = ConfigDict(from_attributes=True)

    radicand: BigInt = Field(description="N >= 1")
    degree: int = Field(ge=2, description="q >= 2")
    quotients: list[BigInt] = Field(default_factory=list, description="a_0, a_1, ...; a_i >= 1 for i >= 1")
    terminated: bool = Field(description="True iff N is a perfect q-th power")


class Side(str, Enum):
    """Position of a convergent relative to the root."""

    BELOW = "below"
    ABOVE = "above"
    EXACT = "exact"


class Convergent(BaseModel):
    """h/k = [a_0; a_1, ..., a_n]."""

    model_config = ConfigDict(from_attributes=True)

    index: int = Field(ge=0, description="n")
    h: BigInt = Field(description="Numerator")
    k: BigInt = Field(gt=0, description="Denominator")
    side: Side = Field(description="Whether h/k lies below, above or on N^(1/q)")
    certified: bool = Field(description="|N^(1/q) - h/k| < 1/k^2 checked with integer powers")


class Triple(BaseModel):
    """A solution (X, Y, Z) of (X^q - 1)(Y^q - 1) = Z^q."""

    model_config = ConfigDict(from_attributes=True)

    X: int = Field(description="X")
    Y: int = Field(description="Y")
    Z: BigInt = Field(description="Z")


class CubicCheck(BaseModel):
    """Convergent search for (X^3 - 1)(Y^3 - 1) = Z^3 at fixed X."""

    model_config = ConfigDict(from_attributes=True)

    X: int = Field(description="X >= 2")
    radicand: BigInt = Field(description="X^3 - 1")
    y_limit: int = Field(description="Largest denominator examined")
    convergents_examined: int = Field(description="Convergents with k <= y_limit")
    candidates_tested: int = Field(description="(dh, dk) pairs tested exactly, d bounded by the approximation quality")
    solutions: list[Triple] = Field(default_factory=list, description="Solutions found (expected empty)")
    first_quality_denominator: int | None = Field(
        default=None, description="Smallest convergent denominator with |alpha - h/k| < 2/k^2 and no solution"
    )
    threshold: int = Field(description="5 X^6")
    exhausted_below_threshold: bool = Field(description="Every denominator below 5 X^6 was covered")
    partial: bool = Field(description="y_limit stops short of 5 X^6")
    direct_limit: int = Field(description="Y range of the direct cross-check")
    direct_solutions: list[Triple] = Field(default_factory=list, description="Solutions from the direct cross-check")
    note: str = Field(default="", description="Threshold or citation note")
    verdict: Verdict = Field(description="NoSolution, Inconclusive (partial) or SolutionFound")


class CfracReport(BaseModel):
    """Everything the cfrac command computed."""

    model_config = ConfigDict(from_attributes=True)

    expansion: CFExpansion | None = Field(default=None, description="Expansion of N^(1/q), when requested")
    convergents: list[Convergent] = Field(default_factory=list, description="Convergents of the expansion")
    cubic: list[CubicCheck] = Field(default_factory=list, description="Cubic convergent checks, by X")
