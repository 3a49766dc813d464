"""Schemas for irrationality-measure certificates."""

from pydantic import BaseModel, ConfigDict, Field

from src.schemas.common import BigInt, RealWithError, Verdict


class UpperBound(BaseModel):
    """B < C * A^E implied by the irrationality measure, with C and E certified."""

    model_config = ConfigDict(from_attributes=True)

    constant: RealWithError = Field(description="C = (16^q q^(q/(q-1)))^(1/(q-lambda))")
    exponent: RealWithError = Field(description="E = (q + lambda)/(q - lambda)")
    log_bound: RealWithError = Field(description="log C + E log A")


class BennettCertificate(BaseModel):
    """Certificate that (X^q - 1)(Y^q - 1) = Z^q has no solution for fixed X, q."""

    model_config = ConfigDict(from_attributes=True, populate_by_name=True)

    X: int = Field(description="X >= 2")
    q: int = Field(description="Odd prime exponent")
    A: BigInt = Field(description="A = X^q - 1")
    mu_q: RealWithError = Field(description="prod over p | q of p^(1/(p-1))")
    condition_ok: bool = Field(description="(sqrt(A) + sqrt(A+1))^(2(q-2)) > (q mu_q)^q")
    lambda_: RealWithError | None = Field(default=None, alias="lambda", description="Irrationality exponent")
    b_lower: BigInt | None = Field(default=None, description="q^q A^(q-1): B exceeds this (t = 1)")
    log_b_lower: RealWithError | None = Field(default=None, description="log of b_lower")
    b_upper: UpperBound | None = Field(default=None, description="Upper bound on B")
    lower_bound_justification: str = Field(default="", description="Derivation of the lower bound")
    verdict: Verdict = Field(description="NoSolution iff the upper bound is certifiably below the lower bound")
    shape_ok: bool | None = Field(default=None, description="Published constant shapes hold at this (X, q)")
    discrepancies: list[str] = Field(default_factory=list, description="Published intermediate claims contradicted here")
    precision_bits: int = Field(default=0, description="Working precision of the decisive comparison")


class ConditionCell(BaseModel):
    """One cell of the condition grid."""

    model_config = ConfigDict(from_attributes=True)

    X: int = Field(description="X")
    q: int = Field(description="q")
    condition_ok: bool = Field(description="Whether the irrationality-measure condition holds for A = X^q - 1")


class QuinticCheckRow(BaseModel):
    """31(Y^5 - 1) tested for being a fifth power."""

    model_config = ConfigDict(from_attributes=True)

    Y: int = Field(description="Y")
    value: int = Field(description="31(Y^5 - 1)")
    root_floor: int = Field(description="floor of the fifth root")
    exact: bool = Field(description="Whether value is a fifth power")


class QuinticCheck(BaseModel):
    """The (X, q) = (2, 5) case: 31(Y^5 - 1) = Z^5."""

    model_config = ConfigDict(from_attributes=True)

    threshold: RealWithError = Field(description="T with Y < T forced by the two approximation bounds")
    y_max: int = Field(description="Largest Y compatible with both bounds")
    published_y_bound: int = Field(description="Bound stated in the literature")
    rows: list[QuinticCheckRow] = Field(default_factory=list, description="Exhaustive check of Y in [2, max(y_max, published)]")
    discrepancies: list[str] = Field(default_factory=list, description="Published intermediate claims contradicted here")
    verdict: Verdict = Field(description="NoSolution when no row is exact")


class BennettReport(BaseModel):
    """Everything the bennett command computed for its (X, q) cells."""

    model_config = ConfigDict(from_attributes=True)

    conditions: list[ConditionCell] = Field(default_factory=list, description="Condition flag per cell, by (q, X)")
    certificates: list[BennettCertificate] = Field(default_factory=list, description="Certificates, by (q, X)")
    quintic: QuinticCheck | None = Field(default=None, description="The (2, 5) case, when requested")
