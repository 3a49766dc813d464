"""Schemas for the batch scans and per-base resolutions."""

from typing import Any, Generic, TypeVar

from pydantic import BaseModel, ConfigDict, Field

from src.schemas.cfrac import Triple
from src.schemas.chain import BlockingConstraint, ChainDecision, FeasibilitySet
from src.schemas.common import BigInt, Verdict

FindingT = TypeVar("FindingT")


class ExceptionalPair(BaseModel):
    """A (b, q) the prime chain cannot settle."""

    model_config = ConfigDict(from_attributes=True)

    q: int = Field(description="Odd prime exponent")
    b: int = Field(description="Odd base with q > log2(b + 1)")
    blocking: BlockingConstraint = Field(description="Why q | k could not be forced")


class ScanReport(BaseModel, Generic[FindingT]):
    """Findings of a scan with its parameters and extremal witnesses.

    Wall time and shard count are carried by the enclosing run record so
    that payloads stay byte-identical across runs and job counts.
    """

    model_config = ConfigDict(from_attributes=True)

    kind: str = Field(description="Scan kind")
    parameters: dict[str, Any] = Field(default_factory=dict, description="Parameter ranges")
    findings: list[FindingT] = Field(default_factory=list, description="Findings in canonical order")
    witnesses: list[FindingT] = Field(default_factory=list, description="Argmax witnesses where the scan has an extremum")


class WieferichFinding(BaseModel):
    """An odd prime p with p^2 | 2^(p-1) - 1."""

    model_config = ConfigDict(from_attributes=True)

    p: int = Field(description="Prime")
    valuation: int = Field(ge=2, description="nu_p(2^(p-1) - 1)")


class FermatWitness(BaseModel):
    """An odd b attaining nu_p(b^(p-1) - 1) = valuation."""

    model_config = ConfigDict(from_attributes=True)

    b: int = Field(description="Odd base")
    p: int = Field(description="Prime not dividing b")
    valuation: int = Field(ge=1, description="nu_p(b^(p-1) - 1)")


class PrimeLevel(BaseModel):
    """Largest Fermat-quotient valuation reached for one prime, with all bases attaining it."""

    model_config = ConfigDict(from_attributes=True)

    p: int = Field(description="Prime")
    level: int = Field(ge=0, description="max nu_p(b^(p-1) - 1) over the b range; 0 when no b is in range")
    bases: list[int] = Field(default_factory=list, description="Odd b attaining the level, ascending")


class FermatQuotientReport(BaseModel):
    """Maximum of nu_p(b^(p-1) - 1) over a (b, p) box."""

    model_config = ConfigDict(from_attributes=True)

    b_max: int = Field(description="Exclusive bound on b")
    p_max: int = Field(description="Exclusive bound on p")
    max_valuation: int = Field(description="Maximum valuation found")
    witnesses: list[FermatWitness] = Field(default_factory=list, description="All (b, p) attaining the maximum, by p then b")
    primes_scanned: int = Field(description="Primes covered, resumed ones included")
    primes_resumed: int = Field(default=0, description="Primes taken from a checkpoint")
    published_bound: int = Field(description="Bound stated in the literature")
    within_bound: bool = Field(description="max_valuation <= published_bound")


class FermatCheckpoint(BaseModel):
    """Resume state of a Fermat-quotient scan, written after every completed prime."""

    model_config = ConfigDict(from_attributes=True)

    fingerprint: str = Field(description="Hash of the scan parameters")
    parameters: dict[str, Any] = Field(default_factory=dict, description="Parameters the fingerprint was taken of")
    completed: list[PrimeLevel] = Field(default_factory=list, description="Primes finished so far, ascending")


class EquationSolution(BaseModel):
    """(k, q, y) with (2^k - 1)(b^k - 1) = y^q."""

    model_config = ConfigDict(from_attributes=True)

    k: int = Field(description="Exponent k")
    q: int = Field(description="Prime q")
    y: BigInt = Field(description="y")


class ResolutionStep(BaseModel):
    """One step of a per-base resolution."""

    model_config = ConfigDict(from_attributes=True)

    name: str = Field(description="Step identifier")
    detail: str = Field(description="What the step established")
    decisions: list[ChainDecision] = Field(default_factory=list, description="Chain decisions used")
    feasibility: list[FeasibilitySet] = Field(default_factory=list, description="Feasibility sets used")


class ResolutionReport(BaseModel):
    """Why (2^k - 1)(b^k - 1) = y^q has no solution for one listed b."""

    model_config = ConfigDict(from_attributes=True)

    b: int = Field(description="Base")
    threshold: int = Field(description="Smallest prime q with q > 2 sqrt(2b)")
    remaining_q: list[int] = Field(default_factory=list, description="Odd primes q <= log2(b + 1)")
    branch: str | None = Field(default=None, description="nu_3 branch: '3 | b - 1', '3 | b + 1' or '3 | b'")
    published_branches: list[str] = Field(default_factory=list, description="Branches the base is listed under in the literature")
    nu3_inequality_bound: int | None = Field(default=None, description="nu_3(k) bound from the stated inequality")
    nu3_exact_minimum: int | None = Field(default=None, description="nu_3(k) minimum from the exact feasibility set")
    steps: list[ResolutionStep] = Field(default_factory=list, description="Resolution trace")
    square_case_solutions: list[EquationSolution] = Field(
        default_factory=list, description="Desk-scale q = 2 oracle (the square case is settled externally)"
    )
    discrepancies: list[str] = Field(default_factory=list, description="Differences from the published trace")
    verdict: Verdict = Field(description="NoSolution for every odd prime q when every step closes")


class BaseSolutions(BaseModel):
    """Brute-force oracle output for one base."""

    model_config = ConfigDict(from_attributes=True)

    b: int = Field(description="Base")
    solutions: list[EquationSolution] = Field(default_factory=list, description="(k, q, y) found (expected empty)")


class BruteReport(BaseModel):
    """Both brute-force oracles."""

    model_config = ConfigDict(from_attributes=True)

    triples: dict[int, list[Triple]] = Field(default_factory=dict, description="q -> (X, Y, Z) found (expected empty)")
    bases: list[BaseSolutions] = Field(default_factory=list, description="Per-base equation oracle")


class ThresholdRow(BaseModel):
    """Smallest q from which no solution exists for a base."""

    model_config = ConfigDict(from_attributes=True)

    b: int = Field(description="Base")
    threshold: int = Field(description="Smallest prime q > 2 sqrt(2b)")
