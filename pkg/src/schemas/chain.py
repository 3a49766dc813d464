"""Schemas for the valuation-feasibility and prime-chain engine."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator
from sympy import isprime

from src.core.arith import DEFAULT_VALUATION_CAP, two_fermat_valuation, valuation_fact, vp
from src.schemas.valuation import ValuationFact


class EquationInstance(BaseModel):
    """Parameters (b, q) of (2^k - 1)(b^k - 1) = y^q with cached valuations."""

    model_config = ConfigDict(from_attributes=True)

    b: int = Field(description="Odd base b >= 3")
    q: int = Field(description="Odd prime exponent q")
    nu2_b_minus_1: int = Field(default=0, description="nu_2(b - 1)")
    nu2_b_plus_1: int = Field(default=0, description="nu_2(b + 1)")
    nu3_b_squared_minus_1: int = Field(default=0, description="nu_3(b^2 - 1)")
    valuation_cap: int = Field(default=DEFAULT_VALUATION_CAP, description="Cap for modular valuation ladders")

    _fermat_cache: dict[int, ValuationFact] = PrivateAttr(default_factory=dict)

    @field_validator("b")
    @classmethod
    def check_b(cls, v: int) -> int:
        """b must be odd and at least 3."""
        if v < 3 or v % 2 == 0:
            raise ValueError(f"b must be an odd integer >= 3, got {v}")
        return v

    @field_validator("q")
    @classmethod
    def check_q(cls, v: int) -> int:
        """q must be an odd prime."""
        if v < 3 or not isprime(v):
            raise ValueError(f"q must be an odd prime, got {v}")
        return v

    @model_validator(mode="after")
    def fill_valuations(self) -> "EquationInstance":
        """Compute the small valuations and check min{nu_2(b+1), nu_2(b-1)} = 1."""
        self.nu2_b_minus_1 = vp(self.b - 1, 2)
        self.nu2_b_plus_1 = vp(self.b + 1, 2)
        self.nu3_b_squared_minus_1 = vp(self.b * self.b - 1, 3)
        if min(self.nu2_b_minus_1, self.nu2_b_plus_1) != 1:
            raise ValueError(f"min(nu_2(b-1), nu_2(b+1)) != 1 for b={self.b}")
        return self

    @property
    def nu2_b_squared_minus_1(self) -> int:
        """nu_2(b^2 - 1) = nu_2(b - 1) + nu_2(b + 1)."""
        return self.nu2_b_minus_1 + self.nu2_b_plus_1

    def two_fermat(self, p: int) -> int:
        """nu_p(2^(p-1) - 1)."""
        return two_fermat_valuation(p, self.valuation_cap)

    def base_fermat(self, p: int) -> ValuationFact:
        """nu_p(b^(p-1) - 1) for a prime p not dividing b."""
        if p not in self._fermat_cache:
            self._fermat_cache[p] = valuation_fact(self.b, p - 1, p, "b^(p-1)-1", self.valuation_cap)
        return self._fermat_cache[p]

    def in_log_region(self) -> bool:
        """q > log_2(b + 1), decided exactly as 2^q > b + 1."""
        return (1 << self.q) > self.b + 1


class FeasibilitySet(BaseModel):
    """Exponents m = nu_r(k) compatible with nu_r of the left side being a positive multiple of q.

    Shape: an optional isolated 0 (the odd-k branch for r = 2) together with
    the residue class {m >= class_floor : m = residue mod modulus}.
    """

    model_config = ConfigDict(from_attributes=True)

    r: int = Field(description="Prime whose valuation in k is constrained")
    modulus: int = Field(description="Modulus of the residue class (= q)")
    residue: int = Field(description="Residue of the class")
    class_floor: int = Field(ge=0, description="Smallest m admitted by the positivity constraint on the class")
    zero_feasible: bool = Field(description="Whether m = 0 is feasible")
    minimum: int = Field(ge=0, description="Smallest feasible m: the proven lower bound on nu_r(k)")
    facts: list[ValuationFact] = Field(default_factory=list, description="Valuations the set was derived from")
    derivation: str = Field(description="Constraint the set solves")

    def contains(self, m: int) -> bool:
        """Membership test."""
        if m < 0:
            return False
        if m == 0 and self.zero_feasible:
            return True
        return m >= self.class_floor and m % self.modulus == self.residue


class ChainVerdict(str, Enum):
    """Outcome of the prime-chain engine."""

    Q_DIVIDES_K = "QDividesK"
    EXCEPTIONAL = "Exceptional"


class Coverage(BaseModel):
    """How one prime factor r of p - 1 was (or was not) covered."""

    model_config = ConfigDict(from_attributes=True)

    r: int = Field(description="Prime factor of p - 1")
    needed: int = Field(description="nu_r(p - 1)")
    available: int | None = Field(description="Proven lower bound on nu_r(k); None when r is not chained")
    covered: bool = Field(description="available >= needed")


class ChainStep(BaseModel):
    """One prime p <= q visited by the engine."""

    model_config = ConfigDict(from_attributes=True)

    p: int = Field(description="Prime visited")
    chained: bool = Field(description="Whether (p - 1) | k was established and p chained")
    coverage: list[Coverage] = Field(default_factory=list, description="Coverage of the prime factors of p - 1")
    feasibility: FeasibilitySet | None = Field(default=None, description="Feasibility set for nu_p(k) when chained")

    @property
    def lower_bound(self) -> int | None:
        """Proven lower bound on nu_p(k), None when not chained."""
        return self.feasibility.minimum if self.feasibility else None


class BlockingConstraint(BaseModel):
    """Why an instance is exceptional."""

    model_config = ConfigDict(from_attributes=True)

    first_unchained: int | None = Field(description="First prime p <= q whose p - 1 could not be shown to divide k")
    p: int = Field(description="Prime at which the constraint failed (q itself for the final failure)")
    r: int | None = Field(default=None, description="Prime factor of p - 1 lacking coverage")
    needed: int | None = Field(default=None, description="nu_r(p - 1)")
    available: int | None = Field(default=None, description="Proven lower bound on nu_r(k)")
    reason: str = Field(description="Unsatisfiable constraint")


class ChainDecision(BaseModel):
    """Outcome of the prime-chain engine for one (b, q)."""

    model_config = ConfigDict(from_attributes=True)

    b: int = Field(description="Base")
    q: int = Field(description="Exponent")
    verdict: ChainVerdict = Field(description="QDividesK or Exceptional")
    trace: list[ChainStep] = Field(default_factory=list, description="Every prime <= q in increasing order")
    blocking: BlockingConstraint | None = Field(default=None, description="Set for Exceptional verdicts")
    citation: str = Field(default="", description="Reduction applied once q | k is established")


class ClosedFormBounds(BaseModel):
    """Closed-form logarithmic lower bounds on nu_2(k) and nu_3(k) with their exact counterparts."""

    model_config = ConfigDict(from_attributes=True)

    b: int = Field(description="Base")
    q: int = Field(description="Exponent")
    nu2_bound: float = Field(description="q - log2(b + 1)")
    nu3_bound: float = Field(description="(q - log3(b + 1) - 1) / 2")
    nu2_exact_minimum: int = Field(description="Exact feasibility minimum for nu_2(k)")
    nu3_exact_minimum: int | None = Field(description="Exact feasibility minimum for nu_3(k), given 2 | k")
    nu2_strict: bool = Field(description="Whether the exact minimum strictly exceeds the nu_2 bound")
    nu3_checked_directly: bool = Field(description="b = 5: the nu_3 claim is settled by the exact set")
    dominated: bool = Field(description="Exact minima are >= the closed-form bounds")
