"""Common schemas used across the toolkit."""

from enum import Enum
from typing import Annotated

from mpmath import mp, nstr
from pydantic import BaseModel, ConfigDict, Field, PlainSerializer

from src.core.intervals import Interval, lower, upper

INT64_LIMIT = 2**63

# Significant digits kept when an interval endpoint is rendered for a record.
RECORD_DIGITS = 40


def _serialize_big_int(value: int) -> int | str:
    """Emit integers beyond 64 bits as decimal strings."""
    if -INT64_LIMIT <= value < INT64_LIMIT:
        return value
    return str(value)


BigInt = Annotated[int, PlainSerializer(_serialize_big_int, when_used="json")]


class Verdict(str, Enum):
    """Outcome of a no-solution verification."""

    NO_SOLUTION = "NoSolution"
    INCONCLUSIVE = "Inconclusive"
    SOLUTION_FOUND = "SolutionFound"


class RealWithError(BaseModel):
    """A certified real number: the true value lies in [lower, upper].

    Endpoints are rendered as decimal strings for auditing; all decisions are
    taken on the underlying intervals before rendering.
    """

    model_config = ConfigDict(from_attributes=True)

    midpoint: str = Field(description="Midpoint of the enclosing interval")
    radius: str = Field(description="Half-width of the enclosing interval")
    lower: str = Field(description="Lower endpoint")
    upper: str = Field(description="Upper endpoint")
    precision_bits: int = Field(description="Working precision the interval was computed at")

    @classmethod
    def from_interval(cls, x: Interval, precision_bits: int) -> "RealWithError":
        """Render an mpmath interval.

        Args:
            x: The interval.
            precision_bits: Precision it was computed at.

        Returns:
            RealWithError: Rendered enclosure.
        """
        lo, hi = lower(x), upper(x)
        with mp.workprec(max(precision_bits, 64) + 16):
            mid = (lo + hi) / 2
            rad = (hi - lo) / 2
        return cls(
            midpoint=nstr(mid, RECORD_DIGITS),
            radius=nstr(rad, 6),
            lower=nstr(lo, RECORD_DIGITS),
            upper=nstr(hi, RECORD_DIGITS),
            precision_bits=precision_bits,
        )

    def approx(self) -> float:
        """Midpoint as a float, for display and monotonicity comparisons only."""
        return float(self.midpoint)
