"""Valuation feasibility sets and the prime-chain engine.

For (2^k - 1)(b^k - 1) = y^q every prime r dividing the left side must occur
to a positive multiple of q. Starting from r = 2 the engine turns that into a
proven lower bound on nu_r(k), uses it to establish (p - 1) | k for the next
prime p, and so on up to q. Reaching q with nu_q(k) >= 1 proves q | k.
"""

from __future__ import annotations

import logging
import math
from functools import lru_cache

from pydantic import ValidationError as PydanticValidationError
from sympy import factorint, nextprime, primerange

from src.core.arith import DEFAULT_VALUATION_CAP, valuation_fact
from src.core.errors import InapplicableBoundError, InvalidInputError, PreconditionError
from src.schemas.chain import (
    BlockingConstraint,
    ChainDecision,
    ChainStep,
    ChainVerdict,
    ClosedFormBounds,
    Coverage,
    EquationInstance,
    FeasibilitySet,
)
from src.schemas.valuation import ValuationFact, ValuationMethod

logger = logging.getLogger(__name__)

REDUCTION_CITATION = (
    "q | k, so (X, Y, Z) = (2^(k/q), b^(k/q), y) solves (X^q - 1)(Y^q - 1) = Z^q, "
    "which has no solution with 1 < X <= Y and q an odd prime"
)


@lru_cache(maxsize=None)
def _primes_up_to(q: int) -> tuple[int, ...]:
    return tuple(primerange(2, q + 1))


@lru_cache(maxsize=None)
def _factor_p_minus_1(p: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(p - 1).items()))


def _smallest_in_class(floor: int, residue: int, modulus: int) -> int:
    """Smallest m >= floor with m = residue (mod modulus)."""
    return floor + (residue - floor) % modulus


def no_solution_threshold(b: int) -> int:
    """Smallest prime q with q > 2*sqrt(2b).

    Decided exactly: q > 2*sqrt(2b) iff q^2 > 8b, and every prime above
    isqrt(8b) satisfies that.
    """
    if b < 3 or b % 2 == 0:
        raise InvalidInputError(f"b must be an odd integer >= 3, got {b}")
    return int(nextprime(math.isqrt(8 * b)))


class ChainEngine:
    """Feasibility-set engine deciding whether q | k is forced for (b, q)."""

    def __init__(self, valuation_cap: int = DEFAULT_VALUATION_CAP) -> None:
        """Initialize the engine.

        Args:
            valuation_cap: Cap handed to the modular valuation ladders.
        """
        self.valuation_cap = valuation_cap

    def instance(self, b: int, q: int) -> EquationInstance:
        """Build a validated EquationInstance.

        Raises:
            InvalidInputError: b is not odd >= 3 or q is not an odd prime.
        """
        try:
            return EquationInstance(b=b, q=q, valuation_cap=self.valuation_cap)
        except PydanticValidationError as e:
            raise InvalidInputError(
                f"Invalid instance (b={b}, q={q})",
                details=[{"loc": list(map(str, err["loc"])), "msg": err["msg"], "type": err["type"]} for err in e.errors()],
            ) from e

    def nu2_feasible(self, inst: EquationInstance) -> FeasibilitySet:
        """Feasible values of j = nu_2(k).

        k odd: nu_2(b^k - 1) = nu_2(b - 1), so j = 0 needs nu_2(b - 1) = 0 mod q.
        k even: nu_2(b^k - 1) = nu_2(b^2 - 1) + j - 1, a positive multiple of q.
        """
        q = inst.q
        v = inst.nu2_b_squared_minus_1
        zero_feasible = inst.nu2_b_minus_1 % q == 0
        residue = (1 - v) % q
        class_minimum = _smallest_in_class(1, residue, q)
        return FeasibilitySet(
            r=2,
            modulus=q,
            residue=residue,
            class_floor=1,
            zero_feasible=zero_feasible,
            minimum=0 if zero_feasible else class_minimum,
            facts=[
                ValuationFact(p=2, subject="b-1", e=inst.nu2_b_minus_1, method=ValuationMethod.DIRECT),
                ValuationFact(p=2, subject="b+1", e=inst.nu2_b_plus_1, method=ValuationMethod.DIRECT),
                valuation_fact(inst.b, 2, 2, "b^2-1", inst.valuation_cap),
            ],
            derivation=(
                f"j=0 iff nu_2(b-1)={inst.nu2_b_minus_1} = 0 mod {q}; "
                f"j>=1 iff {v}+j-1 = 0 mod {q}"
            ),
        )

    def nur_feasible(self, inst: EquationInstance, r: int) -> FeasibilitySet:
        """Feasible values of m = nu_r(k) for an odd prime r <= q, assuming (r - 1) | k.

        r not dividing b: nu_r = nu_r(2^(r-1)-1) + nu_r(b^(r-1)-1) + 2m.
        r dividing b: nu_r = nu_r(2^(r-1)-1) + m.
        """
        q = inst.q
        if r < 3 or r > q or r not in _primes_up_to(q):
            raise PreconditionError(f"r must be an odd prime <= q={q}, got {r}")

        w2 = inst.two_fermat(r)
        facts = [ValuationFact(p=r, subject="2^(p-1)-1", e=w2, method=ValuationMethod.DIRECT)]
        if inst.b % r == 0:
            w = w2
            residue = (-w) % q
            floor = max(0, q - w)
            derivation = f"{r} | b: {w}+m = 0 mod {q}, {w}+m >= {q}"
        else:
            fact = inst.base_fermat(r)
            facts.append(fact)
            w = w2 + fact.e
            residue = (-w * ((q + 1) // 2)) % q
            floor = max(0, -((w - q) // 2))
            derivation = f"{w}+2m = 0 mod {q}, {w}+2m >= {q}"

        minimum = _smallest_in_class(floor, residue, q)
        return FeasibilitySet(
            r=r,
            modulus=q,
            residue=residue,
            class_floor=floor,
            zero_feasible=minimum == 0,
            minimum=minimum,
            facts=facts,
            derivation=derivation,
        )

    def decide(self, inst: EquationInstance) -> ChainDecision:
        """Run the prime chain over all primes <= q in increasing order.

        A prime is chained at most once and there is no backtracking. A prime
        whose p - 1 cannot be covered is recorded as unchained and the engine
        moves on; it can only matter to later primes that need it.
        """
        q = inst.q
        bounds: dict[int, int] = {}
        trace: list[ChainStep] = []
        first_unchained: int | None = None

        for p in _primes_up_to(q):
            if p == 2:
                fs = self.nu2_feasible(inst)
                bounds[2] = fs.minimum
                trace.append(ChainStep(p=2, chained=True, feasibility=fs))
                continue

            coverage = []
            for r, needed in _factor_p_minus_1(p):
                available = bounds.get(r)
                coverage.append(
                    Coverage(r=r, needed=needed, available=available, covered=available is not None and available >= needed)
                )
            if all(c.covered for c in coverage):
                fs = self.nur_feasible(inst, p)
                bounds[p] = fs.minimum
                trace.append(ChainStep(p=p, chained=True, coverage=coverage, feasibility=fs))
            else:
                trace.append(ChainStep(p=p, chained=False, coverage=coverage))
                if first_unchained is None:
                    first_unchained = p

        final = trace[-1]
        if final.chained and bounds[q] >= 1:
            logger.debug("b=%d q=%d: q | k", inst.b, q)
            return ChainDecision(
                b=inst.b, q=q, verdict=ChainVerdict.Q_DIVIDES_K, trace=trace, citation=REDUCTION_CITATION
            )

        blocking = self._blocking(final, first_unchained)
        logger.debug("b=%d q=%d: exceptional (%s)", inst.b, q, blocking.reason)
        return ChainDecision(b=inst.b, q=q, verdict=ChainVerdict.EXCEPTIONAL, trace=trace, blocking=blocking)

    @staticmethod
    def _blocking(final: ChainStep, first_unchained: int | None) -> BlockingConstraint:
        if final.chained:
            return BlockingConstraint(
                first_unchained=first_unchained,
                p=final.p,
                reason=f"nu_{final.p}(k) = 0 is feasible",
            )
        gap = next(c for c in final.coverage if not c.covered)
        if gap.available is None:
            reason = f"{gap.r} is not chained, so nu_{gap.r}(k) >= {gap.needed} = nu_{gap.r}({final.p}-1) is unproven"
        else:
            reason = f"nu_{gap.r}(k) minimum {gap.available} < nu_{gap.r}({final.p}-1) = {gap.needed}"
        return BlockingConstraint(
            first_unchained=first_unchained,
            p=final.p,
            r=gap.r,
            needed=gap.needed,
            available=gap.available,
            reason=reason,
        )

    def closed_form_bounds(self, inst: EquationInstance) -> ClosedFormBounds:
        """Closed-form lower bounds q - log2(b+1) and (q - log3(b+1) - 1)/2 against the exact minima.

        Raises:
            InapplicableBoundError: q <= log2(b + 1).
        """
        b, q = inst.b, inst.q
        if not inst.in_log_region():
            raise InapplicableBoundError(f"q={q} <= log2(b+1) for b={b}; closed-form bounds are not asserted")

        exact2 = self.nu2_feasible(inst).minimum
        exact3 = self.nur_feasible(inst, 3).minimum if exact2 >= 1 else None

        # exact2 >= q - log2(b+1)  <=>  2^(q - exact2) <= b + 1, all in integers.
        gap2 = q - exact2
        nu2_dominated = gap2 <= 0 or (1 << gap2) <= b + 1
        nu2_strict = gap2 <= 0 or (1 << gap2) < b + 1
        if exact3 is None:
            nu3_dominated = False
        else:
            gap3 = q - 1 - 2 * exact3
            nu3_dominated = gap3 <= 0 or 3**gap3 <= b + 1

        if not nu2_strict:
            logger.info("b=%d q=%d: nu_2(k) > q - log2(b+1) holds only with equality (b+1 a power of 2)", b, q)
        if not (nu2_dominated and nu3_dominated):
            logger.warning("b=%d q=%d: exact minima do not dominate the closed-form bounds", b, q)
        if b == 5:
            logger.info("b=5: nu_3 claim settled by the exact feasibility set (minimum %s)", exact3)

        return ClosedFormBounds(
            b=b,
            q=q,
            nu2_bound=q - math.log2(b + 1),
            nu3_bound=(q - math.log(b + 1, 3) - 1) / 2,
            nu2_exact_minimum=exact2,
            nu3_exact_minimum=exact3,
            nu2_strict=nu2_strict,
            nu3_checked_directly=b == 5,
            dominated=nu2_dominated and nu3_dominated,
        )
