"""Exact continued fractions of q-th roots and the q = 3 convergent check.

Partial quotients come from Lagrange's method: keep an integer polynomial
whose only positive root is the current complete quotient, take its integer
floor by exact sign evaluation, then substitute x -> a + 1/x. No floating
point enters a decision.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from itertools import islice

from sympy import isprime

from src.core.arith import integer_root
from src.core.errors import InvalidInputError
from src.core.sharding import ShardConfig, map_shards, merge_ordered, split_range
from src.schemas.cfrac import CFExpansion, Convergent, CubicCheck, Side, Triple
from src.schemas.common import Verdict

logger = logging.getLogger(__name__)

DIRECT_CHECK_LIMIT = 10**4

ASYMPTOTIC_CITATION = (
    "large X: the lower bound Y >= 5 X^6 is compared with an effective upper bound "
    "from the literature; only the convergent exhaustion is computed here"
)


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


def _evaluate(coeffs: list[int], x: int) -> int:
    """Horner evaluation; coefficients run from the constant term upwards."""
    value = 0
    for c in reversed(coeffs):
        value = value * x + c
    return value


def _taylor_shift(coeffs: list[int], a: int) -> list[int]:
    """Coefficients of f(x + a)."""
    c = list(coeffs)
    n = len(c) - 1
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            c[j] += a * c[j + 1]
    return c


def _floor_of_root(coeffs: list[int]) -> tuple[int, bool]:
    """Floor of the unique root > 1 of an integer polynomial.

    All other real roots are negative, so x lies above the root exactly when
    f(x) has the sign of the leading coefficient.

    Returns:
        tuple: (floor, exact) where exact means the root is that integer.
    """
    s = _sign(coeffs[-1])
    lo, hi = 1, 2
    while True:
        value = _evaluate(coeffs, hi)
        if value == 0:
            return hi, True
        if _sign(value) == s:
            break
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        value = _evaluate(coeffs, mid)
        if value == 0:
            return mid, True
        if _sign(value) == s:
            hi = mid
        else:
            lo = mid
    return lo, False


def iter_partial_quotients(N: int, q: int) -> Iterator[int]:
    """Partial quotients of N^(1/q), stopping only when the root is rational."""
    a, exact = integer_root(N, q)
    yield a
    if exact:
        return

    coeffs = [-N] + [0] * (q - 1) + [1]
    while True:
        shifted = _taylor_shift(coeffs, a)
        if shifted[0] == 0:
            return
        coeffs = shifted[::-1]
        g = math.gcd(*coeffs)
        if g > 1:
            coeffs = [c // g for c in coeffs]
        a, exact = _floor_of_root(coeffs)
        yield a
        if exact:
            return


def iter_convergents(quotients: Iterator[int]) -> Iterator[tuple[int, int]]:
    """(h_n, k_n) from h_n = a_n h_(n-1) + h_(n-2), k_n = a_n k_(n-1) + k_(n-2)."""
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    for a in quotients:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        yield h, k


def _root_below(num: int, den: int, N: int, q: int) -> bool:
    """N^(1/q) < num/den for den > 0."""
    return num > 0 and num**q > N * den**q


def _root_above(num: int, den: int, N: int, q: int) -> bool:
    """N^(1/q) > num/den for den > 0."""
    return num <= 0 or num**q < N * den**q


def within(h: int, k: int, N: int, q: int, slack: int) -> bool:
    """|N^(1/q) - h/k| < slack/k^2, decided with integer powers."""
    den = k * k
    return _root_above(h * k - slack, den, N, q) and _root_below(h * k + slack, den, N, q)


def _side(h: int, k: int, N: int, q: int) -> Side:
    lhs, rhs = h**q, N * k**q
    if lhs < rhs:
        return Side.BELOW
    if lhs > rhs:
        return Side.ABOVE
    return Side.EXACT


def _alternating_side(n: int) -> Side:
    """Even-index convergents of an irrational number lie below it, odd-index ones above."""
    return Side.BELOW if n % 2 == 0 else Side.ABOVE


def _multiplier_bound(A: int, k: int, k_next: int) -> int:
    """Largest d with d^9 k^6 < A (k_next + k)^3.

    A cubic solution with Y = dk, Z = dh has 0 < alpha - h/k < alpha / (dk)^3,
    while every convergent has |alpha - h/k| > 1/(k (k_next + k)).
    """
    target = A * (k_next + k) ** 3
    scale = k**6
    d = integer_root(max(1, target // scale), 9)[0]
    while (d + 1) ** 9 * scale < target:
        d += 1
    while d >= 1 and d**9 * scale >= target:
        d -= 1
    return d


def _validate_prime_exponent(q: int) -> None:
    if q < 3 or not isprime(q):
        raise InvalidInputError(f"q must be an odd prime, got {q}")


def _xyz_shard(shard: tuple[int, int, int, int]) -> list[Triple]:
    q, x_max, y_lo, y_hi = shard
    found = []
    for Y in range(y_lo, y_hi):
        B = Y**q - 1
        for X in range(2, min(Y, x_max) + 1):
            z, exact = integer_root((X**q - 1) * B, q)
            if exact:
                found.append(Triple(X=X, Y=Y, Z=z))
    return found


class ContinuedFractionService:
    """Continued fractions of q-th roots and the searches built on them."""

    def __init__(self, shards: ShardConfig | None = None) -> None:
        """Initialize the service.

        Args:
            shards: Parallelism for the brute-force search. Defaults to settings.
        """
        self.shards = shards or ShardConfig.from_settings()

    def cf_expand(self, N: int, q: int, count: int) -> CFExpansion:
        """First `count` partial quotients of N^(1/q), fewer when N is a perfect q-th power."""
        if N < 1 or q < 2 or count < 1:
            raise InvalidInputError(f"cf_expand needs N >= 1, q >= 2, count >= 1; got N={N}, q={q}, count={count}")
        quotients = list(islice(iter_partial_quotients(N, q), count))
        return CFExpansion(radicand=N, degree=q, quotients=quotients, terminated=integer_root(N, q)[1])

    def convergents(self, expansion: CFExpansion) -> list[Convergent]:
        """Convergents of an expansion, each placed and certified against the root exactly."""
        if not expansion.quotients:
            raise InvalidInputError("expansion has no quotients")
        N, q = expansion.radicand, expansion.degree
        result = []
        for n, (h, k) in enumerate(iter_convergents(iter(expansion.quotients))):
            side = _side(h, k, N, q)
            result.append(
                Convergent(
                    index=n,
                    h=h,
                    k=k,
                    side=side,
                    certified=side is Side.EXACT or (side is _alternating_side(n) and within(h, k, N, q, 1)),
                )
            )
        return result

    def cubic_convergent_check(self, X: int, y_limit: int) -> CubicCheck:
        """Search (X^3 - 1)(Y^3 - 1) = Z^3 among convergents of the cube root of X^3 - 1.

        A solution forces Z/Y within 1/(2Y^2) of the root, so Z/Y reduces to
        a convergent h/k with Y = dk. Every convergent with k <= y_limit is
        tested with every multiplier d the approximation quality allows.
        """
        if X < 2:
            raise InvalidInputError(f"X must be >= 2, got {X}")
        if y_limit < 1:
            raise InvalidInputError(f"y_limit must be positive, got {y_limit}")

        A = X**3 - 1
        threshold = 5 * X**6
        solutions: list[Triple] = []
        examined = tested = 0
        first_quality: int | None = None

        pairs = iter_convergents(iter_partial_quotients(A, 3))
        h, k = next(pairs)
        for h_next, k_next in pairs:
            if k > y_limit:
                break
            examined += 1
            found_here = False
            for d in range(1, min(_multiplier_bound(A, k, k_next), y_limit // k) + 1):
                Y, Z = d * k, d * h
                if Y < 2:
                    continue
                tested += 1
                if Z**3 == A * (Y**3 - 1):
                    solutions.append(Triple(X=X, Y=Y, Z=Z))
                    found_here = True
            if first_quality is None and k >= 2 and not found_here and within(h, k, A, 3, 2):
                first_quality = k
            h, k = h_next, k_next

        direct_limit = min(y_limit, DIRECT_CHECK_LIMIT)
        direct = []
        for Y in range(2, direct_limit + 1):
            z, exact = integer_root(A * (Y**3 - 1), 3)
            if exact:
                direct.append(Triple(X=X, Y=Y, Z=z))

        partial = y_limit < threshold - 1
        if solutions or direct:
            verdict = Verdict.SOLUTION_FOUND
            logger.warning("X=%d: cubic solution found %s", X, solutions or direct)
        elif partial:
            verdict = Verdict.INCONCLUSIVE
        else:
            verdict = Verdict.NO_SOLUTION

        return CubicCheck(
            X=X,
            radicand=A,
            y_limit=y_limit,
            convergents_examined=examined,
            candidates_tested=tested,
            solutions=sorted(solutions, key=lambda s: s.Y),
            first_quality_denominator=first_quality,
            threshold=threshold,
            exhausted_below_threshold=not partial and not solutions,
            partial=partial,
            direct_limit=direct_limit,
            direct_solutions=direct,
            note=f"limit below 5X^6 = {threshold}" if partial else ASYMPTOTIC_CITATION,
            verdict=verdict,
        )

    def brute_search_xyz(self, q: int, x_max: int, y_max: int) -> list[Triple]:
        """All (X, Y, Z) with 2 <= X <= Y <= y_max, X <= x_max and (X^q - 1)(Y^q - 1) = Z^q.

        Returns:
            list[Triple]: Ordered by (X, Y).
        """
        _validate_prime_exponent(q)
        if x_max < 2 or y_max < 2:
            raise InvalidInputError(f"bounds must be >= 2, got x_max={x_max}, y_max={y_max}")
        shards = [(q, x_max, lo, hi) for lo, hi in split_range(2, y_max + 1, self.shards.shard_count)]
        found = merge_ordered(map_shards(_xyz_shard, shards, self.shards.jobs))
        logger.info("brute search q=%d X<=%d Y<=%d: %d solutions", q, x_max, y_max, len(found))
        return sorted(found, key=lambda t: (t.X, t.Y))
