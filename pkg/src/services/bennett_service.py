"""Effective irrationality data and the B-bound contradiction for (X^q - 1)(Y^q - 1) = Z^q.

With A = X^q - 1 and B = Y^q - 1, an effective irrationality measure for the
q-th root of (A + 1)/A bounds B from above by C * A^E, while the expansion of
((AB)^(1/q) + t)^q bounds it from below by q^q A^(q-1) t^q. The service
certifies, with interval arithmetic, that the two bounds are incompatible.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from mpmath import iv, mp
from sympy import isprime, primefactors

from src.core import claims
from src.core.arith import integer_root
from src.core.errors import ClaimViolationError, InvalidInputError, PreconditionError
from src.core.intervals import (
    Interval,
    PrecisionConfig,
    certainly_greater,
    certainly_less,
    decide,
    refine,
    upper,
    working_precision,
)
from src.core.sharding import map_shards, merge_ordered
from src.schemas.bennett import (
    BennettCertificate,
    ConditionCell,
    QuinticCheck,
    QuinticCheckRow,
    UpperBound,
)
from src.schemas.common import RealWithError, Verdict

logger = logging.getLogger(__name__)

LOWER_BOUND_JUSTIFICATION = (
    "(XY)^q = AB + A + B + 1 and XY = (AB)^(1/q) + t with t > 0, so "
    "A + B + 1 = sum_{i=1..q} C(q,i) (AB)^((q-i)/q) t^i; "
    "A < C(q,2) (AB)^((q-2)/q) t^2 for q >= 5 (from B >= A), "
    "hence q (AB)^((q-1)/q) t < B and B > q^q A^(q-1) t^q; t = 1 is the weakest case"
)


@dataclass
class _BoundIntervals:
    """Everything contradiction_check compares, at one working precision."""

    mu: Interval
    lam: Interval
    log_constant: Interval
    exponent: Interval
    log_upper: Interval
    log_lower: Interval


def _mu_interval(k: int) -> Interval:
    result = iv.mpf(1)
    for p in primefactors(k):
        result *= iv.exp(iv.log(iv.mpf(p)) / (p - 1))
    return result


def _surd_square(A: int) -> Interval:
    """(sqrt(A) + sqrt(A + 1))^2 in the surd form 2A + 1 + 2 sqrt(A(A + 1))."""
    return iv.mpf(2 * A + 1) + 2 * iv.sqrt(iv.mpf(A * (A + 1)))


def _sum_of_roots_squared(A: int) -> Interval:
    """(sqrt(A) + sqrt(A + 1))^2 evaluated literally."""
    return (iv.sqrt(iv.mpf(A)) + iv.sqrt(iv.mpf(A + 1))) ** 2


def _lambda_interval(A: int, k: int) -> Interval:
    s = _surd_square(A)
    kmu = k * _mu_interval(k)
    return 1 + iv.log(kmu * s) / iv.log(s / kmu)


def _upper_bound_pieces(A: int, q: int, lam: Interval) -> tuple[Interval, Interval, Interval]:
    """(log C, E, log C + E log A) for B < C A^E with mu_q^q = q^(q/(q-1))."""
    gap = q - lam
    log_constant = (q * iv.log(iv.mpf(16)) + iv.mpf(q) / (q - 1) * iv.log(iv.mpf(q))) / gap
    exponent = (q + lam) / gap
    return log_constant, exponent, log_constant + exponent * iv.log(iv.mpf(A))


def _shape_for(q: int) -> dict[str, str]:
    if q >= 7:
        return claims.SHAPE_Q_AT_LEAST_7
    if q == 5:
        return claims.SHAPE_Q_EQUALS_5
    raise InvalidInputError(f"no published bound shape for q={q}")


def _check_exponent(q: int) -> None:
    if q < 3 or not isprime(q):
        raise InvalidInputError(f"q must be an odd prime, got {q}")


class BennettService:
    """Certified irrationality-measure computations."""

    def __init__(self, precision: PrecisionConfig | None = None) -> None:
        """Initialize the service.

        Args:
            precision: Adaptive precision schedule. Defaults to settings.
        """
        self.precision = precision or PrecisionConfig.from_settings()

    def mu(self, k: int) -> RealWithError:
        """prod over distinct primes p | k of p^(1/(p-1))."""
        if k < 2:
            raise InvalidInputError(f"mu needs k >= 2, got {k}")
        bits = self.precision.start_bits
        with working_precision(bits):
            return RealWithError.from_interval(_mu_interval(k), bits)

    def condition_holds(self, A: int, k: int) -> bool:
        """Decide (sqrt(A) + sqrt(A+1))^(2(k-2)) > (k mu_k)^k.

        Raises:
            InvalidInputError: A < 1 or k < 3.
            PrecisionExhaustedError: Undecided at the precision cap.
        """
        if A < 1 or k < 3:
            raise InvalidInputError(f"condition needs A >= 1 and k >= 3, got A={A}, k={k}")

        def predicate() -> bool | None:
            lhs = _surd_square(A) ** (k - 2)
            rhs = (k * _mu_interval(k)) ** k
            return certainly_greater(lhs, rhs)

        return decide(predicate, self.precision, f"irrationality condition at A={A}, k={k}")

    def irrationality_exponent(self, A: int, k: int) -> tuple[Interval, int]:
        """lambda = 1 + log(k mu_k s) / log(s / (k mu_k)) with s = (sqrt(A) + sqrt(A+1))^2.

        Returns:
            tuple: (interval, bits) at the first precision where lambda < k is decided.

        Raises:
            PreconditionError: The condition does not hold for (A, k).
            ClaimViolationError: lambda >= k.
        """
        if not self.condition_holds(A, k):
            raise PreconditionError(f"irrationality condition fails at A={A}, k={k}")
        lam, bits, below = refine(
            lambda: _lambda_interval(A, k),
            lambda value: certainly_less(value, iv.mpf(k)),
            self.precision,
            f"lambda < {k} at A={A}",
        )
        if not below:
            raise ClaimViolationError(f"lambda >= k at A={A}, k={k}")
        return lam, bits

    def irrationality_measure(self, A: int, k: int) -> RealWithError:
        """Rendered irrationality exponent."""
        lam, bits = self.irrationality_exponent(A, k)
        return RealWithError.from_interval(lam, bits)

    def b_lower_bound(self, A: int, t: int, q: int) -> int:
        """q^q A^(q-1) t^q, exactly."""
        if A < 1 or t < 1:
            raise InvalidInputError(f"b_lower_bound needs A >= 1 and t >= 1, got A={A}, t={t}")
        _check_exponent(q)
        return q**q * A ** (q - 1) * t**q

    def b_upper_bound(self, A: int, q: int, lam: Interval | None = None) -> UpperBound:
        """B < C A^E with C = (16^q q^(q/(q-1)))^(1/(q-lambda)), E = (q+lambda)/(q-lambda).

        Args:
            A: X^q - 1.
            q: Odd prime >= 5.
            lam: Certified lambda interval; computed when omitted.

        Raises:
            InvalidInputError: q = 3 (handled by continued fractions).
            PreconditionError: lambda is not certified below q.
        """
        _check_exponent(q)
        if q == 3:
            raise InvalidInputError("q = 3 is handled by the continued-fraction check")
        if lam is None:
            lam, bits = self.irrationality_exponent(A, q)
        else:
            bits = self.precision.start_bits
        if certainly_less(lam, iv.mpf(q)) is not True:
            raise PreconditionError(f"lambda is not certified below q={q}")
        with working_precision(bits):
            log_constant, exponent, log_upper = _upper_bound_pieces(A, q, lam)
            return UpperBound(
                constant=RealWithError.from_interval(iv.exp(log_constant), bits),
                exponent=RealWithError.from_interval(exponent, bits),
                log_bound=RealWithError.from_interval(log_upper, bits),
            )

    def contradiction_check(self, X: int, q: int) -> BennettCertificate:
        """Certify that no Y gives (X^q - 1)(Y^q - 1) = Z^q.

        Raises:
            InvalidInputError: X < 2, q not an odd prime >= 5, or (X, q) = (2, 5),
                which is settled by quintic_base_two_check.
            PrecisionExhaustedError: A comparison stayed undecided at the cap.
        """
        if X < 2:
            raise InvalidInputError(f"X must be >= 2, got {X}")
        _check_exponent(q)
        if q == 3:
            raise InvalidInputError("q = 3 is handled by the continued-fraction check")
        if (X, q) == (2, 5):
            raise InvalidInputError("(X, q) = (2, 5): the bounds do not meet; use the quintic base-two check")

        A = X**q - 1
        with working_precision(self.precision.start_bits):
            mu_q = RealWithError.from_interval(_mu_interval(q), self.precision.start_bits)

        if not self.condition_holds(A, q):
            logger.warning("X=%d q=%d: irrationality condition fails; certificate is inconclusive", X, q)
            return BennettCertificate(
                X=X, q=q, A=A, mu_q=mu_q, condition_ok=False, verdict=Verdict.INCONCLUSIVE
            )

        shape = _shape_for(q)

        def compute() -> _BoundIntervals:
            lam = _lambda_interval(A, q)
            log_constant, exponent, log_upper = _upper_bound_pieces(A, q, lam)
            log_lower = q * iv.log(iv.mpf(q)) + (q - 1) * iv.log(iv.mpf(A))
            return _BoundIntervals(_mu_interval(q), lam, log_constant, exponent, log_upper, log_lower)

        def comparisons(v: _BoundIntervals) -> tuple[bool | None, ...]:
            log_a = iv.log(iv.mpf(A))
            shape_log = iv.log(iv.mpf(shape["constant"])) + iv.mpf(shape["exponent"]) * log_a
            return (
                certainly_less(v.lam, iv.mpf(q)),
                certainly_less(v.log_upper, v.log_lower),
                certainly_less(v.lam, iv.mpf(shape["lambda"])),
                certainly_greater(v.log_upper, shape_log),
            )

        def check(v: _BoundIntervals) -> bool | None:
            results = comparisons(v)
            if any(r is None for r in results):
                return None
            return bool(results[1])

        values, bits, contradiction = refine(compute, check, self.precision, f"B bounds at X={X}, q={q}")
        with working_precision(bits):
            lam_below_q, _, lam_shape_ok, bound_exceeds_shape = comparisons(values)
        bound_shape_ok = not bound_exceeds_shape

        if not lam_below_q:
            raise ClaimViolationError(f"lambda >= q at X={X}, q={q}")

        discrepancies = []
        if not lam_shape_ok:
            discrepancies.append(f"lambda < {shape['lambda']} fails at X={X}, q={q}")
        if not bound_shape_ok:
            discrepancies.append(
                f"implied bound exceeds {shape['constant']} * A^{shape['exponent']} at X={X}, q={q}"
            )
        for message in discrepancies:
            logger.warning(message)

        with working_precision(bits):
            certificate = BennettCertificate(
                X=X,
                q=q,
                A=A,
                mu_q=RealWithError.from_interval(values.mu, bits),
                condition_ok=True,
                lambda_=RealWithError.from_interval(values.lam, bits),
                b_lower=self.b_lower_bound(A, 1, q),
                log_b_lower=RealWithError.from_interval(values.log_lower, bits),
                b_upper=UpperBound(
                    constant=RealWithError.from_interval(iv.exp(values.log_constant), bits),
                    exponent=RealWithError.from_interval(values.exponent, bits),
                    log_bound=RealWithError.from_interval(values.log_upper, bits),
                ),
                lower_bound_justification=LOWER_BOUND_JUSTIFICATION,
                verdict=Verdict.NO_SOLUTION if contradiction else Verdict.INCONCLUSIVE,
                shape_ok=not discrepancies,
                discrepancies=discrepancies,
                precision_bits=bits,
            )
        logger.debug("X=%d q=%d: %s at %d bits", X, q, certificate.verdict.value, bits)
        return certificate

    def quintic_base_two_check(self) -> QuinticCheck:
        """Settle 31(Y^5 - 1) = Z^5.

        A solution gives |31^(1/5) - Z/Y| < 31^(1/5) / (5 Y^5), while the cited
        effective bound gives |31^(1/5) - Z/Y| > 0.01 / Y^2.83. Together they
        force Y < T = (31^(1/5) / (5 * 0.01))^(1/(5 - 2.83)); every Y up to the
        larger of floor(T) and the published bound is then checked exactly.
        """
        bits = self.precision.start_bits
        with working_precision(bits):
            constant = iv.mpf(claims.CORRECTION_CONSTANT)
            exponent = iv.mpf(claims.CORRECTION_EXPONENT)
            log_t = (iv.log(iv.mpf(31)) / 5 - iv.log(5 * constant)) / (5 - exponent)
            threshold = iv.exp(log_t)
            y_max = int(mp.ceil(upper(threshold))) - 1
            rendered = RealWithError.from_interval(threshold, bits)

        discrepancies = []
        if y_max > claims.QUINTIC_Y_BOUND:
            discrepancies.append(f"derived Y bound {y_max} exceeds the published bound Y < {claims.QUINTIC_Y_BOUND}")
            logger.warning(discrepancies[-1])

        rows = []
        for Y in range(2, max(y_max, claims.QUINTIC_Y_BOUND) + 1):
            value = 31 * (Y**5 - 1)
            root, exact = integer_root(value, 5)
            rows.append(QuinticCheckRow(Y=Y, value=value, root_floor=root, exact=exact))

        found = any(row.exact for row in rows)
        return QuinticCheck(
            threshold=rendered,
            y_max=y_max,
            published_y_bound=claims.QUINTIC_Y_BOUND,
            rows=rows,
            discrepancies=discrepancies,
            verdict=Verdict.SOLUTION_FOUND if found else Verdict.NO_SOLUTION,
        )

    def surd_forms_agree(self, A: int) -> bool:
        """The literal and surd-form evaluations of (sqrt(A) + sqrt(A+1))^2 overlap."""
        bits = self.precision.start_bits
        with working_precision(bits):
            literal = _sum_of_roots_squared(A)
            surd = _surd_square(A)
            return certainly_less(literal, surd) is None or certainly_greater(literal, surd) is None

    def condition_grid(self, xs: range, qs: list[int]) -> list[ConditionCell]:
        """Condition flag for every cell, ordered by (q, X)."""
        return [
            ConditionCell(X=X, q=q, condition_ok=self.condition_holds(X**q - 1, q))
            for q in sorted(qs)
            for X in xs
        ]

    def certificate_grid(self, xs: range, qs: list[int], jobs: int = 1) -> list[BennettCertificate]:
        """Certificates for every cell the contradiction argument covers, ordered by (q, X).

        Cells with q = 3 and the (2, 5) cell are skipped; they are settled by
        the continued-fraction and quintic checks.
        """
        cells = [(X, q) for q in sorted(qs) for X in xs if q >= 5 and (X, q) != (2, 5)]
        skipped = sum(1 for q in qs for _ in xs) - len(cells)
        if skipped:
            logger.info("certificate grid: %d cells routed to other checks (the B >= A step is read as q >= 5)", skipped)
        width = max(1, math.ceil(len(cells) / max(1, jobs * 4)))
        shards = [
            (cells[i : i + width], self.precision.start_bits, self.precision.cap_bits)
            for i in range(0, len(cells), width)
        ]
        return merge_ordered(map_shards(_certificate_shard, shards, jobs))


def _certificate_shard(shard: tuple[list[tuple[int, int]], int, int]) -> list[BennettCertificate]:
    cells, start_bits, cap_bits = shard
    service = BennettService(PrecisionConfig(start_bits=start_bits, cap_bits=cap_bits))
    return [service.contradiction_check(X, q) for X, q in cells]


def expansion_identity_residual(X: int, Y: int, q: int, dps: int = 60) -> float:
    """|sum_{i=1..q} C(q,i) r^(q-i) t^i - (A + B + 1)| with r = (AB)^(1/q), t = XY - r.

    A numeric sanity check of the expansion behind the lower bound on B; it
    holds for any X, Y >= 2, solution or not.
    """
    if X < 2 or Y < 2:
        raise InvalidInputError(f"X and Y must be >= 2, got X={X}, Y={Y}")
    _check_exponent(q)
    A, B = X**q - 1, Y**q - 1
    with mp.workdps(dps):
        r = mp.root(mp.mpf(A * B), q)
        t = X * Y - r
        lhs = mp.fsum(math.comb(q, i) * r ** (q - i) * t**i for i in range(1, q + 1))
        return float(abs(lhs - (A + B + 1)))
