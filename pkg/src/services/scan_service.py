"""Batch scans: exceptional pairs, Wieferich primes, Fermat-quotient valuations.

Also the per-base resolutions for the small bases and the direct brute-force
oracle on (2^k - 1)(b^k - 1) = y^q.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path

from sympy import isprime, primerange

from src.core import claims
from src.core.arith import (
    DEFAULT_VALUATION_CAP,
    ModulusSchedule,
    integer_root,
    power_minus_one_valuation,
)
from src.core.checkpoint import CheckpointStore, parameter_fingerprint
from src.core.errors import InvalidInputError, PreconditionError, ValuationCapExceededError
from src.core.sharding import ShardConfig, map_shards, merge_ordered, split_range
from src.schemas.chain import ChainVerdict
from src.schemas.common import Verdict
from src.schemas.scans import (
    EquationSolution,
    ExceptionalPair,
    FermatCheckpoint,
    FermatQuotientReport,
    FermatWitness,
    PrimeLevel,
    ResolutionReport,
    ResolutionStep,
    WieferichFinding,
)
from src.services.chain_service import REDUCTION_CITATION, ChainEngine, no_solution_threshold

logger = logging.getLogger(__name__)

# Log Fermat-quotient progress every this many primes
PROGRESS_EVERY = 50


def _odd_members(residue: int, modulus: int, lo: int, hi: int) -> range:
    """Odd b in [lo, hi) with b = residue (mod modulus), for odd modulus."""
    first = lo + (residue - lo) % modulus
    if first % 2 == 0:
        first += modulus
    return range(first, hi, 2 * modulus)


class RootOfUnityLadder:
    """The (p-1)-th roots of unity modulo p, p^2, p^3, ...

    nu_p(b^(p-1) - 1) >= j exactly when b mod p^j is one of the p - 1 roots
    at level j. Each level comes from the previous one by t -> t^p mod p^j.
    """

    def __init__(self, p: int, cap: int = DEFAULT_VALUATION_CAP) -> None:
        if p < 3 or not isprime(p):
            raise InvalidInputError(f"p must be an odd prime, got {p}")
        self.p = p
        self.cap = cap
        self._levels: list[frozenset[int]] = [frozenset(range(1, p))]

    def lift(self, roots: list[int], level: int) -> list[int]:
        """Lift roots modulo p^level to roots modulo p^(level + 1)."""
        modulus = self.p ** (level + 1)
        return [pow(t, self.p, modulus) for t in roots]

    def roots(self, level: int) -> frozenset[int]:
        """All roots modulo p^level."""
        if level < 1:
            raise InvalidInputError(f"level must be >= 1, got {level}")
        while len(self._levels) < level:
            current = len(self._levels)
            self._levels.append(frozenset(self.lift(sorted(self._levels[-1]), current)))
        return self._levels[level - 1]

    def valuation_of(self, b: int) -> int:
        """nu_p(b^(p-1) - 1) read off the ladder.

        Raises:
            PreconditionError: p divides b.
            ValuationCapExceededError: The valuation exceeds the cap.
        """
        if b % self.p == 0:
            raise PreconditionError(f"{self.p} divides b={b}")
        level = 1
        while b % self.p ** (level + 1) in self.roots(level + 1):
            level += 1
            if level >= self.cap:
                raise ValuationCapExceededError(b, self.p - 1, self.p, self.cap)
        return level


def _prime_level(shard: tuple[int, int, int]) -> PrimeLevel:
    """Largest level reached by an odd b in [3, b_max) for one prime, with its bases."""
    p, b_max, cap = shard
    ladder = RootOfUnityLadder(p, cap)
    alive = [r for r in sorted(ladder.roots(1)) if _odd_members(r, p, 3, b_max)]
    if not alive:
        return PrimeLevel(p=p, level=0)

    level = 1
    while True:
        if level >= cap:
            raise ValuationCapExceededError(alive[0], p - 1, p, cap)
        modulus = p ** (level + 1)
        lifted = [r for r in ladder.lift(alive, level) if _odd_members(r, modulus, 3, b_max)]
        if not lifted:
            break
        alive = lifted
        level += 1

    modulus = p**level
    bases = sorted(b for r in alive for b in _odd_members(r, modulus, 3, b_max))
    return PrimeLevel(p=p, level=level, bases=bases)


def _exceptional_shard(shard: tuple[int, int, tuple[int, ...], int]) -> list[ExceptionalPair]:
    lo, hi, q_set, cap = shard
    engine = ChainEngine(valuation_cap=cap)
    pairs = []
    for b in range(lo | 1, hi, 2):
        if b < 3:
            continue
        for q in q_set:
            if (1 << q) <= b + 1:
                continue
            decision = engine.decide(engine.instance(b, q))
            if decision.verdict is ChainVerdict.EXCEPTIONAL:
                assert decision.blocking is not None
                pairs.append(ExceptionalPair(q=q, b=b, blocking=decision.blocking))
    return pairs


def _wieferich_shard(shard: tuple[list[int], int, ModulusSchedule]) -> list[WieferichFinding]:
    primes, cap, schedule = shard
    found = []
    for p in primes:
        v = power_minus_one_valuation(2, p - 1, p, cap, schedule)
        if v >= 2:
            found.append(WieferichFinding(p=p, valuation=v))
    return found


def _validate_q_set(q_set: list[int], allow_two: bool = False) -> list[int]:
    if not q_set:
        raise InvalidInputError("q set is empty")
    for q in q_set:
        if not isprime(q) or (q == 2 and not allow_two):
            kind = "prime" if allow_two else "odd prime"
            raise InvalidInputError(f"q must be an {kind}, got {q}")
    return sorted(set(q_set))


def _nu3_branch(b: int) -> str:
    if b % 3 == 0:
        return "3 | b"
    if b % 3 == 1:
        return "3 | b - 1"
    return "3 | b + 1"


class ScanService:
    """Large-range scans over bases and primes."""

    def __init__(
        self,
        engine: ChainEngine | None = None,
        shards: ShardConfig | None = None,
        valuation_cap: int | None = None,
    ) -> None:
        """Initialize the scan service.

        Args:
            engine: Prime-chain engine. Defaults to one built from settings.
            shards: Parallelism. Defaults to settings.
            valuation_cap: Valuation cap. Defaults to settings.
        """
        if valuation_cap is None:
            from src.core.config import get_settings

            valuation_cap = get_settings().valuation_cap
        self.valuation_cap = valuation_cap
        self.engine = engine or ChainEngine(valuation_cap=valuation_cap)
        self.shards = shards or ShardConfig.from_settings()

    def exceptional_pair_scan(self, b_max: int, q_set: list[int]) -> list[ExceptionalPair]:
        """Every (b, q) with odd 3 <= b < b_max, q > log2(b + 1) that the chain leaves open.

        Returns:
            list[ExceptionalPair]: Ordered by (q, b).
        """
        if b_max < 3:
            raise InvalidInputError(f"b_max must be >= 3, got {b_max}")
        qs = tuple(_validate_q_set(q_set))
        for q in qs:
            if (1 << q) - 1 < b_max:
                logger.info(
                    "b=%d: excluded by q > log2(b+1), included by the q > log2(b-1) reading; scanning the former",
                    (1 << q) - 1,
                )
        shards = [(lo, hi, qs, self.valuation_cap) for lo, hi in split_range(3, b_max, self.shards.shard_count)]
        pairs = merge_ordered(map_shards(_exceptional_shard, shards, self.shards.jobs))
        logger.info("exceptional scan b<%d q=%s: %d pairs", b_max, list(qs), len(pairs))
        return sorted(pairs, key=lambda pair: (pair.q, pair.b))

    def wieferich_scan(
        self, p_max: int, schedule: ModulusSchedule = ModulusSchedule.LADDER
    ) -> list[WieferichFinding]:
        """Odd primes p < p_max with nu_p(2^(p-1) - 1) >= 2."""
        if p_max < 3:
            raise InvalidInputError(f"p_max must be >= 3, got {p_max}")
        primes = list(primerange(3, p_max))
        shards = [
            (primes[lo:hi], self.valuation_cap, schedule)
            for lo, hi in split_range(0, len(primes), self.shards.shard_count)
        ]
        return merge_ordered(map_shards(_wieferich_shard, shards, self.shards.jobs))

    def fermat_quotient_scan(
        self, b_max: int, p_max: int, checkpoint: Path | None = None
    ) -> FermatQuotientReport:
        """max nu_p(b^(p-1) - 1) over odd b in [3, b_max) and odd primes p < p_max, p not dividing b.

        Residue classes are walked up the root-of-unity ladder of each prime
        instead of iterating over b. With a checkpoint path the state is
        saved after every completed prime and completed primes are skipped on
        resume.

        Raises:
            ValuationCapExceededError: Some valuation exceeds the cap.
            InvalidInputError: Bad ranges or a checkpoint for other parameters.
        """
        if b_max < 3 or p_max < 3:
            raise InvalidInputError(f"ranges must be >= 3, got b_max={b_max}, p_max={p_max}")

        parameters = {"scan": "fermatq", "b_max": b_max, "p_max": p_max}
        fingerprint = parameter_fingerprint(parameters)
        store = CheckpointStore(checkpoint, FermatCheckpoint) if checkpoint else None
        state = store.load(fingerprint) if store else None
        if state is None:
            state = FermatCheckpoint(fingerprint=fingerprint, parameters=parameters)
        resumed = len(state.completed)

        done = {level.p for level in state.completed}
        todo = [(p, b_max, self.valuation_cap) for p in primerange(3, p_max) if p not in done]
        for i, level in enumerate(map_shards(_prime_level, todo, self.shards.jobs), start=1):
            state.completed.append(level)
            if store:
                store.save(state)
            if i % PROGRESS_EVERY == 0:
                logger.info("fermatq: %d/%d primes done (p=%d)", i, len(todo), level.p)

        levels = sorted(state.completed, key=lambda level: level.p)
        max_valuation = max((level.level for level in levels), default=0)
        witnesses = [
            FermatWitness(b=b, p=level.p, valuation=level.level)
            for level in levels
            if level.level == max_valuation and max_valuation > 0
            for b in level.bases
        ]
        within = max_valuation <= claims.FERMAT_QUOTIENT_BOUND
        if not within:
            logger.warning("fermatq: maximum %d exceeds the published bound %d", max_valuation, claims.FERMAT_QUOTIENT_BOUND)
        return FermatQuotientReport(
            b_max=b_max,
            p_max=p_max,
            max_valuation=max_valuation,
            witnesses=witnesses,
            primes_scanned=len(levels),
            primes_resumed=resumed,
            published_bound=claims.FERMAT_QUOTIENT_BOUND,
            within_bound=within,
        )

    def brute_force_equation(self, b: int, q_set: list[int], k_max: int) -> list[EquationSolution]:
        """All (k, q, y) with 2 <= k <= k_max, q in q_set and (2^k - 1)(b^k - 1) = y^q.

        q = 2 is accepted so that the square case gets a desk-scale witness.
        """
        if b < 3 or b % 2 == 0:
            raise InvalidInputError(f"b must be an odd integer >= 3, got {b}")
        if k_max < 2:
            raise InvalidInputError(f"k_max must be >= 2, got {k_max}")
        qs = _validate_q_set(q_set, allow_two=True)
        found = []
        for k in range(2, k_max + 1):
            n = ((1 << k) - 1) * (b**k - 1)
            for q in qs:
                y, exact = integer_root(n, q)
                if exact:
                    found.append(EquationSolution(k=k, q=q, y=y))
        return found

    def resolve_base(self, b: int, k_max: int = 60) -> ResolutionReport:
        """Show that (2^k - 1)(b^k - 1) = y^q has no solution for a listed small base.

        Primes q from the no-solution threshold up are excluded outright; the
        chain engine forces q | k for every smaller q > log2(b + 1); for the
        remaining q (q = 3 whenever b >= 7) nu_2 and nu_3 accounting forces
        3 | k directly. The verdict covers odd prime q; the square case is
        only witnessed by the brute-force oracle and its hits are reported
        as discrepancies.

        Raises:
            InvalidInputError: b is not one of the listed bases.
        """
        if b not in claims.RESOLVED_BASES:
            raise InvalidInputError(f"b must be one of {list(claims.RESOLVED_BASES)}, got {b}")

        threshold = no_solution_threshold(b)
        steps = [
            ResolutionStep(
                name="large-q",
                detail=f"q >= {threshold} > 2 sqrt(2b): no solution",
            )
        ]
        discrepancies: list[str] = []
        closed = True

        log_region = []
        remaining = []
        for q in primerange(3, threshold):
            inst = self.engine.instance(b, q)
            if inst.in_log_region():
                log_region.append(self.engine.decide(inst))
            else:
                remaining.append(q)
        open_pairs = [d.q for d in log_region if d.verdict is ChainVerdict.EXCEPTIONAL]
        if open_pairs:
            closed = False
            discrepancies.append(f"b={b}: chain leaves q={open_pairs} open")
        steps.append(
            ResolutionStep(
                name="log-region",
                detail=f"q | k forced for q in {[d.q for d in log_region]}; hence q <= log2({b + 1})",
                decisions=log_region,
            )
        )

        report = ResolutionReport(b=b, threshold=threshold, remaining_q=remaining, verdict=Verdict.INCONCLUSIVE)

        if not remaining:
            steps.append(
                ResolutionStep(
                    name="no-remaining-exponent",
                    detail=f"no odd prime q <= log2({b + 1}) = {math.log2(b + 1):.4f}",
                )
            )

        for q in remaining:
            inst = self.engine.instance(b, q)
            if q != 3:
                decision = self.engine.decide(inst)
                steps.append(ResolutionStep(name=f"q={q}", detail=decision.verdict.value, decisions=[decision]))
                closed = closed and decision.verdict is ChainVerdict.Q_DIVIDES_K
                continue

            nu2 = self.engine.nu2_feasible(inst)
            steps.append(
                ResolutionStep(
                    name="nu2",
                    detail=f"nu_2(k) >= {nu2.minimum}" + (": 2 | k" if nu2.minimum >= 1 else ""),
                    feasibility=[nu2],
                )
            )
            if nu2.minimum < 1:
                closed = False
                continue

            nu3 = self.engine.nur_feasible(inst, 3)
            branch = _nu3_branch(b)
            w = sum(fact.e for fact in nu3.facts)
            coefficient = 1 if b % 3 == 0 else 2
            report.branch = branch
            report.nu3_inequality_bound = max(0, -((w - q) // coefficient))
            report.nu3_exact_minimum = nu3.minimum
            report.published_branches = [
                name for name, bases in claims.NU3_BRANCHES_AS_PUBLISHED.items() if b in bases
            ]
            if report.published_branches != [branch]:
                message = f"b={b} is listed under {report.published_branches}; divisibility puts it under '{branch}'"
                discrepancies.append(message)
                logger.warning(message)
            steps.append(
                ResolutionStep(
                    name="nu3",
                    detail=(
                        f"{branch}: nu_3 total {w} + {coefficient} nu_3(k) >= 3, so nu_3(k) >= "
                        f"{report.nu3_inequality_bound} (exact minimum {nu3.minimum}): 3 | k"
                    ),
                    feasibility=[nu3],
                )
            )
            if nu3.minimum < 1:
                closed = False
                continue
            steps.append(ResolutionStep(name="reduction", detail=REDUCTION_CITATION))

        report.square_case_solutions = self.brute_force_equation(b, [2], k_max)
        steps.append(
            ResolutionStep(
                name="square-case",
                detail=f"q = 2 is settled externally; desk-scale oracle k <= {k_max}: "
                f"{len(report.square_case_solutions)} solutions",
            )
        )
        for solution in report.square_case_solutions:
            message = (
                f"b={b}: (2^{solution.k} - 1)(b^{solution.k} - 1) = {solution.y}^2 contradicts "
                "the cited absence of square solutions"
            )
            discrepancies.append(message)
            logger.warning(message)

        report.steps = steps
        report.discrepancies = discrepancies
        if closed:
            report.verdict = Verdict.NO_SOLUTION
        return report
