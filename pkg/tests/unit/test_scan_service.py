"""Unit tests for the batch scans and the per-base resolutions."""

import random
from pathlib import Path

import pytest
from sympy import primerange

from src.core.arith import ModulusSchedule, power_minus_one_valuation
from src.core.errors import InvalidInputError
from src.core.sharding import ShardConfig
from src.schemas.common import Verdict
from src.services.chain_service import ChainEngine
from src.services.scan_service import RootOfUnityLadder, ScanService


class TestExceptionalPairScan:
    """Tests for exceptional_pair_scan."""

    def test_small_scale_table(self, scan_service: ScanService) -> None:
        """Test the open pairs below 4200 for q up to 13."""
        pairs = scan_service.exceptional_pair_scan(4200, [3, 5, 7, 11, 13])

        assert [(pair.q, pair.b) for pair in pairs] == [
            (5, 15),
            (5, 17),
            (11, 1023),
            (11, 1025),
            (13, 4095),
            (13, 4097),
        ]

    def test_blocking_recorded(self, scan_service: ScanService) -> None:
        """Test each pair carries the constraint that blocked the chain."""
        pairs = scan_service.exceptional_pair_scan(40, [5])

        assert all(pair.blocking.p == 5 and pair.blocking.r == 2 for pair in pairs)

    def test_shard_determinism(self, chain_engine: ChainEngine) -> None:
        """Test the output does not depend on the shard or worker count."""
        results = [
            ScanService(chain_engine, ShardConfig(jobs=jobs, shards_per_job=per_job), 64).exceptional_pair_scan(
                1100, [5, 11, 13]
            )
            for jobs, per_job in [(1, 1), (1, 4), (2, 8)]
        ]

        assert results[0] == results[1] == results[2]

    def test_rejects_composite_q(self, scan_service: ScanService) -> None:
        """Test that q must be an odd prime."""
        with pytest.raises(InvalidInputError):
            scan_service.exceptional_pair_scan(100, [5, 9])

    @pytest.mark.slow
    def test_full_table(self, chain_engine: ChainEngine) -> None:
        """Test the full table below 10^6."""
        from src.core import claims

        service = ScanService(chain_engine, ShardConfig(jobs=4, shards_per_job=4), 64)
        pairs = service.exceptional_pair_scan(claims.EXCEPTIONAL_TABLE_B_MAX, sorted(claims.EXCEPTIONAL_TABLE))

        found = {q: frozenset(pair.b for pair in pairs if pair.q == q) for q in claims.EXCEPTIONAL_TABLE}
        assert found == claims.EXCEPTIONAL_TABLE


class TestWieferichScan:
    """Tests for wieferich_scan."""

    @pytest.mark.parametrize("schedule", list(ModulusSchedule))
    def test_known_primes(self, scan_service: ScanService, schedule: ModulusSchedule) -> None:
        """Test 1093 and 3511 are the base-2 Wieferich primes below 4000."""
        findings = scan_service.wieferich_scan(4000, schedule)

        assert [(f.p, f.valuation) for f in findings] == [(1093, 2), (3511, 2)]

    def test_published_range(self, scan_service: ScanService) -> None:
        """Test only 1093 lies below 2828."""
        assert [f.p for f in scan_service.wieferich_scan(2828)] == [1093]


class TestRootOfUnityLadder:
    """Tests for RootOfUnityLadder."""

    def test_roots_are_roots(self) -> None:
        """Test every level holds p - 1 roots of x^(p-1) = 1."""
        ladder = RootOfUnityLadder(7)
        for level in range(1, 6):
            roots = ladder.roots(level)
            assert len(roots) == 6
            assert all(pow(t, 6, 7**level) == 1 for t in roots)

    def test_matches_modular_valuation(self) -> None:
        """Test the ladder against power_minus_one_valuation on random (b, p)."""
        rng = random.Random(20240601)
        primes = list(primerange(3, 200))
        ladders = {p: RootOfUnityLadder(p) for p in primes}
        for _ in range(2000):
            p = rng.choice(primes)
            b = rng.randrange(3, 10**6, 2)
            if b % p == 0:
                continue
            assert ladders[p].valuation_of(b) == power_minus_one_valuation(b, p - 1, p), (b, p)

    def test_high_valuation(self) -> None:
        """Test b = 3^9 * 2 + 1 reaches level 9 at p = 3."""
        assert RootOfUnityLadder(3).valuation_of(2 * 3**9 + 1) == 9

    def test_rejects_two(self) -> None:
        """Test that p must be odd."""
        with pytest.raises(InvalidInputError):
            RootOfUnityLadder(2)


class TestFermatQuotientScan:
    """Tests for fermat_quotient_scan."""

    def test_desk_scale_maximum(self, scan_service: ScanService) -> None:
        """Test the maximum over b < 10^5, p < 500 is 9, reached at p = 3."""
        report = scan_service.fermat_quotient_scan(10**5, 500)

        assert report.max_valuation == 9
        assert {w.b for w in report.witnesses if w.p == 3} == {39365, 39367, 78731, 78733}
        assert report.within_bound
        assert report.primes_scanned == len(list(primerange(3, 500)))
        assert report.primes_resumed == 0

    def test_small_box_against_direct_loop(self, scan_service: ScanService) -> None:
        """Test the residue-class walk against a direct double loop."""
        report = scan_service.fermat_quotient_scan(600, 30)

        direct = {
            (b, p): power_minus_one_valuation(b, p - 1, p)
            for p in primerange(3, 30)
            for b in range(3, 600, 2)
            if b % p
        }
        best = max(direct.values())
        assert report.max_valuation == best
        assert {(w.b, w.p) for w in report.witnesses} == {key for key, v in direct.items() if v == best}

    def test_checkpoint_resume(self, scan_service: ScanService, tmp_path: Path) -> None:
        """Test a second run resumes every prime from the checkpoint."""
        path = tmp_path / "fermatq.json"
        first = scan_service.fermat_quotient_scan(2000, 50, checkpoint=path)
        second = scan_service.fermat_quotient_scan(2000, 50, checkpoint=path)

        assert path.exists()
        assert second.primes_resumed == second.primes_scanned == first.primes_scanned
        assert second.max_valuation == first.max_valuation
        assert second.witnesses == first.witnesses

    def test_checkpoint_for_other_parameters(self, scan_service: ScanService, tmp_path: Path) -> None:
        """Test a checkpoint is not reused for a different box."""
        path = tmp_path / "fermatq.json"
        scan_service.fermat_quotient_scan(2000, 50, checkpoint=path)

        with pytest.raises(InvalidInputError):
            scan_service.fermat_quotient_scan(3000, 50, checkpoint=path)

    @pytest.mark.slow
    def test_full_scale(self, chain_engine: ChainEngine) -> None:
        """Test the maximum below 10^6 and 2828 is 11 at p = 3."""
        service = ScanService(chain_engine, ShardConfig(jobs=4, shards_per_job=1), 64)
        report = service.fermat_quotient_scan(10**6, 2828)

        assert report.max_valuation == 11
        assert {(w.b, w.p) for w in report.witnesses} == {
            (354293, 3),
            (354295, 3),
            (708587, 3),
            (708589, 3),
        }


class TestBruteForceEquation:
    """Tests for brute_force_equation."""

    def test_no_small_solutions(self, scan_service: ScanService) -> None:
        """Test b = 5 has no solution for q in 2, 3, 5, 7 and k <= 60."""
        assert scan_service.brute_force_equation(5, [2, 3, 5, 7], 60) == []

    def test_base_three(self, scan_service: ScanService) -> None:
        """Test b = 3 has no solution for q in 2, 3, 5 and k <= 60."""
        assert scan_service.brute_force_equation(3, [2, 3, 5], 60) == []

    def test_square_witness(self, scan_service: ScanService) -> None:
        """Test (2^2 - 1)(7^2 - 1) = 12^2 is found."""
        solutions = scan_service.brute_force_equation(7, [2, 3], 10)

        assert (2, 2, 12) in [(s.k, s.q, s.y) for s in solutions]

    def test_rejects_even_base(self, scan_service: ScanService) -> None:
        """Test that b must be odd."""
        with pytest.raises(InvalidInputError):
            scan_service.brute_force_equation(8, [3], 10)


class TestResolveBase:
    """Tests for resolve_base."""

    @pytest.mark.parametrize("b", [5, 7, 11, 13, 21, 23, 27, 29])
    def test_no_solution(self, scan_service: ScanService, b: int) -> None:
        """Test every listed base resolves for odd prime exponents."""
        report = scan_service.resolve_base(b, k_max=20)

        assert report.verdict is Verdict.NO_SOLUTION
        assert report.steps[0].name == "large-q"
        assert report.steps[-1].name == "square-case"

    def test_base_five_has_no_remaining_exponent(self, scan_service: ScanService) -> None:
        """Test b = 5 leaves no odd prime q <= log2(6)."""
        report = scan_service.resolve_base(5, k_max=20)

        assert report.threshold == 7
        assert report.remaining_q == []
        assert "no-remaining-exponent" in [step.name for step in report.steps]
        assert report.branch is None

    @pytest.mark.parametrize(
        "b,branch,bound",
        [
            (7, "3 | b - 1", 1),
            (13, "3 | b - 1", 1),
            (11, "3 | b + 1", 1),
            (23, "3 | b + 1", 1),
            (29, "3 | b + 1", 1),
            (21, "3 | b", 2),
            (27, "3 | b", 2),
        ],
    )
    def test_nu3_branch(self, scan_service: ScanService, b: int, branch: str, bound: int) -> None:
        """Test the nu_3 branch follows divisibility and forces 3 | k."""
        report = scan_service.resolve_base(b, k_max=20)

        assert report.remaining_q == [3]
        assert report.branch == branch
        assert report.nu3_inequality_bound == bound
        assert report.nu3_exact_minimum == 2
        assert [step.name for step in report.steps][-3:] == ["nu3", "reduction", "square-case"]

    def test_base_29_listing_discrepancy(self, scan_service: ScanService) -> None:
        """Test b = 29 is flagged for being listed under two branches."""
        report = scan_service.resolve_base(29, k_max=20)

        assert report.published_branches == ["3 | b - 1", "3 | b + 1"]
        assert any("29" in d and "3 | b + 1" in d for d in report.discrepancies)

    def test_base_7_square_case(self, scan_service: ScanService) -> None:
        """Test the k = 2 square for b = 7 is reported without changing the odd-q verdict."""
        report = scan_service.resolve_base(7, k_max=20)

        assert (2, 12) in [(s.k, s.y) for s in report.square_case_solutions]
        assert any("12^2" in d for d in report.discrepancies)
        assert report.verdict is Verdict.NO_SOLUTION

    def test_rejects_unlisted_base(self, scan_service: ScanService) -> None:
        """Test bases outside the list are refused."""
        with pytest.raises(InvalidInputError):
            scan_service.resolve_base(9)
