"""Unit tests for the feasibility sets and the prime-chain engine."""

import pytest
from sympy import nextprime, primerange

from src.core.arith import ModulusSchedule, power_minus_one_valuation
from src.core.errors import InapplicableBoundError, InvalidInputError, PreconditionError
from src.schemas.chain import ChainVerdict
from src.schemas.valuation import ValuationMethod
from src.services.chain_service import ChainEngine, no_solution_threshold


def nu2_of_b_squared_minus_1(b: int) -> int:
    n = b * b - 1
    return (n & -n).bit_length() - 1


# Residues of nu_2(b^2 - 1) mod q at which the chain is left open inside q > log2(b + 1).
OPEN_RESIDUES = {5: {0}, 11: {0}, 13: {0}, 17: {0, 15, 16}}


class TestInstance:
    """Tests for EquationInstance construction."""

    def test_valuations_filled(self, chain_engine: ChainEngine) -> None:
        """Test cached 2-adic valuations."""
        inst = chain_engine.instance(15, 5)

        assert inst.nu2_b_minus_1 == 1
        assert inst.nu2_b_plus_1 == 4
        assert inst.nu2_b_squared_minus_1 == 5

    @pytest.mark.parametrize("b,q", [(4, 5), (1, 5), (15, 9), (15, 2)])
    def test_invalid_instance(self, chain_engine: ChainEngine, b: int, q: int) -> None:
        """Test that even b, b < 3 and non-prime or even q are rejected."""
        with pytest.raises(InvalidInputError):
            chain_engine.instance(b, q)

    def test_log_region(self, chain_engine: ChainEngine) -> None:
        """Test q > log2(b + 1) is decided exactly at the boundary."""
        assert chain_engine.instance(29, 5).in_log_region()
        assert not chain_engine.instance(31, 5).in_log_region()


class TestFeasibility:
    """Tests for nu2_feasible and nur_feasible."""

    def test_nu2_even_k_forced(self, chain_engine: ChainEngine) -> None:
        """Test b = 15, q = 5: k odd is infeasible and nu_2(k) = 1 mod 5."""
        fs = chain_engine.nu2_feasible(chain_engine.instance(15, 5))

        assert not fs.zero_feasible
        assert fs.residue == 1
        assert fs.minimum == 1
        assert fs.contains(6)
        assert not fs.contains(2)
        assert fs.facts[2].e == 5
        assert fs.facts[2].method == ValuationMethod.LTE

    def test_nu2_odd_k_feasible(self, chain_engine: ChainEngine) -> None:
        """Test b = 97, q = 5: nu_2(b - 1) = 5 admits odd k."""
        fs = chain_engine.nu2_feasible(chain_engine.instance(97, 5))

        assert fs.zero_feasible
        assert fs.minimum == 0

    def test_nu2_members_satisfy_constraint(self, chain_engine: ChainEngine) -> None:
        """Test every member j gives nu_2(b^k - 1) a positive multiple of q."""
        for b in range(3, 200, 2):
            inst = chain_engine.instance(b, 7)
            fs = chain_engine.nu2_feasible(inst)
            for j in range(0, 40):
                total = inst.nu2_b_minus_1 if j == 0 else inst.nu2_b_squared_minus_1 + j - 1
                assert fs.contains(j) == (total > 0 and total % 7 == 0), (b, j)

    def test_nur_coprime_base(self, chain_engine: ChainEngine) -> None:
        """Test b = 3, q = 5, r = 5: 2 + 2m = 0 mod 5 and 2 + 2m >= 5 give m >= 4."""
        fs = chain_engine.nur_feasible(chain_engine.instance(3, 5), 5)

        assert fs.minimum == 4
        assert fs.class_floor == 2
        assert [fact.e for fact in fs.facts] == [1, 1]
        assert fs.facts[1].method == ValuationMethod.DIRECT

    def test_nur_dividing_base(self, chain_engine: ChainEngine) -> None:
        """Test b = 15, q = 5, r = 3: 3 | b so 1 + m = 0 mod 5 with 1 + m >= 5."""
        fs = chain_engine.nur_feasible(chain_engine.instance(15, 5), 3)

        assert fs.minimum == 4
        assert len(fs.facts) == 1

    @pytest.mark.parametrize("b", [3, 15, 21, 97])
    @pytest.mark.parametrize("q", [5, 7, 11])
    def test_nur_matches_valuations_of_k(self, chain_engine: ChainEngine, b: int, q: int) -> None:
        """Test membership of m <= 200 against nu_r of the left side at k = (r - 1) r^m."""
        inst = chain_engine.instance(b, q)
        for r in primerange(3, q + 1):
            fs = chain_engine.nur_feasible(inst, r)
            feasible = []
            for m in range(201):
                k = (r - 1) * r**m
                total = power_minus_one_valuation(2, k, r, cap=260, schedule=ModulusSchedule.SQUARE_FIRST)
                if b % r:
                    total += power_minus_one_valuation(b, k, r, cap=260, schedule=ModulusSchedule.SQUARE_FIRST)
                ok = total > 0 and total % q == 0
                assert fs.contains(m) == ok, (b, q, r, m)
                if ok:
                    feasible.append(m)
            assert fs.minimum == feasible[0], (b, q, r)

    def test_nur_rejects_r_above_q(self, chain_engine: ChainEngine) -> None:
        """Test that r must be an odd prime not above q."""
        inst = chain_engine.instance(15, 5)

        with pytest.raises(PreconditionError):
            chain_engine.nur_feasible(inst, 7)
        with pytest.raises(PreconditionError):
            chain_engine.nur_feasible(inst, 2)


class TestDecide:
    """Tests for the prime-chain decision."""

    def test_q_divides_k(self, chain_engine: ChainEngine) -> None:
        """Test b = 3, q = 5 chains every prime up to 5."""
        decision = chain_engine.decide(chain_engine.instance(3, 5))

        assert decision.verdict is ChainVerdict.Q_DIVIDES_K
        assert [step.p for step in decision.trace] == [2, 3, 5]
        assert all(step.chained for step in decision.trace)
        assert decision.trace[-1].lower_bound == 4
        assert decision.citation
        assert decision.blocking is None

    def test_exceptional_pair_blocking(self, chain_engine: ChainEngine) -> None:
        """Test b = 15, q = 5 fails at 5 - 1 = 4 needing nu_2(k) >= 2."""
        decision = chain_engine.decide(chain_engine.instance(15, 5))

        assert decision.verdict is ChainVerdict.EXCEPTIONAL
        assert decision.blocking is not None
        assert decision.blocking.p == 5
        assert decision.blocking.r == 2
        assert decision.blocking.needed == 2
        assert decision.blocking.available == 1
        assert decision.blocking.first_unchained == 5

    def test_unchained_prime_is_skipped(self, chain_engine: ChainEngine) -> None:
        """Test b = 2^14 - 1, q = 17: every prime up to q is visited and 17 stays unchained."""
        decision = chain_engine.decide(chain_engine.instance(2**14 - 1, 17))

        assert decision.verdict is ChainVerdict.EXCEPTIONAL
        assert [step.p for step in decision.trace] == [2, 3, 5, 7, 11, 13, 17]
        assert decision.blocking is not None
        assert decision.blocking.first_unchained == 17
        assert decision.blocking.r == 2

    @pytest.mark.parametrize("q", [5, 11, 13])
    def test_open_pairs_follow_two_adic_rule(self, chain_engine: ChainEngine, q: int) -> None:
        """Test that inside the log region the open pairs are exactly nu_2(b^2 - 1) = 0 mod q."""
        for b in range(3, min(2**q - 1, 4200), 2):
            decision = chain_engine.decide(chain_engine.instance(b, q))
            expected_open = nu2_of_b_squared_minus_1(b) % q in OPEN_RESIDUES[q]
            assert (decision.verdict is ChainVerdict.EXCEPTIONAL) == expected_open, b

    def test_open_pairs_for_seventeen(self, chain_engine: ChainEngine) -> None:
        """Test the q = 17 rule on windows around multiples of 2^14."""
        bases = [b for t in range(1, 8) for b in range(t * 2**14 - 41, t * 2**14 + 42, 2)]
        for b in bases:
            decision = chain_engine.decide(chain_engine.instance(b, 17))
            expected_open = nu2_of_b_squared_minus_1(b) % 17 in OPEN_RESIDUES[17]
            assert (decision.verdict is ChainVerdict.EXCEPTIONAL) == expected_open, b

    @pytest.mark.parametrize("q", [3, 7, 19])
    def test_no_open_pairs(self, chain_engine: ChainEngine, q: int) -> None:
        """Test q = 3, 7 and 19 leave nothing open on a sample of the log region."""
        for b in range(3, min(2**q - 1, 3000), 2):
            assert chain_engine.decide(chain_engine.instance(b, q)).verdict is ChainVerdict.Q_DIVIDES_K, b


class TestClosedFormBounds:
    """Tests for closed_form_bounds."""

    def test_equality_when_b_plus_1_is_power_of_two(self, chain_engine: ChainEngine) -> None:
        """Test b = 3, q = 5: nu_2(k) >= 3 = q - log2(b + 1) holds only with equality."""
        bounds = chain_engine.closed_form_bounds(chain_engine.instance(3, 5))

        assert bounds.nu2_exact_minimum == 3
        assert bounds.nu2_bound == pytest.approx(3.0)
        assert not bounds.nu2_strict
        assert bounds.nu3_exact_minimum == 4
        assert bounds.dominated

    def test_strict_bound(self, chain_engine: ChainEngine) -> None:
        """Test b = 5, q = 7: the exact minimum dominates strictly."""
        bounds = chain_engine.closed_form_bounds(chain_engine.instance(5, 7))

        assert bounds.nu2_strict
        assert bounds.nu3_checked_directly
        assert bounds.dominated

    def test_dominated_on_log_region(self, chain_engine: ChainEngine) -> None:
        """Test that exact minima dominate the closed forms wherever q | k is forced."""
        for q in (5, 7):
            for b in range(3, 2**q - 1, 2):
                inst = chain_engine.instance(b, q)
                if chain_engine.decide(inst).verdict is ChainVerdict.Q_DIVIDES_K:
                    assert chain_engine.closed_form_bounds(inst).dominated, (b, q)

    @pytest.mark.parametrize("q", list(primerange(3, 24)))
    def test_dominated_for_small_primes(self, chain_engine: ChainEngine, q: int) -> None:
        """Test dominance for every odd prime q <= 23 on b < 1000 wherever q | k is forced."""
        for b in range(3, min(2**q - 1, 1000), 2):
            inst = chain_engine.instance(b, q)
            if chain_engine.decide(inst).verdict is ChainVerdict.Q_DIVIDES_K:
                assert chain_engine.closed_form_bounds(inst).dominated, (b, q)

    @pytest.mark.slow
    @pytest.mark.parametrize("q", list(primerange(3, 24)))
    def test_dominated_below_ten_thousand(self, chain_engine: ChainEngine, q: int) -> None:
        """Test dominance for every odd prime q <= 23 on b < 10^4 wherever q | k is forced."""
        for b in range(3, min(2**q - 1, 10**4), 2):
            inst = chain_engine.instance(b, q)
            if chain_engine.decide(inst).verdict is ChainVerdict.Q_DIVIDES_K:
                assert chain_engine.closed_form_bounds(inst).dominated, (b, q)

    def test_outside_log_region(self, chain_engine: ChainEngine) -> None:
        """Test that the bounds are not asserted for q <= log2(b + 1)."""
        with pytest.raises(InapplicableBoundError):
            chain_engine.closed_form_bounds(chain_engine.instance(33, 5))


class TestThreshold:
    """Tests for no_solution_threshold."""

    @pytest.mark.parametrize(
        "b,expected",
        [(3, 5), (5, 7), (7, 11), (29, 17), (999999, 2833)],
    )
    def test_threshold(self, b: int, expected: int) -> None:
        """Test the smallest prime q with q^2 > 8b."""
        assert no_solution_threshold(b) == expected

    def test_even_base_rejected(self) -> None:
        """Test that b must be odd."""
        with pytest.raises(InvalidInputError):
            no_solution_threshold(10)

    def test_chain_closes_at_threshold(self, chain_engine: ChainEngine) -> None:
        """Test q | k is forced at the first two primes from the threshold on, for odd b < 2000."""
        for b in range(3, 2000, 2):
            q = no_solution_threshold(b)
            for exponent in (q, int(nextprime(q))):
                decision = chain_engine.decide(chain_engine.instance(b, exponent))
                assert decision.verdict is ChainVerdict.Q_DIVIDES_K, (b, exponent)

    @pytest.mark.slow
    def test_chain_closes_above_threshold(self, chain_engine: ChainEngine) -> None:
        """Test q | k is forced for every prime q in [threshold, 2 * threshold], odd b < 2000."""
        for b in range(3, 2000, 2):
            q = no_solution_threshold(b)
            for exponent in primerange(q, 2 * q + 1):
                decision = chain_engine.decide(chain_engine.instance(b, exponent))
                assert decision.verdict is ChainVerdict.Q_DIVIDES_K, (b, exponent)
