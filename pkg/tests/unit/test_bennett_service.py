"""Unit tests for the irrationality-measure certificates."""

import pytest
from sympy import primerange

from src.core import claims
from src.core.errors import InvalidInputError, PreconditionError
from src.schemas.common import Verdict
from src.services.bennett_service import BennettService, expansion_identity_residual


class TestMu:
    """Tests for mu."""

    def test_prime(self, bennett_service: BennettService) -> None:
        """Test mu_3 = sqrt(3)."""
        assert bennett_service.mu(3).approx() == pytest.approx(3**0.5)

    def test_composite(self, bennett_service: BennettService) -> None:
        """Test mu_6 = 2 * sqrt(3)."""
        assert bennett_service.mu(6).approx() == pytest.approx(2 * 3**0.5)

    def test_rejects_one(self, bennett_service: BennettService) -> None:
        """Test that k must be at least 2."""
        with pytest.raises(InvalidInputError):
            bennett_service.mu(1)


class TestCondition:
    """Tests for condition_holds and the condition grid."""

    @pytest.mark.parametrize(
        "A,k,expected",
        [(7, 3, False), (26, 3, False), (63, 3, True), (31, 5, True), (127, 7, True)],
    )
    def test_cells(self, bennett_service: BennettService, A: int, k: int, expected: bool) -> None:
        """Test the condition at small A."""
        assert bennett_service.condition_holds(A, k) is expected

    def test_grid_failures(self, bennett_service: BennettService) -> None:
        """Test that only (2, 3) and (3, 3) fail on a small grid."""
        cells = bennett_service.condition_grid(range(2, 6), [3, 5, 7, 11])

        failing = {(cell.X, cell.q) for cell in cells if not cell.condition_ok}
        assert failing == {(2, 3), (3, 3)}
        assert [(cell.q, cell.X) for cell in cells] == sorted((cell.q, cell.X) for cell in cells)

    def test_rejects_small_k(self, bennett_service: BennettService) -> None:
        """Test that k must be at least 3."""
        with pytest.raises(InvalidInputError):
            bennett_service.condition_holds(7, 2)


class TestIrrationalityExponent:
    """Tests for the irrationality exponent."""

    def test_quintic_x3_exceeds_stated_shape(self, bennett_service: BennettService) -> None:
        """Test lambda at X = 3, q = 5 is about 2.827, above 2.8."""
        lam = bennett_service.irrationality_measure(3**5 - 1, 5)

        assert 2.82 < lam.approx() < 2.84
        assert float(lam.lower) > 2.8

    def test_quintic_x4_below_stated_shape(self, bennett_service: BennettService) -> None:
        """Test lambda at X = 4, q = 5 is below 2.8."""
        assert float(bennett_service.irrationality_measure(4**5 - 1, 5).upper) < 2.8

    def test_septic_x2(self, bennett_service: BennettService) -> None:
        """Test lambda at X = 2, q = 7 lies just below 3.15."""
        lam = bennett_service.irrationality_measure(2**7 - 1, 7)

        assert 3.13 < float(lam.lower)
        assert float(lam.upper) < 3.15

    def test_decreasing_in_x(self, bennett_service: BennettService) -> None:
        """Test lambda decreases as X grows."""
        values = [bennett_service.irrationality_measure(X**5 - 1, 5).approx() for X in range(3, 9)]

        assert values == sorted(values, reverse=True)

    def test_requires_condition(self, bennett_service: BennettService) -> None:
        """Test that lambda is refused where the condition fails."""
        with pytest.raises(PreconditionError):
            bennett_service.irrationality_exponent(7, 3)


class TestBounds:
    """Tests for b_lower_bound and b_upper_bound."""

    def test_lower_bound_exact(self, bennett_service: BennettService) -> None:
        """Test q^q A^(q-1) t^q with A = 31, q = 5, t = 1."""
        assert bennett_service.b_lower_bound(31, 1, 5) == 2886003125

    def test_lower_bound_scales_with_t(self, bennett_service: BennettService) -> None:
        """Test the t^q factor."""
        assert bennett_service.b_lower_bound(31, 2, 5) == 2886003125 * 32

    def test_upper_bound_constant(self, bennett_service: BennettService) -> None:
        """Test C is about 1489 and E about 3.602 at X = 3, q = 5."""
        bound = bennett_service.b_upper_bound(3**5 - 1, 5)

        assert 1480 < bound.constant.approx() < 1500
        assert bound.exponent.approx() == pytest.approx(3.602, abs=0.01)

    def test_upper_bound_rejects_cubic(self, bennett_service: BennettService) -> None:
        """Test that q = 3 is routed to the continued-fraction check."""
        with pytest.raises(InvalidInputError):
            bennett_service.b_upper_bound(63, 3)


class TestContradictionCheck:
    """Tests for contradiction_check."""

    def test_septic_x2_no_solution(self, bennett_service: BennettService) -> None:
        """Test X = 2, q = 7 is certified with the stated shapes holding."""
        cert = bennett_service.contradiction_check(2, 7)

        assert cert.verdict is Verdict.NO_SOLUTION
        assert cert.shape_ok is True
        assert cert.discrepancies == []
        assert cert.b_lower == 7**7 * 127**6
        assert cert.b_upper is not None and cert.log_b_lower is not None
        assert float(cert.b_upper.log_bound.upper) < float(cert.log_b_lower.lower)
        assert cert.lower_bound_justification

    def test_quintic_x3_records_discrepancy(self, bennett_service: BennettService) -> None:
        """Test X = 3, q = 5 is certified while the stated shapes fail."""
        cert = bennett_service.contradiction_check(3, 5)

        assert cert.verdict is Verdict.NO_SOLUTION
        assert cert.shape_ok is False
        assert len(cert.discrepancies) == 2
        assert any("2.8" in d for d in cert.discrepancies)
        assert any("1400" in d for d in cert.discrepancies)

    def test_lambda_alias_in_dump(self, bennett_service: BennettService) -> None:
        """Test the certificate serializes lambda under its own name."""
        dumped = bennett_service.contradiction_check(2, 7).model_dump(by_alias=True)

        assert "lambda" in dumped
        assert "lambda_" not in dumped

    @pytest.mark.parametrize("X,q", [(1, 5), (2, 3), (2, 5), (2, 9)])
    def test_rejected_cells(self, bennett_service: BennettService, X: int, q: int) -> None:
        """Test cells outside the contradiction argument are refused."""
        with pytest.raises(InvalidInputError):
            bennett_service.contradiction_check(X, q)

    def test_certificate_grid(self, bennett_service: BennettService) -> None:
        """Test a small grid is all NoSolution, skips (2, 5) and q = 3, and is ordered by (q, X)."""
        certs = bennett_service.certificate_grid(range(2, 6), [3, 5, 7, 11])

        cells = [(c.X, c.q) for c in certs]
        assert (2, 5) not in cells
        assert all(q != 3 for _, q in cells)
        assert len(cells) == 11
        assert cells == sorted(cells, key=lambda cell: (cell[1], cell[0]))
        assert all(c.verdict is Verdict.NO_SOLUTION for c in certs)


class TestQuinticBaseTwo:
    """Tests for quintic_base_two_check."""

    def test_threshold_and_rows(self, bennett_service: BennettService) -> None:
        """Test Y < 5.46, hence Y <= 5, and Y up to 6 is checked exactly."""
        check = bennett_service.quintic_base_two_check()

        assert 5.4 < check.threshold.approx() < 5.5
        assert check.y_max == 5
        assert check.published_y_bound == 6
        assert [row.Y for row in check.rows] == [2, 3, 4, 5, 6]
        assert not any(row.exact for row in check.rows)
        assert check.verdict is Verdict.NO_SOLUTION

    def test_rows_are_exact_values(self, bennett_service: BennettService) -> None:
        """Test each row brackets 31(Y^5 - 1) between consecutive fifth powers."""
        for row in bennett_service.quintic_base_two_check().rows:
            assert row.value == 31 * (row.Y**5 - 1)
            assert row.root_floor**5 <= row.value < (row.root_floor + 1) ** 5

    def test_no_discrepancy_at_published_constants(self, bennett_service: BennettService) -> None:
        """Test the derived bound Y <= 5 agrees with the stated Y < 6."""
        assert bennett_service.quintic_base_two_check().discrepancies == []

    def test_weaker_exponent_records_discrepancy(
        self, bennett_service: BennettService, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test a correction exponent of 3.5 gives T ~ 11.65, Y <= 11, and a recorded discrepancy."""
        monkeypatch.setattr(claims, "CORRECTION_EXPONENT", "3.5")

        check = bennett_service.quintic_base_two_check()

        assert check.y_max == 11
        assert [row.Y for row in check.rows] == list(range(2, 12))
        assert check.discrepancies == ["derived Y bound 11 exceeds the published bound Y < 6"]
        assert check.model_dump(mode="json")["discrepancies"] == check.discrepancies
        assert check.verdict is Verdict.NO_SOLUTION


class TestNumericChecks:
    """Tests for the sanity checks behind the lower bound."""

    @pytest.mark.parametrize("X,Y,q", [(2, 3, 5), (3, 7, 7), (2, 2, 11)])
    def test_expansion_identity(self, X: int, Y: int, q: int) -> None:
        """Test the binomial expansion of (r + t)^q reproduces A + B + 1."""
        assert expansion_identity_residual(X, Y, q) < 1e-30

    def test_surd_forms_agree(self, bennett_service: BennettService) -> None:
        """Test the literal and surd forms of (sqrt(A) + sqrt(A+1))^2 overlap."""
        for A in (7, 31, 242, 10**6, 2**61 - 1):
            assert bennett_service.surd_forms_agree(A)


class TestFullGrids:
    """Full-scale grid checks over X in [2, 100] and odd primes q <= 97."""

    XS = range(2, claims.CONDITION_GRID_X_MAX + 1)
    QS = list(primerange(3, claims.CONDITION_GRID_Q_MAX + 1))

    @pytest.mark.slow
    def test_condition_fails_only_at_known_cells(self, bennett_service: BennettService) -> None:
        """Test the condition fails exactly at (2, 3) and (3, 3)."""
        cells = bennett_service.condition_grid(self.XS, self.QS)

        failures = {(c.X, c.q) for c in cells if not c.condition_ok}
        assert len(cells) == len(self.XS) * len(self.QS)
        assert failures == claims.CONDITION_FAILURES

    @pytest.mark.slow
    def test_certificates_close_every_cell(self, bennett_service: BennettService) -> None:
        """Test NoSolution for every q >= 5 with lambda < q, and lambda < 3.15 when q >= 7."""
        certs = bennett_service.certificate_grid(self.XS, [q for q in self.QS if q >= 5])

        assert len(certs) == len(self.XS) * (len(self.QS) - 1) - 1
        for cert in certs:
            assert cert.verdict is Verdict.NO_SOLUTION, (cert.X, cert.q)
            assert cert.lambda_ is not None
            assert float(cert.lambda_.upper) < cert.q
            if cert.q >= 7:
                assert float(cert.lambda_.upper) < 3.15, (cert.X, cert.q)

    @pytest.mark.slow
    def test_lambda_decreasing_in_x(self, bennett_service: BennettService) -> None:
        """Test lambda strictly decreases in X for every q >= 7."""
        certs = bennett_service.certificate_grid(self.XS, [q for q in self.QS if q >= 7])

        by_q: dict[int, list[float]] = {}
        for cert in certs:
            assert cert.lambda_ is not None
            by_q.setdefault(cert.q, []).append(cert.lambda_.approx())
        for q, values in by_q.items():
            assert all(a > b for a, b in zip(values, values[1:])), q
