"""
Tests for the Rogers-Szego polynomials: constructions, ladder operators,
commutators, the q-difference equation and the generating functions.
"""

from fractions import Fraction

import pytest

from .test_utils import ReferenceSeries, relative_error

# ============================================================================
# BUNDLE 1 - CONSTRUCTIONS
# ============================================================================


class TestConstructions:

    @pytest.mark.bundle(1)
    def test_known_values(self):
        from src.rogers_szego import rs_eval

        assert rs_eval(2, Fraction(1), Fraction(1, 2)) == Fraction(7, 2)
        assert rs_eval(2, 1, 0.5) == pytest.approx(3.5, rel=1e-15)
        assert rs_eval(0, 0.3, 0.5) == 1
        assert rs_eval(1, 0.3, 0.5) == pytest.approx(1.3)

    @pytest.mark.bundle(1)
    def test_value_at_minus_one(self):
        """H_n(-1) vanishes for odd n and is (q; q^2)_(n/2) for even n."""
        from src.qcore import qpochhammer
        from src.rogers_szego import rs_eval

        q = Fraction(1, 2)
        for n in range(12):
            expected = 0 if n % 2 else qpochhammer(q, q * q, n // 2)
            assert rs_eval(n, -1, q) == expected, f"H_{n}(-1)"

    @pytest.mark.bundle(1)
    def test_recurrence_matches_direct_exactly(self, rational_qs):
        from src.rogers_szego import MAX_DEGREE_EXACT, rs_direct, rs_recurrence

        for q in rational_qs:
            for n in range(MAX_DEGREE_EXACT + 1):
                assert rs_recurrence(n, q) == rs_direct(n, q), f"H_{n} at q={q}"

    @pytest.mark.bundle(1)
    def test_recurrence_matches_direct_floating(self, float_qs):
        from src.rogers_szego import MAX_DEGREE_FLOATING, rs_direct, rs_recurrence

        for q in float_qs:
            for n in (5, 15, MAX_DEGREE_FLOATING):
                direct = rs_direct(n, q)
                distance = rs_recurrence(n, q).distance(direct)
                assert distance <= 1e-12 * direct.norm(), f"H_{n} at q={q}: distance {distance}"

    @pytest.mark.bundle(1)
    def test_against_definition(self):
        from src.rogers_szego import rs_eval

        q = Fraction(2, 5)
        for n in range(8):
            for y in (Fraction(0), Fraction(3, 2), Fraction(-2, 7)):
                assert rs_eval(n, y, q) == ReferenceSeries.rogers_szego(n, y, q), f"H_{n}({y})"

    @pytest.mark.bundle(1)
    def test_negative_degree(self):
        from src.qcore import DomainError
        from src.rogers_szego import rs_direct, rs_recurrence

        with pytest.raises(DomainError):
            rs_direct(-1, 0.5)
        with pytest.raises(DomainError):
            rs_recurrence(-2, 0.5)

    @pytest.mark.bundle(1)
    def test_h_basis_expansion(self):
        from src.qcore import QPolynomial
        from src.rogers_szego import h_coefficients, rs_direct

        q = Fraction(1, 3)
        assert h_coefficients(rs_direct(3, q), q) == [0, 0, 0, 1]
        f = rs_direct(2, q) * Fraction(5) + rs_direct(0, q) * Fraction(-1, 2)
        assert h_coefficients(f, q) == [Fraction(-1, 2), 0, 5]
        assert h_coefficients(QPolynomial.monomial(1), q) == [-1, 1]


# ============================================================================
# BUNDLE 2 - OPERATORS AND IDENTITIES
# ============================================================================


class TestOperators:

    @pytest.mark.bundle(2)
    def test_ladder_action(self, rational_qs):
        from src.qcore import qnumber_m
        from src.rogers_szego import rs_direct, rs_lower, rs_number, rs_raise

        for q in rational_qs:
            for n in range(8):
                h_n = rs_direct(n, q)
                assert rs_raise(h_n, q) == rs_direct(n + 1, q), f"S+ H_{n}"
                assert rs_raise(h_n, q, n_hint=n) == rs_direct(n + 1, q), f"S+ H_{n} with hint"
                expected = rs_direct(n - 1, q) * qnumber_m(n, q) if n else rs_direct(0, q) * 0
                assert rs_lower(h_n, q) == expected, f"S- H_{n}"
                assert rs_number(h_n, q) == h_n * qnumber_m(n, q), f"N_q H_{n}"

    @pytest.mark.bundle(2)
    def test_q_number_operator_eigenvalues(self):
        from src.rogers_szego import q_number_operator, rs_direct

        q = Fraction(2, 5)
        for n in range(7):
            h_n = rs_direct(n, q)
            assert q_number_operator(h_n, q) == h_n * q ** n

    @pytest.mark.bundle(2)
    def test_creation_residual_vanishes(self, rational_qs):
        from src.rogers_szego import rs_creation_residual

        for q in rational_qs:
            for n in range(12):
                assert rs_creation_residual(n, q).is_zero(), f"creation step at n={n}, q={q}"

    @pytest.mark.bundle(2)
    def test_commutators_exact(self, rational_qs):
        from src.rogers_szego import rs_commutator_residuals

        for q in rational_qs:
            for n in range(10):
                checks = rs_commutator_residuals(n, q)
                assert len(checks) == 4
                for check in checks:
                    assert check.lhs == check.rhs, f"{check.name} on H_{n} at q={q}"

    @pytest.mark.bundle(2)
    def test_commutators_floating(self):
        from src.rogers_szego import rs_commutator_residuals

        for n in range(10):
            for check in rs_commutator_residuals(n, 0.6):
                scale = max(check.lhs.norm(), check.rhs.norm(), 1.0)
                assert check.lhs.distance(check.rhs) <= 1e-11 * scale, f"{check.name} on H_{n}"

    @pytest.mark.bundle(2)
    def test_commutator_scale_is_operator_size(self):
        """q^n H_n is far smaller than S-S+ H_n at n = 15; the residual is measured against the latter."""
        from src.rogers_szego import rs_commutator_residuals, rs_direct, rs_lower, rs_raise

        q, n = 0.5, 15
        check = rs_commutator_residuals(n, q)[0]
        h_n = rs_direct(n, q)
        assert check.scale >= rs_lower(rs_raise(h_n, q), q).norm()
        assert check.scale > 1e3 * check.rhs.norm()
        assert check.lhs.distance(check.rhs) <= 1e-13 * check.scale

    @pytest.mark.bundle(2)
    def test_qdifference_equation(self, rational_qs):
        from src.rogers_szego import rs_qdifference_residual

        for q in rational_qs:
            for n in range(10):
                for y in (Fraction(0), Fraction(1), Fraction(-3, 4), Fraction(5, 2)):
                    assert rs_qdifference_residual(n, y, q) == 0, f"n={n}, y={y}, q={q}"

    @pytest.mark.bundle(2)
    def test_alpha_difference_equation(self, rational_qs):
        from src.rogers_szego import rs_alpha_difference_residuals

        for q in rational_qs:
            residuals = rs_alpha_difference_residuals(10, q)
            assert len(residuals) == 10
            assert all(residual.is_zero() for residual in residuals), f"q={q}"


class TestGeneratingFunctions:

    @pytest.mark.bundle(2)
    def test_first_generating_function(self):
        from src.rogers_szego import rs_generating_closed, rs_generating_series

        for alpha, y, q in [(0.3, 0.5, 0.5), (-0.4, 1.5, 0.7), (0.2, -2.0, 0.3)]:
            closed = rs_generating_closed(alpha, y, q)
            series = rs_generating_series(alpha, y, q)
            assert series.converged
            assert relative_error(series.value, closed) < 1e-12, f"alpha={alpha}, y={y}, q={q}"

    @pytest.mark.bundle(2)
    def test_first_generating_function_domain(self):
        from src.qcore import DomainError
        from src.rogers_szego import rs_generating_closed

        for alpha, y in [(1.2, 0.1), (0.5, 3.0)]:
            with pytest.raises(DomainError):
                rs_generating_closed(alpha, y, 0.5)

    @pytest.mark.bundle(2)
    def test_second_generating_function(self):
        from src.rogers_szego import rs_generating2_closed, rs_generating2_series

        for t, y, q in [(0.3, 0.5, 0.5), (0.8, -1.2, 0.6), (-0.5, 2.0, 0.4)]:
            closed = rs_generating2_closed(t, y, q)
            series = rs_generating2_series(t, y, q).value
            assert relative_error(series, closed) < 1e-12, f"t={t}, y={y}, q={q}"

    @pytest.mark.bundle(2)
    def test_second_generating_function_reduces_to_euler(self):
        from src.qcore import qpochhammer_inf
        from src.rogers_szego import rs_generating2_closed

        for t, q in [(0.3, 0.5), (1.5, 0.7)]:
            euler = qpochhammer_inf(-t, q).value
            assert relative_error(rs_generating2_closed(t, 0, q), euler) < 1e-14
