"""
Tests for the q- and (p,q)-oscillator representations, their defining
relations, the functional realizations and the matrix-element oracle.
"""

from fractions import Fraction

import pytest

# ============================================================================
# BUNDLE 2 - OSCILLATOR ALGEBRAS
# ============================================================================


class TestStateExpansion:

    @pytest.mark.bundle(2)
    def test_merging_and_zero_dropping(self):
        from src.oscillator_rep import StateExpansion

        state = StateExpansion(((2, 1), (0, 3), (2, -1), (1, 0)))
        assert state.entries == ((0, 3),)
        assert StateExpansion().is_empty()
        combined = StateExpansion.basis(1, 2) + StateExpansion.basis(3, 5)
        assert combined.indices == [1, 3]
        assert (combined - combined).is_empty()
        assert combined.scale(Fraction(1, 2)).coefficient(3) == Fraction(5, 2)
        assert combined.truncate(2).indices == [1]

    @pytest.mark.bundle(2)
    def test_negative_index_rejected(self):
        from src.oscillator_rep import StateExpansion
        from src.qcore import DomainError

        with pytest.raises(DomainError):
            StateExpansion.basis(-1)


class TestGenerators:

    @pytest.mark.bundle(2)
    def test_q_oscillator_action(self):
        from src.oscillator_rep import Generator, OscKind, StateExpansion, osc_apply
        from src.qcore import qnumber_m

        q = Fraction(1, 3)
        kind = OscKind.q_osc(q)
        for n in range(6):
            basis = StateExpansion.basis(n)
            assert osc_apply(kind, Generator.PLUS, basis) == StateExpansion.basis(n + 1)
            assert osc_apply(kind, Generator.NUMBER, basis) == StateExpansion.basis(n, n)
            lowered = osc_apply(kind, Generator.MINUS, basis)
            if n == 0:
                assert lowered.is_empty()
            else:
                assert lowered == StateExpansion.basis(n - 1, qnumber_m(n, q))

    @pytest.mark.bundle(2)
    def test_pq_oscillator_action(self):
        from src.oscillator_rep import Generator, OscKind, StateExpansion, osc_apply

        p, q = 0.9, 0.5
        kind = OscKind.pq_osc(p, q)
        raised = osc_apply(kind, "plus", StateExpansion.basis(2))
        assert raised.indices == [3]
        assert raised.coefficient(3) == pytest.approx(-(q / p) ** -1.5)
        lowered = osc_apply(kind, Generator.MINUS, StateExpansion.basis(2))
        expected = (q / p) ** 2 * (p ** 2 - q ** -2) / (1 / p - q)
        assert lowered.coefficient(1) == pytest.approx(expected)

    @pytest.mark.bundle(2)
    def test_kind_must_match_parameters(self):
        from src.oscillator_rep import OscillatorType, OscKind
        from src.qcore import DeformationParams, DomainError

        with pytest.raises(DomainError):
            OscKind(OscillatorType.PQ_OSC, DeformationParams(q=0.5))
        with pytest.raises(DomainError):
            OscKind(OscillatorType.Q_OSC, DeformationParams(q=0.5, p=0.9))
        with pytest.raises(DomainError):
            OscKind.pq_osc(2.0, 0.7)


class TestRelations:

    @pytest.mark.bundle(2)
    def test_q_oscillator_relations_exact(self, rational_qs):
        from src.oscillator_rep import OscKind, verify_algebra_relations

        for q in rational_qs:
            report = verify_algebra_relations(OscKind.q_osc(q), 10)
            assert report.tolerance == 0.0
            assert report.passed, f"q={q}: {report.to_dict()}"

    @pytest.mark.bundle(2)
    def test_q_oscillator_relations_floating(self, float_qs):
        from src.oscillator_rep import OscKind, verify_algebra_relations

        for q in float_qs:
            report = verify_algebra_relations(OscKind.q_osc(q), 10)
            assert report.passed, f"q={q}: rel_err {report.rel_err}"

    @pytest.mark.bundle(2)
    def test_pq_oscillator_relations(self, pq_pairs):
        from src.oscillator_rep import OscKind, verify_algebra_relations

        for p, q in pq_pairs:
            report = verify_algebra_relations(OscKind.pq_osc(p, q), 10)
            assert report.passed, f"p={p}, q={q}: rel_err {report.rel_err}"

    @pytest.mark.bundle(2)
    def test_relations_with_small_right_side(self):
        """A-A+ - q^-1 A+A- = p^N leaves p^n far below the products it is formed from."""
        from src.oscillator_rep import OscKind, verify_algebra_relations

        report = verify_algebra_relations(OscKind.pq_osc(0.8, 0.5), 10)
        assert report.tolerance == 1e-13
        assert report.passed, f"rel_err {report.rel_err}"
        for q in (1 / 3, 0.5):
            report = verify_algebra_relations(OscKind.q_osc(q), 15)
            assert report.passed, f"q={q}: rel_err {report.rel_err}"

    @pytest.mark.bundle(2)
    def test_pq_oscillator_relations_exact(self):
        from src.oscillator_rep import OscKind, verify_algebra_relations

        for p, q in [(Fraction(4, 5), Fraction(1, 2)), (Fraction(9, 10), Fraction(2, 3)),
                     (Fraction(6, 5), Fraction(3, 5))]:
            report = verify_algebra_relations(OscKind.pq_osc(p, q), 10)
            assert report.tolerance == 0.0
            assert report.rel_err == 0.0, f"p={p}, q={q}: {report.to_dict()}"
            assert report.passed

    @pytest.mark.bundle(2)
    def test_ladder_product(self):
        from src.oscillator_rep import OscKind

        kind = OscKind.pq_osc(0.8, 0.5)
        for n in range(8):
            product = kind.raise_coefficient(n) * kind.lower_coefficient(n + 1)
            assert kind.ladder_product(n) == pytest.approx(product, rel=1e-13), f"n={n}"
        exact = OscKind.pq_osc(Fraction(4, 5), Fraction(1, 2))
        assert isinstance(exact.ladder_product(3), Fraction)
        assert OscKind.q_osc(Fraction(1, 2)).ladder_product(1) == Fraction(3, 2)

    @pytest.mark.bundle(2)
    def test_broken_tolerance_fails(self):
        """An impossible tolerance on a floating check is reported, not hidden."""
        from src.oscillator_rep import OscKind, verify_algebra_relations

        report = verify_algebra_relations(OscKind.pq_osc(0.9, 0.7), 10, tolerance=0.0)
        assert report.identity_name == "(p,q)-oscillator relations"
        assert report.parameters["max_index"] == 10
        assert report.passed == (report.rel_err == 0.0)

    @pytest.mark.bundle(2)
    def test_max_index_validated(self):
        from src.oscillator_rep import OscKind, verify_algebra_relations
        from src.qcore import DomainError

        with pytest.raises(DomainError):
            verify_algebra_relations(OscKind.q_osc(0.5), 0)

    @pytest.mark.bundle(2)
    def test_jackson_realization(self, rational_qs):
        from src.oscillator_rep import verify_jackson_realization

        for q in rational_qs:
            assert verify_jackson_realization(q, 12).passed, f"q={q}"
        assert verify_jackson_realization(0.7, 12).passed

    @pytest.mark.bundle(2)
    def test_pq_functional_realization(self, pq_pairs):
        from src.oscillator_rep import verify_pq_realization

        for p, q in pq_pairs:
            report = verify_pq_realization(p, q, 8)
            assert report.passed, f"p={p}, q={q}: rel_err {report.rel_err}"


# ============================================================================
# BUNDLE 3 - MATRIX-ELEMENT ORACLE
# ============================================================================


class TestOracle:

    @pytest.mark.bundle(3)
    def test_low_order_elements(self):
        from src.oscillator_rep import OscKind, oracle_matrix_element

        q, alpha, beta = Fraction(1, 2), Fraction(1, 5), Fraction(1, 7)
        kind = OscKind.q_osc(q)
        assert oracle_matrix_element(kind, 0, 0, alpha, beta, 1, 1) == 1
        # E(c+ A+) contributes q^mu alpha at first order
        assert oracle_matrix_element(kind, 1, 0, alpha, beta, 1, 2) == q * alpha
        # E(c- A-) contributes q^nu beta [1] at first order
        assert oracle_matrix_element(kind, 0, 1, alpha, beta, 1, 2) == q ** 2 * beta

    @pytest.mark.bundle(3)
    def test_apply_keeps_requested_indices(self):
        from src.oscillator_rep import OscKind, StateExpansion, oracle_apply

        kind = OscKind.q_osc(Fraction(1, 3))
        state = oracle_apply(kind, StateExpansion.basis(2), Fraction(1, 2), Fraction(1, 4), 0, 0, 4)
        assert max(state.indices) <= 4
        assert set(state.indices) == {0, 1, 2, 3, 4}

    @pytest.mark.bundle(3)
    def test_negative_indices_rejected(self):
        from src.oscillator_rep import OscKind, oracle_matrix_element
        from src.qcore import DomainError

        with pytest.raises(DomainError):
            oracle_matrix_element(OscKind.q_osc(0.5), -1, 0, 0.1, 0.1, 0, 0)
