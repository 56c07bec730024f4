"""
Tests for the identity suites behind ``qcalc verify``.
"""

import pytest

# ============================================================================
# BUNDLE 3 - SUITES
# ============================================================================


class TestSuiteConfig:

    @pytest.mark.bundle(3)
    def test_validation(self):
        from src.qcore import DomainError
        from src.suites import SuiteConfig

        for kwargs in ({"tol": -1.0}, {"tol": float("inf")}, {"max_n": 0}, {"threads": 0}):
            with pytest.raises(DomainError):
                SuiteConfig(**kwargs)

    @pytest.mark.bundle(3)
    def test_tolerance_and_degree(self):
        from src.rogers_szego import MAX_DEGREE_EXACT, MAX_DEGREE_FLOATING
        from src.suites import SuiteConfig

        assert SuiteConfig().tolerance(1e-12) == 1e-12
        assert SuiteConfig(exact=True).tolerance(1e-12) == 0.0
        assert SuiteConfig(tol=1e-3, exact=True).tolerance(1e-12) == 1e-3
        assert SuiteConfig().degree("recurrence") == MAX_DEGREE_FLOATING
        assert SuiteConfig(exact=True).degree("recurrence") == MAX_DEGREE_EXACT
        assert SuiteConfig(max_n=4).degree("matrix-q") == 4

    @pytest.mark.bundle(3)
    def test_pools(self):
        from fractions import Fraction

        from src.suites import SuiteConfig

        assert all(isinstance(q, Fraction) for q in SuiteConfig(exact=True).q_pool())
        assert all(isinstance(q, float) for q in SuiteConfig().q_pool())


class TestRunSuite:

    @pytest.mark.bundle(3)
    def test_registry(self):
        from src.suites import SUITE_NAMES, SUITES

        assert SUITE_NAMES[-1] == "all"
        for name in ("generating", "recurrence", "commutators", "qdifference", "matrix-q", "matrix-pq",
                     "reductions", "fourier-gauss", "limits", "algebra-relations"):
            assert name in SUITES, name

    @pytest.mark.bundle(3)
    def test_unknown_suite(self):
        from src.qcore import DomainError
        from src.suites import run_suite

        with pytest.raises(DomainError, match="unknown suite"):
            run_suite("everything")

    @pytest.mark.bundle(3)
    def test_exact_recurrence(self):
        from src.suites import SuiteConfig, run_suite

        reports = run_suite("recurrence", SuiteConfig(exact=True, max_n=15))
        assert reports
        for report in reports:
            assert report.tolerance == 0.0
            assert report.passed, report.to_dict()

    @pytest.mark.bundle(3)
    def test_exact_structural_suites(self):
        from src.suites import SuiteConfig, run_suite

        for name in ("commutators", "qdifference", "algebra-relations"):
            reports = run_suite(name, SuiteConfig(exact=True, max_n=6))
            failed = [report.to_dict() for report in reports if not report.passed]
            assert not failed, f"{name}: {failed[:1]}"

    @pytest.mark.bundle(3)
    @pytest.mark.timeout(600)
    def test_default_suites_pass(self):
        from src.suites import SUITES, SuiteConfig, run_suite

        for name in SUITES:
            reports = run_suite(name, SuiteConfig())
            assert reports, name
            failed = [report.to_dict() for report in reports if not report.passed]
            assert not failed, f"{name}: {len(failed)} failed, first {failed[:1]}"

    @pytest.mark.bundle(3)
    def test_impossible_tolerance_fails(self):
        from src.suites import SuiteConfig, run_suite

        reports = run_suite("generating", SuiteConfig(tol=0.0))
        assert any(not report.passed for report in reports)

    @pytest.mark.bundle(3)
    def test_reproducible_and_thread_independent(self):
        from src.suites import SuiteConfig, run_suite

        first = [report.to_dict() for report in run_suite("special-functions", SuiteConfig(seed=7))]
        again = [report.to_dict() for report in run_suite("special-functions", SuiteConfig(seed=7))]
        threaded = [report.to_dict() for report in run_suite("special-functions", SuiteConfig(seed=7, threads=4))]
        assert first == again
        assert first == threaded

    @pytest.mark.bundle(3)
    def test_seed_changes_draws(self):
        from src.suites import SuiteConfig, run_suite

        one = [report.parameters for report in run_suite("generating", SuiteConfig(seed=1))]
        two = [report.parameters for report in run_suite("generating", SuiteConfig(seed=2))]
        assert one != two

    @pytest.mark.bundle(3)
    def test_reports_serialize(self):
        import json

        from src.suites import SuiteConfig, run_suite

        for report in run_suite("limits", SuiteConfig()):
            json.dumps(report.to_dict())

    @pytest.mark.bundle(3)
    def test_relation_suites_at_default_degree(self):
        from src.suites import SuiteConfig, run_suite

        for name in ("commutators", "algebra-relations"):
            reports = run_suite(name, SuiteConfig())
            failed = [report.to_dict() for report in reports if not report.passed]
            assert not failed, f"{name}: {failed[:1]}"

    @pytest.mark.bundle(3)
    def test_exact_pq_relations(self):
        from fractions import Fraction

        from src.suites import RATIONAL_PQ_POOL, SuiteConfig, run_suite

        reports = [report for report in run_suite("algebra-relations", SuiteConfig(exact=True))
                   if report.identity_name == "(p,q)-oscillator relations"]
        assert len(reports) == len(RATIONAL_PQ_POOL)
        for report in reports:
            assert isinstance(report.parameters["p"], Fraction)
            assert report.tolerance == 0.0
            assert report.passed, report.to_dict()

    @pytest.mark.bundle(3)
    def test_generating_draws_cover_negative_parameters(self):
        from src.suites import SuiteConfig, run_suite

        reports = run_suite("generating", SuiteConfig())
        first = [report.parameters for report in reports if "alpha" in report.parameters]
        second = [report.parameters for report in reports if "t" in report.parameters]
        assert any(params["alpha"] < 0 for params in first)
        assert any(params["t"] < 0 for params in second)
        assert any(params["y"] < 0 for params in first + second)
        failed = [report.to_dict() for report in reports if not report.passed]
        assert not failed, failed[:1]

    @pytest.mark.bundle(3)
    def test_heine_with_negative_argument(self):
        from src.suites import SuiteConfig, run_suite

        reports = [report for report in run_suite("special-functions", SuiteConfig())
                   if report.identity_name.startswith("1phi0")]
        assert any(report.parameters["z"] < 0 and report.parameters["a"] < 0 for report in reports)
        assert all(report.passed for report in reports), [r.to_dict() for r in reports if not r.passed][:1]

    @pytest.mark.bundle(3)
    def test_rescaled_vinet_near_a_zero(self):
        """At negative z the series nearly cancels; the error is measured against sum |terms|."""
        import math

        from src.deformed_exp import epq_munu, vinet_exp
        from src.qcore import VerificationReport
        from src.suites import SuiteConfig, run_suite

        z, p, q = -1.874, 0.9827, 0.8006
        report = VerificationReport.compare("", {}, epq_munu(z, p, q, 0.5, 0.5).value,
                                            vinet_exp(math.sqrt(q / p) * z, p, q).value, 1e-13,
                                            scale=epq_munu(abs(z), p, q, 0.5, 0.5).value)
        assert report.passed, report.rel_err
        reports = run_suite("exponentials", SuiteConfig())
        failed = [report.to_dict() for report in reports if not report.passed]
        assert not failed, failed[:1]

    @pytest.mark.bundle(3)
    def test_limits_strictly_decreasing(self):
        from src.suites import LIMIT_RATIO, SuiteConfig, run_suite

        reports = run_suite("limits", SuiteConfig())
        strict = [report for report in reports if report.identity_name.endswith("strictly decreasing")]
        halved = [report for report in reports if report.identity_name.endswith("halved per step")]
        assert len(strict) == len(halved) == 12
        for report in strict:
            deviations = report.parameters["deviations"]
            assert all(later < earlier for earlier, later in zip(deviations, deviations[1:]))
            assert report.tolerance == 1.0 and report.passed
        assert all(report.tolerance == LIMIT_RATIO and report.passed for report in halved)

    @pytest.mark.bundle(3)
    def test_reductions_cover_positive_arguments(self):
        from src.suites import SuiteConfig, run_suite

        reports = run_suite("reductions", SuiteConfig())
        assert any(report.parameters["x"] > 0 for report in reports if report.identity_name.startswith("Q^"))
        assert any(report.parameters["x"] > 0 for report in reports if report.identity_name.startswith("L^"))
        failed = [report.to_dict() for report in reports if not report.passed]
        assert not failed, failed[:1]
