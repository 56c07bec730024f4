"""
End-to-end tests of the qcalc command line through click's CliRunner.
"""

import pytest

# ============================================================================
# BUNDLE 3 - COMMAND LINE
# ============================================================================


def _csv_rows(text: str):
    return [line.split(",") for line in text.strip().splitlines()]


class TestEval:

    @pytest.mark.bundle(3)
    def test_rogers_szego(self, run_cli):
        code, payload = run_cli("eval", "--fn", "rs", "--n", "2", "--y", "1", "--q", "0.5")
        assert code == 0, payload
        assert float(payload["value"]["re"]) == pytest.approx(3.5, rel=1e-14)
        assert payload["terms_used"] == 3
        assert payload["converged"] is True

    @pytest.mark.bundle(3)
    def test_exact_input(self, run_cli):
        code, payload = run_cli("eval", "--fn", "rs", "--n", "2", "--y", "1", "--q", "1/2")
        assert code == 0, payload
        assert float(payload["value"]["re"]) == 3.5

    @pytest.mark.bundle(3)
    def test_domain_error(self, run_cli):
        code, payload = run_cli("eval", "--fn", "eq-mu", "--z", "0.5", "--q", "1.5", "--mu", "0")
        assert code == 2
        assert payload["error"]["type"] == "DomainError"
        assert "q out of domain" in payload["error"]["message"]

    @pytest.mark.bundle(3)
    def test_missing_parameter(self, run_cli):
        code, payload = run_cli("eval", "--fn", "rs", "--n", "2", "--q", "0.5")
        assert code == 2
        assert "--y" in payload["error"]["message"]

    @pytest.mark.bundle(3)
    def test_unknown_function(self, run_cli):
        code, payload = run_cli("eval", "--fn", "nope", "--q", "0.5")
        assert code == 2
        assert payload["error"]["type"] == "UsageError"

    @pytest.mark.bundle(3)
    def test_non_convergence(self, run_cli):
        code, payload = run_cli("eval", "--fn", "eq-mu", "--z", "0.5", "--q", "0.5", "--mu", "0.25",
                                "--max-terms", "3")
        assert code == 3
        assert payload["error"]["type"] == "NonConvergence"
        assert payload["error"]["partial"]["converged"] is False
        assert payload["error"]["partial"]["terms_used"] <= 3

    @pytest.mark.bundle(3)
    def test_matrix_element_fields(self, run_cli):
        code, payload = run_cli("eval", "--fn", "u-q", "--m", "2", "--n", "0", "--alpha", "0.2",
                                "--beta", "0.1", "--mu", "0", "--nu", "0.5", "--q", "0.5")
        assert code == 0, payload
        assert payload["branch"] == "raising_dominant"
        assert "kernel_value" in payload

    @pytest.mark.bundle(3)
    def test_version(self, run_cli):
        from src import __version__

        code, payload = run_cli("--version")
        assert code == 0
        assert __version__ in payload


class TestTable:

    @pytest.mark.bundle(3)
    def test_rogers_szego_rows(self, run_cli):
        code, text = run_cli("table", "--fn", "rs", "--n", "0..5", "--y", "1", "--q", "0.5")
        assert code == 0, text
        rows = _csv_rows(text)
        assert rows[0] == ["n", "y", "q", "re", "im", "terms_used", "converged", "est_error"]
        assert len(rows) == 7
        assert [row[0] for row in rows[1:]] == ["0", "1", "2", "3", "4", "5"]
        assert float(rows[3][3]) == pytest.approx(3.5, rel=1e-14)

    @pytest.mark.bundle(3)
    def test_matrix_grid(self, run_cli):
        code, text = run_cli("table", "--fn", "u-q", "--m", "0..3", "--n", "0..3", "--alpha", "0.2",
                             "--beta", "0.1", "--mu", "0", "--nu", "0.5", "--q", "0.5")
        assert code == 0, text
        assert len(_csv_rows(text)) == 17

    @pytest.mark.bundle(3)
    def test_float_axis(self, run_cli):
        code, text = run_cli("table", "--fn", "eq-mu", "--z", "0:0.5:6", "--q", "0.5", "--mu", "0.5",
                             "--columns", "z,re")
        assert code == 0, text
        rows = _csv_rows(text)
        assert rows[0] == ["z", "re"]
        assert len(rows) == 7
        assert float(rows[1][1]) == 1.0

    @pytest.mark.bundle(3)
    def test_empty_grid(self, run_cli):
        code, payload = run_cli("table", "--fn", "rs", "--n", "0..3", "--y", "0:1:0", "--q", "0.5")
        assert code == 2
        assert "empty grid" in payload["error"]["message"]

    @pytest.mark.bundle(3)
    def test_unknown_column(self, run_cli):
        code, payload = run_cli("table", "--fn", "rs", "--n", "0..3", "--y", "1", "--q", "0.5",
                                "--columns", "n,bogus")
        assert code == 2
        assert "bogus" in payload["error"]["message"]


class TestVerify:

    @pytest.mark.bundle(3)
    def test_exact_recurrence(self, run_cli):
        code, payload = run_cli("verify", "--suite", "recurrence", "--max-n", "15", "--exact")
        assert code == 0
        assert payload and all(report["passed"] for report in payload)
        assert {"identity_name", "parameters", "lhs", "rhs", "abs_err", "rel_err", "passed"} <= set(payload[0])

    @pytest.mark.bundle(3)
    def test_failed_identities(self, run_cli):
        code, payload = run_cli("verify", "--suite", "generating", "--tol", "0")
        assert code == 1
        assert any(not report["passed"] for report in payload)

    @pytest.mark.bundle(3)
    def test_bad_options(self, run_cli):
        code, payload = run_cli("verify", "--suite", "everything")
        assert code == 2
        code, payload = run_cli("verify", "--suite", "limits", "--threads", "0")
        assert code == 2
        assert "threads" in payload["error"]["message"]
        code, payload = run_cli("verify", "--suite", "limits", "--rel-tol", "0")
        assert code == 2

    @pytest.mark.bundle(3)
    def test_seed_is_reproducible(self, run_cli):
        first = run_cli("verify", "--suite", "limits", "--seed", "11")
        second = run_cli("verify", "--suite", "limits", "--seed", "11", "--threads", "3")
        assert first == second
