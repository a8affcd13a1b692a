"""Command-line interface: tables, studies, diagnostics, exit codes."""

import subprocess
import sys

import pytest

from tempfrac.cli import main


class TestWeightsCommand:
    @staticmethod
    def _table_rows(out):
        rows = []
        for ln in out.strip().split("\n"):
            parts = ln.split()
            if parts and parts[0].isdigit():
                rows.append(parts)
        return rows

    def test_table_and_leading_weight(self, capsys):
        assert main(["weights", "--alpha", "1.5", "--lambda", "1", "--h", "0.1", "--n", "10"]) == 0
        rows = self._table_rows(capsys.readouterr().out)
        assert len(rows) == 11
        assert float(rows[0][2]) == pytest.approx(0.8403904, abs=5e-7)

    def test_untempered_partial_sums_decay(self, capsys):
        assert main(["weights", "--alpha", "1.5", "--lambda", "0", "--h", "0.1", "--n", "400"]) == 0
        rows = self._table_rows(capsys.readouterr().out)
        partial_first = abs(float(rows[0][3]))
        partial_last = abs(float(rows[-1][3]))
        assert partial_last < 1e-2 * partial_first

    def test_domain_error_exits_2(self, capsys):
        assert main(["weights", "--alpha", "2.5", "--lambda", "1", "--h", "0.1", "--n", "5"]) == 2
        assert "error" in capsys.readouterr().err

    def test_csv_format(self, capsys):
        assert main(["weights", "--alpha", "1.2", "--lambda", "0.5", "--h", "0.1",
                     "--n", "4", "--format", "csv"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("k,g_k,w_k,partial_sum")


class TestConvergeCommand:
    def test_default_case_two_levels(self, capsys, tmp_path):
        out_path = tmp_path / "study.csv"
        code = main(["converge", "--levels", "2", "--out", str(out_path)])
        assert code == 0
        text = out_path.read_text()
        assert text.startswith("case,alpha,beta,lambda,h,tau,error,rate,wall_ms")
        assert "ex5_1" in text
        table = capsys.readouterr().out
        assert "rate" in table

    def test_unknown_case_exits_2(self, capsys):
        assert main(["converge", "--case", "bogus"]) == 2
        assert "error" in capsys.readouterr().err

    def test_two_dimensional_case(self, capsys):
        code = main(["converge", "--case", "ex5_3", "--alpha", "1.2", "--beta", "1.5",
                     "--lambda", "0.1", "--levels", "2"])
        assert code == 0
        out = capsys.readouterr().out
        assert "ex5_3" in out

    def test_invalid_alpha_exits_2(self, capsys):
        assert main(["converge", "--case", "ex5_1", "--alpha", "3.0"]) == 2

    def test_deviating_rate_exits_1(self, capsys):
        # first-order temporal coupling destroys the spatial order on a
        # stable configuration, which the CI contract must flag
        code = main(["converge", "--case", "ex5_1", "--alpha", "1.5", "--lambda", "1",
                     "--levels", "2", "--coupling", "fixed", "--tau", "0.05"])
        assert code == 1


class TestStabilityCommand:
    def test_unstable_configuration_flagged(self, capsys):
        assert main(["stability", "--alpha", "1.9", "--lambda", "50", "--h", "0.1"]) == 0
        out = capsys.readouterr().out
        assert "UNSTABLE" in out

    def test_stable_configuration(self, capsys):
        assert main(["stability", "--alpha", "1.5", "--lambda", "1", "--h", "0.05"]) == 0
        out = capsys.readouterr().out
        assert "STABLE" in out
        assert "negative-definite" in out

    def test_splitting_regime_reported(self, capsys):
        main(["stability", "--alpha", "1.9", "--lambda", "0", "--h", "0.05"])
        assert "applies" in capsys.readouterr().out

    def test_splitting_inapplicable_reported(self, capsys):
        main(["stability", "--alpha", "1.2", "--lambda", "0", "--h", "0.05"])
        assert "not applicable" in capsys.readouterr().out


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "tempfrac.cli", "weights", "--n", "3"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "w_k" in proc.stdout

    def test_usage_error_exit_code(self):
        proc = subprocess.run(
            [sys.executable, "-m", "tempfrac.cli", "no-such-command"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 2
