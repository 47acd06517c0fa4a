import json

import pytest

from qadc.quantum.serialization import load_json


def test_rate_matches_classical_fixture(run_cli, data_file, capsys):
    """Test the Weissman example against its generated fixture."""
    argv = ("--model", data_file("classical_weissman.json"))
    argv += ("--strategy", data_file("classical_weissman_strategy.json"))
    assert run_cli("rate", *argv) == 0
    results = json.loads(capsys.readouterr().out)["results"]
    expected = load_json(data_file("classical_weissman_expected.json"))
    assert results["r_low"] == pytest.approx(expected["r_low"], abs=1e-9)
    assert results["i_vub"] == pytest.approx(expected["i_vuy"], abs=1e-9)
    assert results["i_vs_given_u"] == pytest.approx(0.0, abs=1e-9)
    assert results["marginal_residual"] < 1e-9
    assert "block" not in results


def test_rate_block_terms(run_cli, data_file, tmp_path, capsys):
    """Test that --block adds per-letter terms and --out prints a summary table."""
    out = tmp_path / "rate.json"
    argv = ("--model", data_file("identity_qubit.json"))
    argv += ("--strategy", data_file("identity_qubit_strategy.json"))
    assert run_cli("rate", *argv, "--block", "2", "--out", str(out)) == 0
    results = json.loads(out.read_text(encoding="utf-8"))["results"]
    assert results["r_low"] == pytest.approx(1.0, abs=1e-9)
    assert results["block"]["n"] == 2
    assert results["block"]["r_low_per_letter"] == pytest.approx(1.0, abs=1e-8)
    assert "Report written" in capsys.readouterr().out


def test_rate_requires_strategy(run_cli, data_file, capsys):
    """Test that a missing --strategy is a usage error."""
    assert run_cli("rate", "--model", data_file("identity_qubit.json")) == 2
    assert "--strategy is required" in " ".join(capsys.readouterr().err.split())


def test_rate_rejects_mismatched_strategy(run_cli, data_file, tmp_path):
    """Test that a strategy on the wrong registers exits with code 3."""
    strategy = load_json(data_file("identity_qubit_strategy.json"))
    strategy["action_states"][0] = {
        "register": [{"name": "G", "dim": 3}],
        "matrix": [[1, 0, 0], [0, 0, 0], [0, 0, 0]],
    }
    path = tmp_path / "wrong.json"
    path.write_text(json.dumps(strategy), encoding="utf-8")
    argv = ("--model", data_file("identity_qubit.json"), "--strategy", str(path))
    assert run_cli("rate", *argv) == 3


def test_rate_block_too_large(run_cli, data_file):
    """Test that an oversized block exits with code 8."""
    argv = ("--model", data_file("classical_weissman.json"))
    argv += ("--strategy", data_file("classical_weissman_strategy.json"))
    assert run_cli("rate", *argv, "--block", "3") == 8
