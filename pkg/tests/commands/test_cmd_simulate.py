import json


def test_simulate_identity_qubit(run_cli, data_file, capsys):
    """Test the Monte-Carlo report for a small code on the noiseless qubit."""
    argv = ("--model", data_file("identity_qubit.json"))
    argv += ("--strategy", data_file("identity_qubit_strategy.json"))
    argv += ("--M", "2", "--L", "1", "--trials", "3", "--seed", "4")
    assert run_cli("simulate", *argv) == 0
    report = json.loads(capsys.readouterr().out)
    results = report["results"]
    assert 0.0 <= results["mean_error"] <= 1.0
    assert len(results["trial_errors"]) == 3
    assert results["master_seed"] == 4
    assert results["comparison"] == "expectation"
    assert set(results["bound_rhs_per_alpha"]) == {"0.10", "0.25"}
    assert report["seeds"] == [4]


def test_simulate_alpha_grid_flag(run_cli, data_file, capsys):
    """Test that --alpha-grid overrides the configured orders."""
    argv = ("--model", data_file("identity_qubit.json"))
    argv += ("--strategy", data_file("identity_qubit_strategy.json"))
    argv += ("--M", "2", "--L", "1", "--trials", "1", "--alpha-grid", "0.2")
    assert run_cli("simulate", *argv) == 0
    results = json.loads(capsys.readouterr().out)["results"]
    assert set(results["bound_rhs_per_alpha"]) == {"0.20"}


def test_simulate_rejects_non_power_of_two(run_cli, data_file):
    """Test that M = 3 exits with code 7."""
    argv = ("--model", data_file("identity_qubit.json"))
    argv += ("--strategy", data_file("identity_qubit_strategy.json"))
    assert run_cli("simulate", *argv, "--M", "3") == 7


def test_simulate_rejects_bad_order(run_cli, data_file):
    """Test that an order outside (0, 1/2) exits with code 6."""
    argv = ("--model", data_file("identity_qubit.json"))
    argv += ("--strategy", data_file("identity_qubit_strategy.json"))
    assert run_cli("simulate", *argv, "--trials", "1", "--alpha-grid", "0.7") == 6


def test_simulate_report_independent_of_workers(run_cli, data_file, capsys):
    """Test that --workers 1 and --workers 4 print the same report bytes."""
    argv = ("--model", data_file("classical_weissman.json"))
    argv += ("--strategy", data_file("classical_weissman_strategy.json"))
    argv += ("--M", "2", "--L", "2", "--trials", "4", "--seed", "7")
    assert run_cli("simulate", *argv, "--workers", "1") == 0
    serial = capsys.readouterr().out
    assert run_cli("simulate", *argv, "--workers", "4") == 0
    assert capsys.readouterr().out == serial
