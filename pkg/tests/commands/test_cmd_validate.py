import json

import pytest


@pytest.mark.parametrize(
    "name, kind",
    [
        ("identity_qubit.json", "model"),
        ("classical_weissman.json", "model"),
        ("identity_qubit_strategy.json", "strategy"),
        ("bell.json", "state"),
    ],
)
def test_validate_shipped_files(run_cli, data_file, capsys, name, kind):
    """Test that every shipped file validates with exit code 0."""
    assert run_cli("validate", data_file(name)) == 0
    assert f"valid {kind}" in " ".join(capsys.readouterr().out.split())


def test_validate_report_to_file(run_cli, data_file, tmp_path, log_manager):
    """Test that --out writes the residual report and logs the run."""
    out = tmp_path / "validate.json"
    assert run_cli("validate", data_file("depolarizing_qubit.json"), "--out", str(out)) == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["command"] == "validate"
    assert report["results"]["kind"] == "model"
    assert report["results"]["pass"] is True
    assert len(report["results"]["checks"]) == 4
    log_manager.write_run.assert_called_once()


def test_validate_non_trace_preserving_channel(run_cli, tmp_path, capsys):
    """Test that a channel with TP residual 0.75 fails with exit code 3."""
    path = tmp_path / "half.json"
    path.write_text(
        json.dumps(
            {
                "input": [{"name": "A", "dim": 2}],
                "output": [{"name": "A", "dim": 2}],
                "kraus": [[[0.5, 0], [0, 0.5]]],
            }
        ),
        encoding="utf-8",
    )
    assert run_cli("validate", str(path)) == 3
    assert "InvalidChannel" in capsys.readouterr().err


def test_validate_bad_state_reports_all_residuals(run_cli, tmp_path):
    """Test that an unnormalized state still gets a full report before failing."""
    path = tmp_path / "twice.json"
    out = tmp_path / "report.json"
    path.write_text(
        json.dumps({"register": [{"name": "A", "dim": 2}], "matrix": [[1, 0], [0, 1]]}),
        encoding="utf-8",
    )
    assert run_cli("validate", str(path), "--out", str(out)) == 3
    checks = json.loads(out.read_text(encoding="utf-8"))["results"]["checks"]
    assert [c["check"] for c in checks] == ["hermiticity", "unit-trace", "positivity"]
    assert checks[1]["residual"] == pytest.approx(1.0)


def test_validate_malformed_json(run_cli, tmp_path, capsys):
    """Test that invalid JSON exits with code 2 and names the line."""
    path = tmp_path / "broken.json"
    path.write_text("{\n  oops\n}\n", encoding="utf-8")
    assert run_cli("validate", str(path)) == 2
    assert "line 2" in " ".join(capsys.readouterr().err.split())
