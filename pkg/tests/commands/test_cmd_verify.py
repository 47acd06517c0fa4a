import json

from qadc.quantum.suites import SuiteResult


def test_verify_single_suite(run_cli, capsys):
    """Test that a quick pinching run passes and reports its cases."""
    assert run_cli("verify", "--suite", "pinching", "--scale", "0.02") == 0
    report = json.loads(capsys.readouterr().out)
    assert report["results"]["pass"] is True
    assert [s["name"] for s in report["results"]["suites"]] == ["pinching"]


def test_verify_failure_exit_code(run_cli, monkeypatch, capsys):
    """Test that a failing suite makes the command exit with code 1."""
    failing = SuiteResult("measurement", cases=1, failures=["case 0: slack -1"])
    monkeypatch.setattr("qadc.commands.cmd_verify.run_suites", lambda *a: [failing])
    assert run_cli("verify", "--suite", "measurement") == 1
    assert json.loads(capsys.readouterr().out)["results"]["pass"] is False


def test_verify_rejects_unknown_suite(run_cli):
    """Test that an unknown suite name is refused by argparse."""
    assert run_cli("verify", "--suite", "nope") == 2
