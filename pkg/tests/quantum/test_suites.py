import pytest

from qadc.quantum.suites import (
    DPI_ORDERS,
    NEAR_ONE_OFFSETS,
    RENYI_GRID,
    SUITE_CHOICES,
    SUITE_ORDER,
    SuiteResult,
    expand_suites,
    run_suite,
    run_suites,
)

QUICK = 0.02


def test_expand_single_and_aggregate():
    """Test that aggregates expand in suite order and single names stay alone."""
    assert expand_suites("uhlmann") == ("uhlmann",)
    assert expand_suites("lemmas") == ("pinching", "hayashi-nagaoka", "lemma1", "lemma2")
    assert expand_suites("all") == SUITE_ORDER
    assert "all" in SUITE_CHOICES


def test_expand_unknown_suite():
    """Test that an unknown suite name raises KeyError."""
    with pytest.raises(KeyError):
        expand_suites("nope")


def test_suite_result_tracks_worst_values():
    """Test that low/high keep the extreme values and failures flip the pass flag."""
    result = SuiteResult("demo", cases=2)
    result.low("slack", 0.5)
    result.low("slack", 0.1)
    result.high("gap", 0.2)
    result.high("gap", 0.05)
    assert result.passed
    result.fail("case 1: broken")
    data = result.to_dict()
    assert data["worst"] == {"slack": 0.1, "gap": 0.2}
    assert data["pass"] is False
    assert data["failures"] == ["case 1: broken"]


@pytest.mark.parametrize("name", ["pinching", "hayashi-nagaoka", "measurement"])
def test_quick_suites_pass(name):
    """Test that the cheap suites pass at a reduced scale."""
    result = run_suite(name, seed=0, scale=QUICK)
    assert result.name == name
    assert result.cases >= 1
    assert result.passed, result.failures


def test_suite_is_reproducible():
    """Test that the same seed reproduces the worst-case values."""
    a = run_suite("measurement", seed=4, scale=QUICK)
    b = run_suite("measurement", seed=4, scale=QUICK)
    assert a.to_dict() == b.to_dict()


def test_run_suites_single_name():
    """Test that run_suites on a single name returns one result."""
    results = run_suites("pinching", seed=1, scale=QUICK)
    assert [r.name for r in results] == ["pinching"]


def test_divergence_suite_orders():
    """Test the orders swept by the divergences suite."""
    assert RENYI_GRID == (0.3, 0.5, 0.8, 1.2, 2.0, 3.0)
    assert DPI_ORDERS == (0.6, 1.5, 2.0)
    assert NEAR_ONE_OFFSETS == (0.1, 0.01, 0.001)


def test_divergence_suite_tracks_limit_and_data_processing():
    """Test that the divergences suite passes and reports its near-one gap and channel slack."""
    result = run_suite("divergences", seed=0, scale=QUICK)
    assert result.passed, result.failures
    assert result.worst["near_one_gap"] <= 1e-2
    assert result.worst["dpi_violation"] <= 1e-8
