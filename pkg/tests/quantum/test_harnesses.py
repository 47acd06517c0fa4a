import numpy as np
import pytest

from qadc.core.errors import BadOperatorRange, BadOrder
from qadc.quantum.harnesses import (
    AlphaGap,
    alpha_convergence,
    data_processing_check,
    encoding_check,
    fidelity_divergence_check,
    gaps_shrinking,
    measurement_distance_check,
    pinching_check,
    uhlmann_check,
)
from qadc.quantum.library import blank_environment_action, identity_channel
from qadc.quantum.linalg_core import DensityMatrix, LabeledOperator, Register, basis_projector
from qadc.quantum.sampling import (
    make_generator,
    random_channel,
    random_contraction,
    random_density,
    random_psd,
)

QUBIT = Register.of(("A", 2))
QUTRIT = Register.of(("A", 3))


@pytest.fixture
def rng():
    """Provide a seeded Philox generator."""
    return make_generator(21)


def test_measurement_distance_holds(rng):
    """Test the measurement bound on random states and a random effect."""
    rho, sigma = random_density(rng, QUTRIT), random_density(rng, QUTRIT)
    slack, ok = measurement_distance_check(rho, sigma, random_contraction(rng, QUTRIT))
    assert ok
    assert slack >= -1e-8


def test_measurement_distance_rejects_non_effect(rng):
    """Test that an operator above the identity raises BadOperatorRange."""
    rho = random_density(rng, QUBIT)
    with pytest.raises(BadOperatorRange):
        measurement_distance_check(rho, rho, LabeledOperator(QUBIT, 2 * np.eye(2)))


def test_fidelity_divergence_holds(rng):
    """Test the fidelity lower bound from the sandwiched divergence."""
    rho, sigma = random_density(rng, QUTRIT), random_density(rng, QUTRIT)
    _, ok = fidelity_divergence_check(rho, sigma, 0.5)
    assert ok


def test_fidelity_divergence_order():
    """Test that a non-positive offset raises BadOrder."""
    rho = DensityMatrix.from_matrix(QUBIT, np.eye(2) / 2)
    with pytest.raises(BadOrder):
        fidelity_divergence_check(rho, rho, 0.0)


def test_pinching_check_passes(rng):
    """Test the pinching facts for a degenerate pinching operator."""
    a = LabeledOperator(QUTRIT, np.diag([1.0, 1.0, 0.5]))
    result = pinching_check(a, random_psd(rng, QUTRIT), random_psd(rng, QUTRIT))
    assert result.nu == 2
    assert result.passed
    assert result.to_dict()["pass"] is True


def test_pinching_check_requires_psd():
    """Test that a pinched operator with a negative eigenvalue is refused."""
    a = LabeledOperator(QUBIT, np.diag([1.0, 0.0]))
    with pytest.raises(BadOperatorRange):
        pinching_check(a, LabeledOperator(QUBIT, np.diag([1.0, -1.0])))


def test_alpha_convergence_shrinks(rng):
    """Test that the gaps to the relative entropy shrink as the offset goes to zero."""
    rho, sigma = random_density(rng, QUBIT), random_density(rng, QUBIT)
    coarse, fine = alpha_convergence(rho, sigma, (0.5, 0.01))
    assert fine.lower < coarse.lower
    assert fine.upper < coarse.upper
    assert fine.to_dict()["alpha"] == 0.01


def test_alpha_convergence_decreases_toward_one(rng):
    """Test that both gaps decrease over the offsets 0.1, 0.01, 0.001."""
    mixed = [0.9 * random_density(rng, QUBIT).matrix + 0.05 * np.eye(2) for _ in range(2)]
    rho, sigma = (DensityMatrix.from_matrix(QUBIT, m) for m in mixed)
    gaps = alpha_convergence(rho, sigma, (0.1, 0.01, 0.001))
    assert gaps_shrinking(gaps)
    assert max(gaps[-1].lower, gaps[-1].upper) <= 1e-2


def test_gaps_shrinking_detects_growth():
    """Test that a gap growing toward order one is reported."""
    rows = (AlphaGap(0.1, 0.2, 0.2), AlphaGap(0.01, 0.3, 0.05))
    assert not gaps_shrinking(rows)
    assert gaps_shrinking(rows[:1])


@pytest.mark.parametrize("alpha", [0.6, 1.5, 2.0])
def test_data_processing_holds(rng, alpha):
    """Test the data-processing slack for a random channel."""
    rho, sigma = random_density(rng, QUTRIT), random_density(rng, QUTRIT)
    channel = random_channel(rng, QUTRIT, Register.of(("B", 2)))
    slack, ok = data_processing_check(rho, sigma, channel, alpha)
    assert ok
    assert slack >= -1e-8


def test_data_processing_rejects_small_order(rng):
    """Test that orders below 1/2 raise BadOrder."""
    rho = random_density(rng, QUBIT)
    with pytest.raises(BadOrder):
        data_processing_check(rho, rho, identity_channel(QUBIT), 0.3)


def test_alpha_convergence_range(rng):
    """Test that offsets outside (0, 1) raise BadOrder."""
    rho = random_density(rng, QUBIT)
    with pytest.raises(BadOrder):
        alpha_convergence(rho, rho, (1.5,))


def test_uhlmann_isometry_attains_fidelity(rng):
    """Test that the explicit isometry reaches the fidelity."""
    rho, sigma = random_density(rng, QUTRIT), random_density(rng, QUTRIT)
    gap, ok = uhlmann_check(rho, sigma)
    assert ok
    assert gap <= 1e-8


def test_encoding_check_identity_encoder():
    """Test that a single identity encoder incurs no extra distance."""
    action_state = DensityMatrix(basis_projector(Register.of(("G", 2)), 1))
    encoder = identity_channel(Register.of(("S0", 2)), Register.of(("A", 2)))
    gap, ok = encoding_check(blank_environment_action(2), action_state, [encoder])
    assert ok
    assert gap == pytest.approx(0.0, abs=1e-7)
