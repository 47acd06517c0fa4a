import numpy as np
import pytest

from qadc.core.errors import (
    BadCodeParams,
    InvalidChannel,
    RegisterMismatch,
    TooLarge,
)
from qadc.quantum.channels import (
    KrausChannel,
    apply,
    build_purified_encoding,
    channel_residuals,
    choi,
    compose,
    kraus_to_stinespring,
    purify,
    tensor_power_channel,
)
from qadc.quantum.library import (
    blank_environment_action,
    dephasing_channel,
    depolarizing_channel,
    identity_channel,
)
from qadc.quantum.linalg_core import (
    DensityMatrix,
    Register,
    basis_projector,
    maximally_mixed,
    pure_state,
    tensor,
)
from qadc.quantum.sampling import make_generator, random_channel, random_density

A = Register.of(("A", 2))
S0, OUT = Register.of(("S0", 2)), Register.of(("A", 2))


@pytest.fixture
def rng():
    """Provide a seeded Philox generator."""
    return make_generator(11)


def test_channel_requires_completeness():
    """Test that a non trace-preserving family is refused when checked."""
    with pytest.raises(InvalidChannel):
        KrausChannel(A, A, (np.eye(2) / 2,))


def test_channel_rejects_wrong_kraus_shape():
    """Test that Kraus shapes must match the registers."""
    with pytest.raises(RegisterMismatch):
        KrausChannel(A, A, (np.eye(3),))


def test_residuals_report_unchecked_failure():
    """Test that an unchecked half-identity channel has TP residual 0.75 and no CP defect."""
    ch = KrausChannel(A, A, (np.eye(2) / 2,), checked=False)
    residuals = channel_residuals(ch)
    assert residuals.tp_residual == pytest.approx(0.75)
    assert residuals.cp_residual == pytest.approx(0.0, abs=1e-12)
    assert not residuals.passed


def test_choi_of_identity_has_trace_dimension():
    """Test that the unnormalized Choi matrix of the identity has trace d."""
    c = choi(identity_channel(A))
    assert c.register.names == ("A'", "A")
    assert c.trace() == pytest.approx(2.0)


def test_apply_acts_on_named_subsystem():
    """Test that a completely depolarizing map on A leaves the Bell state maximally mixed."""
    bell = pure_state(Register.of(("A", 2), ("B", 2)), np.array([1.0, 0.0, 0.0, 1.0]))
    out = apply(depolarizing_channel(A, 1.0), bell)
    np.testing.assert_allclose(out.matrix, np.eye(4) / 4, atol=1e-12)


def test_apply_missing_input_raises():
    """Test that a state without the channel input is rejected."""
    rho = maximally_mixed(Register.of(("B", 2)))
    with pytest.raises(RegisterMismatch):
        apply(identity_channel(A), rho)


def test_dephasing_kills_coherence():
    """Test that full dephasing removes off-diagonal terms."""
    plus = pure_state(A, np.array([1.0, 1.0]))
    out = apply(dephasing_channel(A, 0.5), plus)
    np.testing.assert_allclose(out.matrix, np.eye(2) / 2, atol=1e-12)


def test_stinespring_roundtrip(rng):
    """Test that splitting a dilation back into blocks reproduces the Kraus operators."""
    ch = random_channel(rng, A, Register.of(("B", 3)), kraus_count=3)
    dilation = kraus_to_stinespring(ch)
    assert dilation.env_register.dim == 3
    for k1, k2 in zip(dilation.to_channel().kraus, ch.kraus, strict=True):
        np.testing.assert_allclose(k1, k2, atol=1e-12)


def test_purify_reproduces_state(rng):
    """Test that the purification marginal equals the state and the reference has its rank."""
    rho = random_density(rng, Register.of(("S", 3)), rank=2)
    phi = purify(rho, "R")
    assert phi.reference_register.dim == 2
    np.testing.assert_allclose(phi.marginal().matrix, rho.matrix, atol=1e-10)


def test_purified_encoding_for_identity_encoder():
    """Test that a single identity encoder is prepared exactly and forwards S0 to A."""
    g = Register.of(("G", 2))
    action_state = DensityMatrix(basis_projector(g, 1))
    encoding = build_purified_encoding(
        blank_environment_action(2), action_state, [identity_channel(S0, OUT)]
    )
    assert encoding.encoding_distance() == pytest.approx(0.0, abs=1e-7)
    assert encoding.marginal_distance() == pytest.approx(0.0, abs=1e-7)
    received = encoding.received_input()
    expected = tensor(
        basis_projector(Register.of(("S", 2)), 0), basis_projector(Register.of(("A", 2)), 1)
    )
    np.testing.assert_allclose(received.matrix, expected.matrix, atol=1e-8)


def test_purified_encoding_dimension_limit():
    """Test that exceeding the dimension limit raises TooLarge."""
    action_state = maximally_mixed(Register.of(("G", 2)))
    with pytest.raises(TooLarge):
        build_purified_encoding(
            blank_environment_action(2), action_state, [identity_channel(S0, OUT)], dim_limit=1
        )


def test_compose_partial_output():
    """Test composing an encoder after the action channel on its S0 output only."""
    composed = compose(blank_environment_action(2), identity_channel(S0, OUT))
    assert composed.output_register.names == ("S", "A")
    rho = DensityMatrix(basis_projector(Register.of(("G", 2)), 1))
    out = apply(composed, rho)
    assert out.matrix[1, 1] == pytest.approx(1.0)


def test_compose_matches_sequential_application(rng):
    """Test that compose agrees with applying both channels in turn."""
    first = random_channel(rng, A, A)
    second = random_channel(rng, A, A)
    rho = random_density(rng, A)
    np.testing.assert_allclose(
        apply(compose(first, second), rho).matrix,
        apply(second, apply(first, rho)).matrix,
        atol=1e-10,
    )


def test_compose_rejects_missing_input():
    """Test that the second channel must consume outputs of the first."""
    with pytest.raises(RegisterMismatch):
        compose(identity_channel(A), identity_channel(Register.of(("B", 2))))


def test_tensor_power_registers_and_completeness():
    """Test that the tensor power suffixes names and stays trace preserving."""
    ch = tensor_power_channel(dephasing_channel(A, 0.3), 2)
    assert ch.input_register.names == ("A_1", "A_2")
    assert ch.rank == 4
    assert channel_residuals(ch).passed


def test_tensor_power_limits():
    """Test the lower and upper limits on the tensor power."""
    with pytest.raises(BadCodeParams):
        tensor_power_channel(identity_channel(A), 0)
    with pytest.raises(TooLarge):
        tensor_power_channel(identity_channel(A), 4)
    with pytest.raises(TooLarge):
        tensor_power_channel(identity_channel(Register.of(("A", 5))), 3)
