import numpy as np
import pytest

from qadc.quantum.channels import channel_residuals
from qadc.quantum.linalg_core import Register, min_eigenvalue, operator_norm
from qadc.quantum.sampling import (
    derive_seed,
    make_generator,
    random_channel,
    random_contraction,
    random_density,
    random_isometry,
    random_projector,
    random_pure,
    random_simplex,
)

REG = Register.of(("X", 3))


def test_derive_seed_is_deterministic_and_key_sensitive():
    """Test that derived seeds depend only on the master seed and keys."""
    assert derive_seed(5, 1) == derive_seed(5, 1)
    assert derive_seed(5, 1) != derive_seed(5, 2)
    assert derive_seed(5, 1) != derive_seed(6, 1)


def test_make_generator_streams_repeat():
    """Test that equal keys give identical streams."""
    a = make_generator(3, 0).standard_normal(4)
    b = make_generator(3, 0).standard_normal(4)
    np.testing.assert_array_equal(a, b)


def test_random_isometry_columns_orthonormal():
    """Test that a random isometry has orthonormal columns."""
    v = random_isometry(make_generator(1), 5, 3)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(3), atol=1e-12)


def test_random_pure_state():
    """Test that a random pure state has unit purity."""
    rho = random_pure(make_generator(2), REG)
    assert np.trace(rho.matrix @ rho.matrix).real == pytest.approx(1.0)


def test_random_density_full_rank():
    """Test that a default random state has unit trace and full support."""
    rho = random_density(make_generator(2), REG)
    assert np.trace(rho.matrix).real == pytest.approx(1.0)
    assert min_eigenvalue(rho) > 0


def test_random_contraction_range():
    """Test that a random contraction lies between 0 and I."""
    s = random_contraction(make_generator(4), REG)
    assert min_eigenvalue(s) >= -1e-12
    assert operator_norm(s) <= 1 + 1e-12


def test_random_projector_is_idempotent():
    """Test that a random projector squares to itself."""
    p = random_projector(make_generator(6), REG, rank=2)
    np.testing.assert_allclose(p.matrix @ p.matrix, p.matrix, atol=1e-12)
    assert p.trace().real == pytest.approx(2.0)


def test_random_channel_is_cptp():
    """Test that random channels pass the CPTP checks, even when expanding dimension."""
    ch = random_channel(make_generator(8), Register.of(("X", 4)), Register.of(("Y", 2)), 1)
    assert channel_residuals(ch).passed
    assert ch.rank == 2


def test_random_simplex_sums_to_one():
    """Test that simplex samples are probability vectors."""
    p = random_simplex(make_generator(9), 5)
    assert p.sum() == pytest.approx(1.0)
    assert np.all(p >= 0)
