# qadc/quantum/sampling.py

"""
Seeded randomness and random test instances.

All randomness flows through `numpy.random.Philox`, a counter-based generator, seeded by
`numpy.random.SeedSequence([master, *keys])`. A derived stream therefore depends only on the
master seed and its keys (trial index, restart index, suite index), never on scheduling.
"""

from __future__ import annotations

import numpy as np

from qadc.quantum.channels import KrausChannel
from qadc.quantum.linalg_core import DensityMatrix, LabeledOperator, Register

GENERATOR_NAME = "numpy.random.Philox"


def derive_seed(master: int, *keys: int) -> int:
    """64-bit seed mixed from a master seed and integer keys via SeedSequence."""
    state = np.random.SeedSequence([int(master), *map(int, keys)]).generate_state(1, np.uint64)
    return int(state[0])


def make_generator(seed: int, *keys: int) -> np.random.Generator:
    """Philox generator for the stream identified by (seed, *keys)."""
    sequence = np.random.SeedSequence([int(seed), *map(int, keys)])
    return np.random.Generator(np.random.Philox(sequence))


def ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_isometry(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Haar-distributed isometry (rows ≥ cols) via QR with the diagonal phase fixed."""
    q, r = np.linalg.qr(ginibre(rng, rows, cols))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    return random_isometry(rng, dim, dim)


def random_hermitian(rng: np.random.Generator, register: Register) -> LabeledOperator:
    g = ginibre(rng, register.dim, register.dim)
    return LabeledOperator(register, (g + g.conj().T) / 2)


def random_psd(
    rng: np.random.Generator, register: Register, rank: int | None = None
) -> LabeledOperator:
    g = ginibre(rng, register.dim, rank or register.dim)
    return LabeledOperator(register, g @ g.conj().T)


def random_density(
    rng: np.random.Generator, register: Register, rank: int | None = None
) -> DensityMatrix:
    """Random state with the given rank (full rank by default)."""
    m = random_psd(rng, register, rank).matrix
    return DensityMatrix.from_matrix(register, m / np.trace(m).real)


def random_pure(rng: np.random.Generator, register: Register) -> DensityMatrix:
    return random_density(rng, register, rank=1)


def random_projector(
    rng: np.random.Generator, register: Register, rank: int | None = None
) -> LabeledOperator:
    k = rank if rank is not None else int(rng.integers(0, register.dim + 1))
    v = random_isometry(rng, register.dim, k) if k else np.zeros((register.dim, 0))
    return LabeledOperator(register, v @ v.conj().T)


def random_contraction(rng: np.random.Generator, register: Register) -> LabeledOperator:
    """Random S with 0 ≤ S ≤ I."""
    u = random_unitary(rng, register.dim)
    w = rng.uniform(0.0, 1.0, register.dim)
    return LabeledOperator(register, (u * w) @ u.conj().T)


def random_channel(
    rng: np.random.Generator,
    input_register: Register,
    output_register: Register,
    kraus_count: int = 2,
) -> KrausChannel:
    """Random CPTP map from a Haar isometry split into Kraus blocks."""
    d_in, d_out = input_register.dim, output_register.dim
    rows = d_out * kraus_count
    if rows < d_in:
        kraus_count = -(-d_in // d_out)
        rows = d_out * kraus_count
    v = random_isometry(rng, rows, d_in).reshape(kraus_count, d_out, d_in)
    return KrausChannel(input_register, output_register, tuple(v))


def random_simplex(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.dirichlet(np.ones(size))
