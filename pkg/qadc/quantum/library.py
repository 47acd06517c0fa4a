# qadc/quantum/library.py

"""
Named channels, example models and strategies.

The qubit examples are also shipped as JSON under `qadc/data`; the designed orthogonal model
is only built here because its 16-level matrices are impractical to keep by hand.
"""

from __future__ import annotations

import itertools

import numpy as np

from qadc.core.errors import InvalidChannel
from qadc.quantum.channels import KrausChannel
from qadc.quantum.linalg_core import DensityMatrix, Register, basis_projector, maximally_mixed
from qadc.quantum.model import ActionModel, Strategy

QUBIT = 2


def identity_channel(register: Register, output: Register | None = None) -> KrausChannel:
    """Identity map, optionally relabeling the subsystems to `output`."""
    return KrausChannel(register, output or register, (np.eye(register.dim),))


def weyl_operators(dim: int) -> list[np.ndarray]:
    """Clock-and-shift operators X^a Z^b for a, b in range(dim), identity first."""
    shift = np.roll(np.eye(dim), 1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(dim) / dim))
    return [
        np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
        for a, b in itertools.product(range(dim), repeat=2)
    ]


def depolarizing_channel(register: Register, p: float, output: Register | None = None):
    """ρ ↦ (1 − p) ρ + p Tr(ρ) I/d; p = 1 is completely depolarizing."""
    d = register.dim
    ops = weyl_operators(d)
    kraus = [np.sqrt(1 - p + p / d**2) * ops[0]]
    kraus += [np.sqrt(p) / d * w for w in ops[1:]]
    return KrausChannel(register, output or register, tuple(kraus))


def dephasing_channel(register: Register, p: float, output: Register | None = None):
    """Kraus {√(1−p) I, √p Z} with Z the clock operator (Pauli Z on a qubit)."""
    d = register.dim
    clock = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    if d == QUBIT:
        clock = clock.real
    kraus = (np.sqrt(1 - p) * np.eye(d), np.sqrt(p) * clock)
    return KrausChannel(register, output or register, kraus)


def classical_channel(transition: np.ndarray, input_register: Register, output_register: Register):
    """
    Classical stochastic map as a Kraus family.

    Args:
        transition: Table p(y|x) with rows indexed by output y and columns by input x.

    Raises:
        InvalidChannel: If the table is negative or its columns do not sum to 1.
    """
    t = np.asarray(transition, dtype=float)
    if t.shape != (output_register.dim, input_register.dim):
        raise InvalidChannel(
            f"Transition table shape {t.shape} does not match "
            f"({output_register.dim}, {input_register.dim})"
        )
    if np.any(t < 0) or np.max(np.abs(t.sum(axis=0) - 1), initial=0.0) > 1e-12:
        raise InvalidChannel("Transition table must be column-stochastic")
    kraus = []
    for y, x in zip(*np.nonzero(t), strict=True):
        k = np.zeros(t.shape)
        k[y, x] = np.sqrt(t[y, x])
        kraus.append(k)
    return KrausChannel(input_register, output_register, tuple(kraus))


def replacement_channel(input_register: Register, state: DensityMatrix) -> KrausChannel:
    """ρ ↦ Tr(ρ) · state."""
    w, v = np.linalg.eigh(state.matrix)
    kraus = [
        np.sqrt(max(lam, 0.0)) * np.outer(v[:, k], np.eye(input_register.dim)[i])
        for k, lam in enumerate(w)
        if lam > 0
        for i in range(input_register.dim)
    ]
    return KrausChannel(input_register, state.register, tuple(kraus))


def discard_s_channel(d_s: int, d_a: int, inner: KrausChannel | None = None) -> KrausChannel:
    """N(ρ_SA) = inner(Tr_S ρ_SA) with inner: A → B (identity relabeling by default)."""
    a_reg, b_reg = Register.of(("A", d_a)), Register.of(("B", d_a))
    inner = inner or identity_channel(a_reg, b_reg)
    kraus = []
    for s in range(d_s):
        bra = np.eye(d_s)[s][None, :]
        kraus.extend(np.kron(bra, k) for k in inner.kraus)
    return KrausChannel(Register.of(("S", d_s), ("A", d_a)), inner.output_register, tuple(kraus))


def blank_environment_action(d: int, d_s: int = QUBIT) -> KrausChannel:
    """T(σ_G) = |0⟩⟨0|_S ⊗ σ_{S0}: the action state is handed to the encoder untouched."""
    k = np.zeros((d_s * d, d))
    k[:d, :] = np.eye(d)
    return KrausChannel(Register.of(("G", d)), Register.of(("S", d_s), ("S0", d)), (k,))


def identity_qubit_model() -> ActionModel:
    return ActionModel(
        blank_environment_action(QUBIT),
        discard_s_channel(QUBIT, QUBIT),
        name="identity_qubit",
        description="N discards S and forwards A unchanged",
    )


def depolarizing_qubit_model() -> ActionModel:
    b = maximally_mixed(Register.of(("B", QUBIT)))
    return ActionModel(
        blank_environment_action(QUBIT),
        replacement_channel(Register.of(("S", QUBIT), ("A", QUBIT)), b),
        name="depolarizing_qubit",
        description="N outputs the maximally mixed state regardless of input",
    )


def dephasing_qubit_model(p: float = 0.5) -> ActionModel:
    inner = dephasing_channel(Register.of(("A", QUBIT)), p, Register.of(("B", QUBIT)))
    return ActionModel(
        blank_environment_action(QUBIT),
        discard_s_channel(QUBIT, QUBIT, inner),
        name="dephasing_qubit",
        description=f"N discards S and dephases A with probability {p}",
    )


WEISSMAN_STATE_FLIP = 0.2
WEISSMAN_NOISE = 0.1


def weissman_transitions(
    state_flip: float = WEISSMAN_STATE_FLIP, noise: float = WEISSMAN_NOISE
) -> tuple[np.ndarray, np.ndarray]:
    """
    Transition tables of the binary classical example.

    Returns:
        (action, comm): action[s·2 + s0, g] with s0 = s and s = g flipped w.p. state_flip;
        comm[y, s·2 + a] with y = s ⊕ a ⊕ z, z ~ Bernoulli(noise).
    """
    action = np.zeros((4, 2))
    for g, s in itertools.product(range(2), repeat=2):
        action[s * 2 + s, g] = 1 - state_flip if s == g else state_flip
    comm = np.zeros((2, 4))
    for s, a, y in itertools.product(range(2), repeat=3):
        comm[y, s * 2 + a] = 1 - noise if y == s ^ a else noise
    return action, comm


def classical_weissman_model() -> ActionModel:
    action, comm = weissman_transitions()
    return ActionModel(
        classical_channel(action, Register.of(("G", 2)), Register.of(("S", 2), ("S0", 2))),
        classical_channel(comm, Register.of(("S", 2), ("A", 2)), Register.of(("B", 2))),
        name="classical_weissman",
        description="Binary action-dependent state with a copy at the encoder",
    )


def classical_weissman_strategy() -> Strategy:
    """p(v,u) = [[0.4, 0.1], [0.1, 0.4]], σ_G^u = |u⟩⟨u|, F^v: a = s0 ⊕ v."""
    g = Register.of(("G", 2))
    s0, a = Register.of(("S0", 2)), Register.of(("A", 2))
    flip = np.array([[0.0, 1.0], [1.0, 0.0]])
    return Strategy(
        np.array([[0.4, 0.1], [0.1, 0.4]]),
        tuple(DensityMatrix(basis_projector(g, u)) for u in range(2)),
        (identity_channel(s0, a), classical_channel(flip, s0, a)),
    )


def orthogonal_strategy(model: ActionModel) -> Strategy:
    """|V| = 1, uniform U over the basis of G, σ_G^u = |u⟩⟨u|, identity encoder."""
    g = model.g_register
    return Strategy(
        np.full((1, g.dim), 1.0 / g.dim),
        tuple(DensityMatrix(basis_projector(g, u)) for u in range(g.dim)),
        (identity_channel(model.s0_register, model.a_register),),
    )


DESIGNED_LEVELS = 16


def designed_orthogonal_model(levels: int = DESIGNED_LEVELS) -> ActionModel:
    """
    Four-qubit register carried noiselessly from G to B.

    With `orthogonal_strategy` every u-codeword yields an orthogonal output, so decoding only
    fails when two messages draw the same u (probability 1/levels per pair).
    """
    return ActionModel(
        blank_environment_action(levels),
        discard_s_channel(QUBIT, levels),
        name="designed_orthogonal",
        description=f"{levels}-level noiseless register, orthogonal conditional outputs",
    )
