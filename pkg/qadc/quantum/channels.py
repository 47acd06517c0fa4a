# qadc/quantum/channels.py

"""
Quantum channels and purifications.

Channels are stored as Kraus families with named input and output registers and act on any
state whose register contains the input subsystems; other subsystems pass through. The module
also builds Stinespring dilations, Choi matrices, canonical purifications, explicit Uhlmann
isometries, and the purified encoder that superposes a message's subcodebook.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from qadc.core.errors import (
    BadCodeParams,
    InvalidChannel,
    InvalidState,
    ReferenceTooLarge,
    RegisterMismatch,
    TooLarge,
)
from qadc.quantum.divergences import purified_distance
from qadc.quantum.linalg_core import (
    SUPPORT_RTOL,
    DensityMatrix,
    LabeledOperator,
    Operand,
    Register,
    as_operator,
    min_eigenvalue,
    partial_trace,
    permute,
)

logger = logging.getLogger(__name__)

CPTP_ATOL = 1e-9
PURIFICATION_ATOL = 1e-9
PHASE_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """
    Completely positive map given by Kraus operators.

    Attributes:
        input_register: Register the channel consumes.
        output_register: Register the channel produces.
        kraus: Kraus operators, each (output dim × input dim).
        checked: When True (default), completeness Σ K†K = I is enforced within 1e-9.
    """

    input_register: Register
    output_register: Register
    kraus: tuple[np.ndarray, ...]
    checked: bool = field(default=True, kw_only=True)

    def __post_init__(self):
        ops = tuple(np.array(k, dtype=complex) for k in self.kraus)
        if not ops:
            raise InvalidChannel("A channel needs at least one Kraus operator")
        shape = (self.output_register.dim, self.input_register.dim)
        for i, k in enumerate(ops):
            if k.shape != shape:
                raise RegisterMismatch(f"Kraus operator {i} has shape {k.shape}, expected {shape}")
            k.setflags(write=False)
        object.__setattr__(self, "kraus", ops)
        if self.checked:
            residual = self.tp_residual()
            if residual > CPTP_ATOL:
                raise InvalidChannel(f"trace-preservation residual {residual:.12g}")

    @property
    def kraus_array(self) -> np.ndarray:
        """Kraus operators stacked as (count, out, in)."""
        return np.stack(self.kraus)

    @property
    def rank(self) -> int:
        return len(self.kraus)

    def tp_residual(self) -> float:
        """Spectral norm of Σ K†K − I."""
        k = self.kraus_array
        gram = np.einsum("kai,kaj->ij", k.conj(), k)
        return float(np.linalg.norm(gram - np.eye(self.input_register.dim), 2))


@dataclass(frozen=True)
class ChannelResiduals:
    cp_residual: float
    tp_residual: float

    @property
    def passed(self) -> bool:
        return self.cp_residual <= CPTP_ATOL and self.tp_residual <= CPTP_ATOL


@dataclass(frozen=True, eq=False)
class StinespringIsometry:
    """
    Isometric dilation V: input → output ⊗ environment.

    Attributes:
        isometry: Matrix of shape (out·env, in), output index major.
        input_register: Register consumed.
        output_register: Register produced besides the environment.
        env_register: Single-subsystem environment register.
    """

    isometry: np.ndarray
    input_register: Register
    output_register: Register
    env_register: Register

    def __post_init__(self):
        v = np.array(self.isometry, dtype=complex)
        expected = (self.output_register.dim * self.env_register.dim, self.input_register.dim)
        if v.shape != expected:
            raise RegisterMismatch(f"Isometry has shape {v.shape}, expected {expected}")
        residual = float(np.max(np.abs(v.conj().T @ v - np.eye(v.shape[1])), initial=0.0))
        if residual > CPTP_ATOL:
            raise InvalidChannel(f"Dilation is not an isometry (residual {residual:.3e})")
        v.setflags(write=False)
        object.__setattr__(self, "isometry", v)

    @property
    def full_output_register(self) -> Register:
        return self.output_register + self.env_register

    def to_channel(self) -> KrausChannel:
        d_out, d_env = self.output_register.dim, self.env_register.dim
        blocks = self.isometry.reshape(d_out, d_env, -1)
        return KrausChannel(
            self.input_register,
            self.output_register,
            tuple(blocks[:, j, :] for j in range(d_env)),
        )


def _output_order(register: Register, inputs: Sequence[str], outputs: Sequence[str]) -> list[str]:
    """Register names after replacing `inputs` by `outputs` at the first input position."""
    pos = min(register.index(name) for name in inputs)
    before = [n for n in register.names[:pos] if n not in inputs]
    after = [n for n in register.names[pos:] if n not in inputs]
    return before + list(outputs) + after


def _check_inputs(register: Register, input_register: Register) -> None:
    for name, dim in input_register:
        if name not in register:
            raise RegisterMismatch(f"State register {register.names} lacks input '{name}'")
        if register.dim_of(name) != dim:
            raise RegisterMismatch(
                f"Input '{name}' has dimension {register.dim_of(name)}, channel expects {dim}"
            )


def apply_operator(ch: KrausChannel, x: Operand) -> LabeledOperator:
    """
    Apply the Kraus map to an arbitrary operator, identity on the other subsystems.

    The output subsystems take the place of the first input subsystem.

    Raises:
        RegisterMismatch: If the operator lacks an input subsystem or dimensions differ.
    """
    op = as_operator(x)
    register = op.register
    _check_inputs(register, ch.input_register)
    rest = register.without(ch.input_register.names)
    front = permute(op, ch.input_register.names + rest.names)
    d_in, d_rest, d_out = ch.input_register.dim, rest.dim, ch.output_register.dim
    block = front.matrix.reshape(d_in, d_rest, d_in, d_rest)
    k = ch.kraus_array
    out = np.einsum("kai,ixjy,kbj->axby", k, block, k.conj(), optimize=True)
    result = LabeledOperator(ch.output_register + rest, out.reshape(d_out * d_rest, -1))
    order = _output_order(register, ch.input_register.names, ch.output_register.names)
    return permute(result, order)


def apply(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """Channel output Σ (I⊗K) ρ (I⊗K)† as a density matrix."""
    return DensityMatrix(apply_operator(ch, rho))


def kraus_to_stinespring(
    ch: KrausChannel, env_name: str = "E", env_dim: int | None = None
) -> StinespringIsometry:
    """
    Stinespring isometry V = Σⱼ Kⱼ ⊗ |j⟩_E.

    Args:
        ch: Channel to dilate.
        env_name: Name of the environment subsystem.
        env_dim: Environment dimension; defaults to the Kraus count and is padded with
            zero Kraus operators when larger.
    """
    k = ch.kraus_array
    d_env = env_dim or k.shape[0]
    if d_env < k.shape[0]:
        raise RegisterMismatch(f"Environment dimension {d_env} below Kraus count {k.shape[0]}")
    padded = np.zeros((d_env,) + k.shape[1:], dtype=complex)
    padded[: k.shape[0]] = k
    isometry = padded.transpose(1, 0, 2).reshape(k.shape[1] * d_env, k.shape[2])
    return StinespringIsometry(
        isometry, ch.input_register, ch.output_register, Register.of((env_name, d_env))
    )


def choi(ch: KrausChannel) -> LabeledOperator:
    """
    Unnormalized Choi matrix Σᵢⱼ |i⟩⟨j| ⊗ ch(|i⟩⟨j|).

    The input copy is named with a trailing apostrophe. Completeness is not required.
    """
    vecs = [k.T.reshape(-1) for k in ch.kraus]
    matrix = sum(np.outer(v, v.conj()) for v in vecs)
    reference = ch.input_register.renamed({n: f"{n}'" for n in ch.input_register.names})
    return LabeledOperator(reference + ch.output_register, matrix)


def channel_residuals(ch: KrausChannel) -> ChannelResiduals:
    """CP residual (negative Choi eigenvalue) and TP residual (‖Tr_out Choi − I‖)."""
    c = choi(ch)
    reference = [f"{n}'" for n in ch.input_register.names]
    reduced = partial_trace(c, reference).matrix
    tp = float(np.linalg.norm(reduced.T - np.eye(ch.input_register.dim), 2))
    return ChannelResiduals(cp_residual=max(0.0, -min_eigenvalue(c)), tp_residual=tp)


def _reduce_vector(vector: np.ndarray, register: Register, keep: Sequence[str]) -> np.ndarray:
    kept = [register.index(n) for n in keep]
    t = np.moveaxis(vector.reshape(register.dims), kept, list(range(len(kept))))
    d_keep = int(np.prod([register.dims[i] for i in kept]))
    m = t.reshape(d_keep, -1)
    return m @ m.conj().T


def _apply_isometry_to_vector(
    vector: np.ndarray, register: Register, dilation: StinespringIsometry
) -> tuple[np.ndarray, Register]:
    """Apply V to the input subsystems of a pure state; outputs and environment replace them."""
    _check_inputs(register, dilation.input_register)
    inputs = dilation.input_register.names
    rest = register.without(inputs)
    t = vector.reshape(register.dims)
    t = np.moveaxis(t, [register.index(n) for n in inputs], list(range(len(inputs))))
    out = dilation.isometry @ t.reshape(dilation.input_register.dim, rest.dim)
    produced = dilation.full_output_register
    new_register = produced + rest
    order = _output_order(register, inputs, produced.names)
    out_t = out.reshape(new_register.dims)
    perm = [new_register.index(n) for n in order]
    return out_t.transpose(perm).reshape(-1), new_register.reordered(order)


@dataclass(frozen=True, eq=False)
class Purification:
    """
    Pure state on system ⊗ reference.

    Attributes:
        vector: Unit vector in the register's computational basis.
        register: Register of the joint pure state.
        system: Names of the purified subsystems.
        reference: Names of the purifying subsystems.
    """

    vector: np.ndarray
    register: Register
    system: tuple[str, ...]
    reference: tuple[str, ...]

    def __post_init__(self):
        v = np.array(self.vector, dtype=complex).reshape(-1)
        if v.size != self.register.dim:
            raise RegisterMismatch(f"Vector length {v.size} != register dim {self.register.dim}")
        system, reference = tuple(self.system), tuple(self.reference)
        if sorted(system + reference) != sorted(self.register.names):
            raise RegisterMismatch("System and reference must partition the register")
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > 1e-10:
            raise InvalidState(f"Purification vector has norm {norm:.12g}")
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "reference", reference)

    @property
    def reference_register(self) -> Register:
        return Register(tuple((n, self.register.dim_of(n)) for n in self.reference))

    def as_matrix(
        self,
        system_order: Sequence[str] | None = None,
        reference_order: Sequence[str] | None = None,
    ) -> np.ndarray:
        """Coefficient matrix X with |ψ⟩ = Σ X[s, r] |s⟩|r⟩ in the requested orders."""
        sys_order = list(system_order or self.system)
        ref_order = list(reference_order or self.reference)
        if sorted(sys_order) != sorted(self.system) or sorted(ref_order) != sorted(self.reference):
            raise RegisterMismatch("Requested order does not match system and reference names")
        axes = [self.register.index(n) for n in sys_order + ref_order]
        t = self.vector.reshape(self.register.dims).transpose(axes)
        d_sys = int(np.prod([self.register.dim_of(n) for n in sys_order]))
        return t.reshape(d_sys, -1)

    def marginal(self, names: Sequence[str] | None = None) -> LabeledOperator:
        """Reduced operator on `names` (default: the system), kept in register order."""
        keep = self.register.select(names or self.system).names
        matrix = _reduce_vector(self.vector, self.register, keep)
        return LabeledOperator(self.register.select(keep), matrix)

    def density(self) -> DensityMatrix:
        return DensityMatrix.from_matrix(self.register, np.outer(self.vector, self.vector.conj()))


def purify(rho: DensityMatrix, reference_name: str) -> Purification:
    """
    Canonical purification Σᵢ √λᵢ |eᵢ⟩|i⟩.

    Eigenvalues are sorted descending and only those above SUPPORT_RTOL · λmax are kept, so
    the reference dimension equals the numerical rank. Each eigenvector is rotated so that
    its first nonzero entry is real positive.
    """
    w, v = scipy.linalg.eigh(rho.matrix)
    w, v = w[::-1], v[:, ::-1]
    keep = w > SUPPORT_RTOL * w[0]
    w, v = w[keep], v[:, keep].copy()
    for i in range(v.shape[1]):
        first = np.flatnonzero(np.abs(v[:, i]) > PHASE_ATOL)[0]
        v[:, i] *= np.abs(v[first, i]) / v[first, i]
    coefficients = v * np.sqrt(w)
    vector = coefficients.reshape(-1)
    vector = vector / np.linalg.norm(vector)
    register = rho.register + Register.of((reference_name, int(w.size)))
    result = Purification(vector, register, rho.register.names, (reference_name,))
    residual = float(np.max(np.abs(result.marginal().matrix - rho.matrix)))
    if residual > PURIFICATION_ATOL:
        raise InvalidState(f"Purification marginal residual {residual:.3e}")
    return result


def _complete_basis(basis: np.ndarray, dim: int, count: int) -> np.ndarray:
    """`count` orthonormal vectors orthogonal to the columns of `basis`, by Gram-Schmidt
    over the standard basis in index order."""
    found: list[np.ndarray] = []
    columns = [basis[:, i] for i in range(basis.shape[1])]
    for k in range(dim):
        if len(found) == count:
            break
        e = np.zeros(dim, dtype=complex)
        e[k] = 1.0
        for _ in range(2):
            for q in columns + found:
                e = e - q * np.vdot(q, e)
        norm = np.linalg.norm(e)
        if norm > 1e-8:
            found.append(e / norm)
    return np.column_stack(found) if found else np.zeros((dim, 0), dtype=complex)


def uhlmann_isometry(phi: Purification, psi: Purification) -> np.ndarray:
    """
    Isometry W from the reference of φ into the reference of ψ maximizing |⟨ψ|(I⊗W)|φ⟩|.

    Built from the polar part of the overlap operator between the two purifications; when it
    is rank-deficient the remaining columns map the orthogonal complement deterministically.

    Args:
        phi: Source purification.
        psi: Target purification with the same system subsystems.

    Returns:
        Matrix of shape (dim ref ψ, dim ref φ) in the reference orders of ψ and φ.

    Raises:
        RegisterMismatch: If the purified systems differ.
        ReferenceTooLarge: If φ's reference is larger than ψ's.
    """
    if sorted(phi.system) != sorted(psi.system):
        raise RegisterMismatch(f"Systems {phi.system} and {psi.system} differ")
    for name in phi.system:
        if phi.register.dim_of(name) != psi.register.dim_of(name):
            raise RegisterMismatch(f"Subsystem '{name}' has different dimensions")
    d_phi, d_psi = phi.reference_register.dim, psi.reference_register.dim
    if d_phi > d_psi:
        raise ReferenceTooLarge(f"Reference dimension {d_phi} exceeds target {d_psi}")
    x_phi = phi.as_matrix(phi.system)
    x_psi = psi.as_matrix(phi.system)
    overlap = x_psi.T @ x_phi.conj()
    u, s, vh = np.linalg.svd(overlap, full_matrices=False)
    rank = int(np.sum(s > 1e-12 * max(1.0, float(s[0]) if s.size else 0.0)))
    u_r, v_r = u[:, :rank], vh[:rank].conj().T
    missing = d_phi - rank
    u_c = _complete_basis(u_r, d_psi, missing)
    v_c = _complete_basis(v_r, d_phi, missing)
    return u_r @ v_r.conj().T + u_c @ v_c.conj().T


def apply_reference_isometry(
    source: Purification, w: np.ndarray, target: Purification
) -> Purification:
    """(I⊗W)|source⟩ expressed on the system and reference layout of `target`."""
    y = source.as_matrix(target.system) @ w.T
    register = target.register.reordered(target.system + target.reference)
    return Purification(y.reshape(-1), register, target.system, target.reference)


def pure_overlap(a: Purification, b: Purification) -> complex:
    """⟨a|b⟩ for purifications with identical system and reference names."""
    x_a = a.as_matrix(a.system, a.reference)
    x_b = b.as_matrix(a.system, a.reference)
    return complex(np.vdot(x_a.reshape(-1), x_b.reshape(-1)))


@dataclass(frozen=True, eq=False)
class PurifiedEncoding:
    """
    Superposed subcodebook state and the Uhlmann isometry that prepares it.

    Attributes:
        superposed_state: (1/√L) Σ_ℓ |ρ_ℓ⟩|ℓ⟩ over S, A, T, K1, K0, L.
        index_register: Name of the subcodebook index subsystem.
        uhlmann_isometry: Matrix S0 → A⊗T⊗L.
        source_state: Dilated action state over S, S0, K1, K0.
    """

    superposed_state: Purification
    index_register: str
    uhlmann_isometry: np.ndarray
    source_state: Purification

    def transmitted_state(self) -> Purification:
        return apply_reference_isometry(
            self.source_state, self.uhlmann_isometry, self.superposed_state
        )

    def encoding_distance(self) -> float:
        """Purified distance between the superposed state and the transmitted state."""
        fid = abs(pure_overlap(self.superposed_state, self.transmitted_state()))
        return float(np.sqrt(max(0.0, 1.0 - min(1.0, fid) ** 2)))

    def marginal_distance(self) -> float:
        """Purified distance between the subcodebook average on S and the action marginal."""
        tau = DensityMatrix(self.superposed_state.marginal(["S"]))
        sigma = DensityMatrix(self.source_state.marginal(["S"]))
        return purified_distance(tau, sigma)

    def received_input(self) -> DensityMatrix:
        """Reduced transmitted state on S and A, the input of the communication channel."""
        return DensityMatrix(self.transmitted_state().marginal(["S", "A"]))


def build_purified_encoding(
    action_channel: KrausChannel,
    action_state: DensityMatrix,
    encoders: Sequence[KrausChannel],
    dim_limit: int | None = None,
) -> PurifiedEncoding:
    """
    Purified encoder for one message.

    Args:
        action_channel: Channel G → S ⊗ S0.
        action_state: σ_G for the message's u-codeword.
        encoders: F^v(m,ℓ) for ℓ = 1..L, each S0 → A.
        dim_limit: Optional bound on the product of the S, A, T, K1, K0, L dimensions.

    Raises:
        RegisterMismatch: If channel registers are inconsistent.
        TooLarge: If the construction exceeds `dim_limit`.
    """
    if sorted(action_channel.output_register.names) != ["S", "S0"]:
        raise RegisterMismatch("Action channel must output subsystems S and S0")
    if not encoders:
        raise RegisterMismatch("At least one encoder is required")
    for enc in encoders:
        if enc.input_register != Register.of(("S0", action_channel.output_register.dim_of("S0"))):
            raise RegisterMismatch("Encoders must act on the S0 subsystem of the action channel")
        if enc.output_register != encoders[0].output_register:
            raise RegisterMismatch("Encoders must share one output register")
    size = len(encoders)
    d_s0 = action_channel.output_register.dim_of("S0")
    d_a = encoders[0].output_register.dim
    d_t = max(enc.rank for enc in encoders)
    while d_a * d_t * size < d_s0:
        d_t += 1

    base = purify(action_state, "K0")
    dilation = kraus_to_stinespring(action_channel, env_name="K1")
    dilated, dilated_reg = _apply_isometry_to_vector(base.vector, base.register, dilation)
    psi_reg = dilated_reg.reordered(["S", "S0", "K1", "K0"])
    psi_vec = _reorder_vector(dilated, dilated_reg, psi_reg.names)

    total = psi_reg.dim // d_s0 * d_a * d_t * size
    if dim_limit is not None and total > dim_limit:
        raise TooLarge(f"Purified encoding dimension {total} exceeds limit {dim_limit}")

    branches = []
    branch_reg = None
    for enc in encoders:
        vec, reg = _apply_isometry_to_vector(
            psi_vec, psi_reg, kraus_to_stinespring(enc, env_name="T", env_dim=d_t)
        )
        vec = _reorder_vector(vec, reg, ["S", "A", "T", "K1", "K0"])
        branch_reg = reg.reordered(["S", "A", "T", "K1", "K0"])
        branches.append(vec)
    index = np.eye(size)
    phi_vec = sum(np.kron(b, index[i]) for i, b in enumerate(branches)) / np.sqrt(size)
    phi_reg = branch_reg + Register.of(("L", size))
    phi = Purification(phi_vec, phi_reg, ("S", "K1", "K0"), ("A", "T", "L"))
    psi = Purification(psi_vec, psi_reg, ("S", "K1", "K0"), ("S0",))
    w = uhlmann_isometry(psi, phi)
    logger.debug("Built purified encoding: L=%d, d_T=%d, total dim %d", size, d_t, total)
    return PurifiedEncoding(phi, "L", w, psi)


def _reorder_vector(vector: np.ndarray, register: Register, order: Sequence[str]) -> np.ndarray:
    perm = [register.index(n) for n in order]
    return vector.reshape(register.dims).transpose(perm).reshape(-1)


MAX_TENSOR_POWER = 3
MAX_TENSOR_DIM = 100


def _permutation(register: Register, order: Sequence[str]) -> np.ndarray:
    """Unitary P with P·vec(register) = vec(register.reordered(order))."""
    perm = [register.index(n) for n in order]
    d = register.dim
    return np.eye(d).reshape(register.dims + (d,)).transpose(perm + [len(perm)]).reshape(d, d)


def compose(first: KrausChannel, second: KrausChannel) -> KrausChannel:
    """
    The channel `second ∘ first`.

    `second` may consume only part of the output of `first`; the remaining output subsystems
    pass through unchanged and keep their relative order.

    Raises:
        RegisterMismatch: If `second` needs a subsystem `first` does not produce, or an
            output name of `second` collides with a passed-through subsystem.
    """
    middle = first.output_register
    _check_inputs(middle, second.input_register)
    rest = middle.without(second.input_register.names)
    clash = set(rest.names) & set(second.output_register.names)
    if clash:
        raise RegisterMismatch(f"Composed outputs collide on {sorted(clash)}")
    order = _output_order(middle, second.input_register.names, second.output_register.names)
    into = _permutation(middle, second.input_register.names + rest.names)
    out_of = _permutation(second.output_register + rest, order).T
    lifted = [out_of @ np.kron(k, np.eye(rest.dim)) @ into for k in second.kraus]
    kraus = tuple(k2 @ k1 for k2 in lifted for k1 in first.kraus)
    output = (second.output_register + rest).reordered(order)
    return KrausChannel(first.input_register, output, kraus, checked=first.checked)


def tensor_power_channel(ch: KrausChannel, n: int) -> KrausChannel:
    """
    n parallel copies of a channel, subsystem names suffixed _1.._n.

    Raises:
        BadCodeParams: If n < 1.
        TooLarge: If n > 3 or an input or output power exceeds dimension 100.
    """
    if n < 1:
        raise BadCodeParams(f"Tensor power must be at least 1, got {n}")
    largest = max(ch.input_register.dim, ch.output_register.dim) ** n
    if n > MAX_TENSOR_POWER or largest > MAX_TENSOR_DIM:
        raise TooLarge(
            f"Tensor power {n} gives dimension {largest}; limits are n <= {MAX_TENSOR_POWER}, "
            f"dim <= {MAX_TENSOR_DIM}"
        )

    def suffixed(register: Register, i: int) -> Register:
        return register.renamed({name: f"{name}_{i}" for name in register.names})

    input_register = suffixed(ch.input_register, 1)
    output_register = suffixed(ch.output_register, 1)
    kraus = list(ch.kraus)
    for i in range(2, n + 1):
        input_register = input_register + suffixed(ch.input_register, i)
        output_register = output_register + suffixed(ch.output_register, i)
        kraus = [np.kron(a, b) for a in kraus for b in ch.kraus]
    return KrausChannel(input_register, output_register, tuple(kraus), checked=ch.checked)
