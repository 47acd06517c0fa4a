# qadc/quantum/linalg_core.py

"""
Dense Hermitian linear algebra over labeled multipartite registers.

A `Register` is an ordered list of named subsystems. `LabeledOperator` pairs a square complex
matrix with the register it acts on, and `DensityMatrix` adds the state invariants. The
functions here implement tensor products, partial traces, explicit permutation, spectral
decomposition with eigenvalue clustering, support pseudo-functions, pinching and order
projectors. Subsystems are always addressed by name; register order is never changed
implicitly.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from qadc.core.errors import (
    DuplicateSubsystem,
    InvalidState,
    NotHermitian,
    RegisterMismatch,
    SingularFunction,
    UnknownSubsystem,
)

# Relative tolerance for merging adjacent eigenvalues, scaled by max(1, spectral radius).
CLUSTER_RTOL = 1e-8
# Eigenvalues at or below SUPPORT_RTOL * largest eigenvalue are outside the support.
SUPPORT_RTOL = 1e-12
HERMITIAN_ATOL = 1e-9
DENSITY_ATOL = 1e-10


@dataclass(frozen=True)
class Register:
    """
    Ordered collection of named subsystems.

    Attributes:
        subsystems: Tuple of (name, dimension) pairs in tensor order.
    """

    subsystems: tuple[tuple[str, int], ...]

    def __post_init__(self):
        pairs = tuple((str(name), int(dim)) for name, dim in self.subsystems)
        seen: set[str] = set()
        for name, dim in pairs:
            if name in seen:
                raise DuplicateSubsystem(f"Subsystem '{name}' appears twice in register")
            if dim < 1:
                raise RegisterMismatch(f"Subsystem '{name}' has non-positive dimension {dim}")
            seen.add(name)
        object.__setattr__(self, "subsystems", pairs)

    @classmethod
    def of(cls, *pairs: tuple[str, int]) -> Register:
        """Build a register from (name, dim) pairs."""
        return cls(tuple(pairs))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.subsystems)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(dim for _, dim in self.subsystems)

    @property
    def dim(self) -> int:
        return math.prod(self.dims)

    def __len__(self) -> int:
        return len(self.subsystems)

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self.subsystems)

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def index(self, name: str) -> int:
        """Return the position of a subsystem, raising UnknownSubsystem if absent."""
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownSubsystem(f"Unknown subsystem '{name}' in register {self.names}") from None

    def dim_of(self, name: str) -> int:
        return self.subsystems[self.index(name)][1]

    def __add__(self, other: Register) -> Register:
        return Register(self.subsystems + other.subsystems)

    def select(self, names: Iterable[str]) -> Register:
        """Sub-register with the given names, kept in this register's order."""
        wanted = set(names)
        for name in wanted:
            self.index(name)
        return Register(tuple(p for p in self.subsystems if p[0] in wanted))

    def without(self, names: Iterable[str]) -> Register:
        dropped = set(names)
        for name in dropped:
            self.index(name)
        return Register(tuple(p for p in self.subsystems if p[0] not in dropped))

    def reordered(self, order: Sequence[str]) -> Register:
        if sorted(order) != sorted(self.names):
            raise RegisterMismatch(f"Order {tuple(order)} is not a permutation of {self.names}")
        return Register(tuple(self.subsystems[self.index(name)] for name in order))

    def renamed(self, mapping: dict[str, str]) -> Register:
        return Register(tuple((mapping.get(n, n), d) for n, d in self.subsystems))


@dataclass(frozen=True, eq=False)
class LabeledOperator:
    """
    Complex square matrix acting on a register.

    The stored matrix is a read-only copy, so instances can be shared between workers.
    """

    register: Register
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise RegisterMismatch(f"Operator matrix must be square, got shape {m.shape}")
        if m.shape[0] != self.register.dim:
            raise RegisterMismatch(
                f"Matrix side {m.shape[0]} does not match register dimension {self.register.dim}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.register.dim

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def hermitian_residual(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0))

    def _check_register(self, other: LabeledOperator) -> None:
        if other.register != self.register:
            raise RegisterMismatch(
                f"Register {other.register.names} does not match {self.register.names}"
            )

    def __add__(self, other: LabeledOperator) -> LabeledOperator:
        self._check_register(other)
        return LabeledOperator(self.register, self.matrix + other.matrix)

    def __sub__(self, other: LabeledOperator) -> LabeledOperator:
        self._check_register(other)
        return LabeledOperator(self.register, self.matrix - other.matrix)

    def __mul__(self, scalar: complex) -> LabeledOperator:
        return LabeledOperator(self.register, self.matrix * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other: LabeledOperator) -> LabeledOperator:
        self._check_register(other)
        return LabeledOperator(self.register, self.matrix @ other.matrix)

    def overlap(self, other: LabeledOperator) -> float:
        """Real part of Tr[self · other]."""
        self._check_register(other)
        return float(np.einsum("ij,ji->", self.matrix, other.matrix).real)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Positive semidefinite unit-trace operator.

    Construction checks Hermiticity, unit trace and positivity within 1e-10 and stores the
    exactly Hermitian part.
    """

    op: LabeledOperator

    def __post_init__(self):
        m = self.op.matrix
        residual = self.op.hermitian_residual()
        if residual > DENSITY_ATOL:
            raise InvalidState(f"Density matrix is not Hermitian (residual {residual:.3e})")
        herm = (m + m.conj().T) / 2
        trace = float(np.trace(herm).real)
        if abs(trace - 1.0) > DENSITY_ATOL:
            raise InvalidState(f"Density matrix trace is {trace:.12g}, expected 1")
        min_eig = float(scipy.linalg.eigvalsh(herm)[0]) if herm.size else 0.0
        if min_eig < -DENSITY_ATOL:
            raise InvalidState(f"Density matrix has negative eigenvalue {min_eig:.3e}")
        object.__setattr__(self, "op", LabeledOperator(self.op.register, herm))

    @classmethod
    def from_matrix(cls, register: Register, matrix: np.ndarray) -> DensityMatrix:
        return cls(LabeledOperator(register, matrix))

    @property
    def register(self) -> Register:
        return self.op.register

    @property
    def matrix(self) -> np.ndarray:
        return self.op.matrix

    @property
    def dim(self) -> int:
        return self.op.dim


Operand = LabeledOperator | DensityMatrix


def as_operator(x: Operand) -> LabeledOperator:
    """Unwrap a DensityMatrix; pass a LabeledOperator through."""
    return x.op if isinstance(x, DensityMatrix) else x


@dataclass(frozen=True, eq=False)
class SpectralCluster:
    eigenvalue: float
    projector: LabeledOperator
    multiplicity: int


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """
    Eigenvalue clusters sorted by descending eigenvalue.

    Attributes:
        clusters: Cluster eigenvalue, eigenprojector and multiplicity.
        cluster_tolerance: Absolute merge threshold that produced the clusters.
    """

    clusters: tuple[SpectralCluster, ...]
    cluster_tolerance: float

    @property
    def eigenvalues(self) -> tuple[float, ...]:
        return tuple(c.eigenvalue for c in self.clusters)

    def reconstruct(self) -> LabeledOperator:
        register = self.clusters[0].projector.register
        total = np.zeros((register.dim, register.dim), dtype=complex)
        for cluster in self.clusters:
            total += cluster.eigenvalue * cluster.projector.matrix
        return LabeledOperator(register, total)


def identity(register: Register) -> LabeledOperator:
    return LabeledOperator(register, np.eye(register.dim, dtype=complex))


def basis_projector(register: Register, index: int) -> LabeledOperator:
    """|index⟩⟨index| in the computational basis of the register."""
    m = np.zeros((register.dim, register.dim), dtype=complex)
    m[index, index] = 1.0
    return LabeledOperator(register, m)


def pure_state(register: Register, vector: np.ndarray) -> DensityMatrix:
    """Density matrix of a (normalized on the fly) state vector."""
    psi = np.asarray(vector, dtype=complex).reshape(-1)
    psi = psi / np.linalg.norm(psi)
    return DensityMatrix.from_matrix(register, np.outer(psi, psi.conj()))


def maximally_mixed(register: Register) -> DensityMatrix:
    return DensityMatrix.from_matrix(register, np.eye(register.dim) / register.dim)


def hermitian_part(x: Operand) -> np.ndarray:
    """
    Symmetrize a nearly Hermitian matrix.

    Raises:
        NotHermitian: If max-abs(x − x†) exceeds 1e-9.
    """
    op = as_operator(x)
    residual = op.hermitian_residual()
    if residual > HERMITIAN_ATOL:
        raise NotHermitian(f"Operator asymmetry {residual:.3e} exceeds {HERMITIAN_ATOL}")
    return (op.matrix + op.matrix.conj().T) / 2


def tensor(a: Operand, b: Operand) -> LabeledOperator:
    """
    Kronecker product with concatenated registers.

    Raises:
        DuplicateSubsystem: If the registers share a subsystem name.
    """
    a, b = as_operator(a), as_operator(b)
    return LabeledOperator(a.register + b.register, np.kron(a.matrix, b.matrix))


def partial_trace(x: Operand, keep: Iterable[str]) -> LabeledOperator:
    """
    Trace out every subsystem not in `keep`.

    Args:
        x: Operator to reduce.
        keep: Names of subsystems to keep; their original order is preserved.

    Returns:
        The reduced operator on the kept sub-register.

    Raises:
        UnknownSubsystem: If a kept name is not in the register.
    """
    op = as_operator(x)
    register = op.register
    kept_register = register.select(keep)
    n = len(register)
    kept = [register.index(name) for name in kept_register.names]
    tensor_form = op.matrix.reshape(register.dims + register.dims)
    in_idx = list(range(n)) + [n + i if i in kept else i for i in range(n)]
    out_idx = kept + [n + i for i in kept]
    reduced = np.einsum(tensor_form, in_idx, out_idx)
    d = kept_register.dim
    return LabeledOperator(kept_register, np.asarray(reduced).reshape(d, d))


def permute(x: Operand, order: Sequence[str]) -> LabeledOperator:
    """Reorder subsystems explicitly; `order` must be a permutation of the register names."""
    op = as_operator(x)
    register = op.register
    target = register.reordered(order)
    n = len(register)
    perm = [register.index(name) for name in order]
    t = op.matrix.reshape(register.dims + register.dims)
    t = t.transpose(perm + [n + p for p in perm])
    return LabeledOperator(target, t.reshape(target.dim, target.dim))


def embed(local: Operand, register: Register) -> LabeledOperator:
    """Extend an operator on a sub-register to `register` by identity on the rest."""
    local = as_operator(local)
    for name, dim in local.register:
        expected = register.dim_of(name)
        if expected != dim:
            raise RegisterMismatch(f"Subsystem '{name}' has dimension {dim}, expected {expected}")
    rest = register.without(local.register.names)
    return permute(tensor(local, identity(rest)), register.names)


def _clustered_eigh(x: Operand, tol: float) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """Descending eigenpairs, a cluster label per eigenvalue, and the absolute threshold."""
    m = hermitian_part(x)
    w, v = scipy.linalg.eigh(m)
    w, v = w[::-1], v[:, ::-1]
    radius = max(1.0, float(np.max(np.abs(w), initial=0.0)))
    threshold = tol * radius
    labels = np.zeros(w.size, dtype=int)
    for i in range(1, w.size):
        labels[i] = labels[i - 1] + (1 if w[i - 1] - w[i] > threshold else 0)
    return w, v, labels, threshold


def spectral_decompose(h: Operand, tol: float = CLUSTER_RTOL) -> SpectralDecomposition:
    """
    Cluster the spectrum of a Hermitian operator.

    Adjacent eigenvalues (in descending order) closer than tol·max(1, ‖h‖) are merged by a
    greedy sweep; each cluster reports the mean of its eigenvalues.

    Raises:
        NotHermitian: If h is not Hermitian within 1e-9.
    """
    op = as_operator(h)
    w, v, labels, threshold = _clustered_eigh(op, tol)
    clusters = []
    for label in range(int(labels[-1]) + 1 if labels.size else 0):
        members = labels == label
        vecs = v[:, members]
        clusters.append(
            SpectralCluster(
                eigenvalue=float(np.mean(w[members])),
                projector=LabeledOperator(op.register, vecs @ vecs.conj().T),
                multiplicity=int(members.sum()),
            )
        )
    return SpectralDecomposition(tuple(clusters), threshold)


def distinct_eigenvalue_count(h: Operand, tol: float = CLUSTER_RTOL) -> int:
    """Number of clusters whose eigenvalue is not below −cluster_tolerance."""
    w, _, labels, threshold = _clustered_eigh(h, tol)
    count = 0
    for label in range(int(labels[-1]) + 1 if labels.size else 0):
        if float(np.mean(w[labels == label])) >= -threshold:
            count += 1
    return count


def matrix_function(
    h: Operand, f: Callable[[np.ndarray], np.ndarray], support_only: bool = False
) -> LabeledOperator:
    """
    Apply a scalar function to the spectrum of a Hermitian operator.

    Args:
        h: Hermitian operator.
        f: Vectorized real function, called on an array of eigenvalues.
        support_only: Map eigenvalues at or below SUPPORT_RTOL · λmax to 0 instead of
            evaluating f there (pseudo-function on the support).

    Raises:
        NotHermitian: If h is not Hermitian.
        SingularFunction: If f is not finite at a retained eigenvalue.
    """
    op = as_operator(h)
    m = hermitian_part(op)
    w, v = scipy.linalg.eigh(m)
    if support_only:
        top = float(w[-1]) if w.size else 0.0
        retained = w > SUPPORT_RTOL * top if top > 0 else np.zeros(w.size, dtype=bool)
    else:
        retained = np.ones(w.size, dtype=bool)
    values = np.zeros(w.size)
    if retained.any():
        with np.errstate(all="ignore"):
            values[retained] = np.asarray(f(w[retained]), dtype=float)
    if not np.all(np.isfinite(values)):
        raise SingularFunction("Matrix function is singular at a retained eigenvalue")
    return LabeledOperator(op.register, (v * values) @ v.conj().T)


def psd_power(x: Operand, power: float) -> LabeledOperator:
    """Support pseudo-power x^power of a positive semidefinite operator."""
    return matrix_function(x, lambda w: np.power(w, power), support_only=True)


def support_projector(x: Operand) -> LabeledOperator:
    """Projector onto eigenvectors with eigenvalue above SUPPORT_RTOL · λmax."""
    return matrix_function(x, np.ones_like, support_only=True)


def pinch(a: Operand, b: Operand) -> LabeledOperator:
    """
    Pinching of b with respect to the eigenspaces of a: Σᵢ Πᵢ b Πᵢ.

    Raises:
        RegisterMismatch: If a and b act on different registers.
        NotHermitian: If a is not Hermitian.
    """
    a, b = as_operator(a), as_operator(b)
    if a.register != b.register:
        raise RegisterMismatch(f"Cannot pinch {b.register.names} by {a.register.names}")
    _, v, labels, _ = _clustered_eigh(a, CLUSTER_RTOL)
    rotated = v.conj().T @ b.matrix @ v
    rotated = np.where(labels[:, None] == labels[None, :], rotated, 0.0)
    return LabeledOperator(a.register, v @ rotated @ v.conj().T)


def order_projector(a: Operand, b: Operand) -> LabeledOperator:
    """
    Projector {a ≥ b}: eigenprojectors of a − b with nonnegative cluster eigenvalue.

    Clusters within the cluster tolerance of zero are included.
    """
    a, b = as_operator(a), as_operator(b)
    diff = a - b
    w, v, labels, threshold = _clustered_eigh(diff, CLUSTER_RTOL)
    chosen = np.zeros(w.size, dtype=bool)
    for label in range(int(labels[-1]) + 1 if labels.size else 0):
        members = labels == label
        if float(np.mean(w[members])) >= -threshold:
            chosen |= members
    vecs = v[:, chosen]
    return LabeledOperator(diff.register, vecs @ vecs.conj().T)


def min_eigenvalue(x: Operand) -> float:
    m = hermitian_part(x)
    return float(scipy.linalg.eigvalsh(m)[0]) if m.size else 0.0


def operator_norm(x: Operand) -> float:
    """Largest singular value."""
    m = as_operator(x).matrix
    return float(np.linalg.norm(m, 2)) if m.size else 0.0
