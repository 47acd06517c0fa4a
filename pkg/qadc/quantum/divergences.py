# qadc/quantum/divergences.py

"""
Entropic quantities and distances between states, all in bits.

Values that diverge are returned as `math.inf`; this only happens when the relevant support
condition fails. Functions accept either a `DensityMatrix` or a `LabeledOperator` holding a
normalized state (marginals are produced as operators).
"""

from __future__ import annotations

import math
from collections.abc import Collection, Iterable

import numpy as np
import scipy.linalg

from qadc.core.errors import BadOrder, BadPartition, RegisterMismatch
from qadc.quantum.linalg_core import (
    SUPPORT_RTOL,
    LabeledOperator,
    Operand,
    as_operator,
    hermitian_part,
    matrix_function,
    operator_norm,
    partial_trace,
    psd_power,
    support_projector,
)

# A divergence in bits, or math.inf when the support condition fails.
DivergenceValue = float

SUPPORT_ATOL = 1e-8


def _same_register(rho: LabeledOperator, sigma: LabeledOperator) -> None:
    if rho.register != sigma.register:
        raise RegisterMismatch(f"States act on {rho.register.names} and {sigma.register.names}")


def _support_eigenvalues(x: Operand) -> np.ndarray:
    w = scipy.linalg.eigvalsh(hermitian_part(x))
    if w.size == 0 or w[-1] <= 0:
        return np.zeros(0)
    return w[w > SUPPORT_RTOL * w[-1]]


def von_neumann_entropy(rho: Operand) -> float:
    """H(ρ) = −Σ λ log₂ λ over eigenvalues above the support cutoff."""
    w = _support_eigenvalues(rho)
    return float(max(0.0, -np.sum(w * np.log2(w))))


def _marginal_entropy(rho: LabeledOperator, names: Collection[str]) -> float:
    if not names:
        return 0.0
    return von_neumann_entropy(partial_trace(rho, names))


def conditional_entropy(rho: Operand, a: Collection[str], b: Collection[str]) -> float:
    """H(A|B) = H(AB) − H(B)."""
    op = as_operator(rho)
    return _marginal_entropy(op, set(a) | set(b)) - _marginal_entropy(op, b)


def support_contained(rho: Operand, sigma: Operand) -> bool:
    """supp(ρ) ⊆ supp(σ), tested as ‖(I − Π_σ) Π_ρ‖ ≤ 1e-8."""
    p_rho = support_projector(rho).matrix
    p_sigma = support_projector(sigma).matrix
    leak = (np.eye(p_rho.shape[0]) - p_sigma) @ p_rho
    return float(np.linalg.norm(leak, 2)) <= SUPPORT_ATOL if leak.size else True


def supports_orthogonal(rho: Operand, sigma: Operand) -> bool:
    overlap = support_projector(rho) @ support_projector(sigma)
    return operator_norm(overlap) <= SUPPORT_ATOL


def relative_entropy(rho: Operand, sigma: Operand) -> DivergenceValue:
    """
    Umegaki relative entropy D(ρ‖σ) = Tr ρ(log₂ ρ − log₂ σ).

    Returns:
        The divergence in bits, or math.inf when supp(ρ) ⊄ supp(σ).
    """
    rho, sigma = as_operator(rho), as_operator(sigma)
    _same_register(rho, sigma)
    if not support_contained(rho, sigma):
        return math.inf
    log_rho = matrix_function(rho, np.log2, support_only=True)
    log_sigma = matrix_function(sigma, np.log2, support_only=True)
    value = rho.overlap(log_rho - log_sigma)
    return max(value, 0.0)


def _check_partition(rho: LabeledOperator, *groups: Iterable[str], cover: bool) -> None:
    names = set(rho.register.names)
    seen: set[str] = set()
    for group in groups:
        group = set(group)
        if seen & group:
            raise BadPartition(f"Subsystem groups overlap on {sorted(seen & group)}")
        if not group <= names:
            raise BadPartition(f"Unknown subsystems {sorted(group - names)}")
        seen |= group
    if cover and seen != names:
        raise BadPartition(f"Groups do not cover the register {rho.register.names}")


def mutual_information(rho: Operand, cut: tuple[Collection[str], Collection[str]]) -> float:
    """
    I(A;B) = H(A) + H(B) − H(AB) for a bipartition of the register.

    Raises:
        BadPartition: If either side is empty, the sides overlap, or they miss a subsystem.
    """
    op = as_operator(rho)
    a, b = (set(side) for side in cut)
    if not a or not b:
        raise BadPartition("Both sides of the cut must be nonempty")
    _check_partition(op, a, b, cover=True)
    return (
        _marginal_entropy(op, a) + _marginal_entropy(op, b) - von_neumann_entropy(op)
    )


def conditional_mutual_information(
    rho: Operand, a: Collection[str], b: Collection[str], c: Collection[str]
) -> float:
    """
    I(A;B|C) = H(AC) + H(BC) − H(C) − H(ABC).

    Subsystems outside A, B and C are traced out; C may be empty.
    """
    op = as_operator(rho)
    a, b, c = set(a), set(b), set(c)
    if not a or not b:
        raise BadPartition("Conditional mutual information needs nonempty A and B")
    _check_partition(op, a, b, c, cover=False)
    return (
        _marginal_entropy(op, a | c)
        + _marginal_entropy(op, b | c)
        - _marginal_entropy(op, c)
        - _marginal_entropy(op, a | b | c)
    )


def _check_order(alpha: float) -> None:
    if not alpha > 0 or alpha == 1 or not math.isfinite(alpha):
        raise BadOrder(f"Sandwiched Renyi order must be positive and not 1, got {alpha}")


def sandwiched_renyi(rho: Operand, sigma: Operand, alpha: float) -> DivergenceValue:
    """
    Sandwiched Rényi divergence (1/(α−1)) log₂ Tr[(σ^{(1−α)/2α} ρ σ^{(1−α)/2α})^α].

    Powers of σ are support pseudo-powers. For α > 1 the value is infinite unless
    supp(ρ) ⊆ supp(σ); for α < 1 only orthogonal supports give +∞.

    Raises:
        BadOrder: If α ≤ 0 or α = 1.
    """
    _check_order(alpha)
    rho, sigma = as_operator(rho), as_operator(sigma)
    _same_register(rho, sigma)
    if alpha > 1 and not support_contained(rho, sigma):
        return math.inf
    if alpha < 1 and supports_orthogonal(rho, sigma):
        return math.inf
    s = psd_power(sigma, (1 - alpha) / (2 * alpha))
    sandwiched = s @ rho @ s
    q = float(psd_power(sandwiched, alpha).trace().real)
    if q <= 0:
        return math.inf
    return math.log2(q) / (alpha - 1)


def fidelity(rho: Operand, sigma: Operand) -> float:
    """F(ρ, σ) = ‖√ρ √σ‖₁, clipped to [0, 1]."""
    rho, sigma = as_operator(rho), as_operator(sigma)
    _same_register(rho, sigma)
    product = psd_power(rho, 0.5).matrix @ psd_power(sigma, 0.5).matrix
    value = float(np.sum(np.linalg.svd(product, compute_uv=False)))
    return min(1.0, max(0.0, value))


def purified_distance(rho: Operand, sigma: Operand) -> float:
    """P(ρ, σ) = √(1 − F²)."""
    return math.sqrt(max(0.0, 1.0 - fidelity(rho, sigma) ** 2))


def trace_distance(rho: Operand, sigma: Operand) -> float:
    """½‖ρ − σ‖₁."""
    rho, sigma = as_operator(rho), as_operator(sigma)
    _same_register(rho, sigma)
    w = scipy.linalg.eigvalsh(hermitian_part(rho - sigma))
    return float(0.5 * np.sum(np.abs(w)))
