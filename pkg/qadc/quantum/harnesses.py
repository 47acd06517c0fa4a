# qadc/quantum/harnesses.py

"""
Numerical checks of the operator facts the error analysis rests on.

Each check returns its slack (how far the inequality is from failing, negative when it
fails) together with a pass flag, so suites can report the worst case across many random
instances.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from qadc.core.errors import BadOperatorRange, BadOrder
from qadc.quantum.channels import (
    KrausChannel,
    apply,
    apply_reference_isometry,
    build_purified_encoding,
    pure_overlap,
    purify,
    uhlmann_isometry,
)
from qadc.quantum.divergences import (
    fidelity,
    purified_distance,
    relative_entropy,
    sandwiched_renyi,
)
from qadc.quantum.linalg_core import (
    DensityMatrix,
    Operand,
    as_operator,
    distinct_eigenvalue_count,
    identity,
    min_eigenvalue,
    operator_norm,
    pinch,
)

RANGE_ATOL = 1e-9
INEQUALITY_ATOL = 1e-8
COMMUTATOR_ATOL = 1e-8
SELF_ADJOINT_ATOL = 1e-10
UHLMANN_ATOL = 1e-8
ENCODING_ATOL = 1e-7


def _check_effect(delta: Operand) -> None:
    delta = as_operator(delta)
    if (
        min_eigenvalue(delta) < -RANGE_ATOL
        or min_eigenvalue(identity(delta.register) - delta) < -RANGE_ATOL
    ):
        raise BadOperatorRange("Measurement operator must satisfy 0 <= Delta <= I")


def measurement_distance_check(
    rho: Operand, sigma: Operand, delta: Operand
) -> tuple[float, bool]:
    """
    Slack of |√Tr[Δσ] − √Tr[Δρ]| ≤ P(σ, ρ) for an effect 0 ≤ Δ ≤ I.

    Raises:
        BadOperatorRange: If Δ is not an effect.
    """
    _check_effect(delta)
    delta = as_operator(delta)
    p_sigma = max(0.0, delta.overlap(as_operator(sigma)))
    p_rho = max(0.0, delta.overlap(as_operator(rho)))
    slack = purified_distance(sigma, rho) - abs(math.sqrt(p_sigma) - math.sqrt(p_rho))
    return slack, slack >= -INEQUALITY_ATOL


def fidelity_divergence_check(rho: Operand, sigma: Operand, alpha: float) -> tuple[float, bool]:
    """
    Slack of F(ρ, σ)² ≥ 2^{−D̃_{1+α}(ρ‖σ)}.

    Raises:
        BadOrder: If α ≤ 0.
    """
    if not alpha > 0:
        raise BadOrder(f"Order offset must be positive, got {alpha}")
    d = sandwiched_renyi(rho, sigma, 1 + alpha)
    floor = 0.0 if d == math.inf else 2.0**-d
    slack = fidelity(rho, sigma) ** 2 - floor
    return slack, slack >= -INEQUALITY_ATOL


@dataclass(frozen=True)
class PinchingCheck:
    """
    Pinching facts for one pair.

    Attributes:
        inequality_slack: Smallest eigenvalue of ν_a 𝓔_a(b) − b.
        commutator_norm: ‖[a, 𝓔_a(b)]‖.
        self_adjoint_gap: |Tr[c 𝓔_a(b)] − Tr[𝓔_a(c) b]|, 0 when no c is given.
        nu: Distinct eigenvalues of a.
    """

    inequality_slack: float
    commutator_norm: float
    self_adjoint_gap: float
    nu: int

    @property
    def passed(self) -> bool:
        return (
            self.inequality_slack >= -INEQUALITY_ATOL
            and self.commutator_norm <= COMMUTATOR_ATOL
            and self.self_adjoint_gap <= SELF_ADJOINT_ATOL
        )

    def to_dict(self) -> dict:
        return {
            "inequality_slack": self.inequality_slack,
            "commutator_norm": self.commutator_norm,
            "self_adjoint_gap": self.self_adjoint_gap,
            "nu": self.nu,
            "pass": self.passed,
        }


def pinching_check(a: Operand, b: Operand, c: Operand | None = None) -> PinchingCheck:
    """
    Check b ≤ ν_a 𝓔_a(b), that 𝓔_a(b) commutes with a, and (given c) that pinching is
    self-adjoint under the trace inner product.

    Raises:
        BadOperatorRange: If b is not positive semidefinite.
    """
    a, b = as_operator(a), as_operator(b)
    if min_eigenvalue(b) < -RANGE_ATOL:
        raise BadOperatorRange("Pinched operator must be positive semidefinite")
    pinched = pinch(a, b)
    nu = distinct_eigenvalue_count(a)
    slack = min_eigenvalue(pinched * nu - b)
    commutator = operator_norm(a @ pinched - pinched @ a)
    gap = 0.0
    if c is not None:
        c = as_operator(c)
        gap = abs(
            np.einsum("ij,ji->", c.matrix, pinched.matrix)
            - np.einsum("ij,ji->", pinch(a, c).matrix, b.matrix)
        )
    return PinchingCheck(slack, commutator, float(gap), nu)


@dataclass(frozen=True)
class AlphaGap:
    alpha: float
    lower: float
    upper: float

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "lower": self.lower, "upper": self.upper}


def alpha_convergence(
    rho: Operand, sigma: Operand, alphas: Sequence[float]
) -> tuple[AlphaGap, ...]:
    """|D̃_{1−α} − D| and |D̃_{1+α} − D| for each α, tracking convergence to D as α → 0."""
    d = relative_entropy(rho, sigma)
    rows = []
    for alpha in alphas:
        if not 0 < alpha < 1:
            raise BadOrder(f"Order offset must lie in (0, 1), got {alpha}")
        lower = abs(sandwiched_renyi(rho, sigma, 1 - alpha) - d)
        upper = abs(sandwiched_renyi(rho, sigma, 1 + alpha) - d)
        rows.append(AlphaGap(alpha, lower, upper))
    return tuple(rows)


def gaps_shrinking(gaps: Sequence[AlphaGap], atol: float = 1e-12) -> bool:
    """True when both gaps never grow from one row to the next (offsets given largest first)."""
    return all(
        b.lower <= a.lower + atol and b.upper <= a.upper + atol
        for a, b in zip(gaps, gaps[1:], strict=False)
    )


def data_processing_check(
    rho: DensityMatrix, sigma: DensityMatrix, channel: KrausChannel, alpha: float
) -> tuple[float, bool]:
    """Slack D̃_α(ρ‖σ) − D̃_α(N(ρ)‖N(σ)); valid for α ≥ 1/2."""
    if alpha < 0.5:
        raise BadOrder(f"Data processing is only checked for orders >= 1/2, got {alpha}")
    after = sandwiched_renyi(apply(channel, rho), apply(channel, sigma), alpha)
    before = sandwiched_renyi(rho, sigma, alpha)
    if before == math.inf:
        return math.inf, True
    slack = before - after
    return slack, slack >= -INEQUALITY_ATOL


def uhlmann_check(rho: DensityMatrix, sigma: DensityMatrix) -> tuple[float, bool]:
    """
    Gap between the overlap reached by the explicit Uhlmann isometry and F(ρ, σ).

    ρ is purified onto the smaller reference, so ρ needs rank at most that of σ.
    """
    phi = purify(rho, "R")
    psi = purify(sigma, "R")
    w = uhlmann_isometry(phi, psi)
    achieved = abs(pure_overlap(psi, apply_reference_isometry(phi, w, psi)))
    gap = abs(achieved - fidelity(rho, sigma))
    return gap, gap <= UHLMANN_ATOL


def encoding_check(
    action_channel: KrausChannel,
    action_state: DensityMatrix,
    encoders: Sequence[KrausChannel],
    dim_limit: int | None = None,
) -> tuple[float, bool]:
    """
    Gap between the purified distance the encoder incurs and P(τ_S, σ_S).

    With an optimal Uhlmann isometry the two coincide.
    """
    encoding = build_purified_encoding(action_channel, action_state, encoders, dim_limit)
    gap = abs(encoding.encoding_distance() - encoding.marginal_distance())
    return gap, gap <= ENCODING_ATOL
