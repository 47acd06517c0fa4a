# qadc/quantum/rate_engine.py

"""
Joint states of a coding strategy and the achievable rate they certify.

`assemble` turns an `ActionModel` and a `Strategy` into the classical-quantum states on the
auxiliary registers V, U and the quantum systems S, A, B. `achievable_rate` evaluates
R_low = I(VU;B) − I(V;S|U) on them. Negative rates are reported as computed; the capacity
lower bound is max(0, R_low).
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from qadc.core.errors import BadCodeParams, TooLarge
from qadc.quantum.channels import (
    MAX_TENSOR_DIM,
    MAX_TENSOR_POWER,
    KrausChannel,
    apply,
    apply_operator,
)
from qadc.quantum.divergences import (
    conditional_mutual_information,
    mutual_information,
    von_neumann_entropy,
)
from qadc.quantum.linalg_core import (
    DensityMatrix,
    LabeledOperator,
    Operand,
    Register,
    as_operator,
    partial_trace,
    permute,
    tensor,
)
from qadc.quantum.model import ActionModel, Strategy, check_compatible
from qadc.quantum.serialization import digest, model_to_dict, strategy_to_dict

logger = logging.getLogger(__name__)

MAX_BLOCK_LENGTH = MAX_TENSOR_POWER
MAX_BLOCK_DIM = MAX_TENSOR_DIM


def aux_register(n_v: int, n_u: int) -> Register:
    return Register.of(("V", n_v), ("U", n_u))


def cq_state(p_vu: np.ndarray, blocks: Sequence[Sequence[Operand]]) -> DensityMatrix:
    """
    Σ p(v,u) |v⟩⟨v| ⊗ |u⟩⟨u| ⊗ blocks[v][u] with computational pointer bases.

    The result is block diagonal with V as the most significant index.
    """
    n_v, n_u = p_vu.shape
    inner = as_operator(blocks[0][0]).register
    parts = [
        p_vu[v, u] * as_operator(blocks[v][u]).matrix for v in range(n_v) for u in range(n_u)
    ]
    register = aux_register(n_v, n_u) + inner
    return DensityMatrix.from_matrix(register, scipy.linalg.block_diag(*parts))


def conditional_states(
    model: ActionModel, strat: Strategy
) -> tuple[tuple[DensityMatrix, ...], tuple[tuple[DensityMatrix, ...], ...]]:
    """
    Per-u environment states and per-(v,u) channel inputs.

    Returns:
        (sigma_ss0, rho_sa): σ_SS0^u = T(σ_G^u) on (S, S0) and
        ρ_SA^{v,u} = (id ⊗ F^v)(σ_SS0^u) on (S, A).
    """
    sigma = []
    for state in strat.action_states:
        out = apply(model.action_channel, state)
        sigma.append(DensityMatrix(permute(out, ("S", "S0"))))
    rho_sa = tuple(
        tuple(DensityMatrix(permute(apply(enc, s), ("S", "A"))) for s in sigma)
        for enc in strat.encoders
    )
    return tuple(sigma), rho_sa


@dataclass(frozen=True, eq=False)
class JointStateBundle:
    """
    Classical-quantum states assembled from a model and a strategy.

    Attributes:
        p_vu: Auxiliary distribution, shape (|V|, |U|).
        sigma_ss0_per_u: σ_SS0^u = T(σ_G^u) for each u.
        rho_sa: ρ_SA^{v,u}, indexed [v][u].
        rho_b: ρ_B^{v,u} = N(ρ_SA^{v,u}), indexed [v][u].
        rho_vusa: Σ p(v,u) |vu⟩⟨vu| ⊗ ρ_SA^{v,u}.
        rho_vub: (id_VU ⊗ N)(ρ_VUSA).
        rho_vus: Tr_A ρ_VUSA.
        rho_markov: Σ p(v,u) |vu⟩⟨vu| ⊗ σ_S^u, the V−U−S Markov state.
        model_digest: Digest of the model document.
        strategy_digest: Digest of the strategy document.
    """

    p_vu: np.ndarray
    sigma_ss0_per_u: tuple[DensityMatrix, ...]
    rho_sa: tuple[tuple[DensityMatrix, ...], ...]
    rho_b: tuple[tuple[DensityMatrix, ...], ...]
    rho_vusa: DensityMatrix
    rho_vub: DensityMatrix
    rho_vus: DensityMatrix
    rho_markov: DensityMatrix
    model_digest: str = ""
    strategy_digest: str = ""

    @property
    def n_v(self) -> int:
        return self.p_vu.shape[0]

    @property
    def n_u(self) -> int:
        return self.p_vu.shape[1]

    @property
    def p_u(self) -> np.ndarray:
        return self.p_vu.sum(axis=0)

    def sigma_s(self, u: int) -> DensityMatrix:
        return DensityMatrix(partial_trace(self.sigma_ss0_per_u[u], ["S"]))

    def rho_s(self, v: int, u: int) -> DensityMatrix:
        return DensityMatrix(partial_trace(self.rho_sa[v][u], ["S"]))

    @property
    def rho_vu(self) -> LabeledOperator:
        return LabeledOperator(aux_register(self.n_v, self.n_u), np.diag(self.p_vu.reshape(-1)))

    @property
    def rho_b_marginal(self) -> LabeledOperator:
        return partial_trace(self.rho_vub, ["B"])

    @property
    def product_state(self) -> LabeledOperator:
        """ρ_VU ⊗ ρ_B."""
        return tensor(self.rho_vu, self.rho_b_marginal)

    def marginal_residual(self) -> float:
        """Largest deviation of any member's V,U marginal from p_vu."""
        target = np.diag(self.p_vu.reshape(-1))
        members = (self.rho_vusa, self.rho_vub, self.rho_vus, self.rho_markov)
        return max(
            float(np.max(np.abs(partial_trace(m, ["V", "U"]).matrix - target))) for m in members
        )


def assemble(model: ActionModel, strat: Strategy) -> JointStateBundle:
    """
    Build the joint states of a strategy.

    Raises:
        RegisterMismatch: If the strategy does not fit the model's registers.
    """
    check_compatible(model, strat)
    sigma, rho_sa = conditional_states(model, strat)
    p = strat.p_vu
    rho_vusa = cq_state(p, rho_sa)
    rho_vub = apply(model.comm_channel, rho_vusa)
    rho_b = tuple(
        tuple(DensityMatrix(apply_operator(model.comm_channel, s)) for s in row) for row in rho_sa
    )
    rho_vus = DensityMatrix(partial_trace(rho_vusa, ["V", "U", "S"]))
    sigma_s = [DensityMatrix(partial_trace(s, ["S"])) for s in sigma]
    rho_markov = cq_state(p, [sigma_s] * strat.n_v)
    bundle = JointStateBundle(
        p_vu=p,
        sigma_ss0_per_u=sigma,
        rho_sa=rho_sa,
        rho_b=rho_b,
        rho_vusa=rho_vusa,
        rho_vub=rho_vub,
        rho_vus=rho_vus,
        rho_markov=rho_markov,
        model_digest=digest(model_to_dict(model)),
        strategy_digest=digest(strategy_to_dict(strat)),
    )
    logger.debug("Assembled bundle |V|=%d |U|=%d d_VUB=%d", strat.n_v, strat.n_u, rho_vub.dim)
    return bundle


@dataclass(frozen=True)
class RateReport:
    r_low: float
    i_vub: float
    i_vs_given_u: float
    model_digest: str = ""
    strategy_digest: str = ""

    @property
    def capacity_lower_bound(self) -> float:
        return max(0.0, self.r_low)

    def to_dict(self) -> dict:
        return {
            "r_low": self.r_low,
            "i_vub": self.i_vub,
            "i_vs_given_u": self.i_vs_given_u,
            "capacity_lower_bound": self.capacity_lower_bound,
            "model_digest": self.model_digest,
            "strategy_digest": self.strategy_digest,
        }


def achievable_rate(bundle: JointStateBundle) -> RateReport:
    """R_low = I(VU;B) − I(V;S|U) from the assembled states."""
    i_vub = mutual_information(bundle.rho_vub, (["V", "U"], ["B"]))
    i_vs_u = conditional_mutual_information(bundle.rho_vus, ["V"], ["S"], ["U"])
    return RateReport(
        r_low=i_vub - i_vs_u,
        i_vub=i_vub,
        i_vs_given_u=i_vs_u,
        model_digest=bundle.model_digest,
        strategy_digest=bundle.strategy_digest,
    )


def cq_rate_terms(
    p_vu: np.ndarray,
    rho_b: Sequence[Sequence[Operand]],
    rho_s: Sequence[Sequence[Operand]],
) -> tuple[float, float]:
    """
    I(VU;B) and I(V;S|U) from conditional states, without building joint matrices.

    Uses the classical-quantum forms I(VU;B) = H(Σ p ρ_B) − Σ p H(ρ_B^{vu}) and
    I(V;S|U) = Σ_u p(u) [H(Σ_v p(v|u) ρ_S^{vu}) − Σ_v p(v|u) H(ρ_S^{vu})].
    """
    n_v, n_u = p_vu.shape
    pairs = [(v, u) for v in range(n_v) for u in range(n_u) if p_vu[v, u] > 0]
    avg_b = sum(p_vu[v, u] * as_operator(rho_b[v][u]).matrix for v, u in pairs)
    reg_b = as_operator(rho_b[0][0]).register
    i_vub = von_neumann_entropy(LabeledOperator(reg_b, avg_b)) - sum(
        p_vu[v, u] * von_neumann_entropy(rho_b[v][u]) for v, u in pairs
    )
    reg_s = as_operator(rho_s[0][0]).register
    i_vs_u = 0.0
    for u in range(n_u):
        mass = float(p_vu[:, u].sum())
        if mass <= 0:
            continue
        vs = [v for v in range(n_v) if p_vu[v, u] > 0]
        avg_s = sum(p_vu[v, u] / mass * as_operator(rho_s[v][u]).matrix for v in vs)
        i_vs_u += mass * (
            von_neumann_entropy(LabeledOperator(reg_s, avg_s))
            - sum(p_vu[v, u] / mass * von_neumann_entropy(rho_s[v][u]) for v in vs)
        )
    return max(i_vub, 0.0), max(i_vs_u, 0.0)


def strategy_rate(model: ActionModel, strat: Strategy) -> tuple[float, float]:
    """Fast (I(VU;B), I(V;S|U)) for a strategy; agrees with `achievable_rate`."""
    check_compatible(model, strat)
    _, rho_sa = conditional_states(model, strat)
    rho_b = [[apply_operator(model.comm_channel, s) for s in row] for row in rho_sa]
    rho_s = [[partial_trace(s, ["S"]) for s in row] for row in rho_sa]
    return cq_rate_terms(strat.p_vu, rho_b, rho_s)


def transition_table(ch: KrausChannel) -> np.ndarray:
    """p(out|in) = Σ_k |K_k[out, in]|², exact for channels with diagonal action."""
    return np.einsum("kai->ai", np.abs(ch.kraus_array) ** 2)


def classical_joint(model: ActionModel, strat: Strategy) -> np.ndarray:
    """
    Joint distribution p(v, u, s, s0, a, y) read off the diagonals of a classical instance.

    Only meaningful when every state and channel acts diagonally in the computational basis.
    """
    check_compatible(model, strat)
    d_s, d_s0 = model.s_register.dim, model.s0_register.dim
    d_a, d_b = model.a_register.dim, model.b_register.dim
    t = transition_table(model.action_channel)
    out_names = model.action_channel.output_register.names
    t = t.reshape(*(model.action_channel.output_register.dims), -1)
    if out_names != ("S", "S0"):
        t = t.transpose(1, 0, 2)
    n = transition_table(model.comm_channel)
    n = n.reshape(d_b, *(model.comm_channel.input_register.dims))
    if model.comm_channel.input_register.names != ("S", "A"):
        n = n.transpose(0, 2, 1)
    g = np.array([np.real(np.diag(s.matrix)) for s in strat.action_states])
    f = np.array([transition_table(e) for e in strat.encoders]).reshape(-1, d_a, d_s0)
    return np.einsum("vu,ug,sxg,vax,ysa->vusxay", strat.p_vu, g, t, f, n)


def _entropy_bits(p: np.ndarray) -> float:
    q = p[p > 0]
    return float(-np.sum(q * np.log2(q)))


def classical_rate_terms(joint: np.ndarray) -> tuple[float, float]:
    """
    I(VU;Y) and I(V;S|U) by exhaustive summation over p(v, u, s, s0, a, y).

    Independent of the matrix code paths; used as the oracle for diagonal instances.
    """
    p_vuy = joint.sum(axis=(2, 3, 4))
    p_vu = p_vuy.sum(axis=2)
    p_y = p_vuy.sum(axis=(0, 1))
    i_vuy = _entropy_bits(p_vu) + _entropy_bits(p_y) - _entropy_bits(p_vuy)
    p_vus = joint.sum(axis=(3, 4, 5))
    p_us = p_vus.sum(axis=0)
    p_u = p_us.sum(axis=1)
    i_vs_u = (
        _entropy_bits(p_vu) + _entropy_bits(p_us) - _entropy_bits(p_u) - _entropy_bits(p_vus)
    )
    return i_vuy, i_vs_u


def classical_rate(model: ActionModel, strat: Strategy) -> float:
    """Classical R_low = I(VU;Y) − I(V;S|U) of a diagonal instance."""
    i_vuy, i_vs_u = classical_rate_terms(classical_joint(model, strat))
    return i_vuy - i_vs_u


@dataclass(frozen=True, eq=False)
class TensorPowerStates:
    """n-fold i.i.d. copies of ρ_VUB and ρ_VUS with subsystems suffixed _1.._n."""

    n: int
    rho_vub: LabeledOperator
    rho_vus: LabeledOperator

    def names(self, base: str) -> list[str]:
        return [f"{base}_{i}" for i in range(1, self.n + 1)]


def _power(op: LabeledOperator, n: int) -> LabeledOperator:
    copies = [
        LabeledOperator(op.register.renamed({k: f"{k}_{i}" for k in op.register.names}), op.matrix)
        for i in range(1, n + 1)
    ]
    result = copies[0]
    for c in copies[1:]:
        result = tensor(result, c)
    return result


def tensor_power_bundle(bundle: JointStateBundle, n: int) -> TensorPowerStates:
    """
    Tensor powers of the rate-relevant states for block length n.

    Raises:
        BadCodeParams: If n < 1.
        TooLarge: If n > 3 or a power exceeds dimension 100.
    """
    if n < 1:
        raise BadCodeParams(f"Block length must be at least 1, got {n}")
    largest = max(bundle.rho_vub.dim, bundle.rho_vus.dim) ** n
    if n > MAX_BLOCK_LENGTH or largest > MAX_BLOCK_DIM:
        raise TooLarge(
            f"Block length {n} gives dimension {largest}; limits are n <= {MAX_BLOCK_LENGTH}, "
            f"dim <= {MAX_BLOCK_DIM}"
        )
    return TensorPowerStates(
        n, _power(as_operator(bundle.rho_vub), n), _power(as_operator(bundle.rho_vus), n)
    )


def block_rate_terms(model: ActionModel, strat: Strategy, n: int) -> tuple[float, float]:
    """Per-letter I(V^nU^n;B^n)/n and I(V^n;S^n|U^n)/n for the i.i.d. strategy."""
    powers = tensor_power_bundle(assemble(model, strat), n)
    vu = powers.names("V") + powers.names("U")
    i_vub = mutual_information(powers.rho_vub, (vu, powers.names("B")))
    i_vs_u = conditional_mutual_information(
        powers.rho_vus, powers.names("V"), powers.names("S"), powers.names("U")
    )
    return i_vub / n, i_vs_u / n

