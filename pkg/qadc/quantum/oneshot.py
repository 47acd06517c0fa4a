# qadc/quantum/oneshot.py

"""
One-shot random coding: codebooks, the pinching decoder, exact error probabilities and the
expectation bound they are compared against.

A code has M = 2^R messages, each with a subcodebook of L = 2^{R_S} v-codewords drawn given
the message's u-codeword. The decoder thresholds the pinched joint output against
2^{R+R_S} ρ_VU ⊗ ρ_B and normalizes the per-codeword operators with a pseudo-inverse square
root; outcomes in the kernel of their sum count as errors. All probabilities are traces, never
samples. Decoding succeeds when the outcome lies anywhere in the sent message's subcodebook.
"""

from __future__ import annotations

import functools
import logging
import math
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from qadc.core.errors import BadCodeParams, BadDistribution, BadOperatorRange, BadOrder
from qadc.quantum.channels import apply, build_purified_encoding
from qadc.quantum.divergences import purified_distance, sandwiched_renyi
from qadc.quantum.linalg_core import (
    HERMITIAN_ATOL,
    DensityMatrix,
    LabeledOperator,
    Operand,
    Register,
    as_operator,
    distinct_eigenvalue_count,
    identity,
    min_eigenvalue,
    order_projector,
    partial_trace,
    permute,
    pinch,
    psd_power,
    tensor,
)
from qadc.quantum.model import ActionModel, Strategy
from qadc.quantum.rate_engine import JointStateBundle, assemble, cq_state
from qadc.quantum.sampling import derive_seed, make_generator, random_density

logger = logging.getLogger(__name__)

EncoderMode = Literal["ideal_average", "exact_uhlmann"]
ENCODER_MODES: tuple[str, ...] = ("ideal_average", "exact_uhlmann")

ALPHA_GRID: tuple[float, ...] = tuple(round(0.05 * k, 2) for k in range(1, 10))
EXACT_DIM_LIMIT = 64
# Action states with p_U(u) at or below this are never used by a code.
SUPPORT_PROBABILITY = 1e-12
POVM_ATOL = 1e-8
PSD_ATOL = 1e-9
HN_ATOL = 1e-8
LEMMA2_RTOL = 1e-9
# Trace noise allowed on top of the relative slack.
LEMMA2_ATOL = 1e-12


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


@dataclass(frozen=True)
class CodeParams:
    """
    Code sizes.

    Attributes:
        m: Number of messages, 2^R.
        ell: Subcodebook size, 2^{R_S}.
    """

    m: int
    ell: int

    def __post_init__(self):
        for name, value in (("M", self.m), ("L", self.ell)):
            if not isinstance(value, int | np.integer) or not _is_power_of_two(int(value)):
                raise BadCodeParams(f"{name} must be a positive power of two, got {value}")

    @property
    def rate(self) -> float:
        return math.log2(self.m)

    @property
    def rate_s(self) -> float:
        return math.log2(self.ell)

    @property
    def total_rate(self) -> float:
        """R + R_S."""
        return self.rate + self.rate_s


@dataclass(frozen=True, eq=False)
class Codebook:
    """
    u-codewords u[m] and subcodebooks v[m, ℓ].

    Attributes:
        u: Integer array of shape (M,).
        v: Integer array of shape (M, L).
        seed: Seed the codebook was drawn with.
    """

    u: np.ndarray
    v: np.ndarray
    seed: int = 0

    @property
    def m(self) -> int:
        return int(self.u.shape[0])

    @property
    def ell(self) -> int:
        return int(self.v.shape[1])

    def to_dict(self) -> dict:
        return {"u": self.u.tolist(), "v": self.v.tolist(), "seed": self.seed}


def _p_vu(source: Strategy | JointStateBundle | np.ndarray) -> np.ndarray:
    return np.asarray(getattr(source, "p_vu", source), dtype=float)


def sample_codebook(
    source: Strategy | JointStateBundle | np.ndarray, params: CodeParams, seed: int
) -> Codebook:
    """
    Draw u(m) i.i.d. from p_U and v(m, ℓ) i.i.d. from p_{V|U}(·|u(m)).

    Raises:
        BadDistribution: If p_U has no mass.
    """
    p = _p_vu(source)
    p_u = p.sum(axis=0)
    total = float(p_u.sum())
    if total <= 0:
        raise BadDistribution("p_U has no mass; cannot sample a codebook")
    rng = make_generator(seed)
    u = rng.choice(p.shape[1], size=params.m, p=p_u / total)
    v = np.empty((params.m, params.ell), dtype=int)
    for i, ui in enumerate(u):
        column = p[:, ui]
        v[i] = rng.choice(p.shape[0], size=params.ell, p=column / column.sum())
    return Codebook(u.astype(int), v, int(seed))


def _vub(source: JointStateBundle | Operand) -> LabeledOperator:
    rho = as_operator(getattr(source, "rho_vub", source))
    return permute(rho, ("V", "U", "B"))


def product_reference(rho_vub: Operand) -> LabeledOperator:
    """ρ_VU ⊗ ρ_B from the marginals of ρ_VUB."""
    return tensor(partial_trace(rho_vub, ["V", "U"]), partial_trace(rho_vub, ["B"]))


@functools.lru_cache(maxsize=16)
def _decision_projector(rho_vub: LabeledOperator, total_rate: float) -> LabeledOperator:
    product = product_reference(rho_vub)
    pinched = pinch(product, rho_vub)
    return order_projector(pinched, product * float(2.0**total_rate))


def decision_projector(source: JointStateBundle | Operand, total_rate: float) -> LabeledOperator:
    """
    Π_VUB = {𝓔(ρ_VUB) ≥ 2^{R+R_S} ρ_VU ⊗ ρ_B} with 𝓔 the pinching by ρ_VU ⊗ ρ_B.

    The projector depends only on the joint state and the total rate, so it is cached.
    """
    rho = getattr(source, "rho_vub", source)
    key = as_operator(rho)
    if key.register.names != ("V", "U", "B"):
        key = _vub(key)
    return _decision_projector(key, float(total_rate))


@dataclass(frozen=True, eq=False)
class DecoderPOVM:
    """
    Normalized decoding measurement.

    Attributes:
        beta: β(m, ℓ) on B, indexed [m][ℓ].
        completion: I − Σ β, the projector onto the kernel of Γ = Σ γ.
        pi_vub: Decision projector on V, U, B.
        nu1: Distinct eigenvalues of ρ_VU ⊗ ρ_B.
        degenerate: True when Γ = 0, so every outcome is an error.
    """

    beta: tuple[tuple[LabeledOperator, ...], ...]
    completion: LabeledOperator
    pi_vub: LabeledOperator
    nu1: int
    degenerate: bool = False

    def success_operator(self, m: int) -> LabeledOperator:
        """Σ_ℓ β(m, ℓ)."""
        total = self.beta[m][0]
        for b in self.beta[m][1:]:
            total = total + b
        return total

    def completeness_residual(self) -> float:
        total = self.completion.matrix.copy()
        for row in self.beta:
            for b in row:
                total = total + b.matrix
        return float(np.max(np.abs(total - np.eye(total.shape[0]))))

    def min_element_eigenvalue(self) -> float:
        values = [min_eigenvalue(b) for row in self.beta for b in row]
        return min([*values, min_eigenvalue(self.completion)])

    def is_valid(self) -> bool:
        """Complete within 1e-8 and every element PSD within -1e-9."""
        return (
            self.completeness_residual() <= POVM_ATOL
            and self.min_element_eigenvalue() >= -PSD_ATOL
        )


def build_decoder(bundle: JointStateBundle, cb: Codebook, params: CodeParams) -> DecoderPOVM:
    """
    Pinching decoder for one codebook.

    γ(m, ℓ) = Tr_VU[Π_VUB (|v(m,ℓ) u(m)⟩⟨v(m,ℓ) u(m)| ⊗ I_B)] and
    β(m, ℓ) = Γ^{−1/2} γ(m, ℓ) Γ^{−1/2} with the inverse root taken on supp Γ.
    """
    if cb.m != params.m or cb.ell != params.ell:
        raise BadCodeParams(
            f"Codebook is {cb.m}x{cb.ell} but parameters are {params.m}x{params.ell}"
        )
    pi = decision_projector(bundle, params.total_rate)
    n_v, n_u = bundle.n_v, bundle.n_u
    reg_b = pi.register.select(["B"])
    d_b = reg_b.dim
    blocks = pi.matrix.reshape(n_v * n_u, d_b, n_v * n_u, d_b)
    gamma = [
        [LabeledOperator(reg_b, blocks[k, :, k, :]) for k in (cb.v[m] * n_u + cb.u[m])]
        for m in range(cb.m)
    ]
    big_gamma = LabeledOperator(reg_b, sum(g.matrix for row in gamma for g in row))
    inv_root = psd_power(big_gamma, -0.5)
    beta = tuple(tuple(inv_root @ g @ inv_root for g in row) for row in gamma)
    completion = identity(reg_b) - LabeledOperator(
        reg_b, sum(b.matrix for row in beta for b in row)
    )
    degenerate = float(np.max(np.abs(big_gamma.matrix))) <= HERMITIAN_ATOL
    if degenerate:
        logger.info("Decoder is degenerate: every outcome falls in the completion")
    return DecoderPOVM(
        beta=beta,
        completion=completion,
        pi_vub=pi,
        nu1=distinct_eigenvalue_count(bundle.product_state),
        degenerate=degenerate,
    )


@dataclass(frozen=True)
class BoundTerms:
    alpha: float
    first: float
    second: float
    nu1: int
    nu2: int
    d_minus: float
    d_plus: float

    @property
    def value(self) -> float:
        return self.first + self.second


def _check_alpha(alpha: float) -> None:
    if not 0 < alpha < 0.5:
        raise BadOrder(f"Bound order must lie in (0, 1/2), got {alpha}")


def _exp2(x: float) -> float:
    if x == math.inf:
        return math.inf
    with np.errstate(over="ignore"):
        return float(np.exp2(x))


def nu2_of(sigma_s: Sequence[Operand], p_u: np.ndarray) -> int:
    """Largest distinct-eigenvalue count of σ_S^u over u with p_U(u) > 1e-12."""
    counts = [
        distinct_eigenvalue_count(s)
        for s, p in zip(sigma_s, p_u, strict=True)
        if p > SUPPORT_PROBABILITY
    ]
    return max(counts, default=1)


def bundle_nu2(bundle: JointStateBundle) -> int:
    return nu2_of([bundle.sigma_s(u) for u in range(bundle.n_u)], bundle.p_u)


def proposition1_terms(bundle: JointStateBundle, params: CodeParams, alpha: float) -> BoundTerms:
    """
    Both terms of the expected-error bound at order α.

    first = 12 ν1^α 2^{α(R + R_S − D̃_{1−α}(ρ_VUB‖ρ_VU⊗ρ_B))}
    second = (2/α) ν2^α 2^{−α R_S} 2^{α D̃_{1+α}(ρ_VUS‖ρ_{V−U−S})}

    Raises:
        BadOrder: If α is outside (0, 1/2).
    """
    _check_alpha(alpha)
    product = bundle.product_state
    nu1 = distinct_eigenvalue_count(product)
    nu2 = bundle_nu2(bundle)
    d_minus = sandwiched_renyi(bundle.rho_vub, product, 1 - alpha)
    d_plus = sandwiched_renyi(bundle.rho_vus, bundle.rho_markov, 1 + alpha)
    if d_minus == math.inf:
        first = 0.0
    else:
        first = 12 * _exp2(alpha * (math.log2(nu1) + params.total_rate - d_minus))
    second = (2 / alpha) * _exp2(alpha * (math.log2(nu2) - params.rate_s + d_plus))
    return BoundTerms(alpha, first, second, nu1, nu2, d_minus, d_plus)


def proposition1_bound(bundle: JointStateBundle, params: CodeParams, alpha: float) -> float:
    """Right-hand side of the expected-error bound at order α ∈ (0, 1/2)."""
    return proposition1_terms(bundle, params, alpha).value


@dataclass(frozen=True)
class BoundTable:
    per_alpha: dict[float, float]
    nu1: int
    nu2: int

    @property
    def minimum(self) -> float:
        return min(self.per_alpha.values(), default=math.inf)

    @property
    def vacuous(self) -> bool:
        return self.minimum >= 1.0

    def to_dict(self) -> dict:
        return {f"{a:.2f}": v for a, v in self.per_alpha.items()}


def bound_table(
    bundle: JointStateBundle, params: CodeParams, alpha_grid: Sequence[float] = ALPHA_GRID
) -> BoundTable:
    terms = [proposition1_terms(bundle, params, a) for a in alpha_grid]
    nu1 = terms[0].nu1 if terms else distinct_eigenvalue_count(bundle.product_state)
    nu2 = terms[0].nu2 if terms else 1
    return BoundTable({t.alpha: t.value for t in terms}, nu1, nu2)


@dataclass(frozen=True)
class SimulationReport:
    """
    Exact error of one codebook.

    Attributes:
        avg_error_exact: 1 − (1/M) Σ_m Tr[Σ_ℓ β(m,ℓ) Θ(m)].
        confusion_term: Average probability of decoding to another message.
        completion_term: Average probability of the completion outcome.
        purified_distance_term: max_m P(τ_{S|C_m}, σ_S^{u(m)})².
        bound_rhs_per_alpha: Bound value per α (empty when not requested).
        bound_rhs_min: Smallest bound over the grid (inf when not requested).
        nu1: Distinct eigenvalues of ρ_VU ⊗ ρ_B.
        nu2: Largest distinct-eigenvalue count of the σ_S^u in use.
        encoder_mode: ideal_average or exact_uhlmann.
        seeds: Codebook seeds.
        degenerate_decoder: True when Γ = 0.
    """

    avg_error_exact: float
    confusion_term: float
    completion_term: float
    purified_distance_term: float
    bound_rhs_per_alpha: dict[float, float]
    bound_rhs_min: float
    nu1: int
    nu2: int
    encoder_mode: str
    seeds: tuple[int, ...]
    degenerate_decoder: bool = False

    def to_dict(self) -> dict:
        return {
            "avg_error_exact": self.avg_error_exact,
            "confusion_term": self.confusion_term,
            "completion_term": self.completion_term,
            "purified_distance_term": self.purified_distance_term,
            "bound_rhs_per_alpha": {f"{a:.2f}": v for a, v in self.bound_rhs_per_alpha.items()},
            "bound_rhs_min": self.bound_rhs_min,
            "nu1": self.nu1,
            "nu2": self.nu2,
            "encoder_mode": self.encoder_mode,
            "seeds": list(self.seeds),
            "degenerate_decoder": self.degenerate_decoder,
        }


def _received_states(
    model: ActionModel,
    strat: Strategy,
    bundle: JointStateBundle,
    cb: Codebook,
    mode: str,
    dim_limit: int,
) -> list[LabeledOperator]:
    states = []
    for m in range(cb.m):
        u = int(cb.u[m])
        if mode == "ideal_average":
            avg = sum(bundle.rho_b[int(v)][u].matrix for v in cb.v[m]) / cb.ell
            states.append(LabeledOperator(bundle.rho_b[0][0].register, avg))
        else:
            encoding = build_purified_encoding(
                model.action_channel,
                strat.action_states[u],
                [strat.encoders[int(v)] for v in cb.v[m]],
                dim_limit=dim_limit,
            )
            states.append(as_operator(apply(model.comm_channel, encoding.received_input())))
    return states


def subcodebook_distance(bundle: JointStateBundle, cb: Codebook) -> float:
    """max_m P(τ_{S|C_m}, σ_S^{u(m)})² with τ the subcodebook average on S."""
    worst = 0.0
    for m in range(cb.m):
        u = int(cb.u[m])
        tau = sum(bundle.rho_s(int(v), u).matrix for v in cb.v[m]) / cb.ell
        tau = DensityMatrix.from_matrix(bundle.sigma_s(u).register, tau)
        worst = max(worst, purified_distance(tau, bundle.sigma_s(u)) ** 2)
    return worst


def evaluate_error(
    model: ActionModel,
    strat: Strategy,
    cb: Codebook,
    decoder: DecoderPOVM,
    mode: str = "ideal_average",
    bundle: JointStateBundle | None = None,
    dim_limit: int = EXACT_DIM_LIMIT,
    alpha_grid: Sequence[float] = ALPHA_GRID,
) -> SimulationReport:
    """
    Exact average error of a codebook under the decoder.

    In ideal_average mode message m sends the subcodebook average of ρ_B^{v,u(m)}; in
    exact_uhlmann mode the channel input is built from the purified encoder.

    Raises:
        TooLarge: In exact_uhlmann mode when the encoder exceeds `dim_limit`.
    """
    if mode not in ENCODER_MODES:
        raise ValueError(f"Unknown encoder mode '{mode}'")
    bundle = bundle or assemble(model, strat)
    received = _received_states(model, strat, bundle, cb, mode, dim_limit)
    success_ops = [decoder.success_operator(m) for m in range(cb.m)]
    success = confusion = completion = 0.0
    for m, theta in enumerate(received):
        outcomes = [op.overlap(theta) for op in success_ops]
        success += outcomes[m]
        confusion += sum(outcomes) - outcomes[m]
        completion += decoder.completion.overlap(theta)
    error = min(1.0, max(0.0, 1.0 - success / cb.m))
    table = (
        bound_table(bundle, CodeParams(cb.m, cb.ell), alpha_grid)
        if alpha_grid
        else BoundTable({}, decoder.nu1, bundle_nu2(bundle))
    )
    return SimulationReport(
        avg_error_exact=error,
        confusion_term=max(0.0, confusion / cb.m),
        completion_term=max(0.0, completion / cb.m),
        purified_distance_term=subcodebook_distance(bundle, cb),
        bound_rhs_per_alpha=table.per_alpha,
        bound_rhs_min=table.minimum,
        nu1=decoder.nu1,
        nu2=table.nu2,
        encoder_mode=mode,
        seeds=(cb.seed,),
        degenerate_decoder=decoder.degenerate,
    )


@dataclass(frozen=True)
class MonteCarloReport:
    """
    Expected error over random codebooks.

    The comparison with the bound is at the level of the expectation; single trials may
    exceed it.
    """

    mean_error: float
    stderr: float
    trial_errors: tuple[float, ...]
    trial_corrections: tuple[float, ...]
    mean_correction: float
    bound_rhs_per_alpha: dict[float, float]
    bound_rhs_min: float
    bound_vacuous: bool
    bound_holds: bool
    nu1: int
    nu2: int
    encoder_mode: str
    master_seed: int
    trial_seeds: tuple[int, ...] = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "mean_error": self.mean_error,
            "stderr": self.stderr,
            "mean_correction": self.mean_correction,
            "trial_errors": list(self.trial_errors),
            "trial_corrections": list(self.trial_corrections),
            "bound_rhs_per_alpha": {f"{a:.2f}": v for a, v in self.bound_rhs_per_alpha.items()},
            "bound_rhs_min": self.bound_rhs_min,
            "bound_vacuous": self.bound_vacuous,
            "bound_holds": self.bound_holds,
            "comparison": "expectation",
            "nu1": self.nu1,
            "nu2": self.nu2,
            "encoder_mode": self.encoder_mode,
            "master_seed": self.master_seed,
            "trial_seeds": list(self.trial_seeds),
        }


def _trial(
    model: ActionModel,
    strat: Strategy,
    bundle: JointStateBundle,
    params: CodeParams,
    seed: int,
    mode: str,
    dim_limit: int,
) -> tuple[float, float]:
    cb = sample_codebook(bundle, params, seed)
    decoder = build_decoder(bundle, cb, params)
    report = evaluate_error(model, strat, cb, decoder, mode, bundle, dim_limit, alpha_grid=())
    return report.avg_error_exact, 2 * report.purified_distance_term


def _stderr(values: np.ndarray) -> float:
    if values.size < 2:
        return 0.0
    return float(np.std(values, ddof=1) / math.sqrt(values.size))


def monte_carlo_expected_error(
    model: ActionModel,
    strat: Strategy,
    params: CodeParams,
    trials: int,
    master_seed: int,
    workers: int = 1,
    mode: str = "ideal_average",
    alpha_grid: Sequence[float] = ALPHA_GRID,
    dim_limit: int = EXACT_DIM_LIMIT,
) -> MonteCarloReport:
    """
    Average the exact error over `trials` random codebooks.

    Trial i uses the codebook seed derive_seed(master_seed, i); the result is identical for
    any number of workers.
    """
    if trials < 1:
        raise BadCodeParams(f"Need at least one trial, got {trials}")
    bundle = assemble(model, strat)
    seeds = [derive_seed(master_seed, i) for i in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(
                pool.map(
                    _trial,
                    [model] * trials,
                    [strat] * trials,
                    [bundle] * trials,
                    [params] * trials,
                    seeds,
                    [mode] * trials,
                    [dim_limit] * trials,
                )
            )
    else:
        outcomes = [_trial(model, strat, bundle, params, s, mode, dim_limit) for s in seeds]
    errors = np.array([o[0] for o in outcomes])
    corrections = np.array([o[1] for o in outcomes])
    table = bound_table(bundle, params, alpha_grid)
    mean, stderr = float(np.mean(errors)), _stderr(errors)
    mean_correction = float(np.mean(corrections))
    holds = table.vacuous or mean + mean_correction <= table.minimum + 3 * stderr
    logger.info(
        "Monte Carlo: %d trials, mean error %.6g, bound %.6g", trials, mean, table.minimum
    )
    return MonteCarloReport(
        mean_error=mean,
        stderr=stderr,
        trial_errors=tuple(float(e) for e in errors),
        trial_corrections=tuple(float(c) for c in corrections),
        mean_correction=mean_correction,
        bound_rhs_per_alpha=table.per_alpha,
        bound_rhs_min=table.minimum,
        bound_vacuous=table.vacuous,
        bound_holds=bool(holds),
        nu1=table.nu1,
        nu2=table.nu2,
        encoder_mode=mode,
        master_seed=int(master_seed),
        trial_seeds=tuple(seeds),
    )


@dataclass(frozen=True, eq=False)
class ConditionalFamily:
    """
    Classical-quantum family p(v, u) with states ρ_S^{v,u}.

    σ_S^u = Σ_v p(v|u) ρ_S^{v,u}. Families come from an assembled bundle or are drawn at
    random.
    """

    p_vu: np.ndarray
    rho_s: tuple[tuple[DensityMatrix, ...], ...]

    @property
    def n_v(self) -> int:
        return self.p_vu.shape[0]

    @property
    def n_u(self) -> int:
        return self.p_vu.shape[1]

    @property
    def p_u(self) -> np.ndarray:
        return self.p_vu.sum(axis=0)

    def p_v_given_u(self, u: int) -> np.ndarray:
        mass = float(self.p_u[u])
        if mass <= 0:
            raise BadDistribution(f"p_U({u}) = 0, conditional distribution undefined")
        return self.p_vu[:, u] / mass

    def sigma_s(self, u: int) -> DensityMatrix:
        p = self.p_v_given_u(u)
        avg = sum(p[v] * self.rho_s[v][u].matrix for v in range(self.n_v))
        return DensityMatrix.from_matrix(self.rho_s[0][u].register, avg)

    def nu2(self) -> int:
        used = [u for u in range(self.n_u) if self.p_u[u] > SUPPORT_PROBABILITY]
        return max((distinct_eigenvalue_count(self.sigma_s(u)) for u in used), default=1)

    def rho_vus(self) -> DensityMatrix:
        return cq_state(self.p_vu, self.rho_s)

    def rho_markov(self) -> DensityMatrix:
        sigma = [
            self.sigma_s(u) if self.p_u[u] > 0 else self.rho_s[0][u] for u in range(self.n_u)
        ]
        return cq_state(self.p_vu, [sigma] * self.n_v)

    def restricted(self, u: int) -> ConditionalFamily:
        """Single-u family with p(v) = p(v|u)."""
        p = self.p_v_given_u(u)[:, None]
        return ConditionalFamily(p, tuple((row[u],) for row in self.rho_s))

    def divergence_exponent(self, alpha: float) -> float:
        """log2 of ν2^α 2^{α D̃_{1+α}(ρ_VUS ‖ ρ_{V−U−S})}."""
        d_plus = sandwiched_renyi(self.rho_vus(), self.rho_markov(), 1 + alpha)
        return alpha * (math.log2(self.nu2()) + d_plus)

    @classmethod
    def from_bundle(cls, bundle: JointStateBundle) -> ConditionalFamily:
        rows = tuple(
            tuple(bundle.rho_s(v, u) for u in range(bundle.n_u)) for v in range(bundle.n_v)
        )
        return cls(bundle.p_vu, rows)

    @classmethod
    def from_strategy(cls, model: ActionModel, strat: Strategy) -> ConditionalFamily:
        return cls.from_bundle(assemble(model, strat))

    @classmethod
    def random(
        cls, rng: np.random.Generator, n_v: int, n_u: int, register: Register
    ) -> ConditionalFamily:
        """Dirichlet p(v, u) and full-rank random states on `register`."""
        p = rng.dirichlet(np.ones(n_v * n_u)).reshape(n_v, n_u)
        rows = tuple(
            tuple(random_density(rng, register) for _ in range(n_u)) for _ in range(n_v)
        )
        return cls(p, rows)


@dataclass(frozen=True)
class Lemma1Result:
    empirical_mean: float
    stderr: float
    bound: float
    restricted_bound: float
    passed: bool
    ell: int
    alpha: float

    def to_dict(self) -> dict:
        return {
            "empirical_mean": self.empirical_mean,
            "stderr": self.stderr,
            "bound": self.bound,
            "restricted_bound": self.restricted_bound,
            "pass": self.passed,
            "L": self.ell,
            "alpha": self.alpha,
        }


def lemma1_check(
    family: ConditionalFamily,
    u_index: int,
    params: CodeParams,
    alpha: float,
    trials: int,
    seed: int,
) -> Lemma1Result:
    """
    Compare the mean of D̃_{1+α}(τ_{S|C} ‖ σ_S^u) over random subcodebooks with the bound
    (1/(α ln 2)) ν2^α 2^{−α R_S} 2^{α D̃_{1+α}(ρ_VUS ‖ ρ_{V−U−S})} of the whole family.
    The same expression on the family conditioned on u is reported as `restricted_bound`.

    Raises:
        BadOrder: If α is outside (0, 1/2).
    """
    _check_alpha(alpha)
    if trials < 1:
        raise BadCodeParams(f"Need at least one trial, got {trials}")
    p = family.p_v_given_u(u_index)
    sigma = family.sigma_s(u_index)
    register = sigma.register
    rng = make_generator(seed, u_index)
    values = np.empty(trials)
    for t in range(trials):
        vs = rng.choice(family.n_v, size=params.ell, p=p)
        tau = sum(family.rho_s[int(v)][u_index].matrix for v in vs) / params.ell
        values[t] = sandwiched_renyi(DensityMatrix.from_matrix(register, tau), sigma, 1 + alpha)
    scale = 1 / (alpha * math.log(2))
    shift = -alpha * params.rate_s
    bound = scale * _exp2(family.divergence_exponent(alpha) + shift)
    restricted = scale * _exp2(family.restricted(u_index).divergence_exponent(alpha) + shift)
    mean, stderr = float(np.mean(values)), _stderr(values)
    passed = mean <= bound + 3 * stderr
    return Lemma1Result(mean, stderr, bound, restricted, passed, params.ell, alpha)


@dataclass(frozen=True)
class Lemma2Result:
    lhs1: float
    lhs2: float
    rhs: float
    passed: bool

    def to_dict(self) -> dict:
        return {"lhs1": self.lhs1, "lhs2": self.lhs2, "rhs": self.rhs, "pass": self.passed}


def lemma2_check(
    source: JointStateBundle | Operand, params: CodeParams, alpha: float
) -> Lemma2Result:
    """
    Exact check of the two decision-projector inequalities:
    Tr[(I − Π) ρ_VUB] ≤ rhs and 2^{R+R_S} Tr[Π ρ_VU⊗ρ_B] ≤ rhs with
    rhs = ν1^α 2^{α(R + R_S − D̃_{1−α}(ρ_VUB‖ρ_VU⊗ρ_B))}.

    Raises:
        BadOrder: If α is outside (0, 1/2).
        BadCodeParams: If R + R_S = 0.
    """
    _check_alpha(alpha)
    if params.total_rate <= 0:
        raise BadCodeParams("The projector inequalities need R + R_S > 0")
    rho = _vub(source)
    product = product_reference(rho)
    pi = decision_projector(rho, params.total_rate)
    lhs1 = float((identity(pi.register) - pi).overlap(rho))
    lhs2 = float(2.0**params.total_rate * pi.overlap(product))
    nu1 = distinct_eigenvalue_count(product)
    d_minus = sandwiched_renyi(rho, product, 1 - alpha)
    rhs = 0.0 if d_minus == math.inf else _exp2(
        alpha * (math.log2(nu1) + params.total_rate - d_minus)
    )
    limit = rhs * (1 + LEMMA2_RTOL) + LEMMA2_ATOL
    return Lemma2Result(lhs1, lhs2, rhs, lhs1 <= limit and lhs2 <= limit)


def hayashi_nagaoka_check(s: Operand, t: Operand) -> tuple[float, bool]:
    """
    Slack of I − (S+T)^{−1/2} S (S+T)^{−1/2} ≤ 2(I − S) + 4T as a minimum eigenvalue.

    Raises:
        BadOperatorRange: Unless 0 ≤ S ≤ I and T ≥ 0 within 1e-9.
    """
    s, t = as_operator(s), as_operator(t)
    eye = identity(s.register)
    if min_eigenvalue(s) < -PSD_ATOL or min_eigenvalue(eye - s) < -PSD_ATOL:
        raise BadOperatorRange("S must satisfy 0 <= S <= I")
    if min_eigenvalue(t) < -PSD_ATOL:
        raise BadOperatorRange("T must be positive semidefinite")
    inv_root = psd_power(s + t, -0.5)
    lhs = eye - inv_root @ s @ inv_root
    rhs = 2 * (eye - s) + 4 * t
    slack = min_eigenvalue(rhs - lhs)
    return slack, slack >= -HN_ATOL
