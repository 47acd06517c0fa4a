# qadc/quantum/suites.py

"""
Randomized verification suites behind `qadc verify`.

Suite k in SUITE_ORDER draws its instances from `make_generator(seed, k)`, so a suite gives
the same result whether it runs alone or inside an aggregate. `scale` shrinks every case
count (never below one) for quick runs.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from qadc.quantum.divergences import fidelity, sandwiched_renyi
from qadc.quantum.harnesses import (
    alpha_convergence,
    data_processing_check,
    encoding_check,
    fidelity_divergence_check,
    gaps_shrinking,
    measurement_distance_check,
    pinching_check,
    uhlmann_check,
)
from qadc.quantum.library import designed_orthogonal_model, orthogonal_strategy
from qadc.quantum.linalg_core import (
    DensityMatrix,
    LabeledOperator,
    Register,
    tensor,
)
from qadc.quantum.model import ActionModel, Strategy
from qadc.quantum.oneshot import (
    CodeParams,
    ConditionalFamily,
    build_decoder,
    evaluate_error,
    hayashi_nagaoka_check,
    lemma1_check,
    lemma2_check,
    monte_carlo_expected_error,
    sample_codebook,
)
from qadc.quantum.rate_engine import assemble, cq_state
from qadc.quantum.sampling import (
    make_generator,
    random_channel,
    random_contraction,
    random_density,
    random_hermitian,
    random_psd,
    random_simplex,
    random_unitary,
)

logger = logging.getLogger(__name__)

SUITE_ORDER: tuple[str, ...] = (
    "pinching",
    "divergences",
    "hayashi-nagaoka",
    "lemma1",
    "lemma2",
    "uhlmann",
    "measurement",
    "proposition1",
)
AGGREGATES: dict[str, tuple[str, ...]] = {
    "lemmas": ("lemma1", "lemma2", "hayashi-nagaoka", "pinching"),
    "all": SUITE_ORDER,
}
SUITE_CHOICES: tuple[str, ...] = SUITE_ORDER + tuple(AGGREGATES)

RENYI_GRID = (0.3, 0.5, 0.8, 1.2, 2.0, 3.0)
DPI_ORDERS = (0.6, 1.5, 2.0)
NEAR_ONE_OFFSETS = (0.1, 0.01, 0.001)
ADDITIVITY_ORDER = 1.5
FIDELITY_ORDER = 0.25
DESIGNED_ERROR_LIMIT = 0.1


@dataclass
class SuiteResult:
    """
    Outcome of one suite.

    Attributes:
        name: Suite name.
        cases: Number of instances checked.
        failures: Descriptions of failing instances.
        worst: Worst value seen per tracked quantity.
    """

    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    worst: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def low(self, key: str, value: float) -> None:
        self.worst[key] = min(self.worst.get(key, math.inf), float(value))

    def high(self, key: str, value: float) -> None:
        self.worst[key] = max(self.worst.get(key, -math.inf), float(value))

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "cases": self.cases,
            "failures": list(self.failures),
            "worst": dict(self.worst),
        }


def _count(n: int, scale: float) -> int:
    return max(1, round(n * scale))


def _register(name: str, dim: int) -> Register:
    return Register.of((name, dim))


def _degenerate_hermitian(rng: np.random.Generator, register: Register) -> LabeledOperator:
    """Hermitian operator with eigenvalues drawn from {0, 1, 2}."""
    u = random_unitary(rng, register.dim)
    w = rng.integers(0, 3, register.dim).astype(float)
    return LabeledOperator(register, (u * w) @ u.conj().T)


def pinching_suite(rng: np.random.Generator, scale: float = 1.0) -> SuiteResult:
    result = SuiteResult("pinching")
    for i in range(_count(200, scale)):
        register = _register("X", int(rng.integers(2, 9)))
        a = _degenerate_hermitian(rng, register) if i % 2 else random_hermitian(rng, register)
        b = random_psd(rng, register)
        c = random_hermitian(rng, register)
        check = pinching_check(a, b, c)
        result.cases += 1
        result.low("inequality_slack", check.inequality_slack)
        result.high("commutator_norm", check.commutator_norm)
        result.high("self_adjoint_gap", check.self_adjoint_gap)
        if not check.passed:
            result.fail(f"case {i}: {check.to_dict()}")
    return result


def _diagonal(register: Register, p: np.ndarray) -> DensityMatrix:
    return DensityMatrix.from_matrix(register, np.diag(p))


def _full_support(rng: np.random.Generator, register: Register) -> DensityMatrix:
    """Random state mixed with 10% of the maximally mixed state."""
    m = 0.9 * random_density(rng, register).matrix + 0.1 * np.eye(register.dim) / register.dim
    return DensityMatrix.from_matrix(register, m)


def _renyi_oracle(p: np.ndarray, q: np.ndarray, alpha: float) -> float:
    return math.log2(float(np.sum(p**alpha * q ** (1 - alpha)))) / (alpha - 1)


def divergence_suite(rng: np.random.Generator, scale: float = 1.0) -> SuiteResult:
    result = SuiteResult("divergences")
    for i in range(_count(100, scale)):
        register = _register("X", int(rng.integers(2, 4)))
        rho, sigma = _full_support(rng, register), _full_support(rng, register)
        result.cases += 1

        half = abs(sandwiched_renyi(rho, sigma, 0.5) + 2 * math.log2(fidelity(rho, sigma)))
        result.high("half_order_gap", half)
        if half > 1e-8:
            result.fail(f"case {i}: order 1/2 differs from -2 log F by {half:.3e}")

        values = [sandwiched_renyi(rho, sigma, a) for a in RENYI_GRID]
        drop = max(values[k] - values[k + 1] for k in range(len(values) - 1))
        result.high("monotonicity_violation", drop)
        if drop > 1e-9:
            result.fail(f"case {i}: not monotone in the order (drop {drop:.3e})")

        other = _register("Y", register.dim)
        rho2, sigma2 = _full_support(rng, other), _full_support(rng, other)
        joint = sandwiched_renyi(tensor(rho, rho2), tensor(sigma, sigma2), ADDITIVITY_ORDER)
        parts = sandwiched_renyi(rho, sigma, ADDITIVITY_ORDER) + sandwiched_renyi(
            rho2, sigma2, ADDITIVITY_ORDER
        )
        result.high("additivity_gap", abs(joint - parts))
        if abs(joint - parts) > 1e-8:
            result.fail(f"case {i}: additivity gap {abs(joint - parts):.3e}")

        p, q = random_simplex(rng, register.dim), random_simplex(rng, register.dim)
        p_state, q_state = _diagonal(register, p), _diagonal(register, q)
        commuting = max(
            abs(sandwiched_renyi(p_state, q_state, a) - _renyi_oracle(p, q, a))
            for a in RENYI_GRID
        )
        result.high("commuting_gap", commuting)
        if commuting > 1e-9:
            result.fail(f"case {i}: commuting case differs by {commuting:.3e}")

        gaps = alpha_convergence(rho, sigma, NEAR_ONE_OFFSETS)
        near = max(gaps[-1].lower, gaps[-1].upper)
        result.high("near_one_gap", near)
        if near > 1e-2:
            result.fail(f"case {i}: order 1±{gaps[-1].alpha} differs from D by {near:.3e}")
        if not gaps_shrinking(gaps):
            result.fail(f"case {i}: gap to D grows as the order approaches 1")

        channel = random_channel(rng, register, _register("Y", int(rng.integers(2, 4))))
        dpi = [data_processing_check(rho, sigma, channel, a)[0] for a in DPI_ORDERS]
        result.high("dpi_violation", -min(dpi))
        if min(dpi) < -1e-8:
            result.fail(f"case {i}: a channel increased the divergence by {-min(dpi):.3e}")

        slack, ok = fidelity_divergence_check(rho, sigma, FIDELITY_ORDER)
        result.low("fidelity_slack", slack)
        if not ok:
            result.fail(f"case {i}: F^2 below 2^-D by {-slack:.3e}")
    return result


def hayashi_nagaoka_suite(rng: np.random.Generator, scale: float = 1.0) -> SuiteResult:
    result = SuiteResult("hayashi-nagaoka")
    for i in range(_count(500, scale)):
        register = _register("X", int(rng.integers(2, 9)))
        s = random_contraction(rng, register)
        rank = int(rng.integers(1, register.dim + 1))
        t = random_psd(rng, register, rank) * float(rng.uniform(0.0, 2.0))
        slack, ok = hayashi_nagaoka_check(s, t)
        result.cases += 1
        result.low("slack", slack)
        if not ok:
            result.fail(f"case {i}: slack {slack:.3e}")
    return result


def lemma1_suite(rng: np.random.Generator, scale: float = 1.0) -> SuiteResult:
    result = SuiteResult("lemma1")
    trials = _count(500, scale)
    qubit = _register("S", 2)
    for k in range(_count(10, scale)):
        family = ConditionalFamily.random(rng, 3, 2, qubit)
        u = int(np.argmax(family.p_u))
        for alpha in (0.1, 0.25):
            means = []
            for ell in (2, 4, 8):
                seed = int(rng.integers(2**63))
                check = lemma1_check(family, u, CodeParams(1, ell), alpha, trials, seed)
                result.cases += 1
                result.low("bound_slack", check.bound + 3 * check.stderr - check.empirical_mean)
                if not check.passed:
                    result.fail(f"family {k}, alpha {alpha}, L {ell}: {check.to_dict()}")
                means.append(check)
            for a, b in zip(means, means[1:], strict=False):
                rise = b.empirical_mean - a.empirical_mean
                result.high("mean_increase", rise)
                if rise > 3 * (a.stderr + b.stderr):
                    result.fail(f"family {k}, alpha {alpha}: mean grew from L={a.ell} to L={b.ell}")
    return result


def _random_bundle_state(rng: np.random.Generator) -> DensityMatrix:
    n_v, n_u = (int(x) for x in rng.integers(1, 4, size=2))
    p = random_simplex(rng, n_v * n_u).reshape(n_v, n_u)
    b = _register("B", int(rng.integers(2, 4)))
    blocks = [[random_density(rng, b) for _ in range(n_u)] for _ in range(n_v)]
    return cq_state(p, blocks)


def lemma2_suite(rng: np.random.Generator, scale: float = 1.0) -> SuiteResult:
    result = SuiteResult("lemma2")
    for k in range(_count(50, scale)):
        rho = _random_bundle_state(rng)
        for alpha in (0.1, 0.25, 0.4):
            for total in (1, 2, 3):
                check = lemma2_check(rho, CodeParams(2**total, 1), alpha)
                result.cases += 1
                denominator = max(check.rhs, 1e-300)
                result.low("relative_slack_1", (check.rhs - check.lhs1) / denominator)
                result.low("relative_slack_2", (check.rhs - check.lhs2) / denominator)
                if not check.passed:
                    result.fail(f"bundle {k}, alpha {alpha}, R+R_S {total}: {check.to_dict()}")
    return result


def _random_qubit_model(rng: np.random.Generator) -> ActionModel:
    g, s, s0 = _register("G", 2), _register("S", 2), _register("S0", 2)
    a, b = _register("A", 2), _register("B", 2)
    return ActionModel(
        random_channel(rng, g, s + s0), random_channel(rng, s + a, b), name="random-qubit"
    )


def _random_qubit_strategy(rng: np.random.Generator, model: ActionModel, n_v: int) -> Strategy:
    encoders = tuple(
        random_channel(rng, model.s0_register, model.a_register) for _ in range(n_v)
    )
    state = random_density(rng, model.g_register)
    return Strategy(random_simplex(rng, n_v).reshape(n_v, 1), (state,), encoders)


def uhlmann_suite(rng: np.random.Generator, scale: float = 1.0) -> SuiteResult:
    result = SuiteResult("uhlmann")
    for i in range(_count(100, scale)):
        register = _register("X", int(rng.integers(2, 5)))
        gap, ok = uhlmann_check(random_density(rng, register), random_density(rng, register))
        result.cases += 1
        result.high("fidelity_gap", gap)
        if not ok:
            result.fail(f"pair {i}: achieved overlap misses F by {gap:.3e}")

    for i in range(_count(20, scale)):
        model = _random_qubit_model(rng)
        strat = _random_qubit_strategy(rng, model, 2)
        ell = int(rng.integers(1, 3))
        gap, ok = encoding_check(
            model.action_channel, strat.action_states[0], strat.encoders[:ell]
        )
        result.cases += 1
        result.high("encoding_gap", gap)
        if not ok:
            result.fail(f"encoding {i}: purified distance gap {gap:.3e}")

    params = CodeParams(2, 2)
    for i in range(_count(10, scale)):
        model = _random_qubit_model(rng)
        strat = _random_qubit_strategy(rng, model, 2)
        bundle = assemble(model, strat)
        cb = sample_codebook(bundle, params, int(rng.integers(2**63)))
        decoder = build_decoder(bundle, cb, params)
        ideal = evaluate_error(model, strat, cb, decoder, "ideal_average", bundle, alpha_grid=())
        exact = evaluate_error(model, strat, cb, decoder, "exact_uhlmann", bundle, alpha_grid=())
        gap = abs(ideal.avg_error_exact - exact.avg_error_exact)
        allowed = 2 * ideal.purified_distance_term + 1e-6
        result.cases += 1
        result.high("mode_gap", gap)
        if gap > allowed:
            result.fail(f"instance {i}: mode gap {gap:.3e} exceeds {allowed:.3e}")
    return result


def measurement_suite(rng: np.random.Generator, scale: float = 1.0) -> SuiteResult:
    result = SuiteResult("measurement")
    for i in range(_count(100, scale)):
        register = _register("X", int(rng.integers(2, 7)))
        rank = int(rng.integers(1, register.dim + 1))
        rho = random_density(rng, register, rank)
        sigma = random_density(rng, register)
        slack, ok = measurement_distance_check(rho, sigma, random_contraction(rng, register))
        result.cases += 1
        result.low("slack", slack)
        if not ok:
            result.fail(f"case {i}: slack {slack:.3e}")
    return result


def proposition1_suite(rng: np.random.Generator, scale: float = 1.0) -> SuiteResult:
    result = SuiteResult("proposition1")
    model = designed_orthogonal_model()
    strat = orthogonal_strategy(model)
    params = CodeParams(2, 2)
    trials = _count(200, scale)
    for k in range(_count(10, scale)):
        master = int(rng.integers(2**32))
        report = monte_carlo_expected_error(model, strat, params, trials, master)
        result.cases += 1
        result.high("mean_error", report.mean_error)
        result.low("bound_rhs_min", report.bound_rhs_min)
        if not report.bound_holds:
            result.fail(f"seed {master}: mean + correction exceeds the bound")
        if report.mean_error > DESIGNED_ERROR_LIMIT:
            result.fail(f"seed {master}: mean error {report.mean_error:.6g} above 0.1")
    return result


SUITES: dict[str, Callable[[np.random.Generator, float], SuiteResult]] = {
    "pinching": pinching_suite,
    "divergences": divergence_suite,
    "hayashi-nagaoka": hayashi_nagaoka_suite,
    "lemma1": lemma1_suite,
    "lemma2": lemma2_suite,
    "uhlmann": uhlmann_suite,
    "measurement": measurement_suite,
    "proposition1": proposition1_suite,
}


def expand_suites(name: str) -> tuple[str, ...]:
    """Suite names behind a suite or aggregate name, in SUITE_ORDER."""
    if name in AGGREGATES:
        members = set(AGGREGATES[name])
        return tuple(s for s in SUITE_ORDER if s in members)
    if name not in SUITES:
        raise KeyError(f"Unknown suite '{name}'")
    return (name,)


def run_suite(name: str, seed: int, scale: float = 1.0) -> SuiteResult:
    """Run one suite with its own generator stream."""
    rng = make_generator(seed, SUITE_ORDER.index(name))
    logger.info("Running suite %s (seed %d, scale %g)", name, seed, scale)
    result = SUITES[name](rng, scale)
    logger.info(
        "Suite %s: %d cases, %d failures", name, result.cases, len(result.failures)
    )
    return result


def run_suites(name: str, seed: int, scale: float = 1.0) -> list[SuiteResult]:
    return [run_suite(s, seed, scale) for s in expand_suites(name)]
