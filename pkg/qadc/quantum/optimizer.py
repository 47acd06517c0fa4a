# qadc/quantum/optimizer.py

"""
Derivative-free search for strategies with a large achievable rate.

Each restart runs a pattern search in the style of Hooke and Jeeves over three parameter
blocks: the auxiliary distribution p(v, u) (moves along e_i − e_j, projected back onto the
simplex), one purification matrix per action state (σ_G^u = X X† / Tr, perturbed on the unit
sphere) and one Stinespring isometry per encoder (perturbed, then made isometric again by the
polar decomposition). A block's step grows by 1.25 after an accepted move and shrinks by 0.8
after a rejected one; after every sweep the accepted moves are replayed once as a pattern move.

Restart r draws its randomness from `make_generator(seed, r)`, so results do not depend on
the number of workers. Restart 0 starts from the cyclic-shift strategy (uniform p, basis
action states, encoders shifting S0 by v) before any random perturbation.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.linalg

from qadc.core.errors import RegisterMismatch
from qadc.quantum.channels import KrausChannel
from qadc.quantum.linalg_core import DensityMatrix
from qadc.quantum.model import ActionModel, Strategy
from qadc.quantum.rate_engine import RateReport, achievable_rate, assemble, strategy_rate
from qadc.quantum.sampling import ginibre, make_generator, random_isometry

logger = logging.getLogger(__name__)

GROW = 1.25
SHRINK = 0.8


@dataclass(frozen=True)
class OptimizerConfig:
    """
    Search budget and seeding.

    Attributes:
        restarts: Number of independent restarts.
        iterations: Sweeps per restart.
        seed: Master seed.
        workers: Processes used for restarts; does not affect results.
        initial_step: Starting step of every block.
        min_step: A restart stops once every block's step is below this.
    """

    restarts: int = 16
    iterations: int = 200
    seed: int = 0
    workers: int = 1
    initial_step: float = 0.5
    min_step: float = 1e-4


def default_aux_dims(model: ActionModel) -> tuple[int, int]:
    """|V| = |U| = d_S · d_A (a heuristic ceiling, no cardinality bound is known)."""
    d = model.s_register.dim * model.a_register.dim
    return d, d


@dataclass
class _Point:
    p: np.ndarray
    states: list[np.ndarray]
    isometries: list[np.ndarray]

    def copy(self) -> _Point:
        return _Point(
            self.p.copy(), [x.copy() for x in self.states], [w.copy() for w in self.isometries]
        )


@dataclass(frozen=True)
class RestartResult:
    index: int
    value: float
    history: tuple[float, ...]
    point: _Point = field(repr=False)


@dataclass(frozen=True, eq=False)
class OptimizationResult:
    """
    Outcome of `optimize_rate_detailed`.

    Attributes:
        strategy: Best strategy found.
        report: Its rate, recomputed from the assembled joint states.
        best_restart: Index of the restart that produced it (lowest index on ties).
        restart_values: Best objective per restart.
        history: Best-so-far value after each sweep of the winning restart.
    """

    strategy: Strategy
    report: RateReport
    best_restart: int
    restart_values: tuple[float, ...]
    history: tuple[float, ...]


class _Problem:
    """Parametrization of strategies for one model and auxiliary sizes."""

    def __init__(self, model: ActionModel, n_v: int, n_u: int):
        self.model = model
        self.n_v, self.n_u = n_v, n_u
        self.d_g = model.g_register.dim
        self.d_s0 = model.s0_register.dim
        self.d_a = model.a_register.dim
        self.d_t = self.d_a * self.d_s0

    def strategy(self, x: _Point) -> Strategy:
        states = []
        for m in x.states:
            rho = m @ m.conj().T
            rho = rho / np.trace(rho).real
            states.append(DensityMatrix.from_matrix(self.model.g_register, rho))
        encoders = []
        for w in x.isometries:
            blocks = w.reshape(self.d_a, self.d_t, self.d_s0)
            encoders.append(
                KrausChannel(
                    self.model.s0_register,
                    self.model.a_register,
                    tuple(blocks[:, j, :] for j in range(self.d_t)),
                )
            )
        return Strategy(x.p, tuple(states), tuple(encoders))

    def value(self, x: _Point) -> float:
        i_vub, i_vs_u = strategy_rate(self.model, self.strategy(x))
        return i_vub - i_vs_u

    def shift_point(self) -> _Point:
        states = []
        for u in range(self.n_u):
            m = np.zeros((self.d_g, self.d_g), dtype=complex)
            m[u % self.d_g, 0] = 1.0
            states.append(m)
        isometries = []
        for v in range(self.n_v):
            w = np.zeros((self.d_a * self.d_t, self.d_s0), dtype=complex)
            for i in range(self.d_s0):
                out, env = (i + v) % self.d_a, i // self.d_a
                w[out * self.d_t + env, i] = 1.0
            isometries.append(w)
        p = np.full((self.n_v, self.n_u), 1.0 / (self.n_v * self.n_u))
        return _Point(p, states, isometries)

    def random_point(self, rng: np.random.Generator) -> _Point:
        p = rng.dirichlet(np.ones(self.n_v * self.n_u)).reshape(self.n_v, self.n_u)
        states = []
        for _ in range(self.n_u):
            m = ginibre(rng, self.d_g, self.d_g)
            states.append(m / np.linalg.norm(m))
        isometries = [
            random_isometry(rng, self.d_a * self.d_t, self.d_s0) for _ in range(self.n_v)
        ]
        return _Point(p, states, isometries)

    @property
    def blocks(self) -> list[tuple[str, int]]:
        return (
            [("p", 0)]
            + [("state", u) for u in range(self.n_u)]
            + [("encoder", v) for v in range(self.n_v)]
        )

    def propose(
        self, x: _Point, block: tuple[str, int], step: float, rng: np.random.Generator
    ) -> tuple[_Point, np.ndarray]:
        """Perturb one block; returns the new point and the move taken."""
        kind, k = block
        y = x.copy()
        if kind == "p":
            flat = y.p.reshape(-1)
            if flat.size < 2:
                return y, np.zeros_like(flat)
            i, j = rng.choice(flat.size, size=2, replace=False)
            move = np.zeros_like(flat)
            move[i], move[j] = step, -step
            if rng.random() < 0.5:
                move = -move
            y.p = _project_simplex(flat + move).reshape(y.p.shape)
            return y, y.p.reshape(-1) - flat
        if kind == "state":
            old = y.states[k]
            new = old + step * ginibre(rng, *old.shape)
            y.states[k] = new / np.linalg.norm(new)
            return y, y.states[k] - old
        old = y.isometries[k]
        y.isometries[k] = scipy.linalg.polar(old + step * ginibre(rng, *old.shape))[0]
        return y, y.isometries[k] - old

    def replay(self, x: _Point, moves: dict[tuple[str, int], np.ndarray]) -> _Point:
        y = x.copy()
        for (kind, k), move in moves.items():
            if kind == "p":
                y.p = _project_simplex(y.p.reshape(-1) + move).reshape(y.p.shape)
            elif kind == "state":
                new = y.states[k] + move
                y.states[k] = new / np.linalg.norm(new)
            else:
                y.isometries[k] = scipy.linalg.polar(y.isometries[k] + move)[0]
        return y


def _project_simplex(p: np.ndarray) -> np.ndarray:
    q = np.clip(p, 0.0, None)
    total = q.sum()
    return q / total if total > 0 else np.full_like(p, 1.0 / p.size)


def _run_restart(
    model: ActionModel, n_v: int, n_u: int, config: OptimizerConfig, index: int
) -> RestartResult:
    problem = _Problem(model, n_v, n_u)
    rng = make_generator(config.seed, index)
    x = problem.shift_point() if index == 0 else problem.random_point(rng)
    best = problem.value(x)
    steps = {b: config.initial_step for b in problem.blocks}
    history = []
    for it in range(config.iterations):
        moves = {}
        for block in problem.blocks:
            y, move = problem.propose(x, block, steps[block], rng)
            value = problem.value(y)
            if value > best:
                x, best = y, value
                moves[block] = move
                steps[block] *= GROW
            else:
                steps[block] *= SHRINK
        if moves:
            y = problem.replay(x, moves)
            value = problem.value(y)
            if value > best:
                x, best = y, value
        history.append(best)
        logger.debug("restart %d sweep %d best %.12g", index, it, best)
        if max(steps.values()) < config.min_step:
            break
    return RestartResult(index, best, tuple(history), x)


def optimize_rate_detailed(
    model: ActionModel,
    aux_dims: tuple[int, int] | None = None,
    config: OptimizerConfig | None = None,
) -> OptimizationResult:
    """
    Search strategies with the given auxiliary sizes for the largest R_low.

    The result is a lower bound on the maximization, with no global guarantee.

    Raises:
        RegisterMismatch: If an auxiliary size is below 1.
    """
    config = config or OptimizerConfig()
    n_v, n_u = aux_dims or default_aux_dims(model)
    if n_v < 1 or n_u < 1:
        raise RegisterMismatch(f"Auxiliary dimensions must be at least 1, got ({n_v}, {n_u})")
    if config.restarts < 1:
        config = replace(config, restarts=1)
    indices = range(config.restarts)
    logger.info(
        "Optimizing %s with |V|=%d |U|=%d, %d restarts x %d sweeps",
        model.name,
        n_v,
        n_u,
        config.restarts,
        config.iterations,
    )
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(
                pool.map(
                    _run_restart,
                    [model] * len(indices),
                    [n_v] * len(indices),
                    [n_u] * len(indices),
                    [config] * len(indices),
                    indices,
                )
            )
    else:
        results = [_run_restart(model, n_v, n_u, config, i) for i in indices]
    winner = max(results, key=lambda r: (r.value, -r.index))
    strategy = _Problem(model, n_v, n_u).strategy(winner.point)
    report = achievable_rate(assemble(model, strategy))
    return OptimizationResult(
        strategy=strategy,
        report=report,
        best_restart=winner.index,
        restart_values=tuple(r.value for r in results),
        history=winner.history,
    )


def optimize_rate(
    model: ActionModel,
    aux_dims: tuple[int, int] | None = None,
    config: OptimizerConfig | None = None,
) -> tuple[Strategy, RateReport]:
    """Best strategy found and its rate report."""
    result = optimize_rate_detailed(model, aux_dims, config)
    return result.strategy, result.report
