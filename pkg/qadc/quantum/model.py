# qadc/quantum/model.py

"""
Action-dependent channel models and coding strategies.

An `ActionModel` holds the action channel T: G → S ⊗ S0 and the communication channel
N: S ⊗ A → B. A `Strategy` fixes the classical auxiliary distribution p(v, u), one action
state per u and one encoder S0 → A per v. Subsystem names G, S, S0, A, B, V and U are fixed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qadc.core.errors import BadDistribution, InvalidStrategy, RegisterMismatch
from qadc.quantum.channels import KrausChannel
from qadc.quantum.linalg_core import DensityMatrix, Register

PROBABILITY_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class ActionModel:
    """
    Action channel and communication channel of an action-dependent channel.

    Attributes:
        action_channel: T: G → S ⊗ S0.
        comm_channel: N: S ⊗ A → B.
        name: Short identifier.
        description: Free text carried into reports.
    """

    action_channel: KrausChannel
    comm_channel: KrausChannel
    name: str = "model"
    description: str = ""

    def __post_init__(self):
        if self.action_channel.input_register.names != ("G",):
            raise RegisterMismatch("Action channel input must be the single subsystem G")
        if sorted(self.action_channel.output_register.names) != ["S", "S0"]:
            raise RegisterMismatch("Action channel output must be {S, S0}")
        if sorted(self.comm_channel.input_register.names) != ["A", "S"]:
            raise RegisterMismatch("Communication channel input must be {S, A}")
        if self.comm_channel.output_register.names != ("B",):
            raise RegisterMismatch("Communication channel output must be the single subsystem B")
        d_action = self.action_channel.output_register.dim_of("S")
        d_comm = self.comm_channel.input_register.dim_of("S")
        if d_action != d_comm:
            raise RegisterMismatch(f"S has dimension {d_action} in T but {d_comm} in N")

    def _sub(self, name: str) -> Register:
        if name == "G":
            return self.action_channel.input_register
        if name in ("S", "S0"):
            return Register.of((name, self.action_channel.output_register.dim_of(name)))
        if name == "A":
            return Register.of(("A", self.comm_channel.input_register.dim_of("A")))
        return self.comm_channel.output_register

    @property
    def g_register(self) -> Register:
        return self._sub("G")

    @property
    def s_register(self) -> Register:
        return self._sub("S")

    @property
    def s0_register(self) -> Register:
        return self._sub("S0")

    @property
    def a_register(self) -> Register:
        return self._sub("A")

    @property
    def b_register(self) -> Register:
        return self._sub("B")


@dataclass(frozen=True, eq=False)
class Strategy:
    """
    Classical auxiliary distribution, action states and encoders.

    Attributes:
        p_vu: Probability table of shape (|V|, |U|).
        action_states: σ_G^u for u = 0..|U|−1.
        encoders: F^v: S0 → A for v = 0..|V|−1.
    """

    p_vu: np.ndarray
    action_states: tuple[DensityMatrix, ...]
    encoders: tuple[KrausChannel, ...]

    def __post_init__(self):
        p = np.array(self.p_vu, dtype=float)
        if p.ndim != 2 or p.size == 0:
            raise BadDistribution(f"p_vu must be a nonempty |V|x|U| table, got shape {p.shape}")
        if np.any(p < 0):
            raise BadDistribution("p_vu has negative entries")
        total = float(p.sum())
        if abs(total - 1.0) > PROBABILITY_ATOL:
            raise BadDistribution(f"p_vu sums to {total:.15g}, expected 1")
        p.setflags(write=False)
        object.__setattr__(self, "p_vu", p)
        object.__setattr__(self, "action_states", tuple(self.action_states))
        object.__setattr__(self, "encoders", tuple(self.encoders))
        n_v, n_u = p.shape
        if len(self.action_states) != n_u:
            raise InvalidStrategy(f"Expected {n_u} action states, got {len(self.action_states)}")
        if len(self.encoders) != n_v:
            raise InvalidStrategy(f"Expected {n_v} encoders, got {len(self.encoders)}")
        if any(s.register != self.action_states[0].register for s in self.action_states):
            raise InvalidStrategy("Action states must share one register")
        first = self.encoders[0]
        for enc in self.encoders:
            if (enc.input_register, enc.output_register) != (
                first.input_register,
                first.output_register,
            ):
                raise InvalidStrategy("Encoders must share input and output registers")

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
        """Conditional p(v|u); raises BadDistribution when p(u) = 0."""
        mass = float(self.p_u[u])
        if mass <= 0:
            raise BadDistribution(f"p_U({u}) = 0, conditional distribution undefined")
        return self.p_vu[:, u] / mass


def check_compatible(model: ActionModel, strat: Strategy) -> None:
    """Raise RegisterMismatch unless the strategy's registers fit the model."""
    if strat.action_states[0].register != model.g_register:
        raise RegisterMismatch(
            f"Action states act on {strat.action_states[0].register.subsystems}, "
            f"model expects {model.g_register.subsystems}"
        )
    enc = strat.encoders[0]
    if enc.input_register != model.s0_register or enc.output_register != model.a_register:
        raise RegisterMismatch(
            f"Encoders map {enc.input_register.subsystems} -> {enc.output_register.subsystems}, "
            f"model expects {model.s0_register.subsystems} -> {model.a_register.subsystems}"
        )
