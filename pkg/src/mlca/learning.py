"""Per-cell learning automaton, encoded as a LEARNING voltage.

Each cell chooses between two neighborhood actions. The choice probability
is not stored as a number: it is the probability that the cell's selector
memristor switches under a set pulse of amplitude ``v_learn``. Reinforcement
moves ``v_learn`` up or down by a fixed increment inside a clamped window,
which moves the action probability along the Gaussian threshold CDF.
"""

from dataclasses import dataclass, replace
from enum import IntEnum

from .device import MemristorDevice


class Action(IntEnum):
    """Neighborhood selection: the selector memristor On means Moore."""

    VON_NEUMANN = 0
    MOORE = 1


class Reinforcement(IntEnum):
    NEUTRAL = 0
    REWARD_MOORE = 1
    REWARD_VON_NEUMANN = 2


@dataclass(frozen=True)
class LearningState:
    """Learning voltage plus its update parameters.

    The window [v_min, v_max] must be strictly positive: v_learn is applied
    as a set-direction pulse amplitude. Defaults center the window on the
    default device's set threshold mean (neutral => probability 0.5) and
    span +-3 sigma, so 12 reward steps traverse neutral to saturation.
    """

    v_learn: float = 1.0
    v_neutral: float = 1.0
    delta_v: float = 0.025
    v_min: float = 0.7
    v_max: float = 1.3

    def __post_init__(self):
        if self.delta_v <= 0:
            raise ValueError(f"delta_v must be positive, got {self.delta_v}")
        if not 0 < self.v_min <= self.v_max:
            raise ValueError(
                f"need 0 < v_min <= v_max, got [{self.v_min}, {self.v_max}]"
            )
        if not self.v_min <= self.v_neutral <= self.v_max:
            raise ValueError(f"v_neutral {self.v_neutral} outside the clamp window")
        if not self.v_min <= self.v_learn <= self.v_max:
            raise ValueError(f"v_learn {self.v_learn} outside the clamp window")


def update_learning_voltage(
    state: LearningState,
    signal: Reinforcement,
    neutral_decay: bool = False,
) -> LearningState:
    """One reinforcement update; returns a new state, clamped to the window.

    Rewarding Moore raises v_learn by delta_v, rewarding von Neumann lowers
    it, neutral holds. With ``neutral_decay`` a neutral signal instead
    relaxes v_learn toward v_neutral by at most delta_v (optional treatment
    of a mixed-action neighborhood).
    """
    if signal is Reinforcement.REWARD_MOORE:
        v = min(state.v_learn + state.delta_v, state.v_max)
    elif signal is Reinforcement.REWARD_VON_NEUMANN:
        v = max(state.v_learn - state.delta_v, state.v_min)
    elif neutral_decay:
        if state.v_learn > state.v_neutral:
            v = max(state.v_learn - state.delta_v, state.v_neutral)
        else:
            v = min(state.v_learn + state.delta_v, state.v_neutral)
    else:
        v = state.v_learn
    return replace(state, v_learn=v)


def action_probability(state: LearningState, m1: MemristorDevice) -> float:
    """Probability of selecting Moore this step: the chance that a set pulse
    of amplitude v_learn switches the selector memristor On."""
    return m1.switching_probability(state.v_learn)
