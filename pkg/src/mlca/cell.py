"""One lattice cell: action selection, analog rule evaluation, state storage.

A timestep has two phases. During the write phase the cell re-arms its
selector memristor (reset, then a set pulse at the learning voltage), which
picks the neighborhood stochastically; the neighbor voltages are then
averaged resistively at the rule node, and the state memristor stores the
edge decision. During the read phase a sub-threshold pulse reads the state
memristor and the resulting level is latched on the output node for the
whole next write phase (ideal-hold abstraction of the output RC pair).

The resistive average implements the rule in analog: with the selector On,
the orthogonal and diagonal 4-input branches weigh equally (Moore); with it
Off, the diagonal branch is attenuated by r_on/r_off and contributes
negligibly (von Neumann). Keeping r_on/r_off below 1/9 guarantees the
averaged voltage separates "some neighbor low" from "all neighbors high" at
the 0.9 * v_high decision threshold.
"""

from dataclasses import dataclass

import numpy as np

from .device import MemristorDevice, ResistiveState
from .learning import Action, LearningState

# Rule/threshold separation bound on r_on/r_off (1/(1 + ratio) > 0.9).
MAX_RESISTANCE_RATIO = 1.0 / 9.0


@dataclass
class PhaseTiming:
    """Read-pulse parameters: duty fraction of the step and amplitude."""

    step_duration: float = 1e-3
    read_fraction: float = 0.1
    read_voltage: float = 0.3

    def __post_init__(self):
        if self.step_duration <= 0:
            raise ValueError("step_duration must be positive")
        if not 0 < self.read_fraction < 1:
            raise ValueError(
                f"read_fraction must lie in (0, 1), got {self.read_fraction}"
            )

    @property
    def write_duration(self) -> float:
        return self.step_duration * (1.0 - self.read_fraction)


@dataclass
class MillmanConfig:
    """Resistive-averaging node configuration.

    edge_threshold defaults to 0.9 * v_high, the gate that disables writing
    when every selected neighbor is high.
    """

    branch_resistance: float = 10e3
    v_high: float = 1.0
    edge_threshold: float | None = None

    def __post_init__(self):
        if self.branch_resistance <= 0:
            raise ValueError("branch_resistance must be positive")
        if self.v_high <= 0:
            raise ValueError("v_high must be positive")
        if self.edge_threshold is None:
            self.edge_threshold = 0.9 * self.v_high
        if not 0 < self.edge_threshold < self.v_high:
            raise ValueError(
                f"edge_threshold must lie in (0, v_high), got {self.edge_threshold}"
            )


@dataclass
class NeighborInputs:
    """Voltage levels seen on the 8 neighbor branches; absent neighbors are 0 V."""

    orthogonal: tuple  # (N, E, S, W)
    diagonal: tuple  # (NE, NW, SE, SW)


@dataclass
class CellRecord:
    """Everything one cell owns: both memristors, its learning state, the
    pixel input, and the held output level."""

    m1: MemristorDevice  # neighborhood selector
    m2: MemristorDevice  # edge-state storage
    learning: LearningState
    pixel: int
    output_level: float = 0.0


def check_separation(cfg: MillmanConfig, m1: MemristorDevice) -> None:
    """Reject device/threshold combinations that break the analog/digital
    rule equivalence.

    Requires r_on/r_off < 1/9 and an edge threshold inside
    [7/8 * v_high, v_high / (1 + ratio)): below that window a single low
    Moore neighbor would not register, above it an all-high von Neumann
    neighborhood would falsely register as an edge.
    """
    ratio = m1.r_on / m1.r_off
    if ratio >= MAX_RESISTANCE_RATIO:
        raise ValueError(
            f"r_on/r_off = {ratio:.4g} breaks rule separation (must be < 1/9)"
        )
    lo = 0.875 * cfg.v_high
    hi = cfg.v_high / (1.0 + ratio)
    if not lo <= cfg.edge_threshold < hi:
        raise ValueError(
            f"edge_threshold {cfg.edge_threshold} outside the separation "
            f"window [{lo}, {hi}) for r_on/r_off = {ratio:.4g}"
        )


def select_neighborhood(cell: CellRecord, rng: np.random.Generator) -> Action:
    """Re-arm the selector and draw this step's action.

    The selector is first driven Off by a saturated reset pulse, then hit
    with a set pulse at the learning voltage. Because the reset re-arms the
    device every step, the outcome is an independent Bernoulli draw with
    probability Phi((v_learn - mean) / sigma). Consumes exactly two
    threshold samples from the stream.
    """
    cell.m1.apply_write_pulse(cell.m1.saturated_reset_amplitude(), rng)
    cell.m1.apply_write_pulse(cell.learning.v_learn, rng)
    if cell.m1.state is ResistiveState.ON:
        return Action.MOORE
    return Action.VON_NEUMANN


def millman_voltage(
    inputs: NeighborInputs,
    action: Action,
    cfg: MillmanConfig,
    m1: MemristorDevice,
) -> float:
    """Conductance-weighted mean of the neighbor voltages at the rule node.

    Moore: both 4-input branches contribute equally (the selector's r_on is
    folded into the branch resistance). Von Neumann: the diagonal branch
    conductance is scaled by r_on/r_off, making its contribution negligible.
    """
    g_o = 1.0 / cfg.branch_resistance
    if action is Action.MOORE:
        g_d = g_o
    else:
        g_d = g_o * (m1.r_on / m1.r_off)
    total = g_o * sum(inputs.orthogonal) + g_d * sum(inputs.diagonal)
    return total / (4.0 * g_o + 4.0 * g_d)


def write_state(cell: CellRecord, v_m: float, cfg: MillmanConfig) -> CellRecord:
    """Store this step's edge decision on the state memristor.

    The cell is written as an edge only when its own pixel is high and the
    averaged neighbor voltage stays at or below the threshold (some selected
    neighbor is low). A rule voltage above the threshold opens the write
    gate instead, and a low pixel never writes an edge. The write pulses are
    saturated, so storage is deterministic; only the selector is stochastic.
    """
    edge = cell.pixel == 1 and v_m <= cfg.edge_threshold
    cell.m2.write_saturated(ResistiveState.ON if edge else ResistiveState.OFF)
    return cell


def read_output(cell: CellRecord, cfg: MillmanConfig, timing: PhaseTiming) -> float:
    """Read the stored state non-destructively and latch the output level.

    Returns v_high for a stored edge and 0 V otherwise; the level stays on
    the output node for the following write phase.
    """
    resistance = cell.m2.read_resistance(timing.read_voltage)
    cell.output_level = cfg.v_high if resistance == cell.m2.r_on else 0.0
    return cell.output_level
