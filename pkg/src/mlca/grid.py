"""Synchronous 2-D lattice engine.

Every timestep runs three barrier-separated phases over all cells:

1. write  - each cell re-arms its selector (stochastic action draw),
            averages its neighbor voltages, and stores the edge decision;
2. read   - each cell reads its state memristor and latches the output;
3. learn  - each cell's learning voltage is updated, either from the
            consensus of its neighborhood's actions or from a forced
            reinforcement override.

All cells observe pre-step neighbor levels, so evaluation order within a
phase is irrelevant: randomness comes from per-(step, row, col) substreams,
and results land in index-addressed arrays. Sequential and thread-pool
execution produce bit-identical traces.

Out-of-grid neighbors are grounded (0 V), which makes border pixels of
value 1 unconditional edges. By default the original image is re-presented
as the neighbor input every step; a feedback mode that transmits the
previous step's held outputs instead is available for recurrent operation.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .cell import (
    CellRecord,
    MillmanConfig,
    NeighborInputs,
    PhaseTiming,
    check_separation,
    millman_voltage,
    read_output,
    select_neighborhood,
    write_state,
)
from .device import MemristorDevice, ResistiveState
from .learning import Action, LearningState, Reinforcement, update_learning_voltage
from .streams import StreamFactory

# (row, col) offsets in the order stored by NeighborInputs.
ORTHOGONAL_OFFSETS = ((-1, 0), (0, 1), (1, 0), (0, -1))  # N, E, S, W
DIAGONAL_OFFSETS = ((-1, 1), (-1, -1), (1, 1), (1, -1))  # NE, NW, SE, SW


class FeedbackMode(Enum):
    INITIAL_IMAGE = "initial_image"
    PREVIOUS_OUTPUT = "previous_output"


@dataclass
class StepTrace:
    """Per-step record of what every cell did.

    actions and edge_map are uint8 grids (1 = Moore / edge); v_learn_map
    holds each cell's learning voltage after this step's reinforcement;
    reinforcement_map holds Reinforcement codes.
    """

    step_index: int
    actions: np.ndarray
    edge_map: np.ndarray
    v_learn_map: np.ndarray
    reinforcement_map: np.ndarray


def compute_reinforcement(actions: np.ndarray, i: int, j: int) -> Reinforcement:
    """Consensus signal for cell (i, j) from its in-grid Moore neighborhood.

    Unanimous Moore rewards Moore, unanimous von Neumann rewards von
    Neumann, anything mixed is neutral.
    """
    h, w = actions.shape
    if not (0 <= i < h and 0 <= j < w):
        raise IndexError(f"cell ({i}, {j}) outside {h}x{w} grid")
    window = actions[max(0, i - 1) : i + 2, max(0, j - 1) : j + 2]
    if (window == Action.MOORE).all():
        return Reinforcement.REWARD_MOORE
    if (window == Action.VON_NEUMANN).all():
        return Reinforcement.REWARD_VON_NEUMANN
    return Reinforcement.NEUTRAL


class GridState:
    """Lattice of cells bound to one input image.

    The device, timing, rule, and learning arguments are templates; every
    cell receives its own copy. Cell (i, j) corresponds to image row i,
    column j.
    """

    def __init__(
        self,
        image,
        *,
        millman: MillmanConfig | None = None,
        timing: PhaseTiming | None = None,
        m1: MemristorDevice | None = None,
        m2: MemristorDevice | None = None,
        learning: LearningState | None = None,
        feedback_mode: FeedbackMode = FeedbackMode.INITIAL_IMAGE,
        mixed_decay: bool = False,
    ):
        pixels = np.asarray(getattr(image, "pixels", image))
        if pixels.ndim != 2 or pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError(f"image must be a non-empty 2-D array, got shape {pixels.shape}")
        if not np.isin(pixels, (0, 1)).all():
            raise ValueError("image pixels must be strictly binary")
        self.image = pixels.astype(np.uint8)
        self.millman = millman if millman is not None else MillmanConfig()
        self.timing = timing if timing is not None else PhaseTiming()
        self.feedback_mode = feedback_mode
        self.mixed_decay = mixed_decay

        m1 = m1 if m1 is not None else MemristorDevice()
        m2 = m2 if m2 is not None else MemristorDevice()
        learning = learning if learning is not None else LearningState()
        check_separation(self.millman, m1)
        if abs(self.timing.read_voltage) >= m2.read_margin():
            raise ValueError(
                f"read voltage {self.timing.read_voltage} V is destructive for "
                f"the state memristor (margin {m2.read_margin()} V)"
            )

        h, w = self.image.shape
        self.cells = [
            [
                CellRecord(
                    m1=replace(m1),
                    m2=replace(m2),
                    learning=replace(learning),
                    pixel=int(self.image[i, j]),
                    output_level=float(self.image[i, j]) * self.millman.v_high,
                )
                for j in range(w)
            ]
            for i in range(h)
        ]
        # Neighbor levels seen by the write phase; refreshed by the read phase.
        self._levels = self.image.astype(np.float64) * self.millman.v_high
        self._step_index = 0

    @property
    def height(self) -> int:
        return self.image.shape[0]

    @property
    def width(self) -> int:
        return self.image.shape[1]

    @property
    def step_index(self) -> int:
        """Index the next call to :meth:`step` will carry."""
        return self._step_index

    def edge_map(self) -> np.ndarray:
        """Current stored edge states (1 = edge)."""
        return np.array(
            [
                [int(c.m2.state is ResistiveState.ON) for c in row]
                for row in self.cells
            ],
            dtype=np.uint8,
        )

    def gather_inputs(self, i: int, j: int) -> NeighborInputs:
        """Neighbor voltage levels for cell (i, j); out-of-grid rows/cols
        contribute the grounded 0 V."""
        h, w = self.image.shape
        if not (0 <= i < h and 0 <= j < w):
            raise IndexError(f"cell ({i}, {j}) outside {h}x{w} grid")
        if self.feedback_mode is FeedbackMode.INITIAL_IMAGE:
            source = self.image  # re-present the image, scaled below
            scale = self.millman.v_high
        else:
            source = self._levels
            scale = 1.0

        def level(di, dj):
            ni, nj = i + di, j + dj
            if 0 <= ni < h and 0 <= nj < w:
                return float(source[ni, nj]) * scale
            return 0.0

        return NeighborInputs(
            orthogonal=tuple(level(di, dj) for di, dj in ORTHOGONAL_OFFSETS),
            diagonal=tuple(level(di, dj) for di, dj in DIAGONAL_OFFSETS),
        )

    def step(
        self,
        streams: StreamFactory,
        override: Reinforcement | None = None,
        executor: ThreadPoolExecutor | None = None,
    ) -> StepTrace:
        """Advance the whole lattice by one timestep.

        With an executor, rows within each phase are evaluated concurrently;
        the trace is bit-identical either way.
        """
        t = self._step_index
        h, w = self.image.shape
        actions = np.empty((h, w), dtype=np.uint8)
        edges = np.empty((h, w), dtype=np.uint8)
        v_learn = np.empty((h, w), dtype=np.float64)
        signals = np.empty((h, w), dtype=np.uint8)

        def write_row(i):
            row = self.cells[i]
            for j in range(w):
                cell = row[j]
                rng = streams.cell(t, i, j)
                action = select_neighborhood(cell, rng)
                v_m = millman_voltage(
                    self.gather_inputs(i, j), action, self.millman, cell.m1
                )
                write_state(cell, v_m, self.millman)
                actions[i, j] = action

        def read_row(i):
            row = self.cells[i]
            for j in range(w):
                level = read_output(row[j], self.millman, self.timing)
                self._levels[i, j] = level
                edges[i, j] = 1 if level > 0 else 0

        def learn_row(i):
            decay = self.mixed_decay and override is None
            row = self.cells[i]
            for j in range(w):
                signal = (
                    override
                    if override is not None
                    else compute_reinforcement(actions, i, j)
                )
                row[j].learning = update_learning_voltage(
                    row[j].learning, signal, neutral_decay=decay
                )
                signals[i, j] = signal
                v_learn[i, j] = row[j].learning.v_learn

        for phase in (write_row, read_row, learn_row):
            if executor is None:
                for i in range(h):
                    phase(i)
            else:
                list(executor.map(phase, range(h)))

        self._step_index = t + 1
        return StepTrace(t, actions, edges, v_learn, signals)

    def run(
        self,
        streams: StreamFactory,
        n_steps: int,
        schedule=None,
        parallel: bool = False,
    ) -> list[StepTrace]:
        """Run ``n_steps`` timesteps and return their traces in order.

        ``schedule`` may be None (consensus reinforcement every step), a
        single Reinforcement applied to every step, or a per-step sequence
        of overrides where None falls back to consensus.
        """
        if n_steps < 1:
            raise ValueError(f"n_steps must be >= 1, got {n_steps}")
        if schedule is None or isinstance(schedule, Reinforcement):
            overrides = [schedule] * n_steps
        else:
            overrides = list(schedule)
            if len(overrides) != n_steps:
                raise ValueError(
                    f"schedule length {len(overrides)} != n_steps {n_steps}"
                )
        if parallel:
            with ThreadPoolExecutor() as pool:
                return [self.step(streams, ov, pool) for ov in overrides]
        return [self.step(streams, ov) for ov in overrides]
