"""Memristive learning cellular automata: a behavioral simulator.

A 2-D lattice of identical cells detects edges in binary images. Each cell
carries two memristors: a stochastic selector whose threshold variability
draws the cell's neighborhood (von Neumann or Moore) with a probability set
by a per-cell LEARNING voltage, and a state memristor that stores the edge
decision computed by resistive averaging of the neighbor levels.
Reinforcement from neighborhood consensus moves the learning voltage, so
cells gradually commit to the neighborhood that suits their surroundings.
"""

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
from .config import ConfigError, RunConfig
from .device import (
    DestructiveReadError,
    MemristorDevice,
    PulseOutcome,
    ResistiveState,
)
from .edges import (
    BinaryImage,
    MapComparison,
    RunStatistics,
    compare_maps,
    oracle_edges,
    summarize_run,
)
from .grid import FeedbackMode, GridState, StepTrace, compute_reinforcement
from .learning import (
    Action,
    LearningState,
    Reinforcement,
    action_probability,
    update_learning_voltage,
)
from .pbm import PBMError, load_image, read_pbm, save_image, write_pbm
from .streams import StreamFactory

__all__ = [
    "Action",
    "BinaryImage",
    "CellRecord",
    "ConfigError",
    "DestructiveReadError",
    "FeedbackMode",
    "GridState",
    "LearningState",
    "MapComparison",
    "MemristorDevice",
    "MillmanConfig",
    "NeighborInputs",
    "PBMError",
    "PhaseTiming",
    "PulseOutcome",
    "Reinforcement",
    "ResistiveState",
    "RunConfig",
    "RunStatistics",
    "StepTrace",
    "StreamFactory",
    "action_probability",
    "check_separation",
    "compare_maps",
    "compute_reinforcement",
    "load_image",
    "millman_voltage",
    "oracle_edges",
    "read_output",
    "read_pbm",
    "save_image",
    "select_neighborhood",
    "summarize_run",
    "update_learning_voltage",
    "write_pbm",
    "write_state",
]

__version__ = "0.1.0"
