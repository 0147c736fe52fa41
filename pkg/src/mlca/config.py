"""Run configuration: JSON file format, validation, and object builders.

Field names carry their units. A config validates as a whole (device
parameters, rule separation, non-destructive read margin, learning window)
before anything is built, so a bad file fails fast with a message naming
the offending field instead of surfacing mid-run.
"""

import json
from dataclasses import asdict, dataclass, fields

from .cell import MillmanConfig, PhaseTiming, check_separation
from .device import MemristorDevice
from .grid import FeedbackMode, GridState
from .learning import LearningState, Reinforcement

REINFORCEMENT_MODES = ("computed", "neutral", "reward_moore", "reward_von_neumann")


class ConfigError(ValueError):
    """Invalid run configuration."""


@dataclass
class RunConfig:
    # selector memristor (one per cell)
    m1_r_on_ohms: float = 1e3
    m1_r_off_ohms: float = 1e5
    m1_set_threshold_mean_volts: float = 1.0
    m1_set_threshold_sigma_volts: float = 0.1
    m1_reset_threshold_mean_volts: float = -1.0
    m1_reset_threshold_sigma_volts: float = 0.1
    # state memristor
    m2_r_on_ohms: float = 1e3
    m2_r_off_ohms: float = 1e5
    m2_set_threshold_mean_volts: float = 1.0
    m2_set_threshold_sigma_volts: float = 0.1
    m2_reset_threshold_mean_volts: float = -1.0
    m2_reset_threshold_sigma_volts: float = 0.1
    # rule node
    branch_resistance_ohms: float = 10e3
    v_high_volts: float = 1.0
    edge_threshold_volts: float | None = None  # default: 0.9 * v_high
    # phase timing
    step_duration_seconds: float = 1e-3
    read_fraction: float = 0.1
    read_voltage_volts: float = 0.3
    # learning window
    v_learn_init_volts: float | None = None  # default: v_neutral
    v_neutral_volts: float = 1.0
    delta_v_volts: float = 0.025
    v_min_volts: float = 0.7
    v_max_volts: float = 1.3
    mixed_decay: bool = False
    # grid and run
    width: int | None = None
    height: int | None = None
    feedback_mode: str = "initial_image"
    reinforcement_mode: str = "computed"
    n_steps: int = 2000
    seed: int = 0
    output_dir: str = "out"

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must hold a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return asdict(self)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    # -- builders ---------------------------------------------------------

    def build_m1(self) -> MemristorDevice:
        return MemristorDevice(
            r_on=self.m1_r_on_ohms,
            r_off=self.m1_r_off_ohms,
            set_threshold_mean=self.m1_set_threshold_mean_volts,
            set_threshold_sigma=self.m1_set_threshold_sigma_volts,
            reset_threshold_mean=self.m1_reset_threshold_mean_volts,
            reset_threshold_sigma=self.m1_reset_threshold_sigma_volts,
        )

    def build_m2(self) -> MemristorDevice:
        return MemristorDevice(
            r_on=self.m2_r_on_ohms,
            r_off=self.m2_r_off_ohms,
            set_threshold_mean=self.m2_set_threshold_mean_volts,
            set_threshold_sigma=self.m2_set_threshold_sigma_volts,
            reset_threshold_mean=self.m2_reset_threshold_mean_volts,
            reset_threshold_sigma=self.m2_reset_threshold_sigma_volts,
        )

    def build_millman(self) -> MillmanConfig:
        return MillmanConfig(
            branch_resistance=self.branch_resistance_ohms,
            v_high=self.v_high_volts,
            edge_threshold=self.edge_threshold_volts,
        )

    def build_timing(self) -> PhaseTiming:
        return PhaseTiming(
            step_duration=self.step_duration_seconds,
            read_fraction=self.read_fraction,
            read_voltage=self.read_voltage_volts,
        )

    def build_learning(self) -> LearningState:
        v0 = self.v_learn_init_volts
        return LearningState(
            v_learn=self.v_neutral_volts if v0 is None else v0,
            v_neutral=self.v_neutral_volts,
            delta_v=self.delta_v_volts,
            v_min=self.v_min_volts,
            v_max=self.v_max_volts,
        )

    def forced_reinforcement(self) -> Reinforcement | None:
        """Per-step override implied by reinforcement_mode (None = computed)."""
        return {
            "computed": None,
            "neutral": Reinforcement.NEUTRAL,
            "reward_moore": Reinforcement.REWARD_MOORE,
            "reward_von_neumann": Reinforcement.REWARD_VON_NEUMANN,
        }[self.reinforcement_mode]

    def validate(self) -> None:
        """Raise ConfigError on any inconsistency; cheap enough to run at load."""
        try:
            m1 = self.build_m1()
            m2 = self.build_m2()
            millman = self.build_millman()
            self.build_timing()
            self.build_learning()
            check_separation(millman, m1)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        margin = m2.read_margin()
        if not 0 < abs(self.read_voltage_volts) < margin:
            raise ConfigError(
                f"read voltage {self.read_voltage_volts} V outside the "
                f"non-destructive margin (0, {margin}) V of the state memristor"
            )
        if self.feedback_mode not in tuple(m.value for m in FeedbackMode):
            raise ConfigError(f"unknown feedback_mode {self.feedback_mode!r}")
        if self.reinforcement_mode not in REINFORCEMENT_MODES:
            raise ConfigError(
                f"unknown reinforcement_mode {self.reinforcement_mode!r}"
            )
        if self.n_steps < 1:
            raise ConfigError(f"n_steps must be >= 1, got {self.n_steps}")
        if self.seed < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")
        for name in ("width", "height"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigError(f"{name} must be >= 1, got {value}")

    def build_grid(self, image) -> GridState:
        """Assemble a grid for this config around the given image."""
        self.validate()
        grid = GridState(
            image,
            millman=self.build_millman(),
            timing=self.build_timing(),
            m1=self.build_m1(),
            m2=self.build_m2(),
            learning=self.build_learning(),
            feedback_mode=FeedbackMode(self.feedback_mode),
            mixed_decay=self.mixed_decay,
        )
        if self.width is not None and grid.width != self.width:
            raise ConfigError(
                f"config width {self.width} != image width {grid.width}"
            )
        if self.height is not None and grid.height != self.height:
            raise ConfigError(
                f"config height {self.height} != image height {grid.height}"
            )
        return grid
