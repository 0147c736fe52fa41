"""Digital edge-detection reference and run statistics.

`oracle_edges` is the pure logical form of the rule the lattice evaluates
in analog: a pixel is an edge iff it is 1 and at least one pixel of its
selected neighborhood (grounded outside the grid) is 0. It shares no code
with the analog path, which makes it an independent check of every
simulated edge map.
"""

from dataclasses import dataclass

import numpy as np

from .learning import Action


@dataclass
class BinaryImage:
    """Strictly binary 2-D image."""

    pixels: np.ndarray

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels, dtype=np.uint8)
        if self.pixels.ndim != 2:
            raise ValueError(f"image must be 2-D, got shape {self.pixels.shape}")
        if not np.isin(self.pixels, (0, 1)).all():
            raise ValueError("image pixels must be strictly binary")

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


@dataclass
class MapComparison:
    mismatches: int
    positions: list  # (row, col) tuples, row-major


@dataclass
class RunStatistics:
    """Per-cell empirical frequencies and learning-voltage paths over a
    window of steps."""

    moore_frequency: np.ndarray
    edge_frequency: np.ndarray
    v_learn: np.ndarray  # (steps_in_window, height, width)
    window: tuple


def oracle_edges(image, actions: np.ndarray) -> np.ndarray:
    """Digital reference edge map.

    ``actions`` gives each cell's neighborhood choice (Action codes). A cell
    is an edge iff its pixel is 1 and the minimum over the selected neighbor
    set, with out-of-grid positions counted as 0, is 0.
    """
    pixels = np.asarray(getattr(image, "pixels", image), dtype=np.uint8)
    actions = np.asarray(actions)
    if pixels.shape != actions.shape:
        raise ValueError(
            f"image shape {pixels.shape} != actions shape {actions.shape}"
        )
    h, w = pixels.shape
    padded = np.zeros((h + 2, w + 2), dtype=np.uint8)
    padded[1:-1, 1:-1] = pixels

    shifted = {
        (di, dj): padded[1 + di : 1 + di + h, 1 + dj : 1 + dj + w]
        for di in (-1, 0, 1)
        for dj in (-1, 0, 1)
        if (di, dj) != (0, 0)
    }
    orth_min = np.minimum.reduce(
        [shifted[(-1, 0)], shifted[(0, 1)], shifted[(1, 0)], shifted[(0, -1)]]
    )
    moore_min = np.minimum.reduce(list(shifted.values()))
    selected_min = np.where(actions == Action.MOORE, moore_min, orth_min)
    return ((pixels == 1) & (selected_min == 0)).astype(np.uint8)


def compare_maps(a: np.ndarray, b: np.ndarray) -> MapComparison:
    """Exact per-cell comparison of two edge maps."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"map shapes differ: {a.shape} vs {b.shape}")
    diff = a != b
    positions = [tuple(p) for p in np.argwhere(diff)]
    return MapComparison(int(diff.sum()), positions)


def summarize_run(traces, window: tuple | None = None) -> RunStatistics:
    """Empirical Moore frequency, edge frequency, and learning-voltage path
    per cell over ``window`` (a half-open (start, stop) step range into the
    trace sequence; default covers all steps)."""
    traces = list(traces)
    if window is None:
        window = (0, len(traces))
    start, stop = window
    if not 0 <= start < stop <= len(traces):
        raise ValueError(
            f"window {window} is empty or outside the {len(traces)}-step trace"
        )
    selected = traces[start:stop]
    actions = np.stack([t.actions for t in selected])
    edges = np.stack([t.edge_map for t in selected])
    v_learn = np.stack([t.v_learn_map for t in selected])
    return RunStatistics(
        moore_frequency=(actions == Action.MOORE).mean(axis=0),
        edge_frequency=edges.astype(np.float64).mean(axis=0),
        v_learn=v_learn,
        window=(start, stop),
    )
