"""Shared helpers for the test suite."""

import numpy as np

from mlca import LearningState, MemristorDevice


def default_device(**overrides) -> MemristorDevice:
    return MemristorDevice(**overrides)


def saturated_high_learning(device: MemristorDevice | None = None) -> LearningState:
    """Learning state pinned far above the set threshold: Moore every step."""
    device = device or MemristorDevice()
    v = device.set_threshold_mean + 10 * device.set_threshold_sigma
    return LearningState(v_learn=v, v_neutral=v, v_min=0.01, v_max=v)


def saturated_low_learning(device: MemristorDevice | None = None) -> LearningState:
    """Learning state pinned far below the set threshold: von Neumann every step."""
    device = device or MemristorDevice()
    v = 0.01
    top = device.set_threshold_mean + 10 * device.set_threshold_sigma
    return LearningState(v_learn=v, v_neutral=v, v_min=v, v_max=top)


def random_binary_image(rng: np.random.Generator, height: int, width: int, density=0.5):
    return (rng.random((height, width)) < density).astype(np.uint8)
