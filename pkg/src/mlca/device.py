"""Stochastic behavioral model of a binary, voltage-threshold memristor.

The device holds one of two resistance values (r_on / r_off) and flips
between them under write pulses. Cycle-to-cycle variability is modeled by
resampling the switching threshold from a Gaussian on every pulse, which
makes a single pulse a memoryless Bernoulli switch with the closed-form
success probability ``Phi((amplitude - mean) / sigma)``. Positive pulses
drive the device On (set), negative pulses drive it Off (reset). Reads use
sub-threshold voltages and never disturb the state.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

_SQRT2 = math.sqrt(2.0)

# Pulses this many sigmas past the threshold mean are treated as guaranteed
# switches (miss probability ~ Phi(-10) ~ 8e-24).
SATURATION_SIGMAS = 10.0


class DestructiveReadError(ValueError):
    """Read voltage too close to the switching threshold distribution."""


class ResistiveState(Enum):
    ON = "on"
    OFF = "off"


@dataclass
class PulseOutcome:
    """Result of one write pulse."""

    new_state: ResistiveState
    switched: bool
    sampled_threshold: float  # nan for a zero-amplitude pulse


@dataclass
class MemristorDevice:
    """Two-state memristor with per-pulse Gaussian threshold variability.

    Defaults give r_on/r_off = 1/100 (well inside the rule-separation
    requirement of the cell's resistive averaging) and a probability dynamic
    range of roughly 0.001..0.999 over a +-0.3 V window around the set
    threshold mean.
    """

    state: ResistiveState = ResistiveState.OFF
    r_on: float = 1e3
    r_off: float = 1e5
    set_threshold_mean: float = 1.0
    set_threshold_sigma: float = 0.1
    reset_threshold_mean: float = -1.0
    reset_threshold_sigma: float = 0.1

    def __post_init__(self):
        if not 0 < self.r_on < self.r_off:
            raise ValueError(
                f"need 0 < r_on < r_off, got r_on={self.r_on}, r_off={self.r_off}"
            )
        if self.set_threshold_mean <= 0:
            raise ValueError("set threshold mean must be positive")
        if self.reset_threshold_mean >= 0:
            raise ValueError("reset threshold mean must be negative")
        if self.set_threshold_sigma < 0 or self.reset_threshold_sigma < 0:
            raise ValueError("threshold sigmas must be non-negative")

    @property
    def resistance(self) -> float:
        return self.r_on if self.state is ResistiveState.ON else self.r_off

    def sample_set_threshold(self, rng: np.random.Generator) -> float:
        """Draw this pulse's set threshold; sigma = 0 returns the mean exactly."""
        return rng.normal(self.set_threshold_mean, self.set_threshold_sigma)

    def sample_reset_threshold(self, rng: np.random.Generator) -> float:
        """Draw this pulse's reset threshold; sigma = 0 returns the mean exactly."""
        return rng.normal(self.reset_threshold_mean, self.reset_threshold_sigma)

    def apply_write_pulse(self, amplitude: float, rng: np.random.Generator) -> PulseOutcome:
        """Apply one write pulse and update the state.

        A positive pulse sets the device On when the amplitude reaches the
        freshly sampled set threshold; a negative pulse resets it Off when
        the amplitude reaches (falls to) the sampled reset threshold. A zero
        pulse samples nothing and changes nothing. Comparisons are inclusive
        so that sigma = 0 devices switch exactly at the mean.
        """
        if not math.isfinite(amplitude):
            raise ValueError(f"pulse amplitude must be finite, got {amplitude}")
        prior = self.state
        if amplitude > 0:
            threshold = self.sample_set_threshold(rng)
            if amplitude >= threshold:
                self.state = ResistiveState.ON
        elif amplitude < 0:
            threshold = self.sample_reset_threshold(rng)
            if amplitude <= threshold:
                self.state = ResistiveState.OFF
        else:
            threshold = math.nan
        return PulseOutcome(self.state, self.state is not prior, threshold)

    def switching_probability(self, amplitude: float) -> float:
        """Analytic probability that a set pulse of this amplitude turns the
        device On. Deterministic companion of :meth:`apply_write_pulse`;
        consumes no randomness. Only defined for the set direction."""
        if amplitude <= 0:
            raise ValueError(f"set-direction amplitude must be positive, got {amplitude}")
        if self.set_threshold_sigma == 0:
            return 1.0 if amplitude >= self.set_threshold_mean else 0.0
        z = (amplitude - self.set_threshold_mean) / self.set_threshold_sigma
        return 0.5 * (1.0 + math.erf(z / _SQRT2))

    def read_margin(self) -> float:
        """Largest |voltage| that is safely non-destructive (4 sigma margin)."""
        return min(
            self.set_threshold_mean - 4.0 * self.set_threshold_sigma,
            abs(self.reset_threshold_mean) - 4.0 * self.reset_threshold_sigma,
        )

    def read_resistance(self, read_voltage: float) -> float:
        """Return the current resistance without disturbing the state."""
        if abs(read_voltage) >= self.read_margin():
            raise DestructiveReadError(
                f"read voltage {read_voltage} V violates the non-destructive "
                f"margin (< {self.read_margin()} V)"
            )
        return self.resistance

    def saturated_set_amplitude(self) -> float:
        return self.set_threshold_mean + SATURATION_SIGMAS * self.set_threshold_sigma

    def saturated_reset_amplitude(self) -> float:
        return self.reset_threshold_mean - SATURATION_SIGMAS * self.reset_threshold_sigma

    def write_saturated(self, target: ResistiveState) -> None:
        """Deterministic write: a pulse so far past the threshold spread that
        the outcome is certain. Consumes no randomness."""
        self.state = target
