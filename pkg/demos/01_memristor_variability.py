"""Stochastic switching of the threshold-based memristor model.

Walks through the device primitives: per-pulse threshold variability, the
analytic switching-probability curve and its empirical Monte Carlo twin,
deterministic saturated writes, and non-destructive reads.
"""

import numpy as np

from mlca import MemristorDevice, ResistiveState

rng = np.random.default_rng(1)
device = MemristorDevice()

print("=" * 64)
print("Device parameters")
print("=" * 64)
print(f"  r_on  = {device.r_on:8.0f} ohm     r_off = {device.r_off:8.0f} ohm")
print(f"  set threshold   ~ N({device.set_threshold_mean}, {device.set_threshold_sigma}^2) V")
print(f"  reset threshold ~ N({device.reset_threshold_mean}, {device.reset_threshold_sigma}^2) V")

print()
print("Ten sampled set thresholds (a fresh draw every pulse):")
draws = [device.sample_set_threshold(rng) for _ in range(10)]
print("  " + "  ".join(f"{v:.3f}" for v in draws))

print()
print("=" * 64)
print("Switching probability: analytic CDF vs 20000-pulse Monte Carlo")
print("=" * 64)
print(f"{'amplitude V':>12} {'analytic':>10} {'empirical':>10}")
for amplitude in np.linspace(0.7, 1.3, 7):
    analytic = device.switching_probability(amplitude)
    hits = 0
    trials = 20_000
    for _ in range(trials):
        device.write_saturated(ResistiveState.OFF)
        if device.apply_write_pulse(amplitude, rng).switched:
            hits += 1
    print(f"{amplitude:>12.2f} {analytic:>10.4f} {hits / trials:>10.4f}")

print()
print("=" * 64)
print("Saturated pulses are deterministic")
print("=" * 64)
device.write_saturated(ResistiveState.OFF)
out = device.apply_write_pulse(device.saturated_set_amplitude(), rng)
print(f"  set pulse {device.saturated_set_amplitude():.1f} V -> {out.new_state.value}"
      f" (sampled threshold {out.sampled_threshold:.3f} V)")
out = device.apply_write_pulse(device.saturated_reset_amplitude(), rng)
print(f"  reset pulse {device.saturated_reset_amplitude():.1f} V -> {out.new_state.value}")

print()
print("=" * 64)
print("Reads never disturb the state")
print("=" * 64)
device.write_saturated(ResistiveState.ON)
values = {device.read_resistance(0.3) for _ in range(10_000)}
print(f"  10^4 reads at 0.3 V -> always {values} ohm, state {device.state.value}")
try:
    device.read_resistance(1.0)
except ValueError as exc:
    print(f"  1.0 V read rejected: {exc}")
