"""Resistive averaging as a logic rule.

The rule node computes a conductance-weighted mean of the eight neighbor
levels. With the selector On both branches weigh equally; with it Off the
diagonal branch is attenuated by r_on/r_off. Thresholding the mean at
0.9 * v_high then reproduces the digital edge rule exactly, which this
script checks over all 512 neighbor/action combinations.
"""

import itertools

from mlca import (
    Action,
    MemristorDevice,
    MillmanConfig,
    NeighborInputs,
    check_separation,
    millman_voltage,
)

cfg = MillmanConfig()
m1 = MemristorDevice()


def inputs(bits):
    return NeighborInputs(tuple(map(float, bits[:4])), tuple(map(float, bits[4:])))


print("=" * 64)
print("Worked averages (v_high = 1 V, threshold = 0.9 V)")
print("=" * 64)
cases = [
    ("all eight high, Moore", [1] * 8, Action.MOORE),
    ("one diagonal low, Moore", [1, 1, 1, 1, 1, 1, 0, 1], Action.MOORE),
    ("diagonals low, von Neumann", [1, 1, 1, 1, 0, 0, 0, 0], Action.VON_NEUMANN),
    ("one orthogonal low, von Neumann", [0, 1, 1, 1, 1, 1, 1, 1], Action.VON_NEUMANN),
]
for label, bits, action in cases:
    v = millman_voltage(inputs(bits), action, cfg, m1)
    verdict = "edge" if v <= cfg.edge_threshold else "no edge"
    print(f"  {label:<32} V_m = {v:.4f} V  -> {verdict}")

print()
print("=" * 64)
print("Exhaustive agreement with the digital rule")
print("=" * 64)
agree = 0
for action in Action:
    for bits in itertools.product((0, 1), repeat=8):
        v = millman_voltage(inputs(bits), action, cfg, m1)
        analog_edge = v <= cfg.edge_threshold
        neighborhood = bits[:4] if action is Action.VON_NEUMANN else bits
        agree += analog_edge == (min(neighborhood) == 0)
print(f"  {agree} / 512 cases agree")

print()
print("=" * 64)
print("The separation constraint is enforced")
print("=" * 64)
check_separation(cfg, m1)
print(f"  r_on/r_off = {m1.r_on / m1.r_off:.3f}: accepted")
try:
    check_separation(cfg, MemristorDevice(r_on=1e3, r_off=6e3))
except ValueError as exc:
    print(f"  r_on/r_off = 0.167: rejected ({exc})")
