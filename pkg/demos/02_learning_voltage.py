"""The learning voltage as a probability knob.

Reinforcement moves a clamped voltage; the selector memristor's threshold
CDF turns that voltage into the probability of picking the Moore
neighborhood. Rewards walk the probability toward 1, penalties toward 0,
and the clamps make sustained consensus absorbing.
"""

from mlca import (
    LearningState,
    MemristorDevice,
    Reinforcement,
    action_probability,
    update_learning_voltage,
)

device = MemristorDevice()
state = LearningState()

print("=" * 64)
print("Reward ladder: twelve consecutive Moore rewards")
print("=" * 64)
print(f"{'step':>4} {'v_learn V':>10} {'P(Moore)':>10}")
print(f"{0:>4} {state.v_learn:>10.3f} {action_probability(state, device):>10.4f}")
for k in range(1, 13):
    state = update_learning_voltage(state, Reinforcement.REWARD_MOORE)
    print(f"{k:>4} {state.v_learn:>10.3f} {action_probability(state, device):>10.4f}")
print(f"clamped at v_max = {state.v_max} V; further rewards are no-ops:")
clamped = update_learning_voltage(state, Reinforcement.REWARD_MOORE)
print(f"     {clamped.v_learn:>10.3f} {action_probability(clamped, device):>10.4f}")

print()
print("=" * 64)
print("Penalties walk back down")
print("=" * 64)
for k in range(6):
    state = update_learning_voltage(state, Reinforcement.REWARD_VON_NEUMANN)
print(f"after 6 penalties: v_learn = {state.v_learn:.3f} V, "
      f"P(Moore) = {action_probability(state, device):.4f}")

print()
print("=" * 64)
print("Neutral signals")
print("=" * 64)
held = update_learning_voltage(state, Reinforcement.NEUTRAL)
print(f"default: neutral holds the voltage ({held.v_learn:.3f} V)")
decayed = state
for k in range(10):
    decayed = update_learning_voltage(decayed, Reinforcement.NEUTRAL, neutral_decay=True)
print(f"decay variant: ten neutral steps relax toward v_neutral -> {decayed.v_learn:.3f} V")
