"""The four 3x3 reference scenarios (a-d) on the lattice.

(a) all-ones image under neutral reinforcement: the edge map never changes
    even though every cell re-draws its neighborhood each step;
(b) the same image with the SE corner cleared: the center cell's edge state
    now depends on the drawn neighborhood, so it flickers at rate 1/2;
(c) forced Moore rewards drive the learning voltage to the upper clamp and
    the center edge frequency toward 1;
(d) forced von Neumann rewards do the opposite.

Writes a learning-voltage/frequency plot to demos/output/ when matplotlib
is available.
"""

from pathlib import Path

import numpy as np

from mlca import GridState, Reinforcement, StreamFactory, summarize_run

STEPS = 2000
SCENARIOS = {
    "a": ("all ones", "neutral", Reinforcement.NEUTRAL),
    "b": ("SE cleared", "neutral", Reinforcement.NEUTRAL),
    "c": ("SE cleared", "reward Moore", Reinforcement.REWARD_MOORE),
    "d": ("SE cleared", "reward von Neumann", Reinforcement.REWARD_VON_NEUMANN),
}


def build_image(kind):
    img = np.ones((3, 3), dtype=np.uint8)
    if kind == "SE cleared":
        img[2, 2] = 0
    return img


def render(grid_2d, symbols="._"):
    return ["".join(symbols[v] for v in row) for row in grid_2d]


results = {}
for key, (image_kind, signal_name, override) in SCENARIOS.items():
    grid = GridState(build_image(image_kind))
    traces = grid.run(StreamFactory(404), STEPS, schedule=override)
    stats = summarize_run(traces)
    results[key] = (traces, stats)

    print("=" * 64)
    print(f"Scenario ({key}): {image_kind} image, {signal_name} reinforcement")
    print("=" * 64)
    print("first three steps (actions: v = von Neumann, M = Moore | edges: . / #):")
    for t in traces[:3]:
        actions = render(t.actions, "vM")
        edges = render(t.edge_map, ".#")
        for left, right in zip(actions, edges):
            print(f"    {left}     {right}")
        print()
    center_freq = np.mean([t.edge_map[1, 1] for t in traces])
    print(f"center-cell edge frequency over {STEPS} steps: {center_freq:.4f}")
    print(f"center-cell final learning voltage: {traces[-1].v_learn_map[1, 1]:.4f} V")
    print()

print("=" * 64)
print("Ordering of the center-cell edge frequencies")
print("=" * 64)
freq = {k: np.mean([t.edge_map[1, 1] for t in results[k][0]]) for k in "bcd"}
print(f"  reward Moore {freq['c']:.4f} > neutral {freq['b']:.4f} > "
      f"reward von Neumann {freq['d']:.4f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the plot")
else:
    out_dir = Path(__file__).parent / "output"
    out_dir.mkdir(exist_ok=True)
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
    window = 200
    for key, color in zip("bcd", ("tab:gray", "tab:green", "tab:red")):
        traces, _ = results[key]
        v = [t.v_learn_map[1, 1] for t in traces]
        e = np.array([t.edge_map[1, 1] for t in traces], dtype=float)
        running = np.convolve(e, np.ones(window) / window, mode="valid")
        label = SCENARIOS[key][1]
        top.plot(v, color=color, label=f"({key}) {label}")
        bottom.plot(np.arange(len(running)) + window, running, color=color)
    top.set_ylabel("center learning voltage [V]")
    top.legend(loc="center right")
    bottom.set_ylabel(f"center edge frequency ({window}-step window)")
    bottom.set_xlabel("step")
    fig.tight_layout()
    path = out_dir / "reference_scenarios.png"
    fig.savefig(path, dpi=120)
    print(f"\nwrote {path}")
