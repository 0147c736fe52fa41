"""Acceptance suite: end-to-end behavioral and statistical criteria.

Each test prints one [PASS]/[FAIL] line; run with

    pytest tests/test_acceptance.py -v -s

to see them. Tolerances are fixed here, not tuned: frequency bands are
4-sigma Bernoulli bounds at the stated trial counts, comparisons between
runs use a one-sided two-proportion z-test at 99% confidence, and the
closed-form rule arithmetic is checked to 1e-12 relative error.
"""

import itertools
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest
import scipy.stats

from mlca import (
    Action,
    GridState,
    LearningState,
    MemristorDevice,
    MillmanConfig,
    NeighborInputs,
    Reinforcement,
    ResistiveState,
    RunConfig,
    StreamFactory,
    millman_voltage,
    oracle_edges,
    summarize_run,
)
from mlca.cli import main, save_outputs

Z_99 = scipy.stats.norm.ppf(0.99)


@contextmanager
def report(name):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


def all_ones(shape=(3, 3)):
    return np.ones(shape, dtype=np.uint8)


def except_se():
    img = all_ones()
    img[2, 2] = 0
    return img


def center_edge_series(traces):
    return np.array([t.edge_map[1, 1] for t in traces])


def two_proportion_z(p1, n1, p2, n2):
    pooled = (p1 * n1 + p2 * n2) / (n1 + n2)
    se = math.sqrt(pooled * (1 - pooled) * (1 / n1 + 1 / n2))
    return (p1 - p2) / se


@pytest.fixture(scope="module")
def neutral_10k_run():
    """10^4 neutral steps on the cleared-SE image (shared by two criteria)."""
    grid = GridState(except_se())
    start = time.perf_counter()
    traces = grid.run(StreamFactory(2024), 10_000, schedule=Reinforcement.NEUTRAL)
    return traces, time.perf_counter() - start


def test_constant_edge_map_under_neutral_reinforcement():
    with report("neutral run: constant edge map, varying actions, < 5 s"):
        grid = GridState(all_ones())
        start = time.perf_counter()
        traces = grid.run(StreamFactory(11), 2000, schedule=Reinforcement.NEUTRAL)
        runtime = time.perf_counter() - start
        expected = all_ones()
        expected[1, 1] = 0
        assert all((t.edge_map == expected).all() for t in traces)
        actions = np.stack([t.actions for t in traces])
        assert (actions == Action.MOORE).any() and (actions == Action.VON_NEUMANN).any()
        assert runtime < 5.0, f"runtime {runtime:.2f} s"


def test_center_cell_edge_frequency_is_half(neutral_10k_run):
    with report("neutral run: center-cell edge frequency 0.5 +- 0.02, < 30 s"):
        traces, runtime = neutral_10k_run
        freq = center_edge_series(traces).mean()
        assert abs(freq - 0.5) <= 0.02, f"frequency {freq:.4f}"
        assert runtime < 30.0, f"runtime {runtime:.2f} s"


def test_forced_schedules_saturate_and_order(neutral_10k_run):
    with report("forced reward schedules: saturation, clamps, ordered frequencies"):
        traces_b, _ = neutral_10k_run
        freq_b = center_edge_series(traces_b).mean()
        n_b = len(traces_b)

        grid_c = GridState(except_se())
        traces_c = grid_c.run(
            StreamFactory(31), 2000, schedule=Reinforcement.REWARD_MOORE
        )
        grid_d = GridState(except_se())
        traces_d = grid_d.run(
            StreamFactory(32), 2000, schedule=Reinforcement.REWARD_VON_NEUMANN
        )

        tail_c = center_edge_series(traces_c[-1000:])
        tail_d = center_edge_series(traces_d[-1000:])
        assert tail_c.mean() >= 0.95, f"reward-Moore tail frequency {tail_c.mean():.4f}"
        assert tail_d.mean() <= 0.05, f"reward-vonNeumann tail frequency {tail_d.mean():.4f}"
        assert (traces_c[-1].v_learn_map == 1.3).all(), "upper clamp not reached"
        assert (traces_d[-1].v_learn_map == 0.7).all(), "lower clamp not reached"

        z_cb = two_proportion_z(tail_c.mean(), 1000, freq_b, n_b)
        z_bd = two_proportion_z(freq_b, n_b, tail_d.mean(), 1000)
        assert z_cb > Z_99, f"freq(c) > freq(b) not significant (z={z_cb:.2f})"
        assert z_bd > Z_99, f"freq(b) > freq(d) not significant (z={z_bd:.2f})"


def test_analog_path_matches_digital_oracle():
    with report("oracle equivalence: 1000 random images + exhaustive 512 cases"):
        meta = np.random.default_rng(2026)
        mismatches = 0
        for _ in range(1000):
            img = (meta.random((16, 16)) < 0.5).astype(np.uint8)
            grid = GridState(img)
            for trace in grid.run(StreamFactory(int(meta.integers(2**31))), 2):
                if not (trace.edge_map == oracle_edges(img, trace.actions)).all():
                    mismatches += 1
        assert mismatches == 0, f"{mismatches} mismatching step maps"

        cfg = MillmanConfig()
        m1 = MemristorDevice()
        for action in Action:
            for bits in itertools.product((0, 1), repeat=8):
                inputs = NeighborInputs(tuple(map(float, bits[:4])), tuple(map(float, bits[4:])))
                analog = millman_voltage(inputs, action, cfg, m1) <= cfg.edge_threshold
                neighborhood = bits[:4] if action is Action.VON_NEUMANN else bits
                assert analog == (min(neighborhood) == 0), (action, bits)


def test_device_switching_statistics():
    with report("device statistics: empirical vs analytic within 0.02 at 13 amplitudes"):
        device = MemristorDevice()
        rng = np.random.default_rng(424242)
        trials = 10_000
        worst = 0.0
        for amplitude in np.linspace(0.7, 1.3, 13):
            analytic = device.switching_probability(amplitude)
            hits = 0
            for _ in range(trials):
                device.write_saturated(ResistiveState.OFF)
                if device.apply_write_pulse(amplitude, rng).switched:
                    hits += 1
            worst = max(worst, abs(hits / trials - analytic))
        assert worst <= 0.02, f"max deviation {worst:.4f}"


def test_reads_are_non_destructive():
    with report("non-destructive reads: 10^4 reads per state, zero flips"):
        for params in ({}, {"set_threshold_sigma": 0.05, "reset_threshold_sigma": 0.02}):
            for state in ResistiveState:
                device = MemristorDevice(state=state, **params)
                expected = device.resistance
                for _ in range(10_000):
                    assert device.read_resistance(0.3) == expected
                assert device.state is state


def test_determinism_and_synchrony(tmp_path):
    with report("determinism: identical CSV bytes; parallel == sequential"):
        from mlca import write_pbm

        img_path = tmp_path / "img.pbm"
        write_pbm(img_path, except_se())
        blobs = []
        for name in ("one", "two"):
            out = tmp_path / name
            assert main(
                ["run", "--image", str(img_path), "--steps", "200", "--seed", "77",
                 "--out", str(out)]
            ) == 0
            blobs.append((out / "trace.csv").read_bytes())
        assert blobs[0] == blobs[1]

        seq = GridState(except_se()).run(StreamFactory(77), 200)
        par = GridState(except_se()).run(StreamFactory(77), 200, parallel=True)
        for a, b in zip(seq, par):
            assert (a.actions == b.actions).all()
            assert (a.edge_map == b.edge_map).all()
            assert (a.v_learn_map == b.v_learn_map).all()
            assert (a.reinforcement_map == b.reinforcement_map).all()
        out_seq = tmp_path / "seq"
        out_par = tmp_path / "par"
        save_outputs(seq, summarize_run(seq), out_seq)
        save_outputs(par, summarize_run(par), out_par)
        assert (out_seq / "trace.csv").read_bytes() == (out_par / "trace.csv").read_bytes()


def test_rule_node_arithmetic():
    with report("rule-node arithmetic: worked values to 1e-12 relative error"):
        cfg = MillmanConfig()
        m1 = MemristorDevice()

        def rel_err(value, expected):
            return abs(value - expected) / abs(expected)

        seven_eighths = millman_voltage(
            NeighborInputs((1.0, 1.0, 1.0, 1.0), (1.0, 1.0, 0.0, 1.0)),
            Action.MOORE, cfg, m1,
        )
        assert rel_err(seven_eighths, 0.875) <= 1e-12

        attenuated = millman_voltage(
            NeighborInputs((1.0, 1.0, 1.0, 1.0), (0.0, 0.0, 0.0, 0.0)),
            Action.VON_NEUMANN, cfg, m1,
        )
        assert rel_err(attenuated, 4.0 / 4.04) <= 1e-12

        for action in Action:
            equal = millman_voltage(
                NeighborInputs((0.75, 0.75, 0.75, 0.75), (0.75, 0.75, 0.75, 0.75)),
                action, cfg, m1,
            )
            assert rel_err(equal, 0.75) <= 1e-12
