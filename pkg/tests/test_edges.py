"""Digital edge oracle, map comparison, and run statistics."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_binary_image, saturated_high_learning
from mlca import (
    Action,
    BinaryImage,
    GridState,
    Reinforcement,
    StreamFactory,
    compare_maps,
    oracle_edges,
    summarize_run,
)

ALL_MOORE = np.full((3, 3), Action.MOORE, dtype=np.uint8)
ALL_VN = np.full((3, 3), Action.VON_NEUMANN, dtype=np.uint8)


class TestBinaryImage:
    def test_accepts_binary(self):
        img = BinaryImage(np.eye(4, dtype=int))
        assert (img.height, img.width) == (4, 4)

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            BinaryImage(np.array([[0, 3]]))

    def test_rejects_wrong_rank(self):
        with pytest.raises(ValueError):
            BinaryImage(np.zeros(5))


class TestOracleEdges:
    def test_all_ones_center_is_interior(self):
        img = np.ones((3, 3), dtype=np.uint8)
        expected = np.ones((3, 3), dtype=np.uint8)
        expected[1, 1] = 0
        for actions in (ALL_MOORE, ALL_VN):
            assert (oracle_edges(img, actions) == expected).all()
        mixed = ALL_MOORE.copy()
        mixed[::2, ::2] = Action.VON_NEUMANN
        assert (oracle_edges(img, mixed) == expected).all()

    def test_all_zeros_has_no_edges(self):
        img = np.zeros((4, 5), dtype=np.uint8)
        assert oracle_edges(img, np.zeros((4, 5), dtype=np.uint8)).sum() == 0

    def test_cleared_se_corner_splits_by_action(self):
        img = np.ones((3, 3), dtype=np.uint8)
        img[2, 2] = 0
        assert oracle_edges(img, ALL_MOORE)[1, 1] == 1
        assert oracle_edges(img, ALL_VN)[1, 1] == 0

    def test_shape_mismatch_raises(self):
        with pytest.raises(ValueError):
            oracle_edges(np.ones((3, 3), dtype=np.uint8), np.zeros((2, 3), dtype=np.uint8))

    def test_accepts_binary_image_wrapper(self):
        img = BinaryImage(np.ones((3, 3), dtype=np.uint8))
        assert oracle_edges(img, ALL_VN)[0, 0] == 1

    @settings(max_examples=50)
    @given(data=st.data())
    def test_von_neumann_ignores_diagonal_neighbors(self, data):
        rng = np.random.default_rng(data.draw(st.integers(0, 2**31)))
        img = random_binary_image(rng, 6, 6)
        i = data.draw(st.integers(1, 4))
        j = data.draw(st.integers(1, 4))
        actions = np.full((6, 6), Action.VON_NEUMANN, dtype=np.uint8)
        before = oracle_edges(img, actions)[i, j]
        flipped = img.copy()
        for di, dj in ((-1, -1), (-1, 1), (1, -1), (1, 1)):
            flipped[i + di, j + dj] ^= 1
        after = oracle_edges(flipped, actions)[i, j]
        assert before == after


class TestCompareMaps:
    def test_identical_maps(self):
        m = np.eye(3, dtype=np.uint8)
        result = compare_maps(m, m)
        assert result.mismatches == 0
        assert result.positions == []

    def test_fully_different_maps(self):
        ones = np.ones((3, 3), dtype=np.uint8)
        result = compare_maps(ones, np.zeros((3, 3), dtype=np.uint8))
        assert result.mismatches == 9
        assert len(result.positions) == 9
        assert result.positions[0] == (0, 0)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            compare_maps(np.zeros((2, 2)), np.zeros((3, 2)))

    def test_simulated_maps_match_oracle_on_random_images(self):
        rng = np.random.default_rng(55)
        for trial in range(50):
            img = random_binary_image(rng, 8, 8)
            g = GridState(img)
            for t in g.run(StreamFactory(7000 + trial), 2):
                assert compare_maps(t.edge_map, oracle_edges(img, t.actions)).mismatches == 0


class TestSummarizeRun:
    def test_forced_moore_run_has_unit_frequency(self):
        g = GridState(np.ones((3, 3), dtype=np.uint8), learning=saturated_high_learning())
        traces = g.run(StreamFactory(0), 30)
        stats = summarize_run(traces)
        assert (stats.moore_frequency == 1.0).all()

    def test_neutral_frequencies_and_shapes(self):
        img = np.ones((3, 3), dtype=np.uint8)
        img[2, 2] = 0
        g = GridState(img)
        traces = g.run(StreamFactory(77), 400, schedule=Reinforcement.NEUTRAL)
        stats = summarize_run(traces, window=(100, 400))
        assert stats.window == (100, 400)
        assert stats.v_learn.shape == (300, 3, 3)
        assert 0.4 <= stats.moore_frequency[1, 1] <= 0.6
        assert 0.4 <= stats.edge_frequency[1, 1] <= 0.6
        border = np.ones((3, 3), dtype=bool)
        border[1, 1] = False
        border[2, 2] = False  # cleared pixel: never an edge
        assert (stats.edge_frequency[border] == 1.0).all()
        assert stats.edge_frequency[2, 2] == 0.0

    def test_sustained_consensus_parks_at_a_clamp(self):
        from mlca import LearningState

        g = GridState(
            np.ones((3, 3), dtype=np.uint8),
            learning=LearningState(v_learn=1.275),
        )
        traces = g.run(StreamFactory(4), 300)
        stats = summarize_run(traces, window=(100, 300))
        assert (stats.v_learn[-1] == 1.3).all()
        assert stats.moore_frequency.mean() >= 0.99

    def test_empty_window_rejected(self):
        g = GridState(np.ones((3, 3), dtype=np.uint8))
        traces = g.run(StreamFactory(0), 5)
        with pytest.raises(ValueError):
            summarize_run(traces, window=(3, 3))
        with pytest.raises(ValueError):
            summarize_run(traces, window=(0, 9))
        with pytest.raises(ValueError):
            summarize_run([], None)
