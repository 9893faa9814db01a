"""Segmenters: region growing, iterative thresholding, and the hybrid."""

from collections import deque

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hybridseg.segment import (
    DEFAULT_DELTA_T,
    RegionGrowParams,
    ThresholdTrace,
    apply_threshold,
    center_seed,
    hybrid_segment,
    iterative_threshold,
    region_grow,
)

from oracles import OFFSETS, region_grow_reference


def two_valued_image():
    # 8x8 with power-of-two class sizes keeps every class mean float-exact
    return np.array([0.2] * 32 + [0.8] * 32).reshape(8, 8)


def connected(mask, connectivity):
    """True when the mask's foreground is one connected component."""
    coords = list(zip(*np.nonzero(mask)))
    if not coords:
        return True
    seen = {coords[0]}
    queue = deque([coords[0]])
    members = set(coords)
    while queue:
        r, c = queue.popleft()
        for dr, dc in OFFSETS[connectivity]:
            nxt = (r + dr, c + dc)
            if nxt in members and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen) == len(coords)


class TestCenterSeed:
    def test_odd_square(self):
        assert center_seed(np.zeros((5, 5))) == (2, 2)

    def test_single_pixel(self):
        assert center_seed(np.zeros((1, 1))) == (0, 0)

    def test_even_dimensions(self):
        assert center_seed(np.zeros((4, 6))) == (2, 3)


class TestRegionGrow:
    def test_constant_image_fills(self):
        img = np.full((5, 5), 0.5)
        mask = region_grow(img, (1, 3), RegionGrowParams(tolerance=0.0))
        assert mask.all()

    def test_bright_block(self):
        img = np.full((9, 9), 0.1)
        img[3:6, 3:6] = 0.9
        mask = region_grow(img, (4, 4), RegionGrowParams(tolerance=0.2, connectivity="four"))
        expected = np.zeros((9, 9), np.uint8)
        expected[3:6, 3:6] = 1
        assert np.array_equal(mask, expected)

    def test_unit_tolerance_fills(self):
        rng = np.random.default_rng(0)
        img = rng.random((7, 6))
        mask = region_grow(img, (3, 3), RegionGrowParams(tolerance=1.0, connectivity="eight"))
        assert mask.all()

    def test_seed_out_of_bounds(self):
        with pytest.raises(IndexError):
            region_grow(np.zeros((4, 4)), (4, 0))

    def test_contains_seed_and_connected(self):
        rng = np.random.default_rng(1)
        for trial in range(20):
            img = rng.random((10, 10))
            seed = (int(rng.integers(10)), int(rng.integers(10)))
            conn = "four" if trial % 2 else "eight"
            mask = region_grow(img, seed, RegionGrowParams(tolerance=0.15, connectivity=conn))
            assert mask[seed] == 1
            assert connected(mask, conn)

    def test_tolerance_monotonicity(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            img = rng.integers(0, 256, size=(8, 8)) / 255.0
            seed = (int(rng.integers(8)), int(rng.integers(8)))
            small = region_grow(img, seed, RegionGrowParams(tolerance=0.05))
            large = region_grow(img, seed, RegionGrowParams(tolerance=0.2))
            assert np.array_equal(small & large, small)

    @pytest.mark.parametrize("connectivity", ["four", "eight"])
    def test_matches_frontier_rescan_oracle(self, connectivity):
        rng = np.random.default_rng(3)
        for trial in range(40):
            h, w = int(rng.integers(1, 13)), int(rng.integers(1, 13))
            img = rng.integers(0, 256, size=(h, w)) / 255.0
            seed = (int(rng.integers(h)), int(rng.integers(w)))
            tol = [0.0, 0.05, 0.1, 0.3][trial % 4]
            mask = region_grow(img, seed, RegionGrowParams(tolerance=tol, connectivity=connectivity))
            ref = region_grow_reference(img, seed, tol, connectivity)
            assert np.array_equal(mask, ref)

    def test_params_validation(self):
        with pytest.raises(ValueError):
            RegionGrowParams(tolerance=-0.1)
        with pytest.raises(ValueError):
            RegionGrowParams(connectivity="six")


class TestApplyThreshold:
    def test_equality_goes_to_background(self):
        img = np.array([[0.5]])
        assert apply_threshold(img, 0.5)[0, 0] == 0

    def test_threshold_one_gives_empty_mask(self):
        rng = np.random.default_rng(4)
        img = rng.random((4, 4))
        assert not apply_threshold(img, 1.0).any()

    def test_simple_split(self):
        img = np.array([[0.4, 0.6]])
        assert np.array_equal(apply_threshold(img, 0.5), [[0, 1]])

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=4, max_size=36),
        st.floats(min_value=0.0, max_value=1.0),
        st.floats(min_value=0.0, max_value=1.0),
    )
    def test_antitone_in_threshold(self, values, t1, t2):
        t1, t2 = min(t1, t2), max(t1, t2)
        img = np.asarray(values).reshape(1, -1)
        lo = apply_threshold(img, t1)
        hi = apply_threshold(img, t2)
        assert np.array_equal(hi & lo, hi)


class TestIterativeThreshold:
    def test_two_valued_converges_in_one_update(self):
        trace, mask = iterative_threshold(two_valued_image(), 0.01)
        assert trace.final_t == 0.5
        assert trace.iterations == 1
        assert trace.history == ((0.5, 0.8, 0.2),)
        assert trace.converged
        assert np.array_equal(mask, apply_threshold(two_valued_image(), 0.5))
        assert mask.sum() == 32

    def test_constant_image_degenerates(self):
        img = np.full((4, 4), 0.3)
        trace, mask = iterative_threshold(img, 0.01)
        assert trace.final_t == 0.3
        assert trace.iterations == 0
        assert trace.history == ()
        assert not mask.any()

    def test_checkerboard(self):
        rows, cols = np.indices((8, 8))
        img = ((rows + cols) % 2).astype(np.float64)
        trace, mask = iterative_threshold(img, 0.01)
        assert trace.final_t == 0.5
        assert np.array_equal(mask, img.astype(np.uint8))

    def test_terminates_and_final_step_is_small(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            img = rng.integers(0, 256, size=(64, 64)) / 255.0
            trace, _ = iterative_threshold(img, DEFAULT_DELTA_T)
            assert trace.converged
            assert trace.iterations < 1000
            if trace.iterations:
                t_last, m1, m2 = trace.history[-1]
                assert abs(t_last - (m1 + m2) / 2.0) <= DEFAULT_DELTA_T

    def test_history_recurrence(self):
        rng = np.random.default_rng(6)
        img = rng.random((32, 32))
        trace, _ = iterative_threshold(img, 1e-6)
        for k in range(len(trace.history) - 1):
            t, m1, m2 = trace.history[k]
            assert trace.history[k + 1][0] == (m1 + m2) / 2.0

    def test_delta_t_validation(self):
        with pytest.raises(ValueError):
            iterative_threshold(np.zeros((2, 2)), 0.0)

    def test_trace_invariant(self):
        with pytest.raises(ValueError):
            ThresholdTrace(final_t=0.5, iterations=2, history=((0.5, 0.6, 0.4),))


class TestHybrid:
    def test_product_of_components(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            img = rng.integers(0, 256, size=(8, 8)) / 255.0
            params = RegionGrowParams(tolerance=0.15)
            hybrid = hybrid_segment(img, params, 0.01)
            region = region_grow(img, center_seed(img), params)
            _, thresholded = iterative_threshold(img, 0.01)
            manual = np.array(
                [
                    [int(region[r, c] and thresholded[r, c]) for c in range(8)]
                    for r in range(8)
                ],
                dtype=np.uint8,
            )
            assert np.array_equal(hybrid, manual)

    def test_subset_of_each_component(self):
        rng = np.random.default_rng(8)
        img = rng.random((12, 12))
        params = RegionGrowParams()
        hybrid = hybrid_segment(img, params, DEFAULT_DELTA_T)
        region = region_grow(img, center_seed(img), params)
        _, thresholded = iterative_threshold(img, DEFAULT_DELTA_T)
        assert np.array_equal(hybrid & region, hybrid)
        assert np.array_equal(hybrid & thresholded, hybrid)

    def test_all_ones_threshold_mask_is_identity(self):
        region = np.array([[1, 1], [0, 0]], np.uint8)
        ones = np.ones((2, 2), np.uint8)
        assert np.array_equal(region & ones, region)

    def test_known_product(self):
        a = np.array([[1, 1], [0, 0]], np.uint8)
        b = np.array([[1, 0], [1, 0]], np.uint8)
        assert np.array_equal(a & b, [[1, 0], [0, 0]])

    def test_mask_dimensions_follow_image(self):
        rng = np.random.default_rng(9)
        img = rng.random((6, 10))
        assert hybrid_segment(img).shape == (6, 10)
