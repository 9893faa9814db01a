"""Preprocessing chain: contrast stretch, median filter, wavelet denoise."""

from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hybridseg.preprocess import (
    PreprocessConfig,
    contrast_stretch,
    median_filter,
    preprocess,
    swt_decompose,
    swt_denoise,
    swt_reconstruct,
)

from oracles import mean_abs_deviation, median_reference


class TestContrastStretch:
    def test_constant_image_unchanged(self):
        img = np.full((4, 4), 0.5)
        assert np.array_equal(contrast_stretch(img, 0, 100), img)

    def test_two_valued_full_percentiles(self):
        img = np.array([[0.25, 0.75], [0.75, 0.25]])
        out = contrast_stretch(img, 0, 100)
        assert np.array_equal(out, [[0.0, 1.0], [1.0, 0.0]])

    def test_full_range_endpoints_fixed(self):
        img = np.linspace(0.0, 1.0, 16).reshape(4, 4)
        out = contrast_stretch(img, 0, 100)
        assert out[0, 0] == 0.0
        assert out[3, 3] == 1.0

    def test_output_in_unit_interval(self):
        rng = np.random.default_rng(0)
        img = rng.random((10, 10))
        out = contrast_stretch(img, 10, 90)
        assert out.min() >= 0.0 and out.max() <= 1.0

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=2, max_size=64))
    def test_monotone_at_full_percentiles(self, values):
        img = np.asarray(values).reshape(1, -1)
        out = contrast_stretch(img, 0, 100)[0]
        order = np.argsort(img[0], kind="stable")
        assert np.all(np.diff(out[order]) >= 0.0)

    def test_idempotent_on_constant(self):
        img = np.full((3, 3), 0.7)
        once = contrast_stretch(img, 1, 99)
        assert np.array_equal(contrast_stretch(once, 1, 99), once)

    def test_bad_percentiles_rejected(self):
        img = np.zeros((2, 2))
        with pytest.raises(ValueError):
            contrast_stretch(img, 60, 99)
        with pytest.raises(ValueError):
            contrast_stretch(img, 1, 50)


class TestMedianFilter:
    def test_window_one_is_identity(self):
        rng = np.random.default_rng(1)
        img = rng.random((6, 7))
        assert np.array_equal(median_filter(img, 1), img)

    def test_constant_unchanged(self):
        img = np.full((5, 5), 0.3)
        assert np.array_equal(median_filter(img, 3), img)

    def test_impulse_removed(self):
        img = np.full((5, 5), 0.1)
        img[2, 2] = 1.0
        out = median_filter(img, 3)
        assert np.array_equal(out, np.full((5, 5), 0.1))

    @pytest.mark.parametrize("window", [3, 5])
    def test_matches_brute_force(self, window):
        rng = np.random.default_rng(2)
        img = rng.random((9, 8))
        assert np.array_equal(median_filter(img, window), median_reference(img, window))

    def test_preserves_shape(self):
        img = np.zeros((4, 11))
        assert median_filter(img, 5).shape == (4, 11)

    def test_even_window_rejected(self):
        with pytest.raises(ValueError):
            median_filter(np.zeros((3, 3)), 2)


class TestSwt:
    def test_constant_details_zero(self):
        img = np.full((8, 8), 0.4)
        pyr = swt_decompose(img, 1)
        h, v, d = pyr.details[0]
        assert np.all(h == 0.0) and np.all(v == 0.0) and np.all(d == 0.0)
        # orthonormal Haar doubles a constant per level
        assert np.allclose(pyr.approx, 0.8, atol=1e-12)

    def test_horizontal_detail_of_1x2(self):
        a, b = 0.9, 0.3
        pyr = swt_decompose(np.array([[a, b]]), 1)
        h = pyr.details[0][0]
        assert np.allclose(h, [[a - b, b - a]], atol=1e-12)

    def test_plane_shapes(self):
        rng = np.random.default_rng(3)
        img = rng.random((8, 8))
        for levels in (1, 2, 3):
            pyr = swt_decompose(img, levels)
            planes = [pyr.approx] + [p for triple in pyr.details for p in triple]
            assert len(planes) == 1 + 3 * levels
            assert all(p.shape == (8, 8) for p in planes)

    @pytest.mark.parametrize("levels", [1, 2, 3])
    def test_perfect_reconstruction(self, levels):
        rng = np.random.default_rng(4)
        img = rng.random((16, 16))
        rec = swt_reconstruct(swt_decompose(img, levels))
        assert np.max(np.abs(rec - img)) <= 1e-9

    def test_reconstruction_two_levels_8x8(self):
        rng = np.random.default_rng(5)
        img = rng.random((8, 8))
        rec = swt_reconstruct(swt_decompose(img, 2))
        assert np.max(np.abs(rec - img)) <= 1e-9

    def test_constant_pyramid_reconstructs_constant(self):
        img = np.full((4, 4), 0.6)
        rec = swt_reconstruct(swt_decompose(img, 2))
        assert np.allclose(rec, img, atol=1e-12)


class TestSwtDenoise:
    def test_constant_unchanged(self):
        img = np.full((8, 8), 0.25)
        assert np.allclose(swt_denoise(img, 1), img, atol=1e-12)

    def test_small_details_collapse_to_approx_reconstruction(self):
        # all detail coefficients sit below the universal threshold, so the
        # output must equal the reconstruction of the approx-only pyramid
        rng = np.random.default_rng(6)
        img = np.clip(0.5 + rng.uniform(-0.01, 0.01, (16, 16)), 0.0, 1.0)
        pyr = swt_decompose(img, 1)
        sigma = np.median(np.abs(pyr.details[0][2])) / 0.6745
        lam = sigma * np.sqrt(2.0 * np.log(img.size))
        assert all(np.abs(p).max() < lam for p in pyr.details[0])
        zeroed = (tuple(np.zeros_like(p) for p in pyr.details[0]),)
        expected = np.clip(swt_reconstruct(replace(pyr, details=zeroed)), 0.0, 1.0)
        assert np.allclose(swt_denoise(img, 1), expected, atol=1e-12)

    def test_checker_noise_suppressed(self):
        rows, cols = np.indices((16, 16))
        checker = np.where((rows + cols) % 2 == 0, 0.05, -0.05)
        img = 0.5 + checker
        out = swt_denoise(img, 1)
        assert mean_abs_deviation(out, 0.5) < mean_abs_deviation(img, 0.5)

    def test_output_clamped(self):
        rng = np.random.default_rng(7)
        img = rng.random((8, 8))
        out = swt_denoise(img, 2)
        assert out.min() >= 0.0 and out.max() <= 1.0


class TestPreprocess:
    def test_identity_config_on_full_range_image(self):
        img = np.linspace(0.0, 1.0, 64).reshape(8, 8)
        cfg = PreprocessConfig(stretch_low_pct=0, stretch_high_pct=100, median_window=1, swt_levels=0)
        assert np.array_equal(preprocess(img, cfg), img)

    def test_constant_image_fixed_by_every_stage(self):
        img = np.full((8, 8), 0.42)
        out = preprocess(img, PreprocessConfig())
        assert np.allclose(out, img, atol=1e-12)

    def test_stage_order_is_stretch_median_denoise(self):
        rng = np.random.default_rng(8)
        img = rng.random((12, 12))
        cfg = PreprocessConfig(stretch_low_pct=5, stretch_high_pct=95, median_window=3, swt_levels=1)
        manual = swt_denoise(median_filter(contrast_stretch(img, 5, 95), 3), 1)
        assert np.array_equal(preprocess(img, cfg), manual)

    def test_output_in_unit_interval(self):
        rng = np.random.default_rng(9)
        img = rng.random((16, 16))
        out = preprocess(img, PreprocessConfig())
        assert out.min() >= 0.0 and out.max() <= 1.0

    def test_config_validation(self):
        with pytest.raises(ValueError):
            PreprocessConfig(median_window=4)
        with pytest.raises(ValueError):
            PreprocessConfig(stretch_low_pct=50)
        with pytest.raises(ValueError):
            PreprocessConfig(swt_levels=-1)
