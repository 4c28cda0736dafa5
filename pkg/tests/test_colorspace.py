import math

import numpy as np
import pytest

from core.colorspace import (
    ColorSettings,
    HslPixel,
    LabPixel,
    SimilarityThresholds,
    delta_e,
    hsl_distance,
    hsl_to_rgb,
    opponent_to_xyz,
    rgb_to_hsl,
    rgb_to_hsl_plane,
    similar,
    similar_counted,
    srgb_to_lab,
    xyz_to_opponent,
)
from core.errors import ConfigError, ParamsError
from core.imgcore import RgbImage

DEFAULTS = SimilarityThresholds(10, 10, 48)


def _random_hsl(rng, count):
    return [
        HslPixel(rng.uniform(0, 360), rng.uniform(0, 100), rng.uniform(0, 255))
        for _ in range(count)
    ]


class TestRgbToHsl:
    @pytest.mark.parametrize(
        "rgb, expected",
        [
            ((0, 0, 0), (0.0, 0.0, 0.0)),
            ((255, 255, 255), (0.0, 0.0, 255.0)),
            ((255, 0, 0), (0.0, 100.0, 127.5)),
            ((0, 255, 0), (120.0, 100.0, 127.5)),
            ((0, 0, 255), (240.0, 100.0, 127.5)),
        ],
    )
    def test_known_values(self, rgb, expected):
        assert tuple(rgb_to_hsl(rgb)) == pytest.approx(expected)

    def test_grays_are_achromatic(self):
        for v in range(256):
            h, s, l = rgb_to_hsl((v, v, v))
            assert (h, s, l) == (0.0, 0.0, float(v))

    def test_ranges(self):
        rng = np.random.default_rng(0)
        for rgb in rng.integers(0, 256, size=(2000, 3)):
            h, s, l = rgb_to_hsl(tuple(int(c) for c in rgb))
            assert 0 <= h < 360
            assert 0 <= s <= 100
            assert 0 <= l <= 255

    def test_plane_matches_scalar(self):
        rng = np.random.default_rng(1)
        img = RgbImage(rng.integers(0, 256, size=(4, 5, 3)))
        plane = rgb_to_hsl_plane(img)
        for y in range(4):
            for x in range(5):
                assert tuple(plane[y, x]) == tuple(rgb_to_hsl(img.pixel(x, y)))

    def test_inverse_round_trip(self):
        rng = np.random.default_rng(2)
        for rgb in rng.integers(0, 256, size=(2000, 3)):
            rgb = tuple(int(c) for c in rgb)
            assert hsl_to_rgb(rgb_to_hsl(rgb)) == rgb


class TestHslDistance:
    def test_identical(self):
        p = HslPixel(30, 40, 200)
        assert hsl_distance(p, p) == 0

    def test_opposite_hues(self):
        assert hsl_distance(HslPixel(0, 50, 100), HslPixel(180, 50, 100)) == pytest.approx(100)

    def test_direct_evaluation(self):
        d = hsl_distance(HslPixel(30, 40, 200), HslPixel(90, 10, 180))
        assert d == pytest.approx(math.sqrt(1700), abs=1e-9)

    def test_symmetric_and_triangle(self):
        rng = np.random.default_rng(3)
        pixels = _random_hsl(rng, 300)
        for a, b, c in zip(pixels, pixels[1:], pixels[2:]):
            assert hsl_distance(a, b) == pytest.approx(hsl_distance(b, a))
            assert hsl_distance(a, c) <= hsl_distance(a, b) + hsl_distance(b, c) + 1e-9

    def test_matches_cylinder_embedding(self):
        rng = np.random.default_rng(4)
        pixels = _random_hsl(rng, 200)

        def embed(p):
            h = math.radians(p.h)
            return np.array([p.s * math.cos(h), p.s * math.sin(h), p.l])

        for a, b in zip(pixels, pixels[1:]):
            expected = float(np.linalg.norm(embed(a) - embed(b)))
            assert hsl_distance(a, b) == pytest.approx(expected, abs=1e-6)


class TestSimilar:
    def test_reflexive(self):
        p = HslPixel(200, 30, 90)
        assert similar(p, p, SimilarityThresholds(0, 0, 0))
        assert similar(p, p, DEFAULTS)

    def test_hue_difference_above_threshold(self):
        assert not similar(HslPixel(100, 50, 100), HslPixel(115, 50, 100), DEFAULTS)

    def test_boundaries_inclusive(self):
        a = HslPixel(10, 20, 30)
        b = HslPixel(20, 30, 78)
        assert similar(a, b, DEFAULTS)

    def test_hue_wraps(self):
        assert similar(HslPixel(1, 50, 100), HslPixel(359, 50, 100), DEFAULTS)

    def test_short_circuit_counts(self):
        a = HslPixel(100, 50, 100)
        assert similar_counted(a, HslPixel(150, 50, 100), DEFAULTS) == (False, 1)
        assert similar_counted(a, HslPixel(100, 80, 100), DEFAULTS) == (False, 2)
        assert similar_counted(a, HslPixel(100, 50, 200), DEFAULTS) == (False, 3)
        assert similar_counted(a, HslPixel(105, 55, 120), DEFAULTS) == (True, 3)

    def test_symmetric_and_monotone(self):
        rng = np.random.default_rng(5)
        pixels = _random_hsl(rng, 500)
        for a, b in zip(pixels, pixels[1:]):
            t = SimilarityThresholds(*rng.uniform(0, 120, size=3))
            bigger = SimilarityThresholds(t.ht + 5, t.st + 5, t.lt + 5)
            assert similar(a, b, t) == similar(b, a, t)
            if similar(a, b, t):
                assert similar(a, b, bigger)

    def test_zero_thresholds_mean_identical(self):
        a = HslPixel(10, 20, 30)
        assert similar(a, HslPixel(10, 20, 30), SimilarityThresholds(0, 0, 0))
        assert not similar(a, HslPixel(10, 20, 30.5), SimilarityThresholds(0, 0, 0))

    def test_negative_threshold_rejected(self):
        with pytest.raises(ParamsError):
            SimilarityThresholds(-1, 0, 0)


class TestLab:
    def test_white(self):
        lab = srgb_to_lab((255, 255, 255))
        assert lab.l == pytest.approx(100, abs=1e-3)
        assert lab.a == pytest.approx(0, abs=1e-3)
        assert lab.b == pytest.approx(0, abs=1e-3)

    def test_black(self):
        assert tuple(srgb_to_lab((0, 0, 0))) == pytest.approx((0, 0, 0), abs=1e-12)

    def test_mid_gray(self):
        lab = srgb_to_lab((118, 118, 118))
        assert lab.l == pytest.approx(50, abs=0.5)
        assert lab.a == pytest.approx(0, abs=1e-3)
        assert lab.b == pytest.approx(0, abs=1e-3)

    def test_lightness_in_range(self):
        rng = np.random.default_rng(6)
        for rgb in rng.integers(0, 256, size=(500, 3)):
            assert 0 <= srgb_to_lab(tuple(rgb)).l <= 100 + 1e-6

    def test_delta_e(self):
        assert delta_e(LabPixel(50, 0, 0), LabPixel(60, 0, 0)) == pytest.approx(10)
        assert delta_e(LabPixel(1, 2, 3), LabPixel(1, 2, 3)) == 0

    def test_delta_e_formula(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            a = LabPixel(*rng.uniform(-100, 100, size=3))
            b = LabPixel(*rng.uniform(-100, 100, size=3))
            expected = math.sqrt((a.l - b.l) ** 2 + (a.a - b.a) ** 2 + (a.b - b.b) ** 2)
            assert delta_e(a, b) == pytest.approx(expected, rel=1e-12)


class TestOpponent:
    def test_zero(self):
        assert np.array_equal(xyz_to_opponent(np.zeros(3)), np.zeros(3))

    def test_round_trip_and_additivity(self):
        rng = np.random.default_rng(8)
        for _ in range(200):
            u, v = rng.uniform(-2, 2, size=(2, 3))
            assert np.allclose(opponent_to_xyz(xyz_to_opponent(v)), v, atol=1e-9)
            assert np.allclose(
                xyz_to_opponent(u + v), xyz_to_opponent(u) + xyz_to_opponent(v), atol=1e-9
            )

    def test_coefficients(self):
        o = xyz_to_opponent(np.array([1.0, 0.0, 0.0]))
        assert tuple(o) == pytest.approx((0.279, -0.449, 0.086))

    def test_singular_matrix_rejected(self):
        with pytest.raises(ConfigError):
            ColorSettings(opponent=((1, 2, 3), (2, 4, 6), (0, 0, 1)))
