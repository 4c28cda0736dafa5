import colorsys
from typing import Callable, Sequence

import numpy as np
import pytest

from core.imgcore import RgbImage
from core.noise import NoiseSpec, inject


def make_natural(
    width: int = 128,
    height: int = 128,
    seed: int = 0,
    regions: int = 12,
    texture: float = 2.0,
) -> RgbImage:
    """
    Кусочно-гладкое изображение: области Вороного насыщенных цветов
    с плавным градиентом светлоты и лёгкой текстурой.
    """
    rng = np.random.default_rng(seed)
    centers = rng.uniform((0, 0), (width, height), size=(regions, 2))
    ys, xs = np.mgrid[0:height, 0:width].astype(np.float64)
    dist = (xs[..., None] - centers[:, 0]) ** 2 + (ys[..., None] - centers[:, 1]) ** 2
    label = np.argmin(dist, axis=-1)

    colors = np.empty((regions, 3))
    for k in range(regions):
        h = rng.uniform(0.0, 1.0)
        l = rng.uniform(0.45, 0.55)
        s = rng.uniform(0.35, 0.5)
        colors[k] = np.array(colorsys.hls_to_rgb(h, l, s)) * 255.0
    slopes = rng.uniform(-0.15, 0.15, size=(regions, 2))

    img = colors[label]
    shade = slopes[label, 0] * (xs - centers[label, 0]) + slopes[label, 1] * (
        ys - centers[label, 1]
    )
    img += np.clip(shade, -25.0, 25.0)[..., None]
    img += rng.normal(0.0, texture, size=img.shape)
    return RgbImage(np.clip(np.rint(img), 0, 255).astype(np.int64))


def make_distinct(width: int, height: int, seed: int = 0) -> RgbImage:
    """Изображение, все пиксели которого попарно различны."""
    rng = np.random.default_rng(seed)
    codes = rng.choice(2**24, size=width * height, replace=False)
    rgb = np.stack([(codes >> 16) & 255, (codes >> 8) & 255, codes & 255], axis=-1)
    return RgbImage(rgb.reshape(height, width, 3))


@pytest.fixture
def natural_image() -> Callable[..., RgbImage]:
    return make_natural


@pytest.fixture
def distinct_image() -> Callable[..., RgbImage]:
    return make_distinct


@pytest.fixture
def constant_image() -> Callable[..., RgbImage]:
    def factory(
        width: int = 16, height: int = 16, color: Sequence[int] = (100, 150, 200)
    ) -> RgbImage:
        return RgbImage.constant(width, height, color)

    return factory


@pytest.fixture
def noisy_natural():
    """Фабрика пар (оригинал, зашумлённое изображение)."""

    def factory(p: float, size: int = 128, seed: int = 0, **kwargs):
        original = make_natural(size, size, seed=seed, **kwargs)
        noisy, _ = inject(original, NoiseSpec(p=p, seed=seed + 1000))
        return original, noisy

    return factory


@pytest.fixture
def journal_home(tmp_path, monkeypatch):
    """Отдельная папка приложения для журнала запусков."""
    monkeypatch.setenv("FHSF_HOME", str(tmp_path))
    monkeypatch.delenv("FHSF_CONFIG", raising=False)
    return tmp_path
