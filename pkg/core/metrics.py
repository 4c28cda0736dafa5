"""
Критерии качества: MAE, MSE, NCD и PCD (S-CIELAB).

PCD считается так: оба изображения переводятся в XYZ и далее в
оппонентные плоскости, каждая плоскость сглаживается своей смесью
гауссиан (сепарабельно, с повтором краёв), результат возвращается
в XYZ, затем в CIELAB, и берётся среднее попиксельное ΔE*ab.
"""

import logging
import math
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np
from scipy.ndimage import correlate1d

from config import (
    CHANNEL_MAX,
    DIFF_GAIN,
    ERROR_CONFIG_SPREAD,
    ERROR_DIMENSIONS,
    ERROR_NCD_DENOMINATOR,
    KERNEL_RADIUS_FACTOR,
    LOG_METRICS_DONE,
    SAMPLES_PER_DEGREE,
    SCIELAB_PLANES,
)
from core.colorspace import (
    DEFAULT_COLOR,
    ColorSettings,
    delta_e_array,
    opponent_to_xyz,
    srgb_to_lab_array,
    srgb_to_xyz_array,
    xyz_to_lab_array,
    xyz_to_opponent,
)
from core.errors import ConfigError, DegenerateImageError, DimensionMismatchError
from core.imgcore import RgbImage

Mixture = Tuple[Tuple[float, float], ...]

_NCD_MIN_DENOMINATOR = 1e-9


@dataclass(frozen=True)
class SCielabConfig:
    samples_per_degree: float = SAMPLES_PER_DEGREE
    planes: Tuple[Mixture, Mixture, Mixture] = SCIELAB_PLANES
    color: ColorSettings = DEFAULT_COLOR

    def __post_init__(self):
        if not self.samples_per_degree > 0:
            raise ConfigError(ERROR_CONFIG_SPREAD.format(self.samples_per_degree))
        planes = tuple(
            tuple((float(w), float(s)) for w, s in plane) for plane in self.planes
        )
        if len(planes) != 3:
            raise ConfigError(ERROR_CONFIG_SPREAD.format(self.planes))
        for plane in planes:
            if not plane or any(not s > 0 for _, s in plane):
                raise ConfigError(ERROR_CONFIG_SPREAD.format(plane))
            if abs(sum(w for w, _ in plane)) < 1e-12:
                raise ConfigError(ERROR_CONFIG_SPREAD.format(plane))
        object.__setattr__(self, "samples_per_degree", float(self.samples_per_degree))
        object.__setattr__(self, "planes", planes)


DEFAULT_SCIELAB = SCielabConfig()


@dataclass
class MetricReport:
    mae: float
    mse: float
    ncd: float
    pcd: float
    elapsed: float = 0.0
    distance_evals: int = 0

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)


def _check_dims(a: RgbImage, b: RgbImage) -> None:
    if a.data.shape != b.data.shape:
        raise DimensionMismatchError(
            ERROR_DIMENSIONS.format(a.width, a.height, b.width, b.height)
        )


def _diff(a: RgbImage, b: RgbImage) -> np.ndarray:
    _check_dims(a, b)
    return a.data.astype(np.float64) - b.data.astype(np.float64)


def mae(a: RgbImage, b: RgbImage) -> float:
    return float(np.mean(np.abs(_diff(a, b))))


def mse(a: RgbImage, b: RgbImage) -> float:
    d = _diff(a, b)
    return float(np.mean(d * d))


def ncd(
    original: RgbImage, filtered: RgbImage, color: ColorSettings = DEFAULT_COLOR
) -> float:
    """Сумма ΔE*ab, нормированная на сумму модулей Lab исходного изображения."""
    _check_dims(original, filtered)
    lab_o = srgb_to_lab_array(original.data, color)
    lab_f = srgb_to_lab_array(filtered.data, color)
    denominator = float(np.sum(np.sqrt(np.sum(lab_o * lab_o, axis=-1))))
    if denominator <= _NCD_MIN_DENOMINATOR:
        raise DegenerateImageError(ERROR_NCD_DENOMINATOR)
    return float(np.sum(delta_e_array(lab_o, lab_f))) / denominator


@lru_cache(maxsize=32)
def plane_kernels(
    samples_per_degree: float, mixture: Mixture
) -> Tuple[Tuple[float, np.ndarray], ...]:
    """
    Одномерные ядра компонент смеси с общим радиусом 3 * max(sigma).
    Каждое ядро нормировано к единичной сумме.
    """
    sigmas = [spread * samples_per_degree for _, spread in mixture]
    radius = int(math.ceil(KERNEL_RADIUS_FACTOR * max(sigmas)))
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    kernels = []
    for (weight, _), sigma in zip(mixture, sigmas):
        g = np.exp(-(x * x) / (2.0 * sigma * sigma))
        g /= g.sum()
        g.setflags(write=False)
        kernels.append((weight, g))
    return tuple(kernels)


def _blur_plane(plane: np.ndarray, kernels) -> np.ndarray:
    total = np.zeros_like(plane)
    weights = 0.0
    for weight, g in kernels:
        smooth = correlate1d(plane, g, axis=0, mode="nearest")
        smooth = correlate1d(smooth, g, axis=1, mode="nearest")
        total += weight * smooth
        weights += weight
    return total / weights


def scielab_lab(img: RgbImage, cfg: SCielabConfig = DEFAULT_SCIELAB) -> np.ndarray:
    """Пространственно сглаженное представление изображения в CIELAB, форма (H, W, 3)."""
    opponent = xyz_to_opponent(srgb_to_xyz_array(img.data), cfg.color)
    blurred = np.empty_like(opponent)
    for c, mixture in enumerate(cfg.planes):
        blurred[..., c] = _blur_plane(
            np.ascontiguousarray(opponent[..., c]),
            plane_kernels(cfg.samples_per_degree, mixture),
        )
    return xyz_to_lab_array(opponent_to_xyz(blurred, cfg.color), cfg.color.white_point)


def scielab_map(
    a: RgbImage, b: RgbImage, cfg: SCielabConfig = DEFAULT_SCIELAB
) -> np.ndarray:
    _check_dims(a, b)
    return delta_e_array(scielab_lab(a, cfg), scielab_lab(b, cfg))


def pcd(a: RgbImage, b: RgbImage, cfg: SCielabConfig = DEFAULT_SCIELAB) -> float:
    return float(np.mean(scielab_map(a, b, cfg)))


def pcd_against(
    reference_lab: np.ndarray, img: RgbImage, cfg: SCielabConfig = DEFAULT_SCIELAB
) -> float:
    """PCD относительно заранее посчитанного поля scielab_lab эталона."""
    if reference_lab.shape != img.data.shape:
        raise DimensionMismatchError(
            ERROR_DIMENSIONS.format(
                reference_lab.shape[1], reference_lab.shape[0], img.width, img.height
            )
        )
    return float(np.mean(delta_e_array(reference_lab, scielab_lab(img, cfg))))


def evaluate(
    original: RgbImage,
    processed: RgbImage,
    cfg: SCielabConfig = DEFAULT_SCIELAB,
    elapsed: float = 0.0,
    distance_evals: int = 0,
) -> MetricReport:
    report = MetricReport(
        mae=mae(original, processed),
        mse=mse(original, processed),
        ncd=ncd(original, processed, cfg.color),
        pcd=pcd(original, processed, cfg),
        elapsed=elapsed,
        distance_evals=distance_evals,
    )
    logging.debug(
        LOG_METRICS_DONE.format(report.mae, report.mse, report.ncd, report.pcd)
    )
    return report


def diff_image(a: RgbImage, b: RgbImage, gain: int = DIFF_GAIN) -> RgbImage:
    """Разностное изображение: |a - b| * gain, обращённое (совпадение = белый)."""
    d = np.abs(_diff(a, b)) * gain
    return RgbImage(CHANNEL_MAX - np.minimum(CHANNEL_MAX, d).astype(np.int64))
