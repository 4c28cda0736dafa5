from dataclasses import dataclass
from typing import NamedTuple, Sequence, Tuple

import numpy as np

from config import (
    CHANNEL_MAX,
    D65_WHITE,
    ERROR_CONFIG_SINGULAR,
    ERROR_PARAM_NEGATIVE,
    HUE_RANGE,
    LIGHTNESS_MAX,
    OPPONENT_MATRIX,
    SATURATION_MAX,
    SINGULAR_DET,
    SRGB_TO_XYZ,
)
from core import kernels
from core.errors import ConfigError, ParamsError
from core.imgcore import RgbImage, Rgb

_LAB_EPSILON = 216.0 / 24389.0
_LAB_KAPPA = 24389.0 / 27.0


class HslPixel(NamedTuple):
    h: float
    s: float
    l: float


class LabPixel(NamedTuple):
    l: float
    a: float
    b: float


@dataclass(frozen=True)
class SimilarityThresholds:
    """Пороги Ht, St, Lt предиката похожести."""

    ht: float
    st: float
    lt: float

    def __post_init__(self):
        for name, value in (("Ht", self.ht), ("St", self.st), ("Lt", self.lt)):
            if not value >= 0:
                raise ParamsError(ERROR_PARAM_NEGATIVE.format(name, value))
        object.__setattr__(self, "ht", float(self.ht))
        object.__setattr__(self, "st", float(self.st))
        object.__setattr__(self, "lt", float(self.lt))

    def astuple(self) -> Tuple[float, float, float]:
        return self.ht, self.st, self.lt


@dataclass(frozen=True)
class ColorSettings:
    """
    Константы колориметрии: матрица оппонентного преобразования
    и опорный белый для CIELAB. Вырожденная матрица отвергается сразу.
    """

    opponent: Tuple[Tuple[float, ...], ...] = OPPONENT_MATRIX
    white_point: Tuple[float, float, float] = D65_WHITE

    def __post_init__(self):
        matrix = np.asarray(self.opponent, dtype=np.float64)
        if matrix.shape != (3, 3) or abs(np.linalg.det(matrix)) < SINGULAR_DET:
            raise ConfigError(ERROR_CONFIG_SINGULAR)
        object.__setattr__(
            self, "opponent", tuple(tuple(float(v) for v in row) for row in matrix)
        )
        object.__setattr__(
            self, "white_point", tuple(float(v) for v in self.white_point)
        )

    @property
    def opponent_matrix(self) -> np.ndarray:
        return np.asarray(self.opponent, dtype=np.float64)

    @property
    def opponent_inverse(self) -> np.ndarray:
        return np.linalg.inv(self.opponent_matrix)


DEFAULT_COLOR = ColorSettings()


def rgb_to_hsl(p: Sequence[int]) -> HslPixel:
    """Двойной шестигранный конус: H в градусах, S в [0, 100], L в [0, 255]."""
    r, g, b = p
    return HslPixel(*kernels.hsl_of(float(r), float(g), float(b)))


def hsl_to_rgb(p: HslPixel) -> Rgb:
    """Обратное преобразование с округлением до ближайшего целого."""
    h, s, l = p
    chroma = s / SATURATION_MAX * (LIGHTNESS_MAX - abs(2.0 * l - LIGHTNESS_MAX))
    sector = (h % HUE_RANGE) / 60.0
    second = chroma * (1.0 - abs(sector % 2.0 - 1.0))
    if sector < 1:
        rgb = (chroma, second, 0.0)
    elif sector < 2:
        rgb = (second, chroma, 0.0)
    elif sector < 3:
        rgb = (0.0, chroma, second)
    elif sector < 4:
        rgb = (0.0, second, chroma)
    elif sector < 5:
        rgb = (second, 0.0, chroma)
    else:
        rgb = (chroma, 0.0, second)
    base = l - chroma / 2.0
    r, g, b = (int(min(CHANNEL_MAX, max(0, round(c + base)))) for c in rgb)
    return r, g, b


def rgb_to_hsl_plane(img: RgbImage) -> np.ndarray:
    return kernels.hsl_plane(img.data)


def hsl_distance(a: HslPixel, b: HslPixel) -> float:
    return kernels.hsl_distance_of(
        float(a.h), float(a.s), float(a.l), float(b.h), float(b.s), float(b.l)
    )


def similar_counted(
    a: HslPixel, b: HslPixel, t: SimilarityThresholds
) -> Tuple[bool, int]:
    """Предикат похожести и число выполненных сравнений компонент (1..3)."""
    ok, comparisons = kernels.similar_of(
        float(a.h), float(a.s), float(a.l),
        float(b.h), float(b.s), float(b.l),
        t.ht, t.st, t.lt,
    )
    return bool(ok), int(comparisons)


def similar(a: HslPixel, b: HslPixel, t: SimilarityThresholds) -> bool:
    return similar_counted(a, b, t)[0]


def srgb_to_xyz_array(rgb: np.ndarray) -> np.ndarray:
    """(..., 3) значения sRGB 0..255 -> XYZ с Y белого = 1."""
    c = np.asarray(rgb, dtype=np.float64) / CHANNEL_MAX
    linear = np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)
    return linear @ np.asarray(SRGB_TO_XYZ).T


def xyz_to_lab_array(
    xyz: np.ndarray, white: Sequence[float] = D65_WHITE
) -> np.ndarray:
    ratio = np.asarray(xyz, dtype=np.float64) / np.asarray(white)
    f = np.where(
        ratio > _LAB_EPSILON,
        np.cbrt(ratio),
        (_LAB_KAPPA * ratio + 16.0) / 116.0,
    )
    yr = ratio[..., 1]
    lightness = np.where(yr > _LAB_EPSILON, 116.0 * f[..., 1] - 16.0, _LAB_KAPPA * yr)
    a = 500.0 * (f[..., 0] - f[..., 1])
    b = 200.0 * (f[..., 1] - f[..., 2])
    return np.stack([lightness, a, b], axis=-1)


def srgb_to_lab_array(
    rgb: np.ndarray, settings: ColorSettings = DEFAULT_COLOR
) -> np.ndarray:
    return xyz_to_lab_array(srgb_to_xyz_array(rgb), settings.white_point)


def srgb_to_lab(p: Sequence[int], settings: ColorSettings = DEFAULT_COLOR) -> LabPixel:
    return LabPixel(*(float(v) for v in srgb_to_lab_array(np.asarray(p), settings)))


def delta_e_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    diff = np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)
    return np.sqrt(np.sum(diff * diff, axis=-1))


def delta_e(a: LabPixel, b: LabPixel) -> float:
    return float(delta_e_array(np.asarray(a), np.asarray(b)))


def xyz_to_opponent(
    v: np.ndarray, settings: ColorSettings = DEFAULT_COLOR
) -> np.ndarray:
    return np.asarray(v, dtype=np.float64) @ settings.opponent_matrix.T


def opponent_to_xyz(
    v: np.ndarray, settings: ColorSettings = DEFAULT_COLOR
) -> np.ndarray:
    return np.asarray(v, dtype=np.float64) @ settings.opponent_inverse.T
