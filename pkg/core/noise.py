"""
Коррелированный импульсный шум.

Каждый пиксель искажается независимо с вероятностью p. Для искажённого
пикселя по весам channel_mix выбирается подмножество каналов
(только R, только G, только B или все три), и каждый выбранный канал
заменяется значением, равновероятно взятым из impulse_values.
Случайные числа получаются хешированием (seed, индекс пикселя, номер потока),
поэтому результат не зависит от порядка обхода и числа потоков.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Mapping, Optional, Tuple, Union

import numpy as np
from dotenv import dotenv_values

from config import (
    CHANNEL_MAX,
    DEFAULT_CHANNEL_MIX,
    DEFAULT_IMPULSES,
    DEFAULT_NOISE_P,
    DEFAULT_SEED,
    ERROR_CONFIG_VALUE,
    ERROR_NOISE_IMPULSES,
    ERROR_NOISE_MIX,
    ERROR_NOISE_P,
    ERROR_NOISE_SEED,
    LOG_NOISE_DONE,
    MIX_TOLERANCE,
)
from core.errors import ConfigError, ParamsError
from core.imgcore import RgbImage
from utils.validation import float_list, int_list

NOISE_KEYS = ("NOISE_P", "NOISE_MIX", "NOISE_IMPULSES", "NOISE_SEED")

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_STREAMS = 5
_ALL_CHANNELS = 3


@dataclass(frozen=True)
class NoiseSpec:
    p: float = DEFAULT_NOISE_P
    channel_mix: Tuple[float, float, float, float] = DEFAULT_CHANNEL_MIX
    impulse_values: Tuple[int, ...] = DEFAULT_IMPULSES
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ParamsError(ERROR_NOISE_P.format(self.p))
        mix = tuple(float(v) for v in self.channel_mix)
        if (
            len(mix) != 4
            or min(mix) < 0
            or abs(sum(mix) - 1.0) > MIX_TOLERANCE
        ):
            raise ParamsError(ERROR_NOISE_MIX.format(self.channel_mix))
        values = tuple(int(v) for v in self.impulse_values)
        if not values or min(values) < 0 or max(values) > CHANNEL_MAX:
            raise ParamsError(ERROR_NOISE_IMPULSES.format(self.impulse_values))
        if not 0 <= int(self.seed) < 2**64:
            raise ParamsError(ERROR_NOISE_SEED.format(self.seed))
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "channel_mix", mix)
        object.__setattr__(self, "impulse_values", values)
        object.__setattr__(self, "seed", int(self.seed))

    def to_mapping(self) -> Dict[str, str]:
        return {
            "NOISE_P": repr(self.p),
            "NOISE_MIX": ",".join(repr(v) for v in self.channel_mix),
            "NOISE_IMPULSES": ",".join(str(v) for v in self.impulse_values),
            "NOISE_SEED": str(self.seed),
        }

    @classmethod
    def from_mapping(
        cls, mapping: Mapping[str, Optional[str]], base: Optional["NoiseSpec"] = None
    ) -> "NoiseSpec":
        """Создаёт спецификацию из пар ключ-значение; отсутствующие ключи берутся из base."""
        base = base or cls()
        fields = {
            "p": base.p,
            "channel_mix": base.channel_mix,
            "impulse_values": base.impulse_values,
            "seed": base.seed,
        }
        parsers = {
            "NOISE_P": ("p", float),
            "NOISE_MIX": ("channel_mix", float_list),
            "NOISE_IMPULSES": ("impulse_values", int_list),
            "NOISE_SEED": ("seed", int),
        }
        for key, (field_name, parse) in parsers.items():
            raw = mapping.get(key)
            if raw is None:
                continue
            try:
                fields[field_name] = parse(raw)
            except ValueError as e:
                raise ConfigError(ERROR_CONFIG_VALUE.format(key, raw, e)) from e
        try:
            return cls(**fields)
        except ParamsError as e:
            raise ConfigError(str(e)) from e


def save_spec(spec: NoiseSpec, path: Union[str, Path]) -> None:
    lines = [f"{key}={value}" for key, value in spec.to_mapping().items()]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_spec(path: Union[str, Path], base: Optional[NoiseSpec] = None) -> NoiseSpec:
    return NoiseSpec.from_mapping(dotenv_values(path), base)


def _splitmix64(x: np.ndarray) -> np.ndarray:
    z = x + _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def keyed_uniforms(seed: int, count: int, streams: int = _STREAMS) -> np.ndarray:
    """
    Равномерные числа в [0, 1) формы (streams, count).
    Элемент [s, i] зависит только от (seed, i, s).
    """
    key = _splitmix64(np.array([seed], dtype=np.uint64))[0]
    index = np.arange(count, dtype=np.uint64) * np.uint64(streams)
    out = np.empty((streams, count), dtype=np.float64)
    for s in range(streams):
        h = _splitmix64(_splitmix64((index + np.uint64(s)) ^ key))
        out[s] = (h >> np.uint64(11)).astype(np.float64) * (1.0 / 2**53)
    return out


def inject(img: RgbImage, spec: NoiseSpec) -> Tuple[RgbImage, np.ndarray]:
    """Возвращает зашумлённое изображение и маску искажённых пикселей."""
    count = img.pixel_count
    u = keyed_uniforms(spec.seed, count)
    hit = u[0] < spec.p
    subset = np.searchsorted(np.cumsum(spec.channel_mix), u[1], side="right")
    subset = np.minimum(subset, _ALL_CHANNELS)
    values = np.asarray(spec.impulse_values, dtype=np.uint8)
    flat = img.data.reshape(count, 3).copy()
    for c in range(3):
        chosen = hit & ((subset == c) | (subset == _ALL_CHANNELS))
        pick = np.minimum((u[2 + c] * len(values)).astype(np.int64), len(values) - 1)
        flat[:, c] = np.where(chosen, values[pick], flat[:, c])
    mask = hit.reshape(img.height, img.width)
    logging.info(
        LOG_NOISE_DONE.format(spec.p, spec.seed, int(hit.sum()), count)
    )
    return RgbImage(flat.reshape(img.data.shape)), mask


def mask_to_image(mask: np.ndarray) -> RgbImage:
    """Маска в виде чёрно-белого изображения: белые пиксели искажены."""
    gray = np.where(np.asarray(mask, dtype=bool), CHANNEL_MAX, 0)
    return RgbImage(np.repeat(gray[..., None], 3, axis=2))
