"""
Файл конфигурации в формате .env (ключ=значение).

Пример:
    OPPONENT_MATRIX=0.279,0.72,-0.107;-0.449,0.29,-0.077;0.086,-0.59,0.501
    WHITE_POINT=0.95047,1.0,1.08883
    SAMPLES_PER_DEGREE=23
    SCIELAB_PLANE_1=0.921:0.0283,0.105:0.133,-0.108:4.336
    NOISE_P=0.1
    FHSF_M=3
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Optional, Tuple, TypeVar

from dotenv import dotenv_values

from config import (
    ERROR_CONFIG_VALUE,
    LOG_CONFIG_LOADED,
    LOG_CONFIG_UNKNOWN_KEY,
    SCIELAB_PLANES,
)
from core.colorspace import DEFAULT_COLOR, ColorSettings, SimilarityThresholds
from core.errors import ConfigError, FhsfError
from core.filters import FhsfParams
from core.metrics import DEFAULT_SCIELAB, SCielabConfig
from core.noise import NOISE_KEYS, NoiseSpec
from utils.validation import float_list

T = TypeVar("T")

PLANE_KEYS = ("SCIELAB_PLANE_1", "SCIELAB_PLANE_2", "SCIELAB_PLANE_3")
FHSF_KEYS = ("FHSF_M", "FHSF_HT", "FHSF_ST", "FHSF_LT")
KNOWN_KEYS = (
    ("OPPONENT_MATRIX", "WHITE_POINT", "SAMPLES_PER_DEGREE")
    + PLANE_KEYS
    + NOISE_KEYS
    + FHSF_KEYS
)


@dataclass(frozen=True)
class Settings:
    color: ColorSettings = DEFAULT_COLOR
    scielab: SCielabConfig = DEFAULT_SCIELAB
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    fhsf: FhsfParams = field(default_factory=FhsfParams)


def _matrix(text: str) -> Tuple[Tuple[float, ...], ...]:
    rows = tuple(float_list(row) for row in text.split(";") if row.strip())
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError(text)
    return rows


def _triple(text: str) -> Tuple[float, ...]:
    values = float_list(text)
    if len(values) != 3:
        raise ValueError(text)
    return values


def _mixture(text: str) -> Tuple[Tuple[float, float], ...]:
    pairs = []
    for item in text.split(","):
        weight, _, spread = item.partition(":")
        pairs.append((float(weight), float(spread)))
    return tuple(pairs)


def _parse(values: Dict[str, Optional[str]], key: str, parse: Callable[[str], T], default: T) -> T:
    raw = values.get(key)
    if raw is None:
        return default
    try:
        return parse(raw)
    except ValueError as e:
        raise ConfigError(ERROR_CONFIG_VALUE.format(key, raw, e)) from e


def settings_from_mapping(values: Dict[str, Optional[str]]) -> Settings:
    for key in values:
        if key not in KNOWN_KEYS:
            logging.warning(LOG_CONFIG_UNKNOWN_KEY.format(key))
    color = ColorSettings(
        _parse(values, "OPPONENT_MATRIX", _matrix, DEFAULT_COLOR.opponent),
        _parse(values, "WHITE_POINT", _triple, DEFAULT_COLOR.white_point),
    )
    planes = tuple(
        _parse(values, key, _mixture, default)
        for key, default in zip(PLANE_KEYS, SCIELAB_PLANES)
    )
    scielab = SCielabConfig(
        _parse(values, "SAMPLES_PER_DEGREE", float, DEFAULT_SCIELAB.samples_per_degree),
        planes,
        color,
    )
    noise = NoiseSpec.from_mapping(values)
    defaults = FhsfParams()
    try:
        fhsf = FhsfParams(
            _parse(values, "FHSF_M", int, defaults.m),
            SimilarityThresholds(
                _parse(values, "FHSF_HT", float, defaults.thresholds.ht),
                _parse(values, "FHSF_ST", float, defaults.thresholds.st),
                _parse(values, "FHSF_LT", float, defaults.thresholds.lt),
            ),
        )
    except ConfigError:
        raise
    except FhsfError as e:
        raise ConfigError(str(e)) from e
    return Settings(color, scielab, noise, fhsf)


def load_settings(path: Optional[Path] = None) -> Settings:
    """Читает файл конфигурации; без пути возвращает встроенные значения."""
    if path is None:
        return Settings()
    if not path.is_file():
        raise FileNotFoundError(str(path))
    settings = settings_from_mapping(dotenv_values(path))
    logging.info(LOG_CONFIG_LOADED.format(path))
    return settings
