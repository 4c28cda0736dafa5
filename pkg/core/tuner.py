"""
Подбор параметров FHSF перебором по сетке.

Для каждого изображения шум вносится один раз, затем изображение
фильтруется каждой конфигурацией сетки и для результата считается PCD.
Конфигурации перечисляются в лексикографическом порядке (m, Ht, St, Lt),
а ранжирование устойчиво, поэтому при равных PCD выигрывает
лексикографически меньшая конфигурация.
"""

import hashlib
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from config import (
    ERROR_FRACTION,
    ERROR_GRID_M,
    ERROR_GRID_RANGE,
    ERROR_GRID_STEP,
    ERROR_NO_IMAGES,
    GRID_HT_RANGE,
    GRID_LT_RANGE,
    GRID_M_RANGE,
    GRID_ST_RANGE,
    LOG_TUNE_EMPTY,
    LOG_TUNE_IMAGE,
    RANGE_EPSILON,
    TOP_FRACTION,
    TUNE_EMPTY_DIAGNOSTIC,
)
from core.colorspace import SimilarityThresholds, delta_e_array, srgb_to_lab_array
from core.errors import ParamsError
from core.filters import FhsfParams, fhsf_filter
from core.imgcore import RgbImage
from core.metrics import DEFAULT_SCIELAB, SCielabConfig, mae, mse, pcd_against, scielab_lab
from core.noise import NoiseSpec, inject

PARAM_NAMES = ("m", "Ht", "St", "Lt")


@dataclass(frozen=True)
class ParamRange:
    """Включающий диапазон lo..hi с шагом step."""

    lo: float
    hi: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise ParamsError(ERROR_GRID_STEP.format(self.step))

    def values(self) -> List[float]:
        if self.hi < self.lo:
            return []
        count = int(math.floor((self.hi - self.lo) / self.step + RANGE_EPSILON)) + 1
        return [self.lo + i * self.step for i in range(count)]

    def __len__(self) -> int:
        return len(self.values())

    def __str__(self) -> str:
        return f"{self.lo:g}:{self.hi:g}:{self.step:g}"


@dataclass(frozen=True)
class ParamGrid:
    m_range: ParamRange
    ht_range: ParamRange
    st_range: ParamRange
    lt_range: ParamRange

    def __post_init__(self):
        for r in self.ranges():
            if not r.values():
                raise ParamsError(ERROR_GRID_RANGE.format(r))
        if any(m != int(m) for m in self.m_range.values()):
            raise ParamsError(ERROR_GRID_M.format(self.m_range))

    def ranges(self) -> Tuple[ParamRange, ParamRange, ParamRange, ParamRange]:
        return self.m_range, self.ht_range, self.st_range, self.lt_range

    @property
    def size(self) -> int:
        return math.prod(len(r) for r in self.ranges())

    def configs(self) -> List[FhsfParams]:
        """Все конфигурации сетки в лексикографическом порядке."""
        return [
            FhsfParams(m, SimilarityThresholds(ht, st, lt))
            for m, ht, st, lt in itertools.product(
                *(r.values() for r in self.ranges())
            )
        ]


DEFAULT_GRID = ParamGrid(
    ParamRange(*GRID_M_RANGE),
    ParamRange(*GRID_HT_RANGE),
    ParamRange(*GRID_ST_RANGE),
    ParamRange(*GRID_LT_RANGE),
)


@dataclass
class TuneResult:
    """
    Результаты перебора: строки массивов соответствуют изображениям,
    столбцы соответствуют конфигурациям в порядке configs.
    """

    configs: List[FhsfParams]
    image_names: List[str]
    pcd: np.ndarray
    mae: np.ndarray
    mse: np.ndarray
    ncd: np.ndarray
    rankings: List[np.ndarray] = field(init=False)

    def __post_init__(self):
        self.rankings = [np.argsort(row, kind="stable") for row in self.pcd]

    @property
    def image_count(self) -> int:
        return len(self.image_names)

    def global_ranking(self) -> np.ndarray:
        return np.argsort(self.pcd.sum(axis=0), kind="stable")

    def ranked_configs(self, image: int) -> List[FhsfParams]:
        return [self.configs[i] for i in self.rankings[image]]

    def rows(self) -> List[Tuple]:
        """По строке на пару (изображение, конфигурация), в порядке сетки."""
        rows = []
        for i, name in enumerate(self.image_names):
            for j, params in enumerate(self.configs):
                rows.append(
                    (name,) + params.key() + (
                        float(self.pcd[i, j]),
                        float(self.mae[i, j]),
                        float(self.mse[i, j]),
                        float(self.ncd[i, j]),
                    )
                )
        return rows


class TopFraction(NamedTuple):
    configs: List[FhsfParams]
    diagnostic: Optional[str]


def _ncd_from_lab(lab_o: np.ndarray, img: RgbImage, norm: float, color) -> float:
    return float(np.sum(delta_e_array(lab_o, srgb_to_lab_array(img.data, color)))) / norm


def grid_search(
    originals: Sequence[RgbImage],
    spec: NoiseSpec,
    grid: ParamGrid,
    cfg: SCielabConfig = DEFAULT_SCIELAB,
    workers: int = 1,
    names: Optional[Sequence[str]] = None,
) -> TuneResult:
    if not originals:
        raise ParamsError(ERROR_NO_IMAGES)
    configs = grid.configs()
    names = list(names) if names is not None else [
        f"image{i + 1}" for i in range(len(originals))
    ]
    shape = (len(originals), len(configs))
    pcd = np.empty(shape)
    mae_v = np.empty(shape)
    mse_v = np.empty(shape)
    ncd_v = np.empty(shape)
    for i, original in enumerate(originals):
        logging.info(LOG_TUNE_IMAGE.format(i + 1, len(originals), len(configs)))
        noisy, _ = inject(original, spec)
        reference = scielab_lab(original, cfg)
        lab_o = srgb_to_lab_array(original.data, cfg.color)
        norm = float(np.sum(np.sqrt(np.sum(lab_o * lab_o, axis=-1))))
        # Метрики кэшируются по содержимому результата фильтрации.
        seen: Dict[bytes, Tuple[float, float, float, float]] = {}
        for j, params in enumerate(configs):
            filtered, _ = fhsf_filter(noisy, params, workers)
            digest = hashlib.blake2b(filtered.to_bytes(), digest_size=16).digest()
            if digest not in seen:
                seen[digest] = (
                    pcd_against(reference, filtered, cfg),
                    mae(original, filtered),
                    mse(original, filtered),
                    _ncd_from_lab(lab_o, filtered, norm, cfg.color)
                    if norm > 0
                    else float("nan"),
                )
            pcd[i, j], mae_v[i, j], mse_v[i, j], ncd_v[i, j] = seen[digest]
    return TuneResult(configs, names, pcd, mae_v, mse_v, ncd_v)


def top_count(size: int, fraction: float) -> int:
    return max(1, int(math.ceil(fraction * size - RANGE_EPSILON)))


def top_fraction_intersect(
    result: TuneResult, fraction: float = TOP_FRACTION
) -> TopFraction:
    """
    Пересечение списков лучших конфигураций по всем изображениям.
    Пустое пересечение не считается ошибкой и возвращается вместе с пояснением.
    """
    if not 0 < fraction <= 1:
        raise ParamsError(ERROR_FRACTION.format(fraction))
    k = top_count(len(result.configs), fraction)
    common = set(result.rankings[0][:k].tolist())
    for ranking in result.rankings[1:]:
        common &= set(ranking[:k].tolist())
    configs = [result.configs[j] for j in sorted(common)]
    if configs:
        return TopFraction(configs, None)
    logging.warning(LOG_TUNE_EMPTY.format(fraction))
    return TopFraction([], TUNE_EMPTY_DIAGNOSTIC.format(fraction, result.image_count))


def min_pcd_per_m(result: TuneResult) -> Dict[int, List[float]]:
    """Для каждого m находит минимальный PCD по всем (Ht, St, Lt), отдельно для каждого изображения."""
    ms = np.array([c.m for c in result.configs])
    return {
        int(m): [float(v) for v in result.pcd[:, ms == m].min(axis=1)]
        for m in sorted(set(ms.tolist()))
    }


def best_m(result: TuneResult) -> List[int]:
    """m с наименьшим PCD для каждого изображения; при равенстве берётся меньшее m."""
    minima = min_pcd_per_m(result)
    ms = sorted(minima)
    table = np.array([minima[m] for m in ms])
    return [ms[int(i)] for i in np.argmin(table, axis=0)]


def summarize_ranges(
    configs: Sequence[FhsfParams],
) -> Dict[str, Tuple[float, float]]:
    if not configs:
        return {}
    columns = list(zip(*(c.key() for c in configs)))
    return {
        name: (min(column), max(column))
        for name, column in zip(PARAM_NAMES, columns)
    }
