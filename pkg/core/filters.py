import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from config import (
    DDF_GAMMA,
    DEFAULT_FPGF1_TOL,
    DEFAULT_FPGF2_TOL,
    DEFAULT_HSL_TOL,
    DEFAULT_HT,
    DEFAULT_LT,
    DEFAULT_M,
    DEFAULT_ST,
    DEFAULT_VMF_NORM,
    ERROR_PARAM_M,
    ERROR_PARAM_NEGATIVE,
    ERROR_PARAM_NORM,
    ERROR_PARAMS_SHAPE,
    ERROR_UNKNOWN_KIND,
    ERROR_WINDOW_SIZE,
    ERROR_WORKERS,
    LOG_FILTER_DONE,
    MAX_M,
    MIN_M,
    WINDOW_SIZE,
)
from core import kernels
from core.colorspace import HslPixel, SimilarityThresholds
from core.errors import ParamsError
from core.imgcore import Rgb, RgbImage, Window

T = TypeVar("T")


class FilterKind(str, Enum):
    VMF = "VMF"
    BVDF = "BVDF"
    DDF = "DDF"
    FPGF1 = "FPGF1"
    FPGF2 = "FPGF2"
    FHSF_S = "FHSF_S"
    FHSF_HSL = "FHSF_HSL"

    @classmethod
    def parse(cls, name: Union[str, "FilterKind"]) -> "FilterKind":
        if isinstance(name, FilterKind):
            return name
        key = str(name).strip().upper().replace("-", "_")
        key = {"FHSF": "FHSF_S", "FPGF": "FPGF2"}.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ParamsError(ERROR_UNKNOWN_KIND.format(name)) from None

    @property
    def is_switching(self) -> bool:
        return self in (
            FilterKind.FPGF1,
            FilterKind.FPGF2,
            FilterKind.FHSF_S,
            FilterKind.FHSF_HSL,
        )


def _check_m(m: int) -> int:
    if int(m) != m or not MIN_M <= m <= MAX_M:
        raise ParamsError(ERROR_PARAM_M.format(MIN_M, MAX_M, m))
    return int(m)


def _check_tol(tol: float) -> float:
    if not tol >= 0:
        raise ParamsError(ERROR_PARAM_NEGATIVE.format("Tol", tol))
    return float(tol)


def _check_norm(p: int) -> int:
    if p not in (1, 2):
        raise ParamsError(ERROR_PARAM_NORM.format(p))
    return int(p)


@dataclass(frozen=True)
class FhsfParams:
    m: int = DEFAULT_M
    thresholds: SimilarityThresholds = SimilarityThresholds(
        DEFAULT_HT, DEFAULT_ST, DEFAULT_LT
    )

    def __post_init__(self):
        object.__setattr__(self, "m", _check_m(self.m))

    def key(self) -> Tuple[int, float, float, float]:
        return (self.m,) + self.thresholds.astuple()


@dataclass(frozen=True)
class FpgfParams:
    m: int = DEFAULT_M
    tol: float = DEFAULT_FPGF2_TOL
    p: int = 2

    def __post_init__(self):
        object.__setattr__(self, "m", _check_m(self.m))
        object.__setattr__(self, "tol", _check_tol(self.tol))
        object.__setattr__(self, "p", _check_norm(self.p))


@dataclass(frozen=True)
class HslTolParams:
    """Параметры FHSF_HSL: размер группы и порог расстояния в HSL."""

    m: int = DEFAULT_M
    tol: float = DEFAULT_HSL_TOL

    def __post_init__(self):
        object.__setattr__(self, "m", _check_m(self.m))
        object.__setattr__(self, "tol", _check_tol(self.tol))


@dataclass(frozen=True)
class VmfParams:
    p: int = DEFAULT_VMF_NORM

    def __post_init__(self):
        object.__setattr__(self, "p", _check_norm(self.p))


@dataclass(frozen=True)
class DdfParams:
    gamma: float = DDF_GAMMA


FilterParams = Union[FhsfParams, FpgfParams, HslTolParams, VmfParams, DdfParams]


@dataclass
class FilterStats:
    kind: str
    pixels_switched: int
    distance_evals: int
    elapsed: float
    component_checks: int = 0
    noisy_mask: Optional[np.ndarray] = field(default=None, repr=False)
    peer_checks: Optional[np.ndarray] = field(default=None, repr=False)

    def as_dict(self) -> Dict[str, Union[str, int, float]]:
        data = asdict(self)
        data.pop("noisy_mask")
        data.pop("peer_checks")
        return data


def default_params(kind: FilterKind) -> Optional[FilterParams]:
    kind = FilterKind.parse(kind)
    return {
        FilterKind.VMF: VmfParams(),
        FilterKind.BVDF: None,
        FilterKind.DDF: DdfParams(),
        FilterKind.FPGF1: FpgfParams(tol=DEFAULT_FPGF1_TOL, p=1),
        FilterKind.FPGF2: FpgfParams(tol=DEFAULT_FPGF2_TOL, p=2),
        FilterKind.FHSF_S: FhsfParams(),
        FilterKind.FHSF_HSL: HslTolParams(),
    }[kind]


def _window_array(w: Union[Window, Sequence[Sequence[float]]]) -> np.ndarray:
    if isinstance(w, Window):
        return w.as_float()
    arr = np.ascontiguousarray(w, dtype=np.float64).reshape(-1, 3)
    if arr.shape[0] != WINDOW_SIZE:
        raise ParamsError(ERROR_WINDOW_SIZE.format(WINDOW_SIZE, arr.shape[0]))
    return arr


def _pick(win: np.ndarray, index: int) -> Rgb:
    r, g, b = win[index]
    return int(r), int(g), int(b)


def vmf_window(w: Window, p: int = DEFAULT_VMF_NORM) -> Rgb:
    """Векторная медиана: минимум суммы расстояний L_p; при равенстве берётся меньший индекс."""
    win = _window_array(w)
    return _pick(win, kernels.vmf_index(win, _check_norm(p), np.empty(WINDOW_SIZE)))


def bvdf_window(w: Window) -> Rgb:
    win = _window_array(w)
    return _pick(win, kernels.bvdf_index(win, np.empty(WINDOW_SIZE)))


def ddf_window(w: Window, gamma: float = DDF_GAMMA) -> Rgb:
    win = _window_array(w)
    index = kernels.ddf_index(
        win, float(gamma), np.empty(WINDOW_SIZE), np.empty(WINDOW_SIZE)
    )
    return _pick(win, index)


def peer_count_hsl(
    window: Sequence[HslPixel], t: SimilarityThresholds, m: int
) -> Tuple[bool, int]:
    """
    Подсчёт похожих соседей центра с ранним завершением.
    Возвращает (чистый ли центр, число выполненных проверок).
    """
    hwin = np.ascontiguousarray(
        [[p[0], p[1], p[2]] for p in window], dtype=np.float64
    )
    if hwin.shape != (WINDOW_SIZE, 3):
        raise ParamsError(ERROR_WINDOW_SIZE.format(WINDOW_SIZE, len(hwin)))
    # Окно 3x3 само служит плоскостью с рамкой: центр в [1, 1].
    plane = hwin.reshape(3, 3, 3)
    clean, checks, _ = kernels.peer_scan(
        plane, plane, 0, 0, kernels.MODE_S, _check_m(m), t.ht, t.st, t.lt, 2
    )
    return bool(clean), int(checks)


def _row_bands(height: int, workers: int) -> List[Tuple[int, int]]:
    bounds = np.linspace(0, height, min(workers, height) + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _run_bands(
    task: Callable[[int, int], T], height: int, workers: int
) -> List[T]:
    if workers < 1:
        raise ParamsError(ERROR_WORKERS.format(workers))
    bands = _row_bands(height, workers)
    if len(bands) == 1:
        return [task(*bands[0])]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda band: task(*band), bands))


def _switching(
    img: RgbImage,
    kind: FilterKind,
    mode: int,
    m: int,
    tolerances: Tuple[float, float, float],
    p: int,
    workers: int,
) -> Tuple[RgbImage, FilterStats]:
    start = time.perf_counter()
    rgb_pad = img.padded()
    if mode == kernels.MODE_RGB:
        hsl_pad = rgb_pad
    else:
        hsl_pad = kernels.hsl_plane(rgb_pad)
    out = np.empty(img.data.shape, dtype=np.float64)
    noisy = np.zeros((img.height, img.width), dtype=np.bool_)
    checks = np.zeros((img.height, img.width), dtype=np.int64)
    t0, t1, t2 = (float(t) for t in tolerances)

    def band(y0: int, y1: int):
        return kernels.switching_rows(
            rgb_pad, hsl_pad, out, noisy, checks, y0, y1,
            mode, int(m), t0, t1, t2, int(p),
        )

    totals = np.sum(_run_bands(band, img.height, workers), axis=0)
    result = RgbImage(out.astype(np.uint8))
    stats = FilterStats(
        kind=kind.value,
        pixels_switched=int(totals[0]),
        distance_evals=int(totals[1]),
        elapsed=time.perf_counter() - start,
        component_checks=int(totals[2]),
        noisy_mask=noisy,
        peer_checks=checks,
    )
    _log_stats(img, stats, workers)
    return result, stats


def _vector(
    img: RgbImage, kind: FilterKind, p: int, gamma: float, workers: int
) -> Tuple[RgbImage, FilterStats]:
    start = time.perf_counter()
    rgb_pad = img.padded()
    out = np.empty(img.data.shape, dtype=np.float64)
    code = {
        FilterKind.VMF: kernels.KIND_VMF,
        FilterKind.BVDF: kernels.KIND_BVDF,
        FilterKind.DDF: kernels.KIND_DDF,
    }[kind]

    def band(y0: int, y1: int) -> int:
        return kernels.vector_rows(
            rgb_pad, out, y0, y1, code, int(p), float(gamma)
        )

    evals = sum(_run_bands(band, img.height, workers))
    result = RgbImage(out.astype(np.uint8))
    stats = FilterStats(
        kind=kind.value,
        pixels_switched=img.pixel_count,
        distance_evals=int(evals),
        elapsed=time.perf_counter() - start,
    )
    _log_stats(img, stats, workers)
    return result, stats


def _log_stats(img: RgbImage, stats: FilterStats, workers: int) -> None:
    logging.info(
        LOG_FILTER_DONE.format(
            stats.kind, img.width, img.height, workers,
            stats.pixels_switched, stats.distance_evals, stats.elapsed,
        )
    )


def fhsf_filter(
    img: RgbImage, params: Optional[FhsfParams] = None, workers: int = 1
) -> Tuple[RgbImage, FilterStats]:
    """Переключающий фильтр с покомпонентным предикатом похожести в HSL."""
    params = params or FhsfParams()
    return _switching(
        img, FilterKind.FHSF_S, kernels.MODE_S,
        params.m, params.thresholds.astuple(), 2, workers,
    )


def fhsf_hsl_filter(
    img: RgbImage, m: int = DEFAULT_M, tol: float = DEFAULT_HSL_TOL,
    workers: int = 1,
) -> Tuple[RgbImage, FilterStats]:
    """Тот же переключатель, но соседи сравниваются расстоянием в цилиндре HSL."""
    params = HslTolParams(m, tol)
    return _switching(
        img, FilterKind.FHSF_HSL, kernels.MODE_HSL,
        params.m, (params.tol, 0.0, 0.0), 2, workers,
    )


def fpgf_filter(
    img: RgbImage, params: Optional[FpgfParams] = None, workers: int = 1
) -> Tuple[RgbImage, FilterStats]:
    params = params or FpgfParams()
    kind = FilterKind.FPGF1 if params.p == 1 else FilterKind.FPGF2
    return _switching(
        img, kind, kernels.MODE_RGB,
        params.m, (params.tol, 0.0, 0.0), params.p, workers,
    )


def filter_image(
    img: RgbImage,
    kind: Union[str, FilterKind],
    params: Optional[FilterParams] = None,
    workers: int = 1,
) -> Tuple[RgbImage, FilterStats]:
    """Единая точка запуска любого фильтра набора."""
    kind = FilterKind.parse(kind)
    if params is None:
        params = default_params(kind)
    expected = {
        FilterKind.VMF: VmfParams,
        FilterKind.BVDF: type(None),
        FilterKind.DDF: DdfParams,
        FilterKind.FPGF1: FpgfParams,
        FilterKind.FPGF2: FpgfParams,
        FilterKind.FHSF_S: FhsfParams,
        FilterKind.FHSF_HSL: HslTolParams,
    }[kind]
    if not isinstance(params, expected):
        raise ParamsError(ERROR_PARAMS_SHAPE.format(params, kind.value))
    if kind == FilterKind.VMF:
        return _vector(img, kind, params.p, DDF_GAMMA, workers)
    if kind == FilterKind.BVDF:
        return _vector(img, kind, 2, DDF_GAMMA, workers)
    if kind == FilterKind.DDF:
        return _vector(img, kind, 2, params.gamma, workers)
    if kind in (FilterKind.FPGF1, FilterKind.FPGF2):
        if params.p != (1 if kind == FilterKind.FPGF1 else 2):
            raise ParamsError(ERROR_PARAMS_SHAPE.format(params, kind.value))
        return fpgf_filter(img, params, workers)
    if kind == FilterKind.FHSF_S:
        return fhsf_filter(img, params, workers)
    return fhsf_hsl_filter(img, params.m, params.tol, workers)


def warm_up() -> None:
    """Компилирует ядра заранее, чтобы первая замеряемая фильтрация не включала JIT."""
    tiny = RgbImage.constant(3, 3, (10, 20, 30))
    for kind in FilterKind:
        filter_image(tiny, kind)
