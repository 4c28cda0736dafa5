import logging
import statistics
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from config import BENCH_REPEATS, LOG_BENCH_ROW, NONE_ROW
from core.filters import (
    FhsfParams,
    FilterKind,
    FilterParams,
    filter_image,
    warm_up,
)
from core.imgcore import RgbImage
from core.metrics import DEFAULT_SCIELAB, MetricReport, SCielabConfig, evaluate
from core.noise import NoiseSpec, inject


@dataclass
class BenchRow:
    name: str
    mae: float
    mse: float
    ncd: float
    pcd: float
    elapsed: float
    distance_evals: int = 0
    pixels_switched: int = 0

    @classmethod
    def from_report(
        cls, name: str, report: MetricReport, pixels_switched: int = 0
    ) -> "BenchRow":
        return cls(
            name=name,
            mae=report.mae,
            mse=report.mse,
            ncd=report.ncd,
            pcd=report.pcd,
            elapsed=report.elapsed,
            distance_evals=report.distance_evals,
            pixels_switched=pixels_switched,
        )

    def metrics(self) -> Tuple[float, float, float, float]:
        return self.mae, self.mse, self.ncd, self.pcd


@dataclass
class BenchReport:
    """Таблица сравнения фильтров; первая строка описывает зашумлённое изображение без фильтрации."""

    spec: NoiseSpec
    width: int
    height: int
    rows: List[BenchRow] = field(default_factory=list)

    def row(self, name: str) -> Optional[BenchRow]:
        for row in self.rows:
            if row.name == name:
                return row
        return None

    def as_dicts(self) -> List[Dict[str, Union[str, float, int]]]:
        return [asdict(row) for row in self.rows]


BenchEntry = Union[str, FilterKind, Tuple[str, FilterKind, Optional[FilterParams]]]


def relax_label(params: FhsfParams, name: str) -> str:
    return f"{FilterKind.FHSF_S.value}({name}={getattr(params.thresholds, name.lower()):g})"


def _timed(
    noisy: RgbImage,
    kind: FilterKind,
    params: Optional[FilterParams],
    workers: int,
    repeats: int,
):
    times = []
    for _ in range(repeats):
        filtered, stats = filter_image(noisy, kind, params, workers)
        times.append(stats.elapsed)
    return filtered, stats, statistics.median(times)


def run_bench(
    original: RgbImage,
    spec: NoiseSpec,
    filters: Sequence[BenchEntry],
    cfg: SCielabConfig = DEFAULT_SCIELAB,
    workers: int = 1,
    repeats: int = BENCH_REPEATS,
) -> BenchReport:
    """
    Вносит шум, прогоняет каждый фильтр и считает четыре метрики
    относительно оригинала. Время равно медиане repeats прогонов фильтра.
    Элемент filters задаёт тип фильтра или тройку (подпись, тип, параметры).
    """
    noisy, _ = inject(original, spec)
    report = BenchReport(spec, original.width, original.height)
    report.rows.append(BenchRow.from_report(NONE_ROW, evaluate(original, noisy, cfg)))
    if filters:
        warm_up()
    for entry in filters:
        if isinstance(entry, tuple):
            name, kind, params = entry
            kind = FilterKind.parse(kind)
        else:
            kind = FilterKind.parse(entry)
            name, params = kind.value, None
        filtered, stats, elapsed = _timed(noisy, kind, params, workers, repeats)
        metrics = evaluate(original, filtered, cfg, elapsed, stats.distance_evals)
        row = BenchRow.from_report(name, metrics, stats.pixels_switched)
        logging.info(LOG_BENCH_ROW.format(row.name, row.mae, row.elapsed))
        report.rows.append(row)
    return report
