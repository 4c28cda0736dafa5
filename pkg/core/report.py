"""Текстовые представления результатов: CSV для машин и выровненные таблицы для людей."""

from pathlib import Path
from typing import Iterable, List, Sequence, Union

import numpy as np

from config import (
    CSV_DELIMITER,
    CSV_ENCODING,
    ERROR_HSL_DUMP,
    HSL_DUMP_COLUMNS,
    REPORT_COLUMNS,
    TITLE_MIN_PCD,
    TITLE_RANGES,
    TITLE_TOP_FRACTION,
    TUNE_COLUMNS,
)
from core.bench import BenchReport, BenchRow
from core.colorspace import HslPixel, hsl_to_rgb, rgb_to_hsl_plane
from core.errors import ImageFormatError
from core.filters import FilterStats
from core.imgcore import RgbImage
from core.metrics import MetricReport
from core.tuner import PARAM_NAMES, TopFraction, TuneResult, min_pcd_per_m, summarize_ranges


def _num(value: Union[int, float]) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.6g}"


def csv_lines(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [CSV_DELIMITER.join(header)]
    for row in rows:
        lines.append(
            CSV_DELIMITER.join(v if isinstance(v, str) else _num(v) for v in row)
        )
    return "\n".join(lines) + "\n"


def aligned_table(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    cells = [list(header)] + [
        [v if isinstance(v, str) else _num(v) for v in row] for row in rows
    ]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = []
    for k, row in enumerate(cells):
        first = row[0].ljust(widths[0])
        rest = [v.rjust(w) for v, w in zip(row[1:], widths[1:])]
        lines.append("  ".join([first] + rest))
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _bench_cells(row: BenchRow) -> List:
    return [row.name, row.mae, row.mse, row.ncd, row.pcd, row.elapsed]


def bench_csv(report: BenchReport) -> str:
    return csv_lines(REPORT_COLUMNS, (_bench_cells(r) for r in report.rows))


def bench_table(report: BenchReport) -> str:
    return aligned_table(REPORT_COLUMNS, (_bench_cells(r) for r in report.rows))


def _metric_cells(name: str, report: MetricReport) -> List:
    return [name, report.mae, report.mse, report.ncd, report.pcd, report.elapsed]


def metric_csv(report: MetricReport, name: str = "-") -> str:
    return csv_lines(REPORT_COLUMNS, [_metric_cells(name, report)])


def metric_table(report: MetricReport, name: str = "-") -> str:
    return aligned_table(REPORT_COLUMNS, [_metric_cells(name, report)])


def stats_block(stats: FilterStats) -> str:
    """Статистика фильтра в виде строк key=value."""
    lines = []
    for key, value in stats.as_dict().items():
        lines.append(f"{key}={value if isinstance(value, str) else _num(value)}")
    return "\n".join(lines) + "\n"


def tune_csv(result: TuneResult) -> str:
    return csv_lines(TUNE_COLUMNS, result.rows())


def tune_summary(result: TuneResult, top: TopFraction, fraction: float) -> str:
    lines = [TITLE_TOP_FRACTION.format(fraction, len(top.configs))]
    if top.diagnostic:
        lines.append(top.diagnostic)
    for params in top.configs:
        lines.append(
            "  " + ", ".join(f"{n}={_num(v)}" for n, v in zip(PARAM_NAMES, params.key()))
        )
    ranges = summarize_ranges(top.configs)
    if ranges:
        lines.append(TITLE_RANGES)
        for name, (lo, hi) in ranges.items():
            lines.append(f"  {name}: [{_num(lo)}, {_num(hi)}]")
    lines.append(TITLE_MIN_PCD)
    for m, values in min_pcd_per_m(result).items():
        lines.append(f"  m={m}: " + ", ".join(f"{v:.4f}" for v in values))
    return "\n".join(lines) + "\n"


def hsl_dump(img: RgbImage) -> str:
    """Построчный дамп пикселей: координаты, RGB и HSL."""
    hsl = rgb_to_hsl_plane(img)
    rows = []
    for y in range(img.height):
        for x in range(img.width):
            r, g, b = img.pixel(x, y)
            h, s, l = hsl[y, x]
            rows.append((str(x), str(y), str(r), str(g), str(b),
                         f"{h:.6f}", f"{s:.6f}", f"{l:.6f}"))
    return csv_lines(HSL_DUMP_COLUMNS, rows)


def parse_hsl_dump(text: str) -> RgbImage:
    """Восстанавливает изображение из HSL-столбцов дампа."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0].lstrip("\ufeff").split(CSV_DELIMITER) != list(HSL_DUMP_COLUMNS):
        raise ImageFormatError(ERROR_HSL_DUMP.format(lines[0] if lines else ""))
    pixels = {}
    for line in lines[1:]:
        parts = line.split(CSV_DELIMITER)
        try:
            x, y = int(parts[0]), int(parts[1])
            h, s, l = (float(v) for v in parts[5:8])
        except (ValueError, IndexError):
            raise ImageFormatError(ERROR_HSL_DUMP.format(line)) from None
        pixels[(x, y)] = hsl_to_rgb(HslPixel(h, s, l))
    if not pixels:
        raise ImageFormatError(ERROR_HSL_DUMP.format(lines[0]))
    width = max(x for x, _ in pixels) + 1
    height = max(y for _, y in pixels) + 1
    if len(pixels) != width * height:
        raise ImageFormatError(ERROR_HSL_DUMP.format(f"{len(pixels)} != {width}x{height}"))
    return RgbImage.from_pixels(
        width, height, (pixels[(x, y)] for y in range(height) for x in range(width))
    )


def write_text(text: str, path: Union[str, Path]) -> None:
    """Файлы .csv пишутся с BOM."""
    encoding = CSV_ENCODING if str(path).lower().endswith(".csv") else "utf-8"
    with open(path, "w", encoding=encoding, newline="") as f:
        f.write(text)
