import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence

from config import (
    APP_TITLE,
    BENCH_REPEATS,
    DDF_GAMMA,
    DEFAULT_HSL_TOL,
    DEFAULT_M,
    DEFAULT_VMF_NORM,
    DIFF_GAIN,
    ERROR_FRACTION,
    EXIT_CONFIG,
    EXIT_FORMAT,
    EXIT_IO,
    EXIT_METRIC,
    EXIT_OK,
    EXIT_PARAMS,
    EXIT_USAGE,
    GRID_HT_RANGE,
    GRID_LT_RANGE,
    GRID_M_RANGE,
    GRID_ST_RANGE,
    HISTORY_COLUMNS,
    NO_HISTORY_MESSAGE,
    TOP_FRACTION,
)
from core import report
from core.bench import relax_label, run_bench
from core.errors import (
    ConfigError,
    DegenerateImageError,
    DimensionMismatchError,
    ImageFormatError,
    ParamsError,
)
from core.filters import (
    DdfParams,
    FhsfParams,
    FilterKind,
    FilterParams,
    FpgfParams,
    HslTolParams,
    VmfParams,
    default_params,
    filter_image,
)
from core.history import (
    append_entry,
    create_history_entry,
    export_history_csv,
    history_rows,
    load_history,
)
from core.imgcore import load_image, save_image
from core.metrics import diff_image, evaluate
from core.noise import NoiseSpec, inject, mask_to_image, save_spec
from core.tuner import (
    ParamGrid,
    ParamRange,
    grid_search,
    top_fraction_intersect,
)
from utils.paths import get_config_file_path
from utils.settings import Settings, load_settings
from utils.validation import (
    non_negative,
    parse_impulses,
    parse_mix,
    parse_range,
    parse_relax,
    peer_count,
    positive_int,
    probability,
)

ALL_FILTERS = ",".join(kind.value for kind in FilterKind)

# Порядок важен: более частные классы проверяются первыми.
EXIT_CODES = (
    (ConfigError, EXIT_CONFIG),
    (DimensionMismatchError, EXIT_METRIC),
    (DegenerateImageError, EXIT_METRIC),
    (ImageFormatError, EXIT_FORMAT),
    (ParamsError, EXIT_PARAMS),
    (OSError, EXIT_IO),
)


def _add_noise_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("шум")
    group.add_argument("--p", type=probability, help="вероятность искажения пикселя")
    group.add_argument("--mix", type=parse_mix, help="веса R,G,B,все каналы")
    group.add_argument("--impulses", type=parse_impulses, help="значения импульсов, например 0,255")
    group.add_argument("--seed", type=int, help="seed генератора")


def _add_fhsf_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("параметры фильтра")
    group.add_argument("--m", type=peer_count, help="размер группы похожих соседей")
    group.add_argument("--ht", type=non_negative, help="порог по тону")
    group.add_argument("--st", type=non_negative, help="порог по насыщенности")
    group.add_argument("--lt", type=non_negative, help="порог по светлоте")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fhsf", description=APP_TITLE)
    parser.add_argument("--config", help="файл конфигурации (иначе FHSF_CONFIG)")
    parser.add_argument(
        "--threads", type=positive_int, default=1, help="число потоков фильтрации"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("noise", help="внести импульсный шум")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--mask", help="сохранить маску искажённых пикселей")
    p.add_argument("--save-spec", help="сохранить параметры шума в файл")
    _add_noise_flags(p)

    p = sub.add_parser("filter", help="отфильтровать изображение")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--kind", default=FilterKind.FHSF_S.value, help=ALL_FILTERS)
    _add_fhsf_flags(p)
    p.add_argument("--tol", type=non_negative, help="порог расстояния FPGF / FHSF_HSL")
    p.add_argument("--norm", type=int, choices=(1, 2), help="норма VMF")
    p.add_argument("--gamma", type=float, help="показатель DDF")
    p.add_argument("--mask", help="сохранить маску пикселей, признанных шумом")

    p = sub.add_parser("metrics", help="сравнить два изображения")
    p.add_argument("original")
    p.add_argument("processed")
    p.add_argument("--csv", help="записать CSV в файл")

    p = sub.add_parser("bench", help="сравнить фильтры на зашумлённом изображении")
    p.add_argument("original")
    p.add_argument("--filters", default=ALL_FILTERS, help="список через запятую")
    p.add_argument("--relax", type=parse_relax, default=[], help="например ht=28,st=20,lt=80")
    p.add_argument("--repeats", type=positive_int, default=BENCH_REPEATS)
    p.add_argument("--csv", help="записать CSV в файл")
    p.add_argument("--no-journal", action="store_true", help="не записывать в журнал")
    _add_noise_flags(p)
    _add_fhsf_flags(p)

    p = sub.add_parser("tune", help="подбор параметров FHSF по сетке")
    p.add_argument("images", nargs="+")
    p.add_argument("--m-range", type=parse_range, default=GRID_M_RANGE)
    p.add_argument("--ht-range", type=parse_range, default=GRID_HT_RANGE)
    p.add_argument("--st-range", type=parse_range, default=GRID_ST_RANGE)
    p.add_argument("--lt-range", type=parse_range, default=GRID_LT_RANGE)
    p.add_argument("--fraction", type=probability, default=TOP_FRACTION)
    p.add_argument("--csv", help="записать CSV в файл")
    p.add_argument("--no-journal", action="store_true", help="не записывать в журнал")
    _add_noise_flags(p)

    p = sub.add_parser("convert", help="дамп RGB -> HSL и обратно")
    p.add_argument("input")
    p.add_argument("output")
    direction = p.add_mutually_exclusive_group(required=True)
    direction.add_argument("--to-hsl", action="store_true")
    direction.add_argument("--to-rgb", action="store_true")

    p = sub.add_parser("diff", help="разностное изображение")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("output")
    p.add_argument("--gain", type=positive_int, default=DIFF_GAIN)

    p = sub.add_parser("history", help="журнал запусков")
    p.add_argument("--export-csv", help="выгрузить журнал в CSV")

    return parser


def _noise_spec(args: argparse.Namespace, base: NoiseSpec) -> NoiseSpec:
    overrides = {
        "p": args.p,
        "channel_mix": args.mix,
        "impulse_values": args.impulses,
        "seed": args.seed,
    }
    return replace(base, **{k: v for k, v in overrides.items() if v is not None})


def _fhsf_params(args: argparse.Namespace, base: FhsfParams) -> FhsfParams:
    overrides = {"ht": args.ht, "st": args.st, "lt": args.lt}
    thresholds = replace(
        base.thresholds, **{k: v for k, v in overrides.items() if v is not None}
    )
    return FhsfParams(_flag(args, "m", base.m), thresholds)


def _flag(args: argparse.Namespace, name: str, default):
    """Значение флага или default, если флаг не задан или отсутствует у подкоманды."""
    value = getattr(args, name, None)
    return default if value is None else value


def _filter_params(
    args: argparse.Namespace, kind: FilterKind, settings: Settings
) -> Optional[FilterParams]:
    if kind == FilterKind.FHSF_S:
        return _fhsf_params(args, settings.fhsf)
    if kind == FilterKind.FHSF_HSL:
        return HslTolParams(
            _flag(args, "m", DEFAULT_M), _flag(args, "tol", DEFAULT_HSL_TOL)
        )
    if kind in (FilterKind.FPGF1, FilterKind.FPGF2):
        base = default_params(kind)
        return FpgfParams(
            _flag(args, "m", base.m), _flag(args, "tol", base.tol), base.p
        )
    if kind == FilterKind.VMF:
        return VmfParams(_flag(args, "norm", DEFAULT_VMF_NORM))
    if kind == FilterKind.DDF:
        return DdfParams(_flag(args, "gamma", DDF_GAMMA))
    return None


def cmd_noise(args: argparse.Namespace, settings: Settings) -> int:
    spec = _noise_spec(args, settings.noise)
    noisy, mask = inject(load_image(args.input), spec)
    save_image(noisy, args.output)
    if args.mask:
        save_image(mask_to_image(mask), args.mask)
    if args.save_spec:
        save_spec(spec, args.save_spec)
    return EXIT_OK


def cmd_filter(args: argparse.Namespace, settings: Settings) -> int:
    kind = FilterKind.parse(args.kind)
    params = _filter_params(args, kind, settings)
    filtered, stats = filter_image(load_image(args.input), kind, params, args.threads)
    save_image(filtered, args.output)
    if args.mask and stats.noisy_mask is not None:
        save_image(mask_to_image(stats.noisy_mask), args.mask)
    sys.stdout.write(report.stats_block(stats))
    return EXIT_OK


def cmd_metrics(args: argparse.Namespace, settings: Settings) -> int:
    result = evaluate(
        load_image(args.original), load_image(args.processed), settings.scielab
    )
    name = Path(args.processed).name
    if args.csv:
        report.write_text(report.metric_csv(result, name), args.csv)
    sys.stdout.write(report.metric_csv(result, name))
    sys.stdout.write("\n" + report.metric_table(result, name))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, settings: Settings) -> int:
    spec = _noise_spec(args, settings.noise)
    fhsf = _fhsf_params(args, settings.fhsf)
    entries = []
    for name in (n for n in args.filters.split(",") if n.strip()):
        kind = FilterKind.parse(name)
        params = fhsf if kind == FilterKind.FHSF_S else _filter_params(args, kind, settings)
        entries.append((kind.value, kind, params))
    for name, value in args.relax:
        relaxed = FhsfParams(
            fhsf.m, replace(fhsf.thresholds, **{name.lower(): value})
        )
        entries.append((relax_label(relaxed, name), FilterKind.FHSF_S, relaxed))
    result = run_bench(
        load_image(args.original), spec, entries, settings.scielab,
        args.threads, args.repeats,
    )
    if args.csv:
        report.write_text(report.bench_csv(result), args.csv)
    sys.stdout.write(report.bench_csv(result))
    sys.stdout.write("\n" + report.bench_table(result))
    if not args.no_journal:
        entry = create_history_entry(
            "bench",
            [args.original],
            {"p": spec.p, "seed": spec.seed, "filters": args.filters,
             "threads": args.threads},
            result.as_dicts(),
        )
        append_entry(entry)
    return EXIT_OK


def cmd_tune(args: argparse.Namespace, settings: Settings) -> int:
    spec = _noise_spec(args, settings.noise)
    grid = ParamGrid(
        ParamRange(*args.m_range),
        ParamRange(*args.ht_range),
        ParamRange(*args.st_range),
        ParamRange(*args.lt_range),
    )
    images = [load_image(path) for path in args.images]
    names = [Path(path).name for path in args.images]
    if not 0 < args.fraction <= 1:
        raise ParamsError(ERROR_FRACTION.format(args.fraction))
    result = grid_search(images, spec, grid, settings.scielab, args.threads, names)
    top = top_fraction_intersect(result, args.fraction)
    csv_text = report.tune_csv(result)
    if args.csv:
        report.write_text(csv_text, args.csv)
    else:
        sys.stdout.write(csv_text + "\n")
    sys.stdout.write(report.tune_summary(result, top, args.fraction))
    if not args.no_journal:
        entry = create_history_entry(
            "tune",
            list(args.images),
            {"p": spec.p, "seed": spec.seed, "grid": [str(r) for r in grid.ranges()],
             "fraction": args.fraction},
            [dict(zip(("m", "Ht", "St", "Lt"), c.key())) for c in top.configs],
        )
        append_entry(entry)
    return EXIT_OK


def cmd_convert(args: argparse.Namespace, settings: Settings) -> int:
    if args.to_hsl:
        report.write_text(report.hsl_dump(load_image(args.input)), args.output)
    else:
        text = Path(args.input).read_text(encoding="utf-8-sig")
        save_image(report.parse_hsl_dump(text), args.output)
    return EXIT_OK


def cmd_diff(args: argparse.Namespace, settings: Settings) -> int:
    result = diff_image(load_image(args.first), load_image(args.second), args.gain)
    save_image(result, args.output)
    return EXIT_OK


def cmd_history(args: argparse.Namespace, settings: Settings) -> int:
    history = load_history()
    if args.export_csv:
        export_history_csv(history, args.export_csv)
        return EXIT_OK
    if not history:
        print(NO_HISTORY_MESSAGE)
        return EXIT_OK
    sys.stdout.write(report.aligned_table(HISTORY_COLUMNS, history_rows(history)))
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, Settings], int]] = {
    "noise": cmd_noise,
    "filter": cmd_filter,
    "metrics": cmd_metrics,
    "bench": cmd_bench,
    "tune": cmd_tune,
    "convert": cmd_convert,
    "diff": cmd_diff,
    "history": cmd_history,
}


def exit_code_for(error: Exception) -> int:
    for cls, code in EXIT_CODES:
        if isinstance(error, cls):
            return code
    raise error


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Разбирает аргументы, выполняет подкоманду и возвращает код завершения."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        settings = load_settings(get_config_file_path(args.config))
        return COMMANDS[args.command](args, settings)
    except (ConfigError, ImageFormatError, ParamsError,
            DimensionMismatchError, DegenerateImageError, OSError) as e:
        logging.error(e)
        print(e, file=sys.stderr)
        return exit_code_for(e)
