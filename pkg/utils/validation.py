"""Разбор и проверка значений флагов командной строки и ключей конфигурации."""

import argparse
from typing import List, Tuple

from config import (
    ERROR_LIST_FORMAT,
    ERROR_NOISE_P,
    ERROR_PARAM_M,
    ERROR_RANGE_FORMAT,
    ERROR_RELAX_FORMAT,
    ERROR_VALUE_NEGATIVE,
    ERROR_VALUE_POSITIVE,
    MAX_M,
    MIN_M,
)

RELAX_NAMES = ("Ht", "St", "Lt")


def float_list(text: str, sep: str = ",") -> Tuple[float, ...]:
    return tuple(float(v) for v in text.split(sep) if v.strip())


def int_list(text: str, sep: str = ",") -> Tuple[int, ...]:
    return tuple(int(v) for v in text.split(sep) if v.strip())


def parse_range(text: str) -> Tuple[float, float, float]:
    """'lo:hi:step' или одно число (диапазон из одного значения)."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            v = float(parts[0])
            return v, v, 1.0
        if len(parts) == 3:
            lo, hi, step = (float(p) for p in parts)
            return lo, hi, step
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(ERROR_RANGE_FORMAT.format(text))


def probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(ERROR_NOISE_P.format(text)) from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(ERROR_NOISE_P.format(text))
    return value


def peer_count(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(ERROR_PARAM_M.format(MIN_M, MAX_M, text)) from None
    if not MIN_M <= value <= MAX_M:
        raise argparse.ArgumentTypeError(ERROR_PARAM_M.format(MIN_M, MAX_M, text))
    return value


def non_negative(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(ERROR_VALUE_NEGATIVE.format(text)) from None
    if not value >= 0:
        raise argparse.ArgumentTypeError(ERROR_VALUE_NEGATIVE.format(text))
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        value = 0
    if value < 1:
        raise argparse.ArgumentTypeError(ERROR_VALUE_POSITIVE.format(text))
    return value


def parse_mix(text: str) -> Tuple[float, ...]:
    try:
        return float_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(ERROR_LIST_FORMAT.format(text)) from None


def parse_impulses(text: str) -> Tuple[int, ...]:
    try:
        return int_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(ERROR_LIST_FORMAT.format(text)) from None


def parse_relax(text: str) -> List[Tuple[str, float]]:
    """'ht=28,st=20,lt=80' -> [('Ht', 28.0), ('St', 20.0), ('Lt', 80.0)]."""
    result = []
    for item in text.split(","):
        name, _, value = item.partition("=")
        name = name.strip().capitalize()
        try:
            number = float(value)
        except ValueError:
            number = -1.0
        if name not in RELAX_NAMES or number < 0:
            raise argparse.ArgumentTypeError(ERROR_RELAX_FORMAT.format(text))
        result.append((name, number))
    return result
