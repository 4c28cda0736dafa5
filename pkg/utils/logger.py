import logging
from datetime import datetime
from pathlib import Path
from typing import Optional

from config import DATE_FORMAT_LOGS, LOG_START, QUIET_LOGGERS
from utils.paths import get_logs_dir


def setup_logger(debug: bool = False, logs_dir: Optional[Path] = None) -> Path:
    """
    Настраивает логирование в файл по дате и возвращает путь к файлу.

    Отладочные сообщения numba и Pillow в файл не пишутся даже при DEBUG.
    """
    logs_dir = logs_dir or get_logs_dir()
    logs_dir.mkdir(parents=True, exist_ok=True)
    log_file = logs_dir / f"{datetime.now().strftime(DATE_FORMAT_LOGS)}.log"
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.INFO,
        format="%(asctime)s - %(levelname)s - %(message)s",
        handlers=[logging.FileHandler(log_file, encoding="utf-8")],
    )
    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)
    logging.info(LOG_START)
    return log_file
